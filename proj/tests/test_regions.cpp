#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ic3/regions.hpp"
#include "ic3/search.hpp"

using namespace ic3;

namespace {

ExampleParams base_params() {
  ExampleParams p;
  p.tau = 0.2;
  p.delta = 0.1;
  p.delta1 = 0.05;
  p.delta2 = 0.08;
  p.delta3 = 0.12;
  return p;
}

// Field test channel on example 1: U_j = X_j uniform, X1 ~ Bern(tau).
TestChannel f2_tc(const Channel3IC& ch, double tau) {
  JointPmf input = JointPmf::product(
      JointPmf::product(JointPmf::single("Q", {1.0}),
                        JointPmf::single("U2", {0.5, 0.5})),
      JointPmf::single("U3", {0.5, 0.5}));
  input = JointPmf::product(input, JointPmf::single("X1", {1 - tau, tau}));
  input = input.with_derived("X2", {"U2"}, 2,
                             [](std::span<const int> v) { return v[0]; });
  input = input.with_derived("X3", {"U3"}, 2,
                             [](std::span<const int> v) { return v[0]; });
  return tc_from_input(ch, input, AlgebraKind::Field, {field_make(2)});
}

// Random (soft) field test channel: p(u_j, x_j) arbitrary.
TestChannel f2_soft_tc(const Channel3IC& ch, std::mt19937_64& rng) {
  std::gamma_distribution<double> gd(1.2, 1.0);
  auto rand_pmf = [&](int n) {
    std::vector<double> p(n);
    double tot = 0;
    for (auto& v : p) {
      v = gd(rng);
      tot += v;
    }
    for (auto& v : p) v /= tot;
    return p;
  };
  JointPmf input = JointPmf::product(JointPmf::single("Q", {1.0}),
                                     JointPmf::single("X1", rand_pmf(2)));
  JointPmf ux2({"U2", "X2"}, {2, 2}, rand_pmf(4));
  JointPmf ux3({"U3", "X3"}, {2, 2}, rand_pmf(4));
  input = JointPmf::product(JointPmf::product(input, ux2), ux3);
  return tc_from_input(ch, input, AlgebraKind::Field, {field_make(2)});
}

}  // namespace

TEST_CASE("beta_outer is the expected box") {
  RatePolytope b = beta_outer({0.2, 0.5, 0.5}, {0.05, 0.08, 0.12});
  auto hb = [](double a) { return binary_entropy(a); };
  double r1 = hb(binary_convolve(0.05, 0.2)) - hb(0.05);
  double r2 = hb(binary_convolve(0.08, 0.5)) - hb(0.08);
  CHECK(b.max_weighted({1, 0, 0}) == doctest::Approx(r1).epsilon(1e-12));
  CHECK(b.max_weighted({0, 1, 0}) == doctest::Approx(r2).epsilon(1e-12));
  CHECK(b.classify({r1 / 2, r2 / 2, 0.0}) != Verdict::Outside);
  CHECK(b.classify({r1 + 0.01, 0, 0}) == Verdict::Outside);
}

TEST_CASE("certified example-1 field tc gives nonempty consistent regions") {
  ExampleParams p = base_params();
  Channel3IC ch = make_example(1, p);
  TestChannel tc = f2_tc(ch, p.tau);
  CertifyReport rep = certify(tc, ch, TcKind::F);
  CHECK(rep.channel_deviation < 1e-9);
  CHECK(rep.indep_deviation < 1e-9);
  CHECK(rep.costs[0] == doctest::Approx(p.tau));

  for (RatePolytope r : {alpha_u_3to1(tc), alpha_f_3to1(tc)}) {
    // Contains the origin's neighborhood scaled into the region.
    double m = r.max_weighted({1, 1, 1});
    CHECK(m > 0);
    CHECK(m < 3.0);
    // Downward closed: half of a max point is inside.
    auto [v, pt] = r.max_weighted_point({1, 1, 1});
    CHECK(r.contains({pt[0] / 2, pt[1] / 2, pt[2] / 2}, 1e-9));
  }
}

TEST_CASE("with_sum_axis computes the field XOR") {
  ExampleParams p = base_params();
  TestChannel tc = f2_tc(make_example(1, p), p.tau);
  JointPmf z = with_sum_axis(tc);
  CHECK(z.conditional_entropy({"Z"}, {"U2", "U3"}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // Z = U2 xor U3 of independent uniforms is uniform and independent of U2.
  CHECK(z.entropy({"Z"}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z.mutual_information({"Z"}, {"U2"}) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("parametric field system projects to the closed-form region") {
  // Lemma-style consistency: Fourier-Motzkin elimination of the code
  // parameters reproduces the directly evaluated polytope.
  ExampleParams p = base_params();
  Channel3IC ch = make_example(1, p);
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 3; ++rep) {
    TestChannel tc = rep == 0 ? f2_tc(ch, p.tau) : f2_soft_tc(ch, rng);
    RatePolytope direct = alpha_f_3to1(tc);
    RatePolytope via = alpha_f_3to1_params(tc, 1e-9);
    // A random pmf may yield an empty region (negative R1 face); the
    // projection must agree on emptiness as well as on support values.
    auto support = [](const RatePolytope& r,
                      const std::array<double, 3>& mu) -> double {
      try {
        return r.max_weighted(mu);
      } catch (const InfeasibilityError&) {
        return -1.0;
      }
    };
    for (auto mu : std::vector<std::array<double, 3>>{
             {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {2, 1, 0.5}}) {
      double a = support(direct, mu);
      double b = support(via, mu);
      if (a < 0 || b < 0) {
        CHECK(a == b);
      } else {
        CHECK(a == doctest::Approx(b).epsilon(5e-7));
      }
    }
  }
}

TEST_CASE("system_member classifies interior, boundary, and outside") {
  // Box 0 <= x <= 1 via an auxiliary: R1 < a, a <= 1, R2 < 0.5, R3 < 0.5.
  LinearSystem sys;
  sys.add_upper({{"R1", 1}, {"a", -1}}, 0, true);
  sys.add_upper({{"a", 1}}, 1);
  sys.add_upper({{"R2", 1}}, Rat(1, 2), true);
  sys.add_upper({{"R3", 1}}, Rat(1, 2), true);
  for (const char* v : {"R1", "R2", "R3", "a"}) sys.add_nonneg(v);
  MembershipResult in = system_member(sys, {0.5, 0.25, 0.25});
  CHECK(in.verdict == Verdict::Member);
  CHECK(in.witness.count("a"));
  CHECK(system_member(sys, {1.0, 0.25, 0.25}).verdict == Verdict::Boundary);
  CHECK(system_member(sys, {1.1, 0.25, 0.25}).verdict == Verdict::Outside);
  CHECK(system_member(sys, {0.5, 0.6, 0.25}).verdict == Verdict::Outside);
}

namespace {
// Symmetric all-sum channel: Y_j = BSC_{delta_j}(X1 xor X2 xor X3), so
// every receiver can decode its incoming sum.
Channel3IC all_sum_channel(std::array<double, 3> delta) {
  Channel3IC ch;
  ch.in_sizes = {2, 2, 2};
  ch.out_sizes = {2, 2, 2};
  ch.W.resize(64);
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int x3 = 0; x3 < 2; ++x3)
        for (int y1 = 0; y1 < 2; ++y1)
          for (int y2 = 0; y2 < 2; ++y2)
            for (int y3 = 0; y3 < 2; ++y3) {
              int s = x1 ^ x2 ^ x3;
              double w = (y1 == s ? 1 - delta[0] : delta[0]) *
                         (y2 == s ? 1 - delta[1] : delta[1]) *
                         (y3 == s ? 1 - delta[2] : delta[2]);
              ch.W[(((((x1 * 2 + x2) * 2 + x3) * 2 + y1) * 2 + y2) * 2 + y3)] =
                  w;
            }
  for (int j = 0; j < 3; ++j) ch.costs[j] = {0, 0};
  ch.budgets = {0, 0, 0};
  return ch;
}
}  // namespace

TEST_CASE("general six-aux field membership accepts small rates and "
          "rejects large rates on an all-sum channel") {
  // Uniform inputs and mild noise: the covering bounds (which force the
  // binning rates up) and the cross-receiver decode caps (which force
  // them down) leave a strictly feasible window.
  Channel3IC ch = all_sum_channel({0.02, 0.02, 0.02});
  JointPmf input = JointPmf::product(JointPmf::single("Q", {1.0}),
                                     JointPmf::single("X1", {0.5, 0.5}));
  // Fully active construction: every auxiliary U_ab equals the sender's
  // input X_a, all in F2.
  input = JointPmf::product(input, JointPmf::single("X2", {0.5, 0.5}));
  input = JointPmf::product(input, JointPmf::single("X3", {0.5, 0.5}));
  auto ident = [](std::span<const int> v) { return v[0]; };
  input = input.with_derived("U12", {"X1"}, 2, ident);
  input = input.with_derived("U13", {"X1"}, 2, ident);
  input = input.with_derived("U21", {"X2"}, 2, ident);
  input = input.with_derived("U23", {"X2"}, 2, ident);
  input = input.with_derived("U31", {"X3"}, 2, ident);
  input = input.with_derived("U32", {"X3"}, 2, ident);
  FieldSpec f2 = field_make(2);
  TestChannel tc = tc_from_input(ch, input, AlgebraKind::Field, {f2, f2, f2});
  CHECK_NOTHROW(certify(tc, ch, TcKind::FGeneral));
  MembershipResult small = alpha_f_general_member(tc, {0.01, 0.01, 0.01});
  CHECK(small.verdict == Verdict::Member);
  MembershipResult big = alpha_f_general_member(tc, {2.5, 2.5, 2.5});
  CHECK(big.verdict == Verdict::Outside);
}

TEST_CASE("combined unstructured+field membership behaves near origin") {
  ExampleParams p = base_params();
  Channel3IC ch = make_example(1, p);
  JointPmf input = JointPmf::product(JointPmf::single("Q", {1.0}),
                                     JointPmf::single("X1", {1 - p.tau, p.tau}));
  for (const char* a : {"V2", "V3"})
    input = JointPmf::product(input, JointPmf::single(a, {1.0}));
  // Soft satellites so the strict single-letter bounds have slack.
  JointPmf ux2({"U2", "X2"}, {2, 2}, {0.45, 0.05, 0.05, 0.45});
  JointPmf ux3({"U3", "X3"}, {2, 2}, {0.45, 0.05, 0.05, 0.45});
  input = JointPmf::product(JointPmf::product(input, ux2), ux3);
  TestChannel tc =
      tc_from_input(ch, input, AlgebraKind::Field, {field_make(2)});
  CHECK_NOTHROW(certify(tc, ch, TcKind::UF));
  CHECK(alpha_uf_3to1_member(tc, {0.01, 0.01, 0.01}).verdict ==
        Verdict::Member);
  CHECK(alpha_uf_3to1_member(tc, {0.9, 0.9, 0.9}).verdict == Verdict::Outside);
}

TEST_CASE("group region on Z4 example with prime-collapse consistency") {
  // On a prime-order group the group quantities collapse to mutual
  // information, so alpha_g's faces coincide with alpha_f's.
  ExampleParams p = base_params();
  Channel3IC ch = make_example(1, p);
  // Soft satellites (the parametric system requires L_j > 0 strictly,
  // which needs I(X_j;Y_j|U_j,Q) > 0) around the natural U_j = X_j point:
  // U_j uniform, X_j = BSC_{0.1}(U_j), X1 ~ Bern(tau).
  JointPmf input = JointPmf::product(JointPmf::single("Q", {1.0}),
                                     JointPmf::single("X1", {1 - p.tau, p.tau}));
  JointPmf ux2({"U2", "X2"}, {2, 2}, {0.45, 0.05, 0.05, 0.45});
  JointPmf ux3({"U3", "X3"}, {2, 2}, {0.45, 0.05, 0.05, 0.45});
  input = JointPmf::product(JointPmf::product(input, ux2), ux3);
  TestChannel tcf =
      tc_from_input(ch, input, AlgebraKind::Field, {field_make(2)});
  TestChannel tcg = tcf;
  tcg.algebra = AlgebraKind::Group;
  tcg.fields.clear();
  tcg.group = group_cyclic(2, 1);
  tcg.weights = {1.0};
  CHECK_NOTHROW(certify(tcg, ch, TcKind::G));
  RatePolytope f = alpha_f_3to1(tcf);
  RatePolytope g = alpha_g_3to1(tcg);
  for (auto mu : std::vector<std::array<double, 3>>{
           {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}})
    CHECK(f.max_weighted(mu) == doctest::Approx(g.max_weighted(mu)).epsilon(1e-9));
  // The parametric group system projects consistently too.
  RatePolytope gp = alpha_g_3to1_params(tcg, 1e-9);
  for (auto mu : std::vector<std::array<double, 3>>{{1, 1, 1}, {1, 0, 0}})
    CHECK(gp.max_weighted(mu) ==
          doctest::Approx(g.max_weighted(mu)).epsilon(5e-7));
}

TEST_CASE("certify rejects structurally broken test channels") {
  ExampleParams p = base_params();
  Channel3IC ch = make_example(1, p);
  TestChannel tc = f2_tc(ch, p.tau);
  // Wrong kind: no V axes present.
  CHECK_THROWS_AS(certify(tc, ch, TcKind::UF), CertificationError);
  // Field missing.
  TestChannel nofield = tc;
  nofield.fields.clear();
  CHECK_THROWS_AS(certify(nofield, ch, TcKind::F), CertificationError);
  // Channel mismatch: different crossover.
  ExampleParams p2 = p;
  p2.delta1 = 0.3;
  Channel3IC other = make_example(1, p2);
  CHECK_THROWS_AS(certify(tc, other, TcKind::F), CertificationError);
  // Dependence between branches given Q.
  JointPmf bad = JointPmf::product(JointPmf::single("Q", {1.0}),
                                   JointPmf::single("U2", {0.5, 0.5}));
  bad = bad.with_derived("U3", {"U2"}, 2,
                         [](std::span<const int> v) { return v[0]; });
  bad = JointPmf::product(bad, JointPmf::single("X1", {0.8, 0.2}));
  bad = bad.with_derived("X2", {"U2"}, 2,
                         [](std::span<const int> v) { return v[0]; });
  bad = bad.with_derived("X3", {"U3"}, 2,
                         [](std::span<const int> v) { return v[0]; });
  TestChannel tcb =
      tc_from_input(ch, bad, AlgebraKind::Field, {field_make(2)});
  CHECK_THROWS_AS(certify(tcb, ch, TcKind::F), CertificationError);
}
