#include "ic3/regions.hpp"

#include <algorithm>
#include <cmath>

#include "ic3/group_info.hpp"

namespace ic3 {
namespace {

using V = std::vector<std::string>;

double log2d(double x) { return std::log2(x); }

RatePolytope with_nonneg(RatePolytope p) {
  p.add({-1, 0, 0}, 0);
  p.add({0, -1, 0}, 0);
  p.add({0, 0, -1}, 0);
  return p;
}

std::string us(int a, int b) {
  return "U" + std::to_string(a) + std::to_string(b);
}

}  // namespace

JointPmf with_sum_axis(const TestChannel& tc, const std::string& name) {
  if (tc.algebra == AlgebraKind::Field) {
    const FieldSpec& f = tc.fields.at(0);
    return tc.pmf.with_derived(name, {"U2", "U3"}, f.order,
                               [&f](std::span<const int> v) {
                                 return f.add[v[0]][v[1]];
                               });
  }
  if (tc.algebra == AlgebraKind::Group) {
    const AbelianGroupSpec& g = *tc.group;
    return tc.pmf.with_derived(name, {"U2", "U3"},
                               static_cast<int>(g.order),
                               [&g](std::span<const int> v) {
                                 return static_cast<int>(g.add(v[0], v[1]));
                               });
  }
  throw DomainError("with_sum_axis: test channel carries no algebra");
}

RatePolytope beta_outer(const std::array<double, 3>& tau,
                        const std::array<double, 3>& delta) {
  RatePolytope p;
  for (int j = 0; j < 3; ++j) {
    std::array<double, 3> c{};
    c[j] = 1;
    p.add(c, binary_entropy(binary_convolve(delta[j], tau[j])) -
                 binary_entropy(delta[j]));
  }
  return with_nonneg(p);
}

RatePolytope alpha_u_3to1(const TestChannel& tc) {
  const JointPmf& p = tc.pmf;
  RatePolytope out;
  out.add({1, 0, 0}, p.mutual_information({"X1"}, {"Y1"}, {"Q", "U2", "U3"}),
          true);
  out.add({0, 1, 0}, p.mutual_information({"U2", "X2"}, {"Y2"}, {"Q"}), true);
  out.add({0, 0, 1}, p.mutual_information({"U3", "X3"}, {"Y3"}, {"Q"}), true);
  out.add({1, 1, 0},
          p.mutual_information({"U2", "X1"}, {"Y1"}, {"Q", "U3"}) +
              p.mutual_information({"X2"}, {"Y2"}, {"Q", "U2"}),
          true);
  out.add({1, 0, 1},
          p.mutual_information({"U3", "X1"}, {"Y1"}, {"Q", "U2"}) +
              p.mutual_information({"X3"}, {"Y3"}, {"Q", "U3"}),
          true);
  out.add({1, 1, 1},
          p.mutual_information({"U2", "U3", "X1"}, {"Y1"}, {"Q"}) +
              p.mutual_information({"X2"}, {"Y2"}, {"Q", "U2"}) +
              p.mutual_information({"X3"}, {"Y3"}, {"Q", "U3"}),
          true);
  return with_nonneg(out);
}

RatePolytope alpha_f_3to1(const TestChannel& tc) {
  JointPmf p = with_sum_axis(tc);
  const double i1 = p.mutual_information({"X1"}, {"Z", "Y1"}, {"Q"});
  const double hz_y1 = p.conditional_entropy({"Z"}, {"Q", "Y1"});
  RatePolytope out;
  double defect2 = p.conditional_entropy({"U2"}, {"Q"}) - hz_y1;
  double defect3 = p.conditional_entropy({"U3"}, {"Q"}) - hz_y1;
  out.add({1, 0, 0}, std::min({0.0, defect2, defect3}) + i1, true);
  for (int j = 2; j <= 3; ++j) {
    std::string u = "U" + std::to_string(j), x = "X" + std::to_string(j),
                y = "Y" + std::to_string(j);
    std::array<double, 3> rj{};
    rj[j - 1] = 1;
    out.add(rj, p.mutual_information({u, x}, {y}, {"Q"}), true);
    std::array<double, 3> r1j{1, 0, 0};
    r1j[j - 1] = 1;
    double defect = j == 2 ? defect2 : defect3;
    out.add(r1j, p.mutual_information({x}, {y}, {"Q", u}) + i1 + defect, true);
  }
  return with_nonneg(out);
}

RatePolytope alpha_g_3to1(const TestChannel& tc) {
  JointPmf p = with_sum_axis(tc);
  const AbelianGroupSpec& g = *tc.group;
  const WeightVector& w = tc.weights;
  const double i1 = p.mutual_information({"X1"}, {"Y1"}, {"Q", "Z"});
  const double hz = p.conditional_entropy({"Z"}, {"Q"});
  const double cwz = group_channel_info(p, "Z", {"Y1"}, g, w, {"Q"});
  double hu[4], cw[4], sw[4], ij[4];
  for (int j = 2; j <= 3; ++j) {
    std::string u = "U" + std::to_string(j), x = "X" + std::to_string(j),
                y = "Y" + std::to_string(j);
    hu[j] = p.conditional_entropy({u}, {"Q"});
    cw[j] = group_channel_info(p, u, {y}, g, w, {"Q"});
    sw[j] = group_source_info(p, u, {}, g, w, {"Q"});
    ij[j] = p.mutual_information({x}, {y}, {"Q", u});
  }
  RatePolytope out;
  out.add({1, 0, 0},
          i1 - hz + std::min({hz, hu[2] + cwz - sw[2], hu[3] + cwz - sw[3]}),
          true);
  for (int j = 2; j <= 3; ++j) {
    std::array<double, 3> rj{};
    rj[j - 1] = 1;
    out.add(rj, ij[j] + cw[j], true);
    std::array<double, 3> r1j{1, 0, 0};
    r1j[j - 1] = 1;
    out.add(r1j,
            i1 + cwz + hu[j] - hz + ij[j] + std::min(0.0, cw[j] - sw[j]),
            true);
  }
  return with_nonneg(out);
}

LinearSystem alpha_f_3to1_param_system(const TestChannel& tc,
                                       double delta_slack) {
  JointPmf p = with_sum_axis(tc);
  const double lt = log2d(tc.fields.at(0).order);
  const Rat d = rat_of(delta_slack);
  LinearSystem sys;
  for (const char* v : {"R1", "R2", "R3", "S2", "T2", "K2", "L2", "S3", "T3",
                        "K3", "L3"})
    sys.add_nonneg(v);
  for (int j = 2; j <= 3; ++j) {
    std::string J = std::to_string(j);
    std::string u = "U" + J, x = "X" + J, y = "Y" + J;
    std::string S = "S" + J, T = "T" + J, K = "K" + J, L = "L" + J;
    sys.add_eq({{"R" + J, 1}, {T, -1}, {L, -1}}, 0);
    sys.add_lower({{K, 1}}, d, true);
    sys.add_lower({{S, 1}, {T, -1}},
                  rat_of(lt - p.conditional_entropy({u}, {"Q"})) + d, true);
    sys.add_lower({{S, 1}, {T, -1}, {K, 1}},
                  rat_of(lt + p.conditional_entropy({x}, {"Q"}) -
                         p.conditional_entropy({u, x}, {"Q"})) + d,
                  true);
    sys.add_lower({{T, 1}}, d, true);
    sys.add_lower({{L, 1}}, d, true);
    sys.add_upper({{K, 1}, {L, 1}},
                  rat_of(p.mutual_information({x}, {y, u}, {"Q"})) - d, true);
    sys.add_upper({{S, 1}},
                  rat_of(lt - p.conditional_entropy({u}, {x, y, "Q"})) - d,
                  true);
    sys.add_upper({{S, 1}, {K, 1}, {L, 1}},
                  rat_of(lt + p.conditional_entropy({x}, {"Q"}) -
                         p.conditional_entropy({u, x}, {y, "Q"})) - d,
                  true);
    sys.add_upper({{"R1", 1}, {S, 1}},
                  rat_of(lt + p.conditional_entropy({"X1"}, {"Q"}) -
                         p.conditional_entropy({"X1", "Z"}, {"Y1", "Q"})) - d,
                  true);
  }
  sys.add_upper({{"R1", 1}},
                rat_of(p.mutual_information({"X1"}, {"Y1", "Z"}, {"Q"})) - d,
                true);
  return sys;
}

RatePolytope alpha_f_3to1_params(const TestChannel& tc, double delta_slack,
                                 bool prune) {
  LinearSystem sys = alpha_f_3to1_param_system(tc, delta_slack);
  return RatePolytope::from_system(
      fm_project(std::move(sys), {"R1", "R2", "R3"}, prune));
}

LinearSystem alpha_g_3to1_param_system(const TestChannel& tc,
                                       double delta_slack) {
  JointPmf p = with_sum_axis(tc);
  const AbelianGroupSpec& g = *tc.group;
  const WeightVector& w = tc.weights;
  const double lg = g.log_order();
  const Rat d = rat_of(delta_slack);
  LinearSystem sys;
  for (const char* v :
       {"R1", "R2", "R3", "S2", "T2", "L2", "S3", "T3", "L3", "Rg"})
    sys.add_nonneg(v);
  const double i1 = p.mutual_information({"X1"}, {"Y1"}, {"Q", "Z"});
  const double cwz = group_channel_info(p, "Z", {"Y1"}, g, w, {"Q"});
  const double hz = p.conditional_entropy({"Z"}, {"Q"});
  for (int j = 2; j <= 3; ++j) {
    std::string J = std::to_string(j);
    std::string u = "U" + J, x = "X" + J, y = "Y" + J;
    std::string S = "S" + J, T = "T" + J, L = "L" + J;
    const double hu = p.conditional_entropy({u}, {"Q"});
    const double ij = p.mutual_information({x}, {y}, {"Q", u});
    const double cwj = group_channel_info(p, u, {y}, g, w, {"Q"});
    const double swj = group_source_info(p, u, {}, g, w, {"Q"});
    sys.add_eq({{"R" + J, 1}, {T, -1}, {L, -1}}, 0);
    sys.add_lower({{S, 1}, {T, -1}}, rat_of(lg - hu) + d, true);
    sys.add_lower({{"Rg", 1}, {S, -1}}, d, true);
    sys.add_lower({{S, 1}}, rat_of(swj + lg - hu) + d, true);
    sys.add_lower({{T, 1}}, d, true);
    sys.add_lower({{L, 1}}, d, true);
    sys.add_upper({{L, 1}}, rat_of(ij) - d, true);
    sys.add_upper({{S, 1}, {L, 1}}, rat_of(lg + ij + cwj - hu) - d, true);
  }
  sys.add_upper({{"R1", 1}}, rat_of(i1) - d, true);
  sys.add_upper({{"R1", 1}, {"Rg", 1}}, rat_of(lg + i1 + cwz - hz) - d, true);
  return sys;
}

RatePolytope alpha_g_3to1_params(const TestChannel& tc, double delta_slack,
                                 bool prune) {
  LinearSystem sys = alpha_g_3to1_param_system(tc, delta_slack);
  return RatePolytope::from_system(
      fm_project(std::move(sys), {"R1", "R2", "R3"}, prune));
}

MembershipResult system_member(const LinearSystem& sys,
                               const std::array<double, 3>& rate,
                               double tol) {
  LinearSystem pinned = sys;
  for (int j = 0; j < 3; ++j)
    pinned.add_eq({{"R" + std::to_string(j + 1), 1}}, rat_of(rate[j]));
  MembershipResult res;
  SlackOutcome so = max_slack(pinned);
  if (so.status == LPStatus::Optimal && so.slack > 0) {
    res.verdict = Verdict::Member;
    for (const auto& [k, v] : so.point) res.witness[k] = rat_to_double(v);
    return res;
  }
  // Boundary: feasible once every bound is relaxed by tol.
  LinearSystem relaxed;
  for (auto c : pinned.cons) {
    c.strict = false;
    c.rhs += rat_of(tol);
    relaxed.cons.push_back(std::move(c));
  }
  LPOutcome out = lp_maximize(relaxed, {});
  if (out.status == LPStatus::Optimal || out.status == LPStatus::Unbounded) {
    res.verdict = Verdict::Boundary;
    for (const auto& [k, v] : out.point) res.witness[k] = rat_to_double(v);
  } else {
    res.verdict = Verdict::Outside;
  }
  return res;
}

LinearSystem alpha_f_general_system(const TestChannel& tc) {
  // Receiver j decodes its own (U_{ji}, U_{jk}, X_j) and the incoming
  // sum W_j = U_{ij} ⊕ U_{kj} over the field θ_j.
  JointPmf p = tc.pmf;
  for (int j = 1; j <= 3; ++j) {
    int i = j == 1 ? 2 : 1;
    int k = j == 3 ? 2 : 3;
    const FieldSpec& f = tc.fields.at(j - 1);
    p = p.with_derived("W" + std::to_string(j), {us(i, j), us(k, j)}, f.order,
                       [&f](std::span<const int> v) {
                         return f.add[v[0]][v[1]];
                       });
  }
  LinearSystem sys;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      if (a == b) continue;
      sys.add_nonneg("S" + std::to_string(a) + std::to_string(b));
      sys.add_nonneg("T" + std::to_string(a) + std::to_string(b));
    }
  for (int j = 1; j <= 3; ++j) {
    sys.add_nonneg("K" + std::to_string(j));
    sys.add_nonneg("L" + std::to_string(j));
    sys.add_nonneg("R" + std::to_string(j));
  }
  for (int j = 1; j <= 3; ++j) {
    int i = j == 1 ? 2 : 1;
    int k = j == 3 ? 2 : 3;
    std::string J = std::to_string(j);
    std::string x = "X" + J, y = "Y" + J, wj = "W" + J;
    std::string K = "K" + J, L = "L" + J;
    // Own symbols (j -> i) and (j -> k), with their field sizes.
    struct Own { std::string axis, S, T; double logsize; };
    std::array<Own, 2> own = {
        Own{us(j, i), "S" + std::to_string(j) + std::to_string(i),
            "T" + std::to_string(j) + std::to_string(i),
            log2d(tc.fields.at(i - 1).order)},
        Own{us(j, k), "S" + std::to_string(j) + std::to_string(k),
            "T" + std::to_string(j) + std::to_string(k),
            log2d(tc.fields.at(k - 1).order)}};
    sys.add_eq({{"R" + J, 1}, {own[0].T, -1}, {own[1].T, -1}, {L, -1}}, 0);
    const double ltj = log2d(tc.fields.at(j - 1).order);
    const std::string Sij = "S" + std::to_string(i) + std::to_string(j);
    const std::string Skj = "S" + std::to_string(k) + std::to_string(j);
    const double hxq = p.conditional_entropy({x}, {"Q"});
    for (int mask = 0; mask < 4; ++mask) {
      V ua, uac;
      std::map<std::string, Rat> sa, sta;  // Σ S_a and Σ (S_a - T_a)
      double lsum = 0;
      for (int b = 0; b < 2; ++b) {
        if (mask & (1 << b)) {
          ua.push_back(own[b].axis);
          sa[own[b].S] += 1;
          sta[own[b].S] += 1;
          sta[own[b].T] -= 1;
          lsum += own[b].logsize;
        } else {
          uac.push_back(own[b].axis);
        }
      }
      // (8): covering bound including X_j.
      {
        auto c = sta;
        c[K] += 1;
        V uax = ua;
        uax.push_back(x);
        sys.add_lower(c,
                      rat_of(lsum + hxq - p.conditional_entropy(uax, {"Q"})),
                      true);
      }
      // (9): covering bound on the aux alone (vacuous for empty A).
      if (mask != 0)
        sys.add_lower(sta, rat_of(lsum - p.conditional_entropy(ua, {"Q"})),
                      true);
      // (10): decoding bounds. Conditioning always includes Q and the
      // correctly-decoded own symbols A^c.
      V base = {"Q"};
      base.insert(base.end(), uac.begin(), uac.end());
      if (mask != 0) {
        V cond = base;
        cond.push_back(wj);
        cond.push_back(x);
        cond.push_back(y);
        sys.add_upper(sa, rat_of(lsum - p.conditional_entropy(ua, cond)),
                      true);
      }
      for (const std::string& Ssum : {Sij, Skj}) {
        auto c = sa;
        c[Ssum] += 1;
        V dec = ua;
        dec.push_back(wj);
        V cond = base;
        cond.push_back(x);
        cond.push_back(y);
        sys.add_upper(
            c, rat_of(lsum + ltj - p.conditional_entropy(dec, cond)), true);
      }
      {
        auto c = sa;
        c[K] += 1;
        c[L] += 1;
        V dec = ua;
        dec.push_back(x);
        V cond = base;
        cond.push_back(wj);
        cond.push_back(y);
        sys.add_upper(c,
                      rat_of(lsum + hxq - p.conditional_entropy(dec, cond)),
                      true);
      }
      for (const std::string& Ssum : {Sij, Skj}) {
        auto c = sa;
        c[K] += 1;
        c[L] += 1;
        c[Ssum] += 1;
        V dec = ua;
        dec.push_back(x);
        dec.push_back(wj);
        V cond = base;
        cond.push_back(y);
        sys.add_upper(
            c,
            rat_of(lsum + ltj + hxq - p.conditional_entropy(dec, cond)),
            true);
      }
    }
  }
  return sys;
}

MembershipResult alpha_f_general_member(const TestChannel& tc,
                                        const std::array<double, 3>& rate,
                                        double tol) {
  return system_member(alpha_f_general_system(tc), rate, tol);
}

LinearSystem alpha_uf_3to1_system(const TestChannel& tc) {
  JointPmf p = with_sum_axis(tc);
  const double lt = log2d(tc.fields.at(0).order);
  LinearSystem sys;
  for (const char* v : {"R1", "R2", "R3", "S21", "T21", "S22", "T22", "L2",
                        "S31", "T31", "S32", "T32", "L3"})
    sys.add_nonneg(v);
  const std::string other[4] = {"", "", "V3", "V2"};
  for (int j = 2; j <= 3; ++j) {
    std::string J = std::to_string(j);
    std::string u = "U" + J, v = "V" + J, x = "X" + J, y = "Y" + J;
    std::string S1 = "S" + J + "1", T1 = "T" + J + "1";
    std::string S2 = "S" + J + "2", T2 = "T" + J + "2";
    std::string L = "L" + J;
    const double hu_vq = p.conditional_entropy({u}, {v, "Q"});
    sys.add_eq({{"R" + J, 1}, {T1, -1}, {T2, -1}, {L, -1}}, 0);
    // (15)
    sys.add_lower({{S2, 1}, {T2, -1}}, rat_of(lt - hu_vq), true);
    // (16)
    sys.add_upper({{L, 1}, {S2, 1}},
                  rat_of(lt - hu_vq +
                         p.mutual_information({u, x}, {y}, {v, "Q"})),
                  true);
    sys.add_upper({{T1, 1}, {L, 1}},
                  rat_of(p.mutual_information({u}, {v}, {"Q"}) +
                         p.mutual_information({v, x}, {y}, {u, "Q"})),
                  true);
    // (17)
    sys.add_upper({{L, 1}},
                  rat_of(p.mutual_information({x}, {y}, {u, v, "Q"})), true);
    sys.add_upper({{T1, 1}, {S2, 1}, {L, 1}},
                  rat_of(lt - hu_vq +
                         p.mutual_information({u, v, x}, {y}, {"Q"})),
                  true);
  }
  // (18)
  sys.add_upper({{"R1", 1}},
                rat_of(p.mutual_information({"X1"}, {"Y1", "V2", "V3", "Z"},
                                            {"Q"})),
                true);
  const double hz_q = p.conditional_entropy({"Z"}, {"Q"});
  const double i_xz = p.mutual_information({"X1", "Z"}, {"V2", "V3", "Y1"},
                                           {"Q"});
  for (int j = 2; j <= 3; ++j)
    sys.add_upper({{"R1", 1}, {"S" + std::to_string(j) + "2", 1}},
                  rat_of(lt - hz_q + i_xz), true);
  // (19)
  for (int j = 2; j <= 3; ++j) {
    std::string v = "V" + std::to_string(j);
    sys.add_upper({{"R1", 1}, {"T" + std::to_string(j) + "1", 1}},
                  rat_of(p.mutual_information({"X1", v},
                                              {other[j], "Z", "Y1"}, {"Q"})),
                  true);
  }
  sys.add_upper({{"R1", 1}, {"T21", 1}, {"T31", 1}},
                rat_of(p.mutual_information({"V2", "V3", "X1"}, {"Z", "Y1"},
                                            {"Q"})),
                true);
  // (20): RHS depends on j (the V conditioned on); both k = 2, 3 appear.
  for (int j = 2; j <= 3; ++j) {
    std::string v = "V" + std::to_string(j);
    double rhs = lt - p.conditional_entropy({"Z"}, {v, "Q"}) +
                 p.mutual_information({"X1", v, "Z"}, {other[j], "Y1"}, {"Q"});
    for (int k = 2; k <= 3; ++k)
      sys.add_upper({{"R1", 1},
                     {"T" + std::to_string(j) + "1", 1},
                     {"S" + std::to_string(k) + "2", 1}},
                    rat_of(rhs), true);
  }
  // (21)
  {
    double rhs = lt -
                 p.conditional_entropy({"Z"}, {"X1", "V2", "V3", "Q"}) +
                 p.mutual_information({"X1", "V2", "V3", "Z"}, {"Y1"}, {"Q"});
    for (int j = 2; j <= 3; ++j)
      sys.add_upper({{"R1", 1}, {"T21", 1}, {"T31", 1},
                     {"S" + std::to_string(j) + "2", 1}},
                    rat_of(rhs), true);
  }
  return sys;
}

MembershipResult alpha_uf_3to1_member(const TestChannel& tc,
                                      const std::array<double, 3>& rate,
                                      double tol) {
  return system_member(alpha_uf_3to1_system(tc), rate, tol);
}

}  // namespace ic3
