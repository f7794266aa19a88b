#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ic3/search.hpp"

using namespace ic3;

TEST_CASE("capacity_cost recovers the BSC capacity") {
  double d = 0.11;
  std::vector<std::vector<double>> bsc = {{1 - d, d}, {d, 1 - d}};
  CapacityResult r = capacity_cost(bsc, {0, 0}, 0.0);
  CHECK(r.capacity == doctest::Approx(1 - binary_entropy(d)).epsilon(1e-8));
  CHECK(r.input[0] == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("capacity_cost with a Hamming budget matches the closed form") {
  // max I(X;Y) over P(X=1) <= tau on BSC(d) is h(tau*d) - h(d) for
  // tau < 1/2 (optimum at the budget).
  double d = 0.08, tau = 0.2;
  std::vector<std::vector<double>> bsc = {{1 - d, d}, {d, 1 - d}};
  CapacityResult r = capacity_cost(bsc, {0, 1}, tau);
  double expect = binary_entropy(binary_convolve(tau, d)) - binary_entropy(d);
  CHECK(r.capacity == doctest::Approx(expect).epsilon(1e-7));
  CHECK(r.cost <= tau + 1e-9);
  CHECK(r.cost == doctest::Approx(tau).epsilon(1e-5));
}

TEST_CASE("capacity_cost agrees with a brute-force grid") {
  // Asymmetric 2x3 channel, cost {0, 1}, budget 0.3.
  std::vector<std::vector<double>> t = {{0.7, 0.2, 0.1}, {0.1, 0.3, 0.6}};
  std::vector<double> cost = {0, 1};
  double budget = 0.3;
  CapacityResult r = capacity_cost(t, cost, budget);
  double best = 0;
  for (int i = 0; i <= 3000; ++i) {
    double p1 = std::min(budget, 1.0) * i / 3000.0;
    std::vector<double> py(3, 0.0);
    for (int y = 0; y < 3; ++y) py[y] = (1 - p1) * t[0][y] + p1 * t[1][y];
    double mi = 0;
    for (int y = 0; y < 3; ++y) {
      if (t[0][y] > 0) mi += (1 - p1) * t[0][y] * std::log2(t[0][y] / py[y]);
      if (t[1][y] > 0) mi += p1 * t[1][y] * std::log2(t[1][y] / py[y]);
    }
    best = std::max(best, mi);
  }
  CHECK(r.capacity == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("example-1 closed-form check") {
  // [DERIVED] tau*delta1 <= min(d2, d3) and the USB-exclusion inequality
  // at a window point: tau=0.2, d1=0.1 -> tau*d1 = 0.26.
  Example1Check c = check_example1(0.2, 0.1, 0.3, 0.3);
  CHECK(c.lhs_capacity == doctest::Approx(binary_convolve(0.2, 0.1)));
  CHECK(c.pcc_achieves_capacity == (c.lhs_capacity <= 0.3));
  CHECK(c.lhs_usb ==
        doctest::Approx(2 * binary_entropy(0.3)).epsilon(1e-12));
  CHECK(c.rhs_usb ==
        doctest::Approx(1 + binary_entropy(binary_convolve(0.2, 0.1))));
  CHECK(c.usb_excluded == (c.lhs_usb < c.rhs_usb));
}

TEST_CASE("proposition-2 check computes beta and theta consistently") {
  double tau1 = 0.01, tau = 0.15, d1 = 0.067, d = 0.067;
  Prop2Check c = check_prop2(tau1, tau, d1, d);
  double q = 2 * tau - tau * tau;
  CHECK(c.beta == doctest::Approx(binary_convolve(d1, q)).epsilon(1e-12));
  // theta decomposition (entropy of the OR pair minus conditionals).
  double theta = binary_entropy(tau) - binary_entropy((1 - tau) * (1 - tau)) -
                 q * binary_entropy(tau * tau / q) -
                 binary_entropy(binary_convolve(tau1, d1)) +
                 binary_entropy(binary_convolve(tau1, c.beta));
  CHECK(c.theta == doctest::Approx(theta).epsilon(1e-10));
  CHECK(c.cond6 == (binary_entropy(binary_convolve(tau, d)) -
                        binary_entropy(d) <=
                    c.theta));
}

TEST_CASE("proposition-5 beta and boundary rate") {
  double d = 0.125;
  double t = 0.75 - std::sqrt(30.0) / 8;
  Prop5Check c = check_prop5(t, d, t);
  // [DERIVED] at delta1 = tau = 3/4 - sqrt(30)/8, beta = 1/8 exactly.
  CHECK(c.beta == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(c.beta_le_delta);
  double cs = binary_entropy(c.beta) + c.beta * std::log2(3.0) -
              binary_entropy(t) - t * std::log2(3.0);
  CHECK(c.c_star == doctest::Approx(cs).epsilon(1e-10));
}

TEST_CASE("example-7 check reports the interference-decoding comparison") {
  Example7Check c = check_example7(0.1284, 0.1, 0.2210);
  CHECK(c.lhs > 0);
  CHECK(c.rhs > 0);
  CHECK(c.holds == (c.lhs <= c.rhs));
  CHECK(c.rate_bound ==
        doctest::Approx(0.5 * (c.lhs + std::min(c.lhs, c.rhs))));
}

TEST_CASE("example-8 corners are positive and symmetric in construction") {
  Example8Corners c = example8_corners(0.2, 0.05, 0.15);
  for (double v : c.op1) CHECK(v > 0);
  for (double v : c.op2) CHECK(v > 0);
  // op1's receiver-3 rate is the clean BSC bound.
  CHECK(c.op1[2] == doctest::Approx(
                        binary_entropy(binary_convolve(0.2, 0.05)) -
                        binary_entropy(0.05)));
}

TEST_CASE("weighted-rate search is deterministic and feasible") {
  ExampleParams p;
  p.tau = 0.2;
  p.delta = 0.15;
  p.delta1 = 0.1;
  p.delta2 = 0.15;
  p.delta3 = 0.15;
  Channel3IC ch = make_example(1, p);
  SearchConfig cfg;
  cfg.seed = 7;
  cfg.restarts = 6;
  cfg.refine_iters = 10;
  SearchResult a = maximize_weighted_rate(ch, RegionKind::F, {1, 1, 1}, cfg);
  SearchResult b = maximize_weighted_rate(ch, RegionKind::F, {1, 1, 1}, cfg);
  CHECK(a.value == b.value);
  CHECK(a.value > 0);
  CHECK(a.rates[0] + a.rates[1] + a.rates[2] ==
        doctest::Approx(a.value).epsilon(1e-9));
  // The reported test channel respects the cost budget.
  CertifyReport rep = certify(a.tc, ch, TcKind::F);
  CHECK(rep.costs[0] <= p.tau + 1e-7);
  // The unstructured search also returns something positive.
  SearchResult u = maximize_weighted_rate(ch, RegionKind::U, {1, 1, 1}, cfg);
  CHECK(u.value > 0);
}

TEST_CASE("compute_C1 maximizes over the budget interval") {
  ExampleParams p;
  p.tau1 = 0.01;
  p.tau = 0.1525;
  p.delta = 0.067;
  Channel3IC ch = make_example(3, p);
  C1Result r = compute_C1(ch, p.tau1, p.tau);
  CHECK(r.p_star >= 0);
  CHECK(r.p_star <= p.tau1 + 1e-12);
  CHECK(r.C1 > 0);
}
