#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ic3/linsys.hpp"

using namespace ic3;

TEST_CASE("rat_of is exact") {
  CHECK(rat_of(0.5) == Rat(1, 2));
  CHECK(rat_of(0.125) == Rat(1, 8));
  CHECK(rat_of(-3.0) == Rat(-3));
  CHECK(rat_of(0.0) == 0);
  // 0.1 is not 1/10 in binary; conversion must reproduce the double.
  CHECK(rat_to_double(rat_of(0.1)) == 0.1);
  CHECK(rat_to_double(rat_of(1e-300)) == 1e-300);
  CHECK_THROWS_AS(rat_of(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("simplex solves hand-checked LPs") {
  // max x + y s.t. x <= 2, y <= 3, x + y <= 4, x,y >= 0 -> 4.
  LinearSystem s;
  s.add_upper({{"x", 1}}, 2);
  s.add_upper({{"y", 1}}, 3);
  s.add_upper({{"x", 1}, {"y", 1}}, 4);
  s.add_nonneg("x");
  s.add_nonneg("y");
  LPOutcome o = lp_maximize(s, {{"x", 1}, {"y", 1}});
  REQUIRE(o.status == LPStatus::Optimal);
  CHECK(o.value == 4);
  CHECK(o.point["x"] + o.point["y"] == 4);

  // Unbounded.
  LinearSystem u;
  u.add_nonneg("x");
  CHECK(lp_maximize(u, {{"x", 1}}).status == LPStatus::Unbounded);

  // Infeasible.
  LinearSystem inf;
  inf.add_upper({{"x", 1}}, -1);
  inf.add_nonneg("x");
  CHECK(lp_maximize(inf, {{"x", 1}}).status == LPStatus::Infeasible);

  // Free variables: max -x subject to x >= -5 -> 5 at x = -5.
  LinearSystem fr;
  fr.add_lower({{"x", 1}}, -5);
  LPOutcome of = lp_maximize(fr, {{"x", -1}});
  REQUIRE(of.status == LPStatus::Optimal);
  CHECK(of.value == 5);
}

TEST_CASE("equality constraints bind") {
  LinearSystem s;
  s.add_eq({{"x", 1}, {"y", 1}}, 3);
  s.add_upper({{"x", 1}}, 2);
  s.add_nonneg("x");
  s.add_nonneg("y");
  LPOutcome o = lp_maximize(s, {{"x", 1}});
  REQUIRE(o.status == LPStatus::Optimal);
  CHECK(o.value == 2);
  CHECK(o.point["y"] == 1);
}

TEST_CASE("strict feasibility via max_slack") {
  // x < 1, x > 0 is strictly feasible.
  LinearSystem s;
  s.add_upper({{"x", 1}}, 1, true);
  s.add_lower({{"x", 1}}, 0, true);
  CHECK(strictly_feasible(s));

  // x < 1, x > 1 is not.
  LinearSystem t;
  t.add_upper({{"x", 1}}, 1, true);
  t.add_lower({{"x", 1}}, 1, true);
  CHECK(!strictly_feasible(t));

  // x <= 1, x >= 1 is feasible but x < 1, x >= 1 is not strictly.
  LinearSystem u;
  u.add_upper({{"x", 1}}, 1, true);
  u.add_lower({{"x", 1}}, 1, false);
  CHECK(!strictly_feasible(u));
  SlackOutcome so = max_slack(u);
  CHECK(so.status == LPStatus::Optimal);
  CHECK(so.slack == 0);
}

TEST_CASE("fourier-motzkin agrees with an LP oracle on random systems") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> rhs(-4, 8);
  std::uniform_int_distribution<int> nrows(3, 7);
  const std::vector<std::string> vars = {"a", "b", "c"};
  int feasible_seen = 0, infeasible_seen = 0;
  for (int rep = 0; rep < 120; ++rep) {
    LinearSystem sys;
    int m = nrows(rng);
    for (int i = 0; i < m; ++i) {
      std::map<std::string, Rat> row;
      for (const auto& v : vars) {
        int c = coeff(rng);
        if (c != 0) row[v] = c;
      }
      if (row.empty()) continue;
      sys.add_upper(std::move(row), rhs(rng));
    }
    for (const auto& v : vars) sys.add_nonneg(v);

    // Oracle: max a over the original; projection: max a over FM result.
    LPOutcome direct = lp_maximize(sys, {{"a", 1}});
    LinearSystem proj = fm_project(sys, {"a"});
    LPOutcome via = lp_maximize(proj, {{"a", 1}});
    CHECK(direct.status == via.status);
    if (direct.status == LPStatus::Optimal) {
      ++feasible_seen;
      CHECK(direct.value == via.value);
    } else if (direct.status == LPStatus::Infeasible) {
      ++infeasible_seen;
    }
  }
  // The random family must exercise both outcomes.
  CHECK(feasible_seen > 10);
  CHECK(infeasible_seen > 2);
}

TEST_CASE("fm_eliminate preserves strictness") {
  // a < 1 - b, a > b  =>  b < 1 - b  =>  2b < 1 (strict).
  LinearSystem s;
  s.add_upper({{"a", 1}, {"b", 1}}, 1, true);
  s.add_lower({{"a", 1}, {"b", -1}}, 0, true);
  LinearSystem e = fm_eliminate(s, "a");
  REQUIRE(e.cons.size() == 1);
  CHECK(e.cons[0].strict);
}

TEST_CASE("prune_redundant drops implied rows") {
  LinearSystem s;
  s.add_upper({{"x", 1}}, 1);
  s.add_upper({{"x", 1}}, 2);  // implied
  s.add_nonneg("x");
  LinearSystem p = prune_redundant(s);
  // The x <= 2 row must be gone; feasible set unchanged.
  CHECK(p.cons.size() < s.cons.size());
  LPOutcome o = lp_maximize(p, {{"x", 1}});
  REQUIRE(o.status == LPStatus::Optimal);
  CHECK(o.value == 1);
}

TEST_CASE("projection keeps multiple variables") {
  // Box in 3d projected to 2d stays a box.
  LinearSystem s;
  s.add_upper({{"x", 1}}, 1);
  s.add_upper({{"y", 1}}, 2);
  s.add_upper({{"z", 1}}, 3);
  s.add_upper({{"x", 1}, {"y", 1}, {"z", 1}}, 4);
  for (const char* v : {"x", "y", "z"}) s.add_nonneg(v);
  LinearSystem p = fm_project(s, {"x", "y"});
  LPOutcome o = lp_maximize(p, {{"x", 1}, {"y", 1}});
  REQUIRE(o.status == LPStatus::Optimal);
  CHECK(o.value == 3);  // x=1, y=2 feasible with z=0
}
