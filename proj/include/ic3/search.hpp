#pragma once
// Optimization over test channels and the closed-form checks for the
// worked examples: cost-constrained capacities (Blahut-Arimoto),
// weighted-rate maximization by random restarts with stochastic
// refinement, and the per-example verification routines.

#include <array>
#include <cstdint>
#include <vector>

#include "ic3/channel.hpp"
#include "ic3/regions.hpp"

namespace ic3 {

// ----------------------------------------------------------------------
// Point-to-point capacity with an input-cost constraint.
// ----------------------------------------------------------------------
struct CapacityResult {
  double capacity = 0;          ///< bits per use
  std::vector<double> input;    ///< optimizing input pmf
  double cost = 0;              ///< E[κ(X)] at the optimum
};

/// max I(X;Y) over p_X with E[κ(X)] <= budget; `transition[x][y]`.
CapacityResult capacity_cost(const std::vector<std::vector<double>>& transition,
                             const std::vector<double>& cost, double budget,
                             int iters = 2000);

// ----------------------------------------------------------------------
// Weighted-rate search.
// ----------------------------------------------------------------------
enum class RegionKind { U, F, G };

struct SearchConfig {
  std::uint64_t seed = 1;
  int restarts = 60;
  int refine_iters = 150;
  int q_cap = 2;           ///< max |Q|
  int field_order = 2;     ///< field for RegionKind::F
  std::vector<GroupFactor> group_factors = {{2, 2, 1}};  ///< for G
};

struct SearchResult {
  double value = 0;  ///< best μ·R
  std::array<double, 3> rates{};
  TestChannel tc;  ///< optimizing test channel
};

/// Maximizes μ·R over sampled test channels of the given kind whose
/// per-pmf polytope the rate triple is drawn from. Deterministic in
/// cfg.seed.
SearchResult maximize_weighted_rate(const Channel3IC& ch, RegionKind kind,
                                    const std::array<double, 3>& mu,
                                    const SearchConfig& cfg);

// ----------------------------------------------------------------------
// Example / proposition checks.
// ----------------------------------------------------------------------
struct Example1Check {
  bool pcc_achieves_capacity = false;  ///< τ*δ1 <= min(δ2, δ3)
  bool usb_excluded = false;  ///< h(δ2) + h(δ3) < 1 + h(τ*δ1)
  double lhs_capacity = 0, rhs_capacity = 0;
  double lhs_usb = 0, rhs_usb = 0;
};
Example1Check check_example1(double tau, double delta1, double delta2,
                             double delta3);

struct Prop2Check {
  double beta = 0, theta = 0;
  bool cond6 = false;  ///< h(τ*δ) - h(δ) <= θ
  bool cond7 = false;  ///< USB exclusion inequality
};
Prop2Check check_prop2(double tau1, double tau, double delta1, double delta);

/// C1 = max_{p_X1: E[X1] <= tau1} I(X1;Y1|X2∨X3) with X2, X3 iid
/// Bern(tau) on the example-3 channel.
struct C1Result {
  double C1 = 0;
  double p_star = 0;  ///< optimizing P(X1 = 1)
};
C1Result compute_C1(const Channel3IC& ch, double tau1, double tau);

struct Prop3Check {
  C1Result c1;
  double margin1 = 0;  ///< C1 + 2(h(τ*δ)-h(δ)) - I(X⃗;Y1)
  double margin2 = 0;  ///< receiver-side slack (see implementation)
  bool holds = false;  ///< both margins positive
};
Prop3Check check_prop3(double tau1, double tau, double delta);

struct Prop5Check {
  double beta = 0;    ///< δ1 + τ - 4δ1τ/3
  double c_star = 0;  ///< h(β) + β log 3 - h(δ1) - δ1 log 3
  bool cond25 = false;
  bool beta_le_delta = false;
};
Prop5Check check_prop5(double delta1, double delta, double tau);

struct Example7Check {
  double lhs = 0;  ///< I(X1;Y1|X2∨X3)
  double rhs = 0;  ///< H(X2) - H(X2 +_3 X3 | Y1)
  bool holds = false;  ///< lhs <= rhs
  double rate_bound = 0;  ///< (lhs + min(lhs, rhs)) / 2
};
Example7Check check_example7(double tau, double delta, double beta_z);

/// The two operating points of example 8 (closed forms; op2 swaps the
/// roles of users 1 and 2).
struct Example8Corners {
  std::array<double, 3> op1{}, op2{};
};
Example8Corners example8_corners(double tau, double delta, double beta_z);

// ----------------------------------------------------------------------
// Symmetric-rate alignment comparison (example 5 across algebras).
// ----------------------------------------------------------------------
enum class Algebra5 { F7, F8, Z4 };

struct AlignmentResult {
  double R1 = 0;  ///< user-1 target rate (its capacity-cost)
  double R2 = 0;  ///< best symmetric rate for users 2, 3
  TestChannel tc;
};

/// Best symmetric rate t with (C1, t, t) in the single-aux region using
/// the given algebra on an example-5 channel. Deterministic in seed.
AlignmentResult align_symmetric_rate(const Channel3IC& ch, Algebra5 algebra,
                                     std::uint64_t seed, int restarts = 40,
                                     int refine_iters = 120);

}  // namespace ic3
