#pragma once
// Systems of linear inequalities over named variables with exact rational
// arithmetic, Fourier-Motzkin elimination, and a two-phase rational
// simplex. Doubles convert to rationals exactly, so elimination and
// feasibility are exact relative to the (floating-point) inputs.

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ic3/errors.hpp"

namespace ic3 {

using Rat = boost::multiprecision::cpp_rational;

/// Exact conversion of a finite double.
Rat rat_of(double x);
double rat_to_double(const Rat& x);

struct LinConstraint {
  std::map<std::string, Rat> coeff;  ///< left-hand side Σ coeff[v]·v
  bool strict = false;               ///< true: lhs < rhs; false: lhs <= rhs
  Rat rhs = 0;
};

struct LinearSystem {
  std::vector<LinConstraint> cons;

  /// Σ coeff·v <= rhs (or < if strict).
  void add_upper(std::map<std::string, Rat> coeff, Rat rhs,
                 bool strict = false);
  /// Σ coeff·v >= rhs (or > if strict).
  void add_lower(std::map<std::string, Rat> coeff, Rat rhs,
                 bool strict = false);
  void add_eq(std::map<std::string, Rat> coeff, Rat rhs);
  /// v >= 0.
  void add_nonneg(const std::string& v);

  /// Sorted union of variable names appearing with nonzero coefficient.
  std::vector<std::string> variables() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Rat value = 0;                     ///< optimal objective (if Optimal)
  std::map<std::string, Rat> point;  ///< an optimal point (if Optimal)
};

/// Maximizes obj over the closure of the system (strict flags ignored).
/// All variables are free; bounds must be explicit constraints.
LPOutcome lp_maximize(const LinearSystem& sys,
                      const std::map<std::string, Rat>& obj);

struct SlackOutcome {
  LPStatus status = LPStatus::Infeasible;
  /// Max margin by which every strict constraint can be satisfied
  /// (capped at 1); > 0 means strictly feasible.
  Rat slack = 0;
  std::map<std::string, Rat> point;
};

/// Maximizes the common slack of the strict constraints; the returned
/// point strictly satisfies the system when slack > 0.
SlackOutcome max_slack(const LinearSystem& sys);

/// Exact test for a point satisfying every constraint with strict
/// inequalities honored (via an auxiliary slack maximization).
bool strictly_feasible(const LinearSystem& sys);

/// Removes constraints implied by the rest (LP-based, exact).
LinearSystem prune_redundant(const LinearSystem& sys);

/// Eliminates one variable by Fourier-Motzkin; combined constraints are
/// strict when either parent is. Normalizes, deduplicates, and (when
/// `prune` is set) LP-prunes the result.
LinearSystem fm_eliminate(const LinearSystem& sys, const std::string& var,
                          bool prune = true);

/// Eliminates every variable not listed in `keep`.
LinearSystem fm_project(LinearSystem sys, const std::vector<std::string>& keep,
                        bool prune = true);

}  // namespace ic3
