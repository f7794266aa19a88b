#pragma once
// Rate polytopes over (R1, R2, R3): half-space lists with
// member/boundary/outside classification and weighted-rate maximization.

#include <array>
#include <string>
#include <vector>

#include "ic3/linsys.hpp"

namespace ic3 {

struct HalfSpace {
  std::array<double, 3> coeff{};  ///< coeff · (R1,R2,R3)
  bool strict = false;
  double rhs = 0;
};

enum class Verdict { Member, Boundary, Outside };

std::string verdict_name(Verdict v);

struct RatePolytope {
  std::vector<HalfSpace> hs;

  /// Adds coeff·R <= rhs (or < rhs).
  void add(std::array<double, 3> coeff, double rhs, bool strict = false);

  /// Closure membership within tolerance.
  bool contains(const std::array<double, 3>& r, double tol = 1e-9) const;

  /// Member: strictly inside every face by more than tol (after
  /// normalizing each face by its coefficient norm). Boundary: in the
  /// closure but within tol of some face. Outside: violates a face by
  /// more than tol.
  Verdict classify(const std::array<double, 3>& r, double tol = 1e-9) const;

  /// sup μ·R over the closure intersected with R >= 0 (exact LP).
  /// Throws InfeasibilityError when empty.
  double max_weighted(const std::array<double, 3>& mu) const;

  /// Same, also returning an optimal rate triple.
  std::pair<double, std::array<double, 3>> max_weighted_point(
      const std::array<double, 3>& mu) const;

  /// Conversion to/from a linear system in variables R1, R2, R3.
  LinearSystem to_system() const;
  static RatePolytope from_system(const LinearSystem& sys);
};

}  // namespace ic3
