#pragma once
// Finite fields F_{p^m} of order <= 16, with explicit operation tables.
//
// Elements are integers in [0, p^m) encoding polynomial coefficients over
// F_p in base p: the element sum_i d_i x^i is stored as sum_i d_i p^i.
// Extension fields use fixed reduction polynomials so codebooks and
// region computations are reproducible across runs and machines.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ic3/errors.hpp"

namespace ic3 {

struct FieldSpec {
  int p = 0;      ///< characteristic (prime)
  int m = 0;      ///< extension degree
  int order = 0;  ///< p^m
  /// Reduction polynomial, ascending coefficients, length m+1 (monic).
  /// For prime fields this is {0, 1} (x), unused.
  std::vector<int> reduction;

  std::vector<std::vector<int>> add;  ///< add[a][b] = a + b
  std::vector<std::vector<int>> mul;  ///< mul[a][b] = a * b
  std::vector<int> neg;               ///< neg[a] = -a
  std::vector<int> inv;               ///< inv[a] = a^{-1}, a != 0; inv[0] = -1

  int sub(int a, int b) const { return add[a][neg[b]]; }
  int div(int a, int b) const {
    if (b == 0) throw DomainError("field division by zero");
    return mul[a][inv[b]];
  }
};

/// Builds the field of the given order. Supported orders:
/// 2, 3, 4, 5, 7, 8, 9, 11, 13, 16. Throws DomainError otherwise.
FieldSpec field_make(int order);

}  // namespace ic3
