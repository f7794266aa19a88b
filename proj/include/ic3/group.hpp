#pragma once
// Finite Abelian groups in invariant-factor form G = ⊕ Z_{p^r}^{m_{p,r}},
// together with the lattice of characteristic subgroups H_θ used by the
// group-source/channel information quantities.
//
// A group is described by its distinct prime-power types (p, r) with
// multiplicities; Q(G) is exactly the list of factors. A θ-vector assigns
// one exponent θ_{p,r} ∈ [0, r] per factor type, and
//   H_θ = ⊕ (p^{θ_{p,r}} Z_{p^r})^{m_{p,r}}.
// The coset of x modulo H_θ is determined by x mod p^{θ_{p,r}} in each
// coordinate.

#include <cstdint>
#include <vector>

#include "ic3/field.hpp"

namespace ic3 {

struct GroupFactor {
  int p = 0;             ///< prime
  int r = 0;             ///< exponent: factor Z_{p^r}
  int multiplicity = 1;  ///< number of copies
};

/// θ-vector: one entry per factor type of the group, aligned with
/// AbelianGroupSpec::factors; entry i lies in [0, factors[i].r].
using ThetaVector = std::vector<int>;

/// Weights w_{p,r} >= 0, aligned with AbelianGroupSpec::factors.
using WeightVector = std::vector<double>;

struct AbelianGroupSpec {
  /// Distinct (p, r) types, sorted by (p, r); multiplicities >= 1.
  std::vector<GroupFactor> factors;

  long long order = 1;           ///< |G|
  std::vector<int> copy_factor;  ///< factor-type index of each coordinate
  std::vector<long long> copy_modulus;  ///< p^r of each coordinate

  int num_coords() const { return static_cast<int>(copy_modulus.size()); }

  /// Mixed-radix decode of an element index into per-coordinate residues
  /// (coordinate 0 is the fastest-varying digit).
  std::vector<long long> to_coords(long long e) const;
  long long from_coords(const std::vector<long long>& c) const;

  long long add(long long a, long long b) const;
  long long neg(long long a) const;

  /// log2 |G|.
  double log_order() const;
};

/// Builds the group from (possibly unsorted / repeated) factor list.
AbelianGroupSpec group_make(std::vector<GroupFactor> factors);

/// Convenience: the cyclic group Z_{p^r}.
AbelianGroupSpec group_cyclic(int p, int r);

/// θ(θ̂): component (p, r) equals min over (p, s) ∈ Q(G) of
/// max(r - s, 0) + θ̂_{p,s}, where θ̂ is aligned with factors and
/// satisfies 0 <= θ̂_{p,s} <= s.
ThetaVector theta_map(const AbelianGroupSpec& g, const ThetaVector& theta_hat);

/// Θ: the image of theta_map over all admissible θ̂, sorted
/// lexicographically and deduplicated.
std::vector<ThetaVector> theta_set(const AbelianGroupSpec& g);

struct SubgroupInfo {
  long long subgroup_order = 1;  ///< |H_θ|
  long long index = 1;           ///< |G : H_θ|
  /// coset_label[e] ∈ [0, index): the coset of element e modulo H_θ.
  std::vector<long long> coset_label;
};

/// Characteristic subgroup H_θ and the quotient-labelling map.
SubgroupInfo subgroup_H(const AbelianGroupSpec& g, const ThetaVector& theta);

/// ω_θ = Σ θ_{p,r} w_{p,r} log p / Σ r w_{p,r} log p.
double omega(const AbelianGroupSpec& g, const ThetaVector& theta,
             const WeightVector& w);

}  // namespace ic3
