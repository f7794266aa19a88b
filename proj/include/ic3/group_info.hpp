#pragma once
// Group-theoretic source / channel information quantities for an
// Abelian-group-valued random variable X observed alongside side
// information Y, with weights w on the prime-power types of the group:
//
//   S_w^G(X;Y) = H(X) - log|G|
//              + max_{θ∈Θ, θ≠0}   (1/ω_θ)    [log|G:H_θ| - H([X]_θ | Y)]
//   C_w^G(X;Y) = H(X) - log|G|
//              + min_{θ∈Θ, θ≠r}  (1/(1-ω_θ)) [log|H_θ|   - H(X | [X]_θ, Y)]
//
// where [X]_θ is the coset of X modulo H_θ. For prime cyclic groups both
// collapse to I(X;Y). The conditional versions average the per-q values
// under p_Q. A constant Y (empty axis list) gives the "(X;0)" variants.

#include <string>
#include <vector>

#include "ic3/group.hpp"
#include "ic3/pmf.hpp"

namespace ic3 {

/// S_w^G(X;Y|Q). `x` must be a group-valued axis of size |G|; `y` and `q`
/// may be empty.
double group_source_info(const JointPmf& p, const std::string& x,
                         const std::vector<std::string>& y,
                         const AbelianGroupSpec& g, const WeightVector& w,
                         const std::vector<std::string>& q = {});

/// C_w^G(X;Y|Q), same conventions.
double group_channel_info(const JointPmf& p, const std::string& x,
                          const std::vector<std::string>& y,
                          const AbelianGroupSpec& g, const WeightVector& w,
                          const std::vector<std::string>& q = {});

}  // namespace ic3
