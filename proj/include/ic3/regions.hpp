#pragma once
// Achievable-rate region evaluators for 3-to-1 interference channels and
// the general three-receiver scheme, plus the parametric (pre-elimination)
// linear systems that describe the same regions in terms of code
// parameters.
//
// All evaluators take a certified TestChannel (a single test pmf): the
// returned polytope / membership verdict refers to that pmf's region.
// Strict inequalities in the definitions are carried as strict
// half-spaces; closure membership is what `RatePolytope::contains` and
// `Verdict::Boundary` report.

#include <array>
#include <map>
#include <string>

#include "ic3/linsys.hpp"
#include "ic3/polytope.hpp"
#include "ic3/testchannel.hpp"

namespace ic3 {

/// Outer bound for the binary additive 3-to-1 family:
/// R_j <= h_b(δ_j * τ_j) - h_b(δ_j) for each j (a box).
RatePolytope beta_outer(const std::array<double, 3>& tau,
                        const std::array<double, 3>& delta);

/// Unstructured-coding region (single aux pair U2, U3).
RatePolytope alpha_u_3to1(const TestChannel& tc);

/// Shared-field coset-code region; Z = U2 ⊕ U3 in tc.fields[0].
RatePolytope alpha_f_3to1(const TestChannel& tc);

/// Shared-group coset-code region; Z = U2 ⊕ U3 in *tc.group with
/// weights tc.weights.
RatePolytope alpha_g_3to1(const TestChannel& tc);

/// Pre-elimination linear system for the field region, in variables
/// R1..R3, S2, T2, K2, L2, S3, T3, K3, L3, with slack delta_slack.
LinearSystem alpha_f_3to1_param_system(const TestChannel& tc,
                                       double delta_slack);
/// Same system projected onto (R1, R2, R3) by Fourier-Motzkin.
RatePolytope alpha_f_3to1_params(const TestChannel& tc, double delta_slack,
                                 bool prune = true);

/// Pre-elimination system for the group region, in variables R1..R3,
/// S2, T2, L2, S3, T3, L3, Rg.
LinearSystem alpha_g_3to1_param_system(const TestChannel& tc,
                                       double delta_slack);
RatePolytope alpha_g_3to1_params(const TestChannel& tc, double delta_slack,
                                 bool prune = true);

struct MembershipResult {
  Verdict verdict = Verdict::Outside;
  /// Auxiliary-variable witness when verdict != Outside.
  std::map<std::string, double> witness;
};

/// Membership of a rate triple in a linear system over R1..R3 plus
/// auxiliaries: Member iff strictly feasible with rates pinned; Boundary
/// iff feasible after relaxing every bound by tol.
MembershipResult system_member(const LinearSystem& sys,
                               const std::array<double, 3>& rate,
                               double tol = 1e-9);

/// General six-auxiliary field region (three θ's, every receiver decodes
/// a sum). Membership test for one rate triple.
MembershipResult alpha_f_general_member(const TestChannel& tc,
                                        const std::array<double, 3>& rate,
                                        double tol = 1e-9);
/// The underlying linear system (rates as free variables R1..R3).
LinearSystem alpha_f_general_system(const TestChannel& tc);

/// Combined unstructured+field region (auxiliaries V2, V3 and field pair
/// U2, U3). Membership test for one rate triple.
MembershipResult alpha_uf_3to1_member(const TestChannel& tc,
                                      const std::array<double, 3>& rate,
                                      double tol = 1e-9);
LinearSystem alpha_uf_3to1_system(const TestChannel& tc);

/// Adds the derived axis Z = U2 ⊕ U3 (field or group sum per tc tag).
JointPmf with_sum_axis(const TestChannel& tc, const std::string& name = "Z");

}  // namespace ic3
