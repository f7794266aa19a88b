#pragma once
// Test channels: joint pmfs over time-sharing, auxiliary, input and
// output variables, tagged with the algebraic structure the auxiliaries
// carry, plus certification against the domain conditions of the
// achievable-rate definitions.
//
// Axis naming conventions (all sizes finite):
//   Q                      time-sharing variable (always present)
//   X1, X2, X3             channel inputs
//   Y1, Y2, Y3             channel outputs
//   U2, U3                 single-aux kinds (field- or group-valued)
//   V2, V3                 unstructured auxiliaries (the UF kind)
//   U12, U13, U21, U23, U31, U32   six-aux general kind; Uab is sent by
//                          user a and lives in the field F_{θ_b}

#include <array>
#include <optional>
#include <vector>

#include "ic3/channel.hpp"
#include "ic3/field.hpp"
#include "ic3/group.hpp"
#include "ic3/pmf.hpp"

namespace ic3 {

enum class AlgebraKind { None, Field, Group };

enum class TcKind {
  U,         ///< unstructured single-aux (D_u)
  F,         ///< shared-field single-aux (D_f, 3-to-1)
  FGeneral,  ///< six-aux general field kind (D_f general)
  G,         ///< shared-group single-aux (D_g)
  UF,        ///< combined unstructured + field kind (D_uf)
};

struct TestChannel {
  JointPmf pmf;  ///< joint over all axes including outputs
  AlgebraKind algebra = AlgebraKind::None;
  /// Field(s) carried by the auxiliaries: one entry for F/UF kinds,
  /// three (θ_1, θ_2, θ_3) for the general kind.
  std::vector<FieldSpec> fields;
  std::optional<AbelianGroupSpec> group;
  WeightVector weights;  ///< w on Q(G) for the group kind
};

struct CertifyReport {
  double channel_deviation = 0;  ///< max |p(y⃗|x⃗) - W(y⃗|x⃗)| mass-weighted
  double indep_deviation = 0;    ///< max factorization defect given Q
  std::array<double, 3> costs{};  ///< E[κ_j(X_j)]
};

/// Certifies tc against the domain of the given kind over the given
/// channel; throws CertificationError naming the violated condition.
CertifyReport certify(const TestChannel& tc, const Channel3IC& ch, TcKind kind,
                      double tol = 1e-8);

/// Builds a test channel by pushing an input pmf (axes Q plus aux plus
/// X1,X2,X3) through the channel.
TestChannel tc_from_input(const Channel3IC& ch, const JointPmf& input,
                          AlgebraKind algebra = AlgebraKind::None,
                          std::vector<FieldSpec> fields = {},
                          std::optional<AbelianGroupSpec> group = std::nullopt,
                          WeightVector weights = {});

}  // namespace ic3
