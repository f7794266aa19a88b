#pragma once
// Monte Carlo simulation of the partitioned-coset-code scheme for
// 3-to-1 interference channels at small blocklengths.
//
// Users 2 and 3 employ a nested pair of partitioned coset codes over a
// common field F_θ (cloud centers) plus iid satellite codebooks over
// their channel inputs; user 1 employs an iid codebook. Decoder 1
// recovers the sum of the cloud centers; decoders 2 and 3 recover their
// own pair of bins. Typicality is empirical-frequency (strong) with
// per-letter slack 2η at the encoders and 2η1 at the decoders.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ic3/field.hpp"
#include "ic3/testchannel.hpp"

namespace ic3 {

/// A partitioned coset code (n, k, l, g, b^n, i) over F_θ: codewords
/// a^k g ⊕ b^n with uniformly random bin labels i(a) ∈ [θ^l].
struct PCCCode {
  int n = 0, k = 0, l = 0, theta = 0;
  std::vector<int> gen;   ///< k × n generator, row-major
  std::vector<int> bias;  ///< n
  std::vector<int> bins;  ///< θ^k entries in [θ^l]
};

PCCCode pcc_build(int n, int k, int l, int theta, std::uint64_t seed);

/// Codeword of message index a (base-θ digits of `a`, least significant
/// digit = first row).
std::vector<int> pcc_codeword(const PCCCode& code, const FieldSpec& f,
                              long long a);

/// Nested pair: g3 contains g2 as its first s2 rows, so the sum
/// codebook {a^{s3} g3 ⊕ b2 ⊕ b3} is itself a coset code.
struct NestedPair {
  int n = 0, s2 = 0, s3 = 0, theta = 0;
  std::vector<int> gen3;  ///< s3 × n, rows 0..s2-1 form g2
  std::vector<int> b2, b3;
};

NestedPair nested_build(int n, int s2, int s3, int theta, std::uint64_t seed);

struct SimConfig {
  Channel3IC ch;
  TestChannel tc;  ///< field kind, |Q| = 1; gives p_{U_j X_j} and p_{X1}
  int n = 8;
  int trials = 2000;
  std::uint64_t seed = 1;
  double eta = 0.05;   ///< encoder slack is 2η
  double eta1 = 0.20;  ///< decoder slack is 2η1 (proofs need η1 >= 4η)
  /// Operating point in bits/symbol; code dimensions are the rounded
  /// integer counterparts (s_j = nS_j/log θ etc.).
  double R1 = 0, S2 = 0, T2 = 0, K2 = 0, L2 = 0;
  double S3 = 0, T3 = 0, K3 = 0, L3 = 0;
};

struct SimReport {
  int trials = 0;
  int err_rx1 = 0, err_rx2 = 0, err_rx3 = 0;  ///< decoder errors
  int any_error = 0;  ///< trials with at least one decoder error
  double p_any_error = 0;
  /// Error-event taxonomy counts: eps11, eps_l2, eps_l3 (encoder list
  /// empty), eps2, eps3 (chosen/received words atypical), eps41, eps42,
  /// eps43 (decoder confusion), plus *_none / *_ambiguous splits.
  std::map<std::string, int> events;
  /// Realized integer code dimensions.
  int s2 = 0, s3 = 0, t2 = 0, t3 = 0, m1 = 0;
};

SimReport run_trials(const SimConfig& cfg);

}  // namespace ic3
