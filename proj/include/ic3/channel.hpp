#pragma once
// Discrete memoryless 3-user interference channels, the 3-to-1
// factorization certificate, the worked example channels, and JSON I/O.

#include <array>
#include <string>
#include <vector>

#include "ic3/errors.hpp"
#include "ic3/pmf.hpp"

namespace ic3 {

struct Channel3IC {
  std::array<int, 3> in_sizes{};   ///< |X1|, |X2|, |X3|
  std::array<int, 3> out_sizes{};  ///< |Y1|, |Y2|, |Y3|
  /// W(y1,y2,y3 | x1,x2,x3), row-major with axis order
  /// (x1, x2, x3, y1, y2, y3), last axis fastest.
  std::vector<double> W;
  std::array<std::vector<double>, 3> costs;  ///< per-symbol cost κ_j
  std::array<double, 3> budgets{};           ///< cost budgets τ_j

  double w(int x1, int x2, int x3, int y1, int y2, int y3) const {
    return W[((((static_cast<long long>(x1) * in_sizes[1] + x2) * in_sizes[2] +
                x3) * out_sizes[0] + y1) * out_sizes[1] + y2) * out_sizes[2] +
             y3];
  }
  /// Checks row sums and ranges; throws ConfigError on violation.
  void validate() const;
};

/// Certificate that W(y⃗|x⃗) = W1(y1|x1,x2,x3) W2(y2|x2) W3(y3|x3).
struct ThreeToOneCertificate {
  bool ok = false;
  double max_deviation = 0;        ///< max |W - W1·W2·W3|
  std::vector<double> W1;          ///< [x1][x2][x3][y1], y1 fastest
  std::vector<double> W2;          ///< [x2][y2]
  std::vector<double> W3;          ///< [x3][y3]
};

ThreeToOneCertificate is_three_to_one(const Channel3IC& ch, double tol = 1e-9);

/// Joint pmf over axes X1, X2, X3, Y1, Y2, Y3 induced by the channel on
/// an input pmf whose axes include X1, X2, X3.
JointPmf push_forward(const Channel3IC& ch, const JointPmf& input);

/// Parameters for the example channels; each example reads the fields it
/// needs and ignores the rest.
struct ExampleParams {
  double tau = 0, tau1 = 0, tau2 = 0, tau3 = 0;
  double delta = 0, delta1 = 0, delta2 = 0, delta3 = 0;
  double beta_z = 0;                    ///< AND-noise P(N=1) (examples 7, 8)
  std::vector<double> noise1, noise2;   ///< Z4 noise pmfs (example 5)
  std::vector<double> cost1, cost2;     ///< Z4 cost vectors (example 5)
};

/// Example channels 1..8:
/// 1: Y1 = BSC_{δ1}(X1⊕X2⊕X3), Yj = BSC_{δj}(Xj); cost on user 1 only.
/// 2: Y1 = BSC_{δ1}(X1⊕(X2∨X3)), Yj = BSC_{δj}(Xj); Hamming costs.
/// 3: Y1 ~ MAC(·|X1, X2∨X3), Yj = BSC_δ(Xj); Hamming costs.
/// 4: Z4-additive, N1 uniform-perturbation noise; cost 1{x≠0} on user 1.
/// 5: Z4-additive with general noise pmfs and cost vectors.
/// 6: Y1 = BSC_{δ1}(X1⊕X2⊕X3), Y2 = BSC_{δ2}(X2⊕X3), Y3 = BSC_{δ3}(X3).
/// 7: Yj = (Xj∧Nj1) ⊕ (Xi∨Xk) ⊕ Nj2 for each j.
/// 8: Y1 = (X1∧N11)⊕(X2⊕X3)⊕N12, Y2 = (X2∧N21)⊕(X1∨X3)⊕N22, Y3 = X3⊕N3.
Channel3IC make_example(int k, const ExampleParams& prm);

/// JSON round-trip. Schema:
/// { "inputs": [n1,n2,n3], "outputs": [m1,m2,m3],
///   "W": nested arrays over (x1,x2,x3,y1,y2,y3),
///   "costs": [[..],[..],[..]], "budgets": [t1,t2,t3] }
Channel3IC channel_from_json_text(const std::string& text);
std::string channel_to_json_text(const Channel3IC& ch, int indent = 2);

}  // namespace ic3
