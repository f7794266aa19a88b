#pragma once
// Dense joint pmfs over named finite axes, and the information measures
// built on them. All entropies and mutual informations are in bits
// (base-2 logarithms) with the convention 0 log 0 = 0.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ic3 {

double binary_entropy(double a);
/// Binary convolution a * b = a(1-b) + (1-a)b.
double binary_convolve(double a, double b);
/// Entropy in bits of an arbitrary (sub)probability vector.
double entropy_bits(std::span<const double> p);

class JointPmf {
 public:
  JointPmf() = default;
  /// One-axis pmf.
  static JointPmf single(const std::string& axis,
                         const std::vector<double>& p);
  /// Constructs from explicit axes/sizes and a row-major tensor whose
  /// last axis varies fastest.
  JointPmf(std::vector<std::string> axes, std::vector<int> sizes,
           std::vector<double> probs);

  const std::vector<std::string>& axes() const { return axes_; }
  const std::vector<int>& sizes() const { return sizes_; }
  const std::vector<double>& data() const { return data_; }
  int size_of(const std::string& axis) const { return sizes_[index_of(axis)]; }
  bool has_axis(const std::string& axis) const;
  int index_of(const std::string& axis) const;

  double at(std::span<const int> idx) const;
  double total() const;

  /// Iterates all cells with positive probability is NOT assumed; the
  /// visitor sees every cell (including zero cells).
  void visit(const std::function<void(std::span<const int>, double)>& f) const;

  /// Marginal over the named axes, in the order given.
  JointPmf marginal(const std::vector<std::string>& keep) const;

  /// Appends a new (deterministic) axis computed from existing axes.
  /// `f` receives the values of `inputs` in the order given.
  JointPmf with_derived(const std::string& name,
                        const std::vector<std::string>& inputs, int size,
                        const std::function<int(std::span<const int>)>& f)
      const;

  /// Drops the named axes (marginalizes them out), keeping the rest in
  /// their current order.
  JointPmf without(const std::vector<std::string>& drop) const;

  /// Conditions on axis == value. Returns the conditional pmf over the
  /// remaining axes and writes the marginal mass to *mass (0 mass yields
  /// an all-zero pmf).
  JointPmf conditioned(const std::string& axis, int value,
                       double* mass = nullptr) const;

  /// Independent product (axis names must be disjoint).
  static JointPmf product(const JointPmf& a, const JointPmf& b);

  /// Renames an axis.
  JointPmf renamed(const std::string& from, const std::string& to) const;

  /// H(axes subset) in bits; empty subset -> 0.
  double entropy(const std::vector<std::string>& of) const;
  /// H(A | B) = H(A ∪ B) - H(B).
  double conditional_entropy(const std::vector<std::string>& a,
                             const std::vector<std::string>& b) const;
  /// I(A ; B | C) in bits.
  double mutual_information(const std::vector<std::string>& a,
                            const std::vector<std::string>& b,
                            const std::vector<std::string>& given = {}) const;

  /// E[f(axis value)] for a per-symbol cost vector.
  double expectation(const std::string& axis,
                     const std::vector<double>& cost) const;

 private:
  std::vector<std::string> axes_;
  std::vector<int> sizes_;
  std::vector<double> data_;  // row-major, last axis fastest
};

}  // namespace ic3
