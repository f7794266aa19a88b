#include "ic3/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ic3/field.hpp"  // DomainError

namespace ic3 {

double binary_entropy(double a) {
  if (a <= 0.0 || a >= 1.0) return 0.0;
  return -a * std::log2(a) - (1 - a) * std::log2(1 - a);
}

double binary_convolve(double a, double b) {
  return a * (1 - b) + (1 - a) * b;
}

double entropy_bits(std::span<const double> p) {
  double h = 0;
  for (double v : p)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

JointPmf JointPmf::single(const std::string& axis,
                          const std::vector<double>& p) {
  return JointPmf({axis}, {static_cast<int>(p.size())}, p);
}

JointPmf::JointPmf(std::vector<std::string> axes, std::vector<int> sizes,
                   std::vector<double> probs)
    : axes_(std::move(axes)), sizes_(std::move(sizes)),
      data_(std::move(probs)) {
  if (axes_.size() != sizes_.size())
    throw DomainError("JointPmf: axes/sizes mismatch");
  long long n = 1;
  for (int s : sizes_) {
    if (s <= 0) throw DomainError("JointPmf: axis size must be positive");
    n *= s;
  }
  if (static_cast<long long>(data_.size()) != n)
    throw DomainError("JointPmf: tensor size mismatch");
  for (size_t i = 0; i < axes_.size(); ++i)
    for (size_t j = i + 1; j < axes_.size(); ++j)
      if (axes_[i] == axes_[j])
        throw DomainError("JointPmf: duplicate axis " + axes_[i]);
}

bool JointPmf::has_axis(const std::string& axis) const {
  return std::find(axes_.begin(), axes_.end(), axis) != axes_.end();
}

int JointPmf::index_of(const std::string& axis) const {
  auto it = std::find(axes_.begin(), axes_.end(), axis);
  if (it == axes_.end()) throw DomainError("JointPmf: no axis " + axis);
  return static_cast<int>(it - axes_.begin());
}

double JointPmf::at(std::span<const int> idx) const {
  long long lin = 0;
  for (size_t i = 0; i < sizes_.size(); ++i) lin = lin * sizes_[i] + idx[i];
  return data_[lin];
}

double JointPmf::total() const {
  return std::accumulate(data_.begin(), data_.end(), 0.0);
}

void JointPmf::visit(
    const std::function<void(std::span<const int>, double)>& f) const {
  std::vector<int> idx(axes_.size(), 0);
  for (double v : data_) {
    f(idx, v);
    for (size_t i = idx.size(); i-- > 0;) {
      if (++idx[i] < sizes_[i]) break;
      idx[i] = 0;
    }
  }
}

JointPmf JointPmf::marginal(const std::vector<std::string>& keep) const {
  std::vector<int> map(keep.size());
  std::vector<int> msizes(keep.size());
  for (size_t i = 0; i < keep.size(); ++i) {
    map[i] = index_of(keep[i]);
    msizes[i] = sizes_[map[i]];
  }
  long long n = 1;
  for (int s : msizes) n *= s;
  std::vector<double> out(n, 0.0);
  visit([&](std::span<const int> idx, double v) {
    if (v == 0) return;
    long long lin = 0;
    for (size_t i = 0; i < map.size(); ++i) lin = lin * msizes[i] + idx[map[i]];
    out[lin] += v;
  });
  return JointPmf(keep, msizes, std::move(out));
}

JointPmf JointPmf::with_derived(
    const std::string& name, const std::vector<std::string>& inputs, int size,
    const std::function<int(std::span<const int>)>& f) const {
  std::vector<int> map(inputs.size());
  for (size_t i = 0; i < inputs.size(); ++i) map[i] = index_of(inputs[i]);
  auto axes = axes_;
  axes.push_back(name);
  auto sizes = sizes_;
  sizes.push_back(size);
  std::vector<double> out(data_.size() * size, 0.0);
  long long lin = 0;
  std::vector<int> in(inputs.size());
  visit([&](std::span<const int> idx, double v) {
    for (size_t i = 0; i < map.size(); ++i) in[i] = idx[map[i]];
    int d = f(in);
    if (d < 0 || d >= size)
      throw DomainError("with_derived: value out of range for " + name);
    out[lin * size + d] = v;
    ++lin;
  });
  return JointPmf(std::move(axes), std::move(sizes), std::move(out));
}

JointPmf JointPmf::without(const std::vector<std::string>& drop) const {
  std::vector<std::string> keep;
  for (const auto& a : axes_)
    if (std::find(drop.begin(), drop.end(), a) == drop.end())
      keep.push_back(a);
  return marginal(keep);
}

JointPmf JointPmf::conditioned(const std::string& axis, int value,
                               double* mass) const {
  int ax = index_of(axis);
  std::vector<std::string> axes;
  std::vector<int> sizes;
  std::vector<int> map;
  for (size_t i = 0; i < axes_.size(); ++i) {
    if (static_cast<int>(i) == ax) continue;
    axes.push_back(axes_[i]);
    sizes.push_back(sizes_[i]);
    map.push_back(static_cast<int>(i));
  }
  long long n = 1;
  for (int s : sizes) n *= s;
  std::vector<double> out(n, 0.0);
  double m = 0;
  visit([&](std::span<const int> idx, double v) {
    if (idx[ax] != value || v == 0) return;
    long long lin = 0;
    for (size_t i = 0; i < map.size(); ++i) lin = lin * sizes[i] + idx[map[i]];
    out[lin] += v;
    m += v;
  });
  if (m > 0)
    for (double& v : out) v /= m;
  if (mass) *mass = m;
  return JointPmf(std::move(axes), std::move(sizes), std::move(out));
}

JointPmf JointPmf::product(const JointPmf& a, const JointPmf& b) {
  auto axes = a.axes_;
  axes.insert(axes.end(), b.axes_.begin(), b.axes_.end());
  auto sizes = a.sizes_;
  sizes.insert(sizes.end(), b.sizes_.begin(), b.sizes_.end());
  std::vector<double> out;
  out.reserve(a.data_.size() * b.data_.size());
  for (double va : a.data_)
    for (double vb : b.data_) out.push_back(va * vb);
  return JointPmf(std::move(axes), std::move(sizes), std::move(out));
}

JointPmf JointPmf::renamed(const std::string& from,
                           const std::string& to) const {
  auto axes = axes_;
  axes[index_of(from)] = to;
  return JointPmf(std::move(axes), sizes_, data_);
}

double JointPmf::entropy(const std::vector<std::string>& of) const {
  if (of.empty()) return 0.0;
  JointPmf m = marginal(of);
  return entropy_bits(m.data_);
}

double JointPmf::conditional_entropy(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) const {
  std::vector<std::string> ab = a;
  for (const auto& x : b)
    if (std::find(ab.begin(), ab.end(), x) == ab.end()) ab.push_back(x);
  return entropy(ab) - entropy(b);
}

double JointPmf::mutual_information(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b,
                                    const std::vector<std::string>& given)
    const {
  // I(A;B|C) = H(A|C) - H(A|B,C)
  std::vector<std::string> bc = b;
  for (const auto& x : given)
    if (std::find(bc.begin(), bc.end(), x) == bc.end()) bc.push_back(x);
  return conditional_entropy(a, given) - conditional_entropy(a, bc);
}

double JointPmf::expectation(const std::string& axis,
                             const std::vector<double>& cost) const {
  JointPmf m = marginal({axis});
  if (cost.size() != m.data_.size())
    throw DomainError("expectation: cost vector size mismatch");
  double e = 0;
  for (size_t i = 0; i < cost.size(); ++i) e += m.data_[i] * cost[i];
  return e;
}

}  // namespace ic3
