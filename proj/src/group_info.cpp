#include "ic3/group_info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ic3 {
namespace {

bool is_zero(const ThetaVector& t) {
  return std::all_of(t.begin(), t.end(), [](int v) { return v == 0; });
}

bool is_full(const AbelianGroupSpec& g, const ThetaVector& t) {
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] != g.factors[i].r) return false;
  return true;
}

// Unconditional S/C on a pmf whose axes are {x} ∪ y.
double base_info(const JointPmf& p, const std::string& x,
                 const std::vector<std::string>& y, const AbelianGroupSpec& g,
                 const WeightVector& w, bool source) {
  if (p.size_of(x) != g.order)
    throw DomainError("group info: axis size != |G|");
  const double hx = p.entropy({x});
  const double logG = g.log_order();
  double best = source ? -std::numeric_limits<double>::infinity()
                       : std::numeric_limits<double>::infinity();
  for (const ThetaVector& th : theta_set(g)) {
    if (source && is_zero(th)) continue;
    if (!source && is_full(g, th)) continue;
    SubgroupInfo sub = subgroup_H(g, th);
    JointPmf q = p.with_derived(
        "__xq", {x}, static_cast<int>(sub.index),
        [&](std::span<const int> idx) {
          return static_cast<int>(sub.coset_label[idx[0]]);
        });
    const double om = omega(g, th, w);
    double val;
    if (source) {
      val = (std::log2(static_cast<double>(sub.index)) -
             q.conditional_entropy({"__xq"}, y)) /
            om;
      best = std::max(best, val);
    } else {
      std::vector<std::string> cond = y;
      cond.push_back("__xq");
      val = (std::log2(static_cast<double>(sub.subgroup_order)) -
             q.conditional_entropy({x}, cond)) /
            (1.0 - om);
      best = std::min(best, val);
    }
  }
  return hx - logG + best;
}

double conditional_info(const JointPmf& p, const std::string& x,
                        const std::vector<std::string>& y,
                        const AbelianGroupSpec& g, const WeightVector& w,
                        std::vector<std::string> q, bool source) {
  if (q.empty()) return base_info(p, x, y, g, w, source);
  const std::string qa = q.back();
  q.pop_back();
  double acc = 0;
  for (int v = 0; v < p.size_of(qa); ++v) {
    double mass = 0;
    JointPmf cond = p.conditioned(qa, v, &mass);
    if (mass <= 0) continue;
    acc += mass * conditional_info(cond, x, y, g, w, q, source);
  }
  return acc;
}

}  // namespace

double group_source_info(const JointPmf& p, const std::string& x,
                         const std::vector<std::string>& y,
                         const AbelianGroupSpec& g, const WeightVector& w,
                         const std::vector<std::string>& q) {
  return conditional_info(p, x, y, g, w, q, /*source=*/true);
}

double group_channel_info(const JointPmf& p, const std::string& x,
                          const std::vector<std::string>& y,
                          const AbelianGroupSpec& g, const WeightVector& w,
                          const std::vector<std::string>& q) {
  return conditional_info(p, x, y, g, w, q, /*source=*/false);
}

}  // namespace ic3
