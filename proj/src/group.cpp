#include "ic3/group.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ic3 {

std::vector<long long> AbelianGroupSpec::to_coords(long long e) const {
  std::vector<long long> c(copy_modulus.size());
  for (size_t i = 0; i < copy_modulus.size(); ++i) {
    c[i] = e % copy_modulus[i];
    e /= copy_modulus[i];
  }
  return c;
}

long long AbelianGroupSpec::from_coords(const std::vector<long long>& c) const {
  long long e = 0;
  for (size_t i = copy_modulus.size(); i-- > 0;) e = e * copy_modulus[i] + c[i];
  return e;
}

long long AbelianGroupSpec::add(long long a, long long b) const {
  auto ca = to_coords(a), cb = to_coords(b);
  for (size_t i = 0; i < ca.size(); ++i)
    ca[i] = (ca[i] + cb[i]) % copy_modulus[i];
  return from_coords(ca);
}

long long AbelianGroupSpec::neg(long long a) const {
  auto ca = to_coords(a);
  for (size_t i = 0; i < ca.size(); ++i)
    ca[i] = (copy_modulus[i] - ca[i]) % copy_modulus[i];
  return from_coords(ca);
}

double AbelianGroupSpec::log_order() const {
  double s = 0;
  for (const auto& f : factors)
    s += f.multiplicity * f.r * std::log2(static_cast<double>(f.p));
  return s;
}

AbelianGroupSpec group_make(std::vector<GroupFactor> factors) {
  if (factors.empty()) throw DomainError("group with no factors");
  std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
    return std::pair(a.p, a.r) < std::pair(b.p, b.r);
  });
  AbelianGroupSpec g;
  for (const auto& f : factors) {
    if (f.p < 2 || f.r < 1 || f.multiplicity < 1)
      throw DomainError("invalid group factor");
    if (!g.factors.empty() && g.factors.back().p == f.p &&
        g.factors.back().r == f.r) {
      g.factors.back().multiplicity += f.multiplicity;
    } else {
      g.factors.push_back(f);
    }
  }
  for (size_t i = 0; i < g.factors.size(); ++i) {
    const auto& f = g.factors[i];
    long long mod = 1;
    for (int k = 0; k < f.r; ++k) mod *= f.p;
    for (int c = 0; c < f.multiplicity; ++c) {
      g.copy_factor.push_back(static_cast<int>(i));
      g.copy_modulus.push_back(mod);
      g.order *= mod;
    }
  }
  return g;
}

AbelianGroupSpec group_cyclic(int p, int r) {
  return group_make({{p, r, 1}});
}

ThetaVector theta_map(const AbelianGroupSpec& g, const ThetaVector& theta_hat) {
  const auto& fs = g.factors;
  if (theta_hat.size() != fs.size())
    throw DomainError("theta_hat size mismatch");
  ThetaVector out(fs.size(), 0);
  for (size_t i = 0; i < fs.size(); ++i) {
    if (theta_hat[i] < 0 || theta_hat[i] > fs[i].r)
      throw DomainError("theta_hat component out of range");
    int best = fs[i].r;  // theta is capped by r via the s = r term below
    for (size_t j = 0; j < fs.size(); ++j) {
      if (fs[j].p != fs[i].p) continue;
      int cand = std::max(fs[i].r - fs[j].r, 0) + theta_hat[j];
      best = std::min(best, cand);
    }
    out[i] = best;
  }
  return out;
}

std::vector<ThetaVector> theta_set(const AbelianGroupSpec& g) {
  std::set<ThetaVector> seen;
  ThetaVector hat(g.factors.size(), 0);
  // Enumerate all θ̂ with 0 <= θ̂_{p,s} <= s by mixed-radix counting.
  while (true) {
    seen.insert(theta_map(g, hat));
    size_t i = 0;
    for (; i < hat.size(); ++i) {
      if (hat[i] < g.factors[i].r) {
        ++hat[i];
        std::fill(hat.begin(), hat.begin() + i, 0);
        break;
      }
    }
    if (i == hat.size()) break;
  }
  return {seen.begin(), seen.end()};
}

SubgroupInfo subgroup_H(const AbelianGroupSpec& g, const ThetaVector& theta) {
  if (theta.size() != g.factors.size())
    throw DomainError("theta size mismatch");
  // Per-coordinate quotient modulus p^θ.
  std::vector<long long> qmod(g.copy_modulus.size());
  SubgroupInfo info;
  for (size_t c = 0; c < g.copy_modulus.size(); ++c) {
    const auto& f = g.factors[g.copy_factor[c]];
    int t = theta[g.copy_factor[c]];
    if (t < 0 || t > f.r) throw DomainError("theta component out of range");
    long long q = 1;
    for (int k = 0; k < t; ++k) q *= f.p;
    qmod[c] = q;
    info.index *= q;
    info.subgroup_order *= g.copy_modulus[c] / q;
  }
  info.coset_label.resize(g.order);
  for (long long e = 0; e < g.order; ++e) {
    auto coords = g.to_coords(e);
    long long lab = 0;
    for (size_t c = coords.size(); c-- > 0;)
      lab = lab * qmod[c] + coords[c] % qmod[c];
    info.coset_label[e] = lab;
  }
  return info;
}

double omega(const AbelianGroupSpec& g, const ThetaVector& theta,
             const WeightVector& w) {
  if (theta.size() != g.factors.size() || w.size() != g.factors.size())
    throw DomainError("omega argument size mismatch");
  double num = 0, den = 0;
  for (size_t i = 0; i < g.factors.size(); ++i) {
    double lp = std::log2(static_cast<double>(g.factors[i].p));
    num += theta[i] * w[i] * lp;
    den += g.factors[i].r * w[i] * lp;
  }
  if (den <= 0) throw DomainError("omega: weights must not all vanish");
  return num / den;
}

}  // namespace ic3
