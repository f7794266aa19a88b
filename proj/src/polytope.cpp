#include "ic3/polytope.hpp"

#include <cmath>

namespace ic3 {
namespace {
const char* kRateVars[3] = {"R1", "R2", "R3"};
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Member: return "member";
    case Verdict::Boundary: return "boundary";
    case Verdict::Outside: return "outside";
  }
  return "?";
}

void RatePolytope::add(std::array<double, 3> coeff, double rhs, bool strict) {
  hs.push_back({coeff, strict, rhs});
}

bool RatePolytope::contains(const std::array<double, 3>& r, double tol) const {
  return classify(r, tol) != Verdict::Outside;
}

Verdict RatePolytope::classify(const std::array<double, 3>& r,
                               double tol) const {
  bool on_face = false;
  for (const auto& h : hs) {
    double norm = std::sqrt(h.coeff[0] * h.coeff[0] + h.coeff[1] * h.coeff[1] +
                            h.coeff[2] * h.coeff[2]);
    if (norm == 0) norm = 1;
    double slack =
        (h.rhs - (h.coeff[0] * r[0] + h.coeff[1] * r[1] + h.coeff[2] * r[2])) /
        norm;
    if (slack < -tol) return Verdict::Outside;
    if (slack <= tol) on_face = true;
  }
  return on_face ? Verdict::Boundary : Verdict::Member;
}

double RatePolytope::max_weighted(const std::array<double, 3>& mu) const {
  return max_weighted_point(mu).first;
}

std::pair<double, std::array<double, 3>> RatePolytope::max_weighted_point(
    const std::array<double, 3>& mu) const {
  LinearSystem sys = to_system();
  for (const char* v : kRateVars) sys.add_nonneg(v);
  std::map<std::string, Rat> obj;
  for (int i = 0; i < 3; ++i) obj[kRateVars[i]] = rat_of(mu[i]);
  LPOutcome out = lp_maximize(sys, obj);
  if (out.status == LPStatus::Infeasible)
    throw InfeasibilityError("rate polytope is empty");
  if (out.status == LPStatus::Unbounded)
    throw DomainError("rate polytope unbounded in direction of mu");
  std::array<double, 3> r{};
  for (int i = 0; i < 3; ++i) {
    auto it = out.point.find(kRateVars[i]);
    if (it != out.point.end()) r[i] = rat_to_double(it->second);
  }
  return {rat_to_double(out.value), r};
}

LinearSystem RatePolytope::to_system() const {
  LinearSystem sys;
  for (const auto& h : hs) {
    std::map<std::string, Rat> c;
    for (int i = 0; i < 3; ++i)
      if (h.coeff[i] != 0) c[kRateVars[i]] = rat_of(h.coeff[i]);
    sys.add_upper(std::move(c), rat_of(h.rhs), h.strict);
  }
  return sys;
}

RatePolytope RatePolytope::from_system(const LinearSystem& sys) {
  RatePolytope p;
  for (const auto& c : sys.cons) {
    HalfSpace h;
    h.strict = c.strict;
    h.rhs = rat_to_double(c.rhs);
    for (const auto& [k, v] : c.coeff) {
      bool known = false;
      for (int i = 0; i < 3; ++i)
        if (k == kRateVars[i]) {
          h.coeff[i] = rat_to_double(v);
          known = true;
        }
      if (!known && v != 0)
        throw DomainError("from_system: unexpected variable " + k);
    }
    p.hs.push_back(h);
  }
  return p;
}

}  // namespace ic3
