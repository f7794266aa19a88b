#include "ic3/linsys.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ic3 {

Rat rat_of(double x) {
  if (!std::isfinite(x)) throw DomainError("rat_of: non-finite value");
  // Decompose x = m * 2^e exactly.
  if (x == 0.0) return 0;
  int e = 0;
  double m = std::frexp(x, &e);  // m in [0.5, 1), x = m * 2^e
  // Scale mantissa to an integer (53 bits suffice).
  long long mi = static_cast<long long>(std::ldexp(m, 53));
  e -= 53;
  Rat r(mi);
  boost::multiprecision::cpp_int num = 1;
  if (e >= 0) {
    num <<= e;
    r *= Rat(num);
  } else {
    num <<= -e;
    r /= Rat(num);
  }
  return r;
}

double rat_to_double(const Rat& x) { return static_cast<double>(x); }

void LinearSystem::add_upper(std::map<std::string, Rat> coeff, Rat rhs,
                             bool strict) {
  cons.push_back({std::move(coeff), strict, std::move(rhs)});
}

void LinearSystem::add_lower(std::map<std::string, Rat> coeff, Rat rhs,
                             bool strict) {
  for (auto& [k, v] : coeff) v = -v;
  cons.push_back({std::move(coeff), strict, -rhs});
}

void LinearSystem::add_eq(std::map<std::string, Rat> coeff, Rat rhs) {
  add_upper(coeff, rhs, false);
  add_lower(std::move(coeff), std::move(rhs), false);
}

void LinearSystem::add_nonneg(const std::string& v) {
  add_lower({{v, 1}}, 0, false);
}

std::vector<std::string> LinearSystem::variables() const {
  std::set<std::string> s;
  for (const auto& c : cons)
    for (const auto& [k, v] : c.coeff)
      if (v != 0) s.insert(k);
  return {s.begin(), s.end()};
}

namespace {

// ---------------------------------------------------------------------
// Exact two-phase simplex on the standard form
//   maximize c·z   s.t.  A z <= b,  z >= 0.
// Bland's rule guarantees termination.
// ---------------------------------------------------------------------
struct Simplex {
  int n = 0;                         // structural columns
  std::vector<std::vector<Rat>> a;   // m rows, each ncols + 1 (rhs last)
  std::vector<int> basis;            // basic column per row
  int ncols = 0;
  std::vector<bool> allowed;         // artificial columns disabled in phase 2

  LPStatus run(const std::vector<std::vector<Rat>>& A,
               const std::vector<Rat>& b, const std::vector<Rat>& c,
               Rat* value, std::vector<Rat>* x) {
    const int m = static_cast<int>(A.size());
    n = m ? static_cast<int>(A[0].size()) : static_cast<int>(c.size());
    // Columns: n structural, m slacks, then artificials as needed.
    int nart = 0;
    for (int i = 0; i < m; ++i)
      if (b[i] < 0) ++nart;
    ncols = n + m + nart;
    a.assign(m, std::vector<Rat>(ncols + 1, Rat(0)));
    basis.assign(m, -1);
    allowed.assign(ncols, true);
    int art = n + m;
    for (int i = 0; i < m; ++i) {
      Rat sgn = b[i] < 0 ? -1 : 1;
      for (int j = 0; j < n; ++j) a[i][j] = sgn * A[i][j];
      a[i][n + i] = sgn;  // slack
      a[i][ncols] = sgn * b[i];
      if (b[i] < 0) {
        a[i][art] = 1;
        basis[i] = art++;
      } else {
        basis[i] = n + i;
      }
    }
    if (nart > 0) {
      std::vector<Rat> c1(ncols, Rat(0));
      for (int j = n + m; j < ncols; ++j) c1[j] = -1;
      Rat v1;
      LPStatus st = optimize(c1, &v1);
      if (st == LPStatus::Unbounded)
        throw DomainError("simplex: phase-1 unbounded (internal error)");
      if (v1 < 0) return LPStatus::Infeasible;
      // Pivot artificials out of the basis where possible; redundant rows
      // keep a zero-valued artificial which the allowed mask neutralizes.
      for (int i = 0; i < m; ++i) {
        if (basis[i] < n + m) continue;
        for (int j = 0; j < n + m; ++j) {
          if (a[i][j] != 0) {
            pivot(i, j);
            break;
          }
        }
      }
      for (int j = n + m; j < ncols; ++j) allowed[j] = false;
    }
    std::vector<Rat> c2(ncols, Rat(0));
    for (int j = 0; j < n && j < static_cast<int>(c.size()); ++j) c2[j] = c[j];
    Rat v2;
    LPStatus st = optimize(c2, &v2);
    if (st != LPStatus::Optimal) return st;
    if (value) *value = v2;
    if (x) {
      x->assign(n, Rat(0));
      for (int i = 0; i < m; ++i)
        if (basis[i] < n) (*x)[basis[i]] = a[i][ncols];
    }
    return LPStatus::Optimal;
  }

 private:
  void pivot(int row, int col) {
    Rat piv = a[row][col];
    for (auto& v : a[row]) v /= piv;
    for (size_t i = 0; i < a.size(); ++i) {
      if (static_cast<int>(i) == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (int j = 0; j <= ncols; ++j) a[i][j] -= f * a[row][j];
    }
    basis[row] = col;
  }

  LPStatus optimize(const std::vector<Rat>& c, Rat* value) {
    const int m = static_cast<int>(a.size());
    while (true) {
      // Reduced costs r_j = c_j - Σ_i c_{basis[i]} a[i][j].
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (!allowed[j]) continue;
        Rat r = c[j];
        for (int i = 0; i < m; ++i)
          if (c[basis[i]] != 0) r -= c[basis[i]] * a[i][j];
        if (r > 0) {
          enter = j;  // Bland: first improving column
          break;
        }
      }
      if (enter < 0) break;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        Rat ratio = a[i][ncols] / a[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return LPStatus::Unbounded;
      pivot(leave, enter);
    }
    if (value) {
      Rat v = 0;
      for (int i = 0; i < m; ++i)
        if (c[basis[i]] != 0) v += c[basis[i]] * a[i][ncols];
      *value = v;
    }
    return LPStatus::Optimal;
  }
};

// Builds the split-variable standard form for a system (closure) and an
// objective; columns 2k / 2k+1 are var_k^+ / var_k^-.
struct StdForm {
  std::vector<std::string> vars;
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;

  StdForm(const LinearSystem& sys, const std::map<std::string, Rat>& obj) {
    vars = sys.variables();
    // Objective variables absent from every constraint are still part of
    // the program (they make it unbounded unless their coefficient is 0).
    for (const auto& [k, v] : obj)
      if (v != 0 &&
          !std::binary_search(vars.begin(), vars.end(), k))
        vars.push_back(k);
    std::sort(vars.begin(), vars.end());
    for (const auto& c : sys.cons) {
      std::vector<Rat> row(2 * vars.size(), Rat(0));
      for (size_t k = 0; k < vars.size(); ++k) {
        auto it = c.coeff.find(vars[k]);
        if (it == c.coeff.end() || it->second == 0) continue;
        row[2 * k] = it->second;
        row[2 * k + 1] = -it->second;
      }
      A.push_back(std::move(row));
      b.push_back(c.rhs);
    }
  }

  std::vector<Rat> objective(const std::map<std::string, Rat>& obj) const {
    std::vector<Rat> c(2 * vars.size(), Rat(0));
    for (size_t k = 0; k < vars.size(); ++k) {
      auto it = obj.find(vars[k]);
      if (it == obj.end()) continue;
      c[2 * k] = it->second;
      c[2 * k + 1] = -it->second;
    }
    return c;
  }

  std::map<std::string, Rat> point(const std::vector<Rat>& z) const {
    std::map<std::string, Rat> p;
    for (size_t k = 0; k < vars.size(); ++k)
      p[vars[k]] = z[2 * k] - z[2 * k + 1];
    return p;
  }
};

void normalize(LinConstraint& c) {
  for (auto it = c.coeff.begin(); it != c.coeff.end();)
    it = it->second == 0 ? c.coeff.erase(it) : std::next(it);
  if (c.coeff.empty()) return;
  Rat lead = c.coeff.begin()->second;
  Rat scale = lead < 0 ? -lead : lead;
  for (auto& [k, v] : c.coeff) v /= scale;
  c.rhs /= scale;
}

}  // namespace

LPOutcome lp_maximize(const LinearSystem& sys,
                      const std::map<std::string, Rat>& obj) {
  StdForm sf(sys, obj);
  Simplex sx;
  LPOutcome out;
  std::vector<Rat> z;
  out.status = sx.run(sf.A, sf.b, sf.objective(obj), &out.value, &z);
  if (out.status == LPStatus::Optimal) out.point = sf.point(z);
  return out;
}

SlackOutcome max_slack(const LinearSystem& sys) {
  // max t  s.t.  lhs + t <= rhs for strict rows, lhs <= rhs otherwise,
  // t <= 1. Strictly feasible iff the optimum is > 0.
  LinearSystem aug;
  const std::string t = "__slack_t";
  for (auto c : sys.cons) {
    if (c.strict) c.coeff[t] += 1;
    c.strict = false;
    aug.cons.push_back(std::move(c));
  }
  aug.add_upper({{t, 1}}, 1);
  aug.add_lower({{t, 1}}, 0);
  LPOutcome out = lp_maximize(aug, {{t, 1}});
  SlackOutcome so;
  so.status = out.status;
  if (out.status == LPStatus::Optimal) {
    so.slack = out.value;
    so.point = out.point;
    so.point.erase(t);
  }
  return so;
}

bool strictly_feasible(const LinearSystem& sys) {
  SlackOutcome so = max_slack(sys);
  return so.status == LPStatus::Optimal && so.slack > 0;
}

LinearSystem prune_redundant(const LinearSystem& sys) {
  LinearSystem cur = sys;
  for (size_t i = 0; i < cur.cons.size();) {
    LinearSystem rest;
    for (size_t j = 0; j < cur.cons.size(); ++j)
      if (j != i) rest.cons.push_back(cur.cons[j]);
    LPOutcome out = lp_maximize(rest, cur.cons[i].coeff);
    bool redundant = false;
    if (out.status == LPStatus::Optimal) {
      redundant = cur.cons[i].strict ? out.value < cur.cons[i].rhs
                                     : out.value <= cur.cons[i].rhs;
    }
    if (redundant)
      cur.cons.erase(cur.cons.begin() + static_cast<long>(i));
    else
      ++i;
  }
  return cur;
}

LinearSystem fm_eliminate(const LinearSystem& sys, const std::string& var,
                          bool prune) {
  std::vector<LinConstraint> pos, neg;
  LinearSystem out;
  for (const auto& c : sys.cons) {
    auto it = c.coeff.find(var);
    Rat a = it == c.coeff.end() ? Rat(0) : it->second;
    if (a > 0)
      pos.push_back(c);
    else if (a < 0)
      neg.push_back(c);
    else
      out.cons.push_back(c);
  }
  for (const auto& p : pos) {
    Rat ap = p.coeff.at(var);
    for (const auto& q : neg) {
      Rat aq = -q.coeff.at(var);  // > 0
      LinConstraint c;
      c.strict = p.strict || q.strict;
      // aq * p + ap * q cancels var.
      for (const auto& [k, v] : p.coeff) c.coeff[k] += aq * v;
      for (const auto& [k, v] : q.coeff) c.coeff[k] += ap * v;
      c.rhs = aq * p.rhs + ap * q.rhs;
      c.coeff.erase(var);
      out.cons.push_back(std::move(c));
    }
  }
  // Normalize; drop or flag trivial rows; merge parallel rows keeping the
  // tightest (smaller rhs; at equal rhs, strict beats non-strict).
  std::map<std::map<std::string, Rat>, std::pair<Rat, bool>> seen;
  LinearSystem dedup;
  for (auto& c : out.cons) {
    normalize(c);
    if (c.coeff.empty()) {
      bool ok = c.strict ? Rat(0) < c.rhs : Rat(0) <= c.rhs;
      // Satisfied trivial rows vanish; contradictions are kept verbatim
      // (the simplex treats an all-zero row with negative rhs as
      // infeasible, and strictly_feasible handles the strict case).
      if (!ok) dedup.cons.push_back(c);
      continue;
    }
    auto [it, fresh] = seen.emplace(c.coeff, std::make_pair(c.rhs, c.strict));
    if (!fresh) {
      if (c.rhs < it->second.first)
        it->second = {c.rhs, c.strict};
      else if (c.rhs == it->second.first)
        it->second.second = it->second.second || c.strict;
    }
  }
  for (const auto& [coeff, rs] : seen) {
    LinConstraint c;
    c.coeff = coeff;
    c.rhs = rs.first;
    c.strict = rs.second;
    dedup.cons.push_back(std::move(c));
  }
  if (prune && dedup.cons.size() > 40) return prune_redundant(dedup);
  return dedup;
}

LinearSystem fm_project(LinearSystem sys, const std::vector<std::string>& keep,
                        bool prune) {
  // Greedy elimination order: at each step pick the variable whose
  // elimination creates the fewest pos x neg product rows.
  for (;;) {
    std::string best;
    long best_cost = -1;
    for (const auto& v : sys.variables()) {
      if (std::find(keep.begin(), keep.end(), v) != keep.end()) continue;
      long np = 0, nn = 0;
      for (const auto& c : sys.cons) {
        auto it = c.coeff.find(v);
        if (it == c.coeff.end() || it->second == 0) continue;
        (it->second > 0 ? np : nn)++;
      }
      long cost = np * nn;
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best = v;
      }
    }
    if (best_cost < 0) break;
    sys = fm_eliminate(sys, best, prune);
  }
  return prune ? prune_redundant(sys) : sys;
}

}  // namespace ic3
