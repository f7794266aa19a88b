#include "ic3/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "ic3/regions.hpp"

namespace ic3 {
namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<int> digits(long long a, int base, int len) {
  std::vector<int> d(len);
  for (int i = 0; i < len; ++i) {
    d[i] = static_cast<int>(a % base);
    a /= base;
  }
  return d;
}

// Empirical-frequency typicality: max-abs deviation of the joint type
// from p over all cells is at most slack. `idx` yields the flat cell
// index of position t.
template <typename F>
bool typical(int n, const std::vector<double>& p, double slack, F&& idx) {
  static thread_local std::vector<int> counts;
  counts.assign(p.size(), 0);
  for (int t = 0; t < n; ++t) ++counts[idx(t)];
  for (size_t c = 0; c < p.size(); ++c)
    if (std::abs(counts[c] / static_cast<double>(n) - p[c]) > slack)
      return false;
  return true;
}

}  // namespace

PCCCode pcc_build(int n, int k, int l, int theta, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sym(0, theta - 1);
  PCCCode c;
  c.n = n;
  c.k = k;
  c.l = l;
  c.theta = theta;
  c.gen.resize(static_cast<size_t>(k) * n);
  for (auto& v : c.gen) v = sym(rng);
  c.bias.resize(n);
  for (auto& v : c.bias) v = sym(rng);
  long long nbins = ipow(theta, l);
  std::uniform_int_distribution<long long> bin(0, nbins - 1);
  c.bins.resize(ipow(theta, k));
  for (auto& v : c.bins) v = static_cast<int>(bin(rng));
  return c;
}

std::vector<int> pcc_codeword(const PCCCode& code, const FieldSpec& f,
                              long long a) {
  std::vector<int> d = digits(a, code.theta, code.k);
  std::vector<int> cw = code.bias;
  for (int r = 0; r < code.k; ++r) {
    if (d[r] == 0) continue;
    for (int t = 0; t < code.n; ++t)
      cw[t] = f.add[cw[t]][f.mul[d[r]][code.gen[r * code.n + t]]];
  }
  return cw;
}

NestedPair nested_build(int n, int s2, int s3, int theta, std::uint64_t seed) {
  if (s2 > s3) throw DomainError("nested_build: s2 must not exceed s3");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> sym(0, theta - 1);
  NestedPair p;
  p.n = n;
  p.s2 = s2;
  p.s3 = s3;
  p.theta = theta;
  p.gen3.resize(static_cast<size_t>(s3) * n);
  for (auto& v : p.gen3) v = sym(rng);
  p.b2.resize(n);
  p.b3.resize(n);
  for (auto& v : p.b2) v = sym(rng);
  for (auto& v : p.b3) v = sym(rng);
  return p;
}

namespace {

// Codeword of the first k rows of a nested generator.
std::vector<int> nested_codeword(const NestedPair& np, const FieldSpec& f,
                                 int k, const std::vector<int>& bias,
                                 long long a) {
  std::vector<int> d = digits(a, np.theta, k);
  std::vector<int> cw = bias;
  for (int r = 0; r < k; ++r) {
    if (d[r] == 0) continue;
    for (int t = 0; t < np.n; ++t)
      cw[t] = f.add[cw[t]][f.mul[d[r]][np.gen3[r * np.n + t]]];
  }
  return cw;
}

struct UserSide {
  int s = 0, t = 0;             // cloud dims
  long long na = 0;             // θ^s message words
  long long nbins_cloud = 0;    // θ^t cloud bins
  bool deterministic = false;   // satellite degenerate
  std::vector<int> det_map;     // u -> x when deterministic
  long long ncw_sat = 1, nbins_sat = 1;
  std::vector<double> p_ux;     // |U| × |X|
  std::vector<double> p_uxy;    // |U| × |X| × |Y|
  std::vector<double> p_xgu;    // row-normalized p(x|u) for satellites
};

}  // namespace

SimReport run_trials(const SimConfig& cfg) {
  const TestChannel& tc = cfg.tc;
  if (tc.fields.empty())
    throw DomainError("run_trials: test channel must carry a field");
  if (tc.pmf.size_of("Q") != 1)
    throw DomainError("run_trials: only |Q| = 1 is supported");
  const FieldSpec f = tc.fields[0];
  const int theta = f.order;
  const double logt = std::log2(static_cast<double>(theta));
  const Channel3IC& ch = cfg.ch;
  const int n = cfg.n;

  SimReport rep;
  rep.trials = cfg.trials;
  auto dim = [&](double rate) {
    return std::max(0, static_cast<int>(std::llround(n * rate / logt)));
  };
  int s2 = dim(cfg.S2), s3 = dim(cfg.S3);
  if (s2 > s3) std::swap(s2, s3);
  s3 = std::max(s3, 1);
  rep.s2 = s2;
  rep.s3 = s3;
  rep.t2 = std::min(dim(cfg.T2), s2);
  rep.t3 = std::min(dim(cfg.T3), s3);
  rep.m1 = std::max(1, static_cast<int>(std::llround(std::pow(2.0, n * cfg.R1))));

  // Marginals used by the typicality tests.
  JointPmf withz = with_sum_axis(tc);
  const int nx[3] = {ch.in_sizes[0], ch.in_sizes[1], ch.in_sizes[2]};
  const int ny[3] = {ch.out_sizes[0], ch.out_sizes[1], ch.out_sizes[2]};
  std::vector<double> p_x1 = tc.pmf.marginal({"X1"}).data();
  std::vector<double> p_zx1y1 = withz.marginal({"Z", "X1", "Y1"}).data();
  std::vector<double> p_all_in =
      tc.pmf.marginal({"U2", "U3", "X1", "X2", "X3"}).data();
  std::vector<double> p_all_io =
      tc.pmf.marginal({"U2", "U3", "X1", "X2", "X3", "Y1", "Y2", "Y3"}).data();

  UserSide us[2];  // users 2, 3
  for (int j = 0; j < 2; ++j) {
    std::string U = j == 0 ? "U2" : "U3", X = j == 0 ? "X2" : "X3",
                Y = j == 0 ? "Y2" : "Y3";
    UserSide& u = us[j];
    u.s = j == 0 ? s2 : s3;
    u.t = j == 0 ? rep.t2 : rep.t3;
    u.na = ipow(theta, u.s);
    u.nbins_cloud = ipow(theta, u.t);
    u.p_ux = tc.pmf.marginal({U, X}).data();
    u.p_uxy = tc.pmf.marginal({U, X, Y}).data();
    const int xsz = nx[j + 1];
    u.det_map.assign(theta, 0);
    u.deterministic = true;
    u.p_xgu.assign(static_cast<size_t>(theta) * xsz, 0.0);
    for (int uu = 0; uu < theta; ++uu) {
      double mass = 0;
      int support = 0, last = 0;
      for (int x = 0; x < xsz; ++x) {
        double v = u.p_ux[uu * xsz + x];
        mass += v;
        if (v > 1e-12) {
          ++support;
          last = x;
        }
      }
      u.det_map[uu] = last;
      if (support > 1) u.deterministic = false;
      for (int x = 0; x < xsz; ++x)
        u.p_xgu[uu * xsz + x] =
            mass > 0 ? u.p_ux[uu * xsz + x] / mass
                     : (x == 0 ? 1.0 : 0.0);
    }
    double kl = (j == 0 ? cfg.K2 + cfg.L2 : cfg.K3 + cfg.L3);
    double l = (j == 0 ? cfg.L2 : cfg.L3);
    if (!u.deterministic) {
      u.ncw_sat = std::max<long long>(
          1, std::llround(std::pow(2.0, n * kl)));
      u.nbins_sat = std::max<long long>(
          1, std::llround(std::pow(2.0, n * l)));
    }
  }

  // Per-(x⃗) output samplers (cumulative distributions over y⃗).
  const int nyy = ny[0] * ny[1] * ny[2];
  std::vector<std::vector<double>> ycdf(
      static_cast<size_t>(nx[0]) * nx[1] * nx[2]);
  for (int x1 = 0; x1 < nx[0]; ++x1)
    for (int x2 = 0; x2 < nx[1]; ++x2)
      for (int x3 = 0; x3 < nx[2]; ++x3) {
        auto& cdf = ycdf[(static_cast<size_t>(x1) * nx[1] + x2) * nx[2] + x3];
        cdf.resize(nyy);
        double acc = 0;
        int c = 0;
        for (int y1 = 0; y1 < ny[0]; ++y1)
          for (int y2 = 0; y2 < ny[1]; ++y2)
            for (int y3 = 0; y3 < ny[2]; ++y3) {
              acc += ch.w(x1, x2, x3, y1, y2, y3);
              cdf[c++] = acc;
            }
      }

  const double enc_slack = 2 * cfg.eta;
  const double dec_slack = 2 * cfg.eta1;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  auto sample_from = [&](const std::vector<double>& p) {
    double u = unif(rng), acc = 0;
    for (size_t i = 0; i + 1 < p.size(); ++i) {
      acc += p[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(p.size() - 1);
  };

  auto& ev = rep.events;
  for (const char* e :
       {"eps11", "eps_l2", "eps_l3", "eps2", "eps3", "eps41", "eps41_none",
        "eps41_ambiguous", "eps42", "eps42_none", "eps42_ambiguous", "eps43",
        "eps43_none", "eps43_ambiguous"})
    ev[e] = 0;

  for (int trial = 0; trial < cfg.trials; ++trial) {
    // Fresh random code per trial (ensemble average).
    NestedPair np = nested_build(n, s2, s3, theta, rng());
    std::vector<std::vector<int>> cloud_bins(2);
    for (int j = 0; j < 2; ++j) {
      cloud_bins[j].resize(us[j].na);
      std::uniform_int_distribution<long long> bd(0, us[j].nbins_cloud - 1);
      for (auto& b : cloud_bins[j]) b = static_cast<int>(bd(rng));
    }
    // User-1 codebook.
    std::vector<std::vector<int>> cb1(rep.m1, std::vector<int>(n));
    for (auto& cw : cb1)
      for (auto& s : cw) s = sample_from(p_x1);
    // Satellite codebooks (non-deterministic users only).
    std::vector<std::vector<std::vector<int>>> sat(2);
    std::vector<std::vector<int>> sat_bins(2);
    std::vector<double> p_xj[2] = {tc.pmf.marginal({"X2"}).data(),
                                   tc.pmf.marginal({"X3"}).data()};
    for (int j = 0; j < 2; ++j) {
      if (us[j].deterministic) continue;
      sat[j].assign(us[j].ncw_sat, std::vector<int>(n));
      for (auto& cw : sat[j])
        for (auto& s : cw) s = sample_from(p_xj[j]);
      sat_bins[j].resize(us[j].ncw_sat);
      std::uniform_int_distribution<long long> bd(0, us[j].nbins_sat - 1);
      for (auto& b : sat_bins[j]) b = static_cast<int>(bd(rng));
    }

    // Messages.
    std::uniform_int_distribution<int> md1(0, rep.m1 - 1);
    int m1 = md1(rng);
    long long mcloud[2], msat[2] = {0, 0};
    std::vector<int> u_cw[2], x_cw[2];
    for (int j = 0; j < 2; ++j) {
      std::uniform_int_distribution<long long> mc(0, us[j].nbins_cloud - 1);
      mcloud[j] = mc(rng);
      if (!us[j].deterministic) {
        std::uniform_int_distribution<long long> ms(0, us[j].nbins_sat - 1);
        msat[j] = ms(rng);
      }
    }

    // Encoders for users 2 and 3.
    for (int j = 0; j < 2; ++j) {
      const UserSide& u = us[j];
      const std::vector<int>& bias = j == 0 ? np.b2 : np.b3;
      const int xsz = nx[j + 1];
      bool found = false;
      std::vector<int> first_u, first_x;
      for (long long a = 0; a < u.na && !found; ++a) {
        if (cloud_bins[j][a] != mcloud[j]) continue;
        std::vector<int> ucw = nested_codeword(np, f, u.s, bias, a);
        if (u.deterministic) {
          std::vector<int> xcw(n);
          for (int t = 0; t < n; ++t) xcw[t] = u.det_map[ucw[t]];
          if (first_u.empty()) {
            first_u = ucw;
            first_x = xcw;
          }
          if (typical(n, u.p_ux, enc_slack, [&](int t) {
                return ucw[t] * xsz + xcw[t];
              })) {
            u_cw[j] = ucw;
            x_cw[j] = xcw;
            found = true;
          }
        } else {
          for (long long ci = 0; ci < u.ncw_sat && !found; ++ci) {
            if (sat_bins[j][ci] != msat[j]) continue;
            const std::vector<int>& xcw = sat[j][ci];
            if (first_u.empty()) {
              first_u = ucw;
              first_x = xcw;
            }
            if (typical(n, u.p_ux, enc_slack, [&](int t) {
                  return ucw[t] * xsz + xcw[t];
                })) {
              u_cw[j] = ucw;
              x_cw[j] = xcw;
              found = true;
            }
          }
        }
      }
      if (!found) {
        ++ev[j == 0 ? "eps_l2" : "eps_l3"];
        if (first_u.empty()) {
          // No candidate at all in the bin: transmit the bias itself.
          first_u = nested_codeword(np, f, u.s, bias, 0);
          first_x.assign(n, 0);
          if (u.deterministic)
            for (int t = 0; t < n; ++t) first_x[t] = u.det_map[first_u[t]];
        }
        u_cw[j] = first_u;
        x_cw[j] = first_x;
      }
    }
    const std::vector<int>& x1_cw = cb1[m1];
    if (!typical(n, p_x1, enc_slack, [&](int t) { return x1_cw[t]; }))
      ++ev["eps11"];

    // eps2: chosen words not jointly typical (slack η1).
    if (!typical(n, p_all_in, cfg.eta1, [&](int t) {
          return (((u_cw[0][t] * theta + u_cw[1][t]) * nx[0] + x1_cw[t]) *
                      nx[1] + x_cw[0][t]) * nx[2] + x_cw[1][t];
        }))
      ++ev["eps2"];

    // Channel.
    std::vector<int> y1(n), y2(n), y3(n);
    for (int t = 0; t < n; ++t) {
      const auto& cdf = ycdf[(static_cast<size_t>(x1_cw[t]) * nx[1] +
                              x_cw[0][t]) * nx[2] + x_cw[1][t]];
      double r = unif(rng);
      int c = static_cast<int>(
          std::lower_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
      if (c >= nyy) c = nyy - 1;
      y1[t] = c / (ny[1] * ny[2]);
      y2[t] = (c / ny[2]) % ny[1];
      y3[t] = c % ny[2];
    }
    if (!typical(n, p_all_io, dec_slack, [&](int t) {
          return (((((((u_cw[0][t] * theta + u_cw[1][t]) * nx[0] + x1_cw[t]) *
                          nx[1] + x_cw[0][t]) * nx[2] + x_cw[1][t]) * ny[0] +
                    y1[t]) * ny[1] + y2[t])) * ny[2] + y3[t];
        }))
      ++ev["eps3"];

    bool trial_err = false;

    // Decoder 1: unique m̂1 for which some sum codeword is typical.
    {
      long long nsum = ipow(theta, s3);
      std::vector<int> bsum(n);
      for (int t = 0; t < n; ++t) bsum[t] = f.add[np.b2[t]][np.b3[t]];
      // Precompute sum codewords.
      std::vector<std::vector<int>> zall(nsum);
      for (long long a = 0; a < nsum; ++a)
        zall[a] = nested_codeword(np, f, s3, bsum, a);
      int nhit = 0, hit = -1;
      for (int m = 0; m < rep.m1; ++m) {
        bool ok = false;
        for (long long a = 0; a < nsum && !ok; ++a)
          ok = typical(n, p_zx1y1, dec_slack, [&](int t) {
            return (zall[a][t] * nx[0] + cb1[m][t]) * ny[0] + y1[t];
          });
        if (ok) {
          ++nhit;
          hit = m;
        }
      }
      if (nhit != 1 || hit != m1) {
        trial_err = true;
        ++rep.err_rx1;
        ++ev["eps41"];
        if (nhit == 0) ++ev["eps41_none"];
        if (nhit > 1) ++ev["eps41_ambiguous"];
      }
    }

    // Decoders 2 and 3: unique bin pair with a typical triple.
    for (int j = 0; j < 2; ++j) {
      const UserSide& u = us[j];
      const std::vector<int>& bias = j == 0 ? np.b2 : np.b3;
      const std::vector<int>& y = j == 0 ? y2 : y3;
      const int xsz = nx[j + 1], ysz = ny[j + 1];
      std::set<std::pair<long long, long long>> hits;
      for (long long a = 0; a < u.na; ++a) {
        std::vector<int> ucw = nested_codeword(np, f, u.s, bias, a);
        if (u.deterministic) {
          std::vector<int> xcw(n);
          for (int t = 0; t < n; ++t) xcw[t] = u.det_map[ucw[t]];
          if (typical(n, u.p_uxy, dec_slack, [&](int t) {
                return (ucw[t] * xsz + xcw[t]) * ysz + y[t];
              }))
            hits.insert({cloud_bins[j][a], 0});
        } else {
          for (long long ci = 0; ci < u.ncw_sat; ++ci) {
            const std::vector<int>& xcw = sat[j][ci];
            if (typical(n, u.p_uxy, dec_slack, [&](int t) {
                  return (ucw[t] * xsz + xcw[t]) * ysz + y[t];
                }))
              hits.insert({cloud_bins[j][a], sat_bins[j][ci]});
          }
        }
        if (hits.size() > 1) break;
      }
      bool correct = hits.size() == 1 &&
                     hits.begin()->first == mcloud[j] &&
                     (us[j].deterministic || hits.begin()->second == msat[j]);
      if (!correct) {
        trial_err = true;
        std::string tag = j == 0 ? "eps42" : "eps43";
        ++(j == 0 ? rep.err_rx2 : rep.err_rx3);
        ++ev[tag];
        if (hits.empty()) ++ev[tag + "_none"];
        if (hits.size() > 1) ++ev[tag + "_ambiguous"];
      }
    }

    if (trial_err) ++rep.any_error;
  }
  rep.p_any_error = rep.any_error / static_cast<double>(rep.trials);
  return rep;
}

}  // namespace ic3
