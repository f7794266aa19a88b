#include "ic3/channel.hpp"

#include <cmath>
#include <functional>

#include <json.hpp>

namespace ic3 {
namespace {

using Kernel = std::function<double(int, int, int, int)>;  // (x1,x2,x3,y)

Channel3IC from_kernels(std::array<int, 3> in_sizes,
                        std::array<int, 3> out_sizes, const Kernel& k1,
                        const Kernel& k2, const Kernel& k3) {
  Channel3IC ch;
  ch.in_sizes = in_sizes;
  ch.out_sizes = out_sizes;
  ch.W.reserve(static_cast<size_t>(in_sizes[0]) * in_sizes[1] * in_sizes[2] *
               out_sizes[0] * out_sizes[1] * out_sizes[2]);
  for (int x1 = 0; x1 < in_sizes[0]; ++x1)
    for (int x2 = 0; x2 < in_sizes[1]; ++x2)
      for (int x3 = 0; x3 < in_sizes[2]; ++x3)
        for (int y1 = 0; y1 < out_sizes[0]; ++y1)
          for (int y2 = 0; y2 < out_sizes[1]; ++y2)
            for (int y3 = 0; y3 < out_sizes[2]; ++y3)
              ch.W.push_back(k1(x1, x2, x3, y1) * k2(x1, x2, x3, y2) *
                             k3(x1, x2, x3, y3));
  return ch;
}

Kernel bsc_of(double delta, const std::function<int(int, int, int)>& s) {
  return [delta, s](int x1, int x2, int x3, int y) {
    return y == s(x1, x2, x3) ? 1.0 - delta : delta;
  };
}

// Z4-additive kernel: y = s(x⃗) ⊕₄ N with N ~ noise.
Kernel z4_additive(std::vector<double> noise,
                   const std::function<int(int, int, int)>& s) {
  return [noise = std::move(noise), s](int x1, int x2, int x3, int y) {
    return noise[((y - s(x1, x2, x3)) % 4 + 4) % 4];
  };
}

// y = (x ∧ N_a) ⊕ interf ⊕ N_b with P(N_a=1)=beta_z, P(N_b=1)=delta.
Kernel and_z_kernel(double beta_z, double delta,
                    const std::function<int(int, int, int)>& own,
                    const std::function<int(int, int, int)>& interf) {
  return [beta_z, delta, own, interf](int x1, int x2, int x3, int y) {
    double p = 0;
    for (int na = 0; na < 2; ++na)
      for (int nb = 0; nb < 2; ++nb) {
        int v = ((own(x1, x2, x3) & na) ^ interf(x1, x2, x3)) ^ nb;
        if (v == y)
          p += (na ? beta_z : 1 - beta_z) * (nb ? delta : 1 - delta);
      }
    return p;
  };
}

std::vector<double> hamming_cost(int n) {
  std::vector<double> c(n);
  for (int i = 0; i < n; ++i) c[i] = i;
  return c;
}

void check_pmf(const std::vector<double>& p, size_t want,
               const std::string& what) {
  if (p.size() != want) throw ConfigError(what + ": wrong length");
  double s = 0;
  for (double v : p) {
    if (v < 0 || v > 1) throw ConfigError(what + ": entry out of [0,1]");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-9) throw ConfigError(what + ": does not sum to 1");
}

}  // namespace

void Channel3IC::validate() const {
  size_t nw = static_cast<size_t>(in_sizes[0]) * in_sizes[1] * in_sizes[2] *
              out_sizes[0] * out_sizes[1] * out_sizes[2];
  for (int i = 0; i < 3; ++i) {
    if (in_sizes[i] <= 0 || out_sizes[i] <= 0)
      throw ConfigError("channel: alphabet sizes must be positive");
    if (costs[i].size() != static_cast<size_t>(in_sizes[i]))
      throw ConfigError("channel: cost vector length mismatch for user " +
                        std::to_string(i + 1));
  }
  if (W.size() != nw) throw ConfigError("channel: W tensor size mismatch");
  for (double v : W)
    if (v < 0 || v > 1 + 1e-12)
      throw ConfigError("channel: W entry out of [0,1]");
  for (int x1 = 0; x1 < in_sizes[0]; ++x1)
    for (int x2 = 0; x2 < in_sizes[1]; ++x2)
      for (int x3 = 0; x3 < in_sizes[2]; ++x3) {
        double s = 0;
        for (int y1 = 0; y1 < out_sizes[0]; ++y1)
          for (int y2 = 0; y2 < out_sizes[1]; ++y2)
            for (int y3 = 0; y3 < out_sizes[2]; ++y3)
              s += w(x1, x2, x3, y1, y2, y3);
        if (std::abs(s - 1.0) > 1e-9)
          throw ConfigError("channel: W rows must sum to 1");
      }
}

ThreeToOneCertificate is_three_to_one(const Channel3IC& ch, double tol) {
  ThreeToOneCertificate c;
  const auto& in = ch.in_sizes;
  const auto& out = ch.out_sizes;
  c.W1.assign(static_cast<size_t>(in[0]) * in[1] * in[2] * out[0], 0.0);
  c.W2.assign(static_cast<size_t>(in[1]) * out[1], 0.0);
  c.W3.assign(static_cast<size_t>(in[2]) * out[2], 0.0);
  // W1(y1|x⃗): marginalize y2, y3. W2, W3: read off at reference inputs
  // x1 = x3 = 0 (resp. x1 = x2 = 0); the deviation check below verifies
  // the choice was immaterial.
  for (int x1 = 0; x1 < in[0]; ++x1)
    for (int x2 = 0; x2 < in[1]; ++x2)
      for (int x3 = 0; x3 < in[2]; ++x3)
        for (int y1 = 0; y1 < out[0]; ++y1) {
          double s = 0;
          for (int y2 = 0; y2 < out[1]; ++y2)
            for (int y3 = 0; y3 < out[2]; ++y3)
              s += ch.w(x1, x2, x3, y1, y2, y3);
          c.W1[((static_cast<size_t>(x1) * in[1] + x2) * in[2] + x3) * out[0] +
               y1] = s;
        }
  for (int x2 = 0; x2 < in[1]; ++x2)
    for (int y2 = 0; y2 < out[1]; ++y2) {
      double s = 0;
      for (int y1 = 0; y1 < out[0]; ++y1)
        for (int y3 = 0; y3 < out[2]; ++y3) s += ch.w(0, x2, 0, y1, y2, y3);
      c.W2[static_cast<size_t>(x2) * out[1] + y2] = s;
    }
  for (int x3 = 0; x3 < in[2]; ++x3)
    for (int y3 = 0; y3 < out[2]; ++y3) {
      double s = 0;
      for (int y1 = 0; y1 < out[0]; ++y1)
        for (int y2 = 0; y2 < out[1]; ++y2) s += ch.w(0, 0, x3, y1, y2, y3);
      c.W3[static_cast<size_t>(x3) * out[2] + y3] = s;
    }
  double dev = 0;
  for (int x1 = 0; x1 < in[0]; ++x1)
    for (int x2 = 0; x2 < in[1]; ++x2)
      for (int x3 = 0; x3 < in[2]; ++x3)
        for (int y1 = 0; y1 < out[0]; ++y1)
          for (int y2 = 0; y2 < out[1]; ++y2)
            for (int y3 = 0; y3 < out[2]; ++y3) {
              double prod =
                  c.W1[((static_cast<size_t>(x1) * in[1] + x2) * in[2] + x3) *
                           out[0] + y1] *
                  c.W2[static_cast<size_t>(x2) * out[1] + y2] *
                  c.W3[static_cast<size_t>(x3) * out[2] + y3];
              dev = std::max(dev,
                             std::abs(prod - ch.w(x1, x2, x3, y1, y2, y3)));
            }
  c.max_deviation = dev;
  c.ok = dev <= tol;
  return c;
}

JointPmf push_forward(const Channel3IC& ch, const JointPmf& input) {
  int ix[3] = {input.index_of("X1"), input.index_of("X2"),
               input.index_of("X3")};
  for (int j = 0; j < 3; ++j)
    if (input.sizes()[ix[j]] != ch.in_sizes[j])
      throw DomainError("push_forward: input axis size mismatch");
  auto axes = input.axes();
  auto sizes = input.sizes();
  for (int j = 0; j < 3; ++j) {
    axes.push_back("Y" + std::to_string(j + 1));
    sizes.push_back(ch.out_sizes[j]);
  }
  size_t ny = static_cast<size_t>(ch.out_sizes[0]) * ch.out_sizes[1] *
              ch.out_sizes[2];
  std::vector<double> out;
  out.reserve(input.data().size() * ny);
  input.visit([&](std::span<const int> idx, double v) {
    int x1 = idx[ix[0]], x2 = idx[ix[1]], x3 = idx[ix[2]];
    for (int y1 = 0; y1 < ch.out_sizes[0]; ++y1)
      for (int y2 = 0; y2 < ch.out_sizes[1]; ++y2)
        for (int y3 = 0; y3 < ch.out_sizes[2]; ++y3)
          out.push_back(v * ch.w(x1, x2, x3, y1, y2, y3));
  });
  return JointPmf(std::move(axes), std::move(sizes), std::move(out));
}

Channel3IC make_example(int k, const ExampleParams& prm) {
  auto x1of = [](int x1, int, int) { return x1; };
  auto x2of = [](int, int x2, int) { return x2; };
  auto x3of = [](int, int, int x3) { return x3; };
  Channel3IC ch;
  switch (k) {
    case 1:
      ch = from_kernels({2, 2, 2}, {2, 2, 2},
                        bsc_of(prm.delta1,
                               [](int a, int b, int c) { return a ^ b ^ c; }),
                        bsc_of(prm.delta2, x2of), bsc_of(prm.delta3, x3of));
      ch.costs = {hamming_cost(2), {0, 0}, {0, 0}};
      ch.budgets = {prm.tau, 0, 0};
      break;
    case 2:
      ch = from_kernels(
          {2, 2, 2}, {2, 2, 2},
          bsc_of(prm.delta1,
                 [](int a, int b, int c) { return a ^ (b | c); }),
          bsc_of(prm.delta2, x2of), bsc_of(prm.delta3, x3of));
      ch.costs = {hamming_cost(2), hamming_cost(2), hamming_cost(2)};
      ch.budgets = {prm.tau1, prm.tau2, prm.tau3};
      break;
    case 3: {
      // P(Y1 = 0 | x1, x2 ∨ x3).
      const double mac0[2][2] = {{0.989, 0.01}, {0.02, 0.993}};
      Kernel k1 = [mac0](int x1, int x2, int x3, int y) {
        double p0 = mac0[x1][x2 | x3];
        return y == 0 ? p0 : 1 - p0;
      };
      ch = from_kernels({2, 2, 2}, {2, 2, 2}, k1, bsc_of(prm.delta, x2of),
                        bsc_of(prm.delta, x3of));
      ch.costs = {hamming_cost(2), hamming_cost(2), hamming_cost(2)};
      ch.budgets = {prm.tau1, prm.tau, prm.tau};
      break;
    }
    case 4: {
      std::vector<double> n1 = {1 - prm.delta1, prm.delta1 / 3,
                                prm.delta1 / 3, prm.delta1 / 3};
      std::vector<double> nj = {1 - prm.delta, prm.delta / 3, prm.delta / 3,
                                prm.delta / 3};
      ch = from_kernels(
          {4, 4, 4}, {4, 4, 4},
          z4_additive(n1, [](int a, int b, int c) { return (a + b + c) % 4; }),
          z4_additive(nj, x2of), z4_additive(nj, x3of));
      ch.costs = {{{0, 1, 1, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}}};
      ch.budgets = {prm.tau, 0, 0};
      break;
    }
    case 5: {
      check_pmf(prm.noise1, 4, "example 5 noise1");
      check_pmf(prm.noise2, 4, "example 5 noise2");
      if (prm.cost1.size() != 4 || prm.cost2.size() != 4)
        throw ConfigError("example 5: cost vectors must have length 4");
      ch = from_kernels({4, 4, 4}, {4, 4, 4},
                        z4_additive(prm.noise1,
                                    [](int a, int b, int c) {
                                      return (a + b + c) % 4;
                                    }),
                        z4_additive(prm.noise2, x2of),
                        z4_additive(prm.noise2, x3of));
      ch.costs = {prm.cost1, prm.cost2, prm.cost2};
      ch.budgets = {prm.tau1, prm.tau2, prm.tau2};
      break;
    }
    case 6:
      ch = from_kernels(
          {2, 2, 2}, {2, 2, 2},
          bsc_of(prm.delta1, [](int a, int b, int c) { return a ^ b ^ c; }),
          bsc_of(prm.delta2, [](int, int b, int c) { return b ^ c; }),
          bsc_of(prm.delta3, x3of));
      ch.costs = {hamming_cost(2), {0, 0}, {0, 0}};
      ch.budgets = {prm.tau, 0, 0};
      break;
    case 7: {
      auto interf = [](int a, int b) { return a | b; };
      ch = from_kernels(
          {2, 2, 2}, {2, 2, 2},
          and_z_kernel(prm.beta_z, prm.delta, x1of,
                       [interf](int, int b, int c) { return interf(b, c); }),
          and_z_kernel(prm.beta_z, prm.delta, x2of,
                       [interf](int a, int, int c) { return interf(a, c); }),
          and_z_kernel(prm.beta_z, prm.delta, x3of,
                       [interf](int a, int b, int) { return interf(a, b); }));
      ch.costs = {hamming_cost(2), hamming_cost(2), hamming_cost(2)};
      ch.budgets = {prm.tau, prm.tau, prm.tau};
      break;
    }
    case 8:
      ch = from_kernels(
          {2, 2, 2}, {2, 2, 2},
          and_z_kernel(prm.beta_z, prm.delta, x1of,
                       [](int, int b, int c) { return b ^ c; }),
          and_z_kernel(prm.beta_z, prm.delta, x2of,
                       [](int a, int, int c) { return a | c; }),
          bsc_of(prm.delta, x3of));
      ch.costs = {hamming_cost(2), hamming_cost(2), hamming_cost(2)};
      ch.budgets = {prm.tau, prm.tau, prm.tau};
      break;
    default:
      throw ConfigError("unknown example index " + std::to_string(k));
  }
  ch.validate();
  return ch;
}

namespace {

using nlohmann::json;

json tensor_to_json(const std::vector<double>& flat,
                    const std::vector<int>& dims, size_t& pos, size_t level) {
  json out = json::array();
  if (level + 1 == dims.size()) {
    for (int i = 0; i < dims[level]; ++i) out.push_back(flat[pos++]);
  } else {
    for (int i = 0; i < dims[level]; ++i)
      out.push_back(tensor_to_json(flat, dims, pos, level + 1));
  }
  return out;
}

void tensor_from_json(const json& j, const std::vector<int>& dims,
                      size_t level, std::vector<double>& flat) {
  if (!j.is_array() || j.size() != static_cast<size_t>(dims[level]))
    throw ConfigError("channel JSON: W has wrong shape at depth " +
                      std::to_string(level));
  for (const auto& e : j) {
    if (level + 1 == dims.size()) {
      if (!e.is_number()) throw ConfigError("channel JSON: W entry not a number");
      flat.push_back(e.get<double>());
    } else {
      tensor_from_json(e, dims, level + 1, flat);
    }
  }
}

}  // namespace

Channel3IC channel_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("channel JSON: parse error: ") + e.what());
  }
  for (const char* key : {"inputs", "outputs", "W", "costs", "budgets"})
    if (!j.contains(key))
      throw ConfigError(std::string("channel JSON: missing field '") + key +
                        "'");
  Channel3IC ch;
  auto read3 = [&](const char* key, std::array<int, 3>& out) {
    const auto& a = j[key];
    if (!a.is_array() || a.size() != 3)
      throw ConfigError(std::string("channel JSON: '") + key +
                        "' must be a 3-array");
    for (int i = 0; i < 3; ++i) out[i] = a[i].get<int>();
  };
  read3("inputs", ch.in_sizes);
  read3("outputs", ch.out_sizes);
  std::vector<int> dims = {ch.in_sizes[0],  ch.in_sizes[1],  ch.in_sizes[2],
                           ch.out_sizes[0], ch.out_sizes[1], ch.out_sizes[2]};
  tensor_from_json(j["W"], dims, 0, ch.W);
  const auto& costs = j["costs"];
  if (!costs.is_array() || costs.size() != 3)
    throw ConfigError("channel JSON: 'costs' must be a 3-array of arrays");
  for (int i = 0; i < 3; ++i)
    ch.costs[i] = costs[i].get<std::vector<double>>();
  const auto& budgets = j["budgets"];
  if (!budgets.is_array() || budgets.size() != 3)
    throw ConfigError("channel JSON: 'budgets' must be a 3-array");
  for (int i = 0; i < 3; ++i) ch.budgets[i] = budgets[i].get<double>();
  ch.validate();
  return ch;
}

std::string channel_to_json_text(const Channel3IC& ch, int indent) {
  json j;
  j["inputs"] = ch.in_sizes;
  j["outputs"] = ch.out_sizes;
  std::vector<int> dims = {ch.in_sizes[0],  ch.in_sizes[1],  ch.in_sizes[2],
                           ch.out_sizes[0], ch.out_sizes[1], ch.out_sizes[2]};
  size_t pos = 0;
  j["W"] = tensor_to_json(ch.W, dims, pos, 0);
  j["costs"] = ch.costs;
  j["budgets"] = ch.budgets;
  return j.dump(indent);
}

}  // namespace ic3
