// Command-line front end: rate-region evaluation, membership testing,
// projection of the parametric systems, weighted-rate search,
// channel verification, and small-blocklength simulation.
//
// Exit codes: 0 success, 2 malformed input, 3 failed certification,
// 4 infeasible request, 1 unexpected error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ic3/regions.hpp"
#include "ic3/search.hpp"
#include "ic3/sim.hpp"

using json = nlohmann::json;
using namespace ic3;

namespace {

// All numeric output is rounded to 10 significant digits.
double sig10(double v) {
  if (v == 0 || !std::isfinite(v)) return v;
  std::ostringstream os;
  os.precision(10);
  os << v;
  return std::stod(os.str());
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Manifest {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void write(const std::string& path, const std::string& output) const {
    json m;
    m["subcommand"] = subcommand;
    m["inputs"] = inputs;
    if (has_seed) m["seed"] = seed;
    m["version"] = "0.1.0";
    m["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    std::ostringstream dig;
    dig << std::hex << fnv1a(output);
    m["output_digest"] = dig.str();
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write manifest: " + path);
    out << m.dump(2) << "\n";
  }
};

std::array<double, 3> parse_rate(const std::string& s) {
  std::array<double, 3> r{};
  std::istringstream is(s);
  std::string tok;
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(is, tok, ','))
      throw ConfigError("rate must be three comma-separated numbers");
    try {
      r[i] = std::stod(tok);
    } catch (const std::exception&) {
      throw ConfigError("bad rate component: " + tok);
    }
  }
  return r;
}

std::vector<GroupFactor> parse_group(const std::string& s) {
  // "p:r:m,p:r:m" (m optional, default 1)
  std::vector<GroupFactor> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    GroupFactor f;
    f.multiplicity = 1;
    if (std::sscanf(tok.c_str(), "%d:%d:%d", &f.p, &f.r, &f.multiplicity) < 2)
      throw ConfigError("bad group factor: " + tok);
    out.push_back(f);
  }
  if (out.empty()) throw ConfigError("empty group description");
  return out;
}

// Test-channel JSON:
// { "axes": ["Q","U2",...], "sizes": [...], "data": [...],
//   "algebra": {"kind":"field","orders":[2]} |
//              {"kind":"group","factors":[[p,r,m],...],"weights":[...]} |
//              {"kind":"none"} }
TestChannel tc_from_json(const Channel3IC& ch, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("test-channel JSON: ") + e.what());
  }
  try {
    std::vector<std::string> axes = j.at("axes").get<std::vector<std::string>>();
    std::vector<int> sizes = j.at("sizes").get<std::vector<int>>();
    std::vector<double> data = j.at("data").get<std::vector<double>>();
    JointPmf input(axes, sizes, data);
    AlgebraKind alg = AlgebraKind::None;
    std::vector<FieldSpec> fields;
    std::optional<AbelianGroupSpec> group;
    WeightVector weights;
    if (j.contains("algebra")) {
      const json& a = j["algebra"];
      std::string kind = a.value("kind", "none");
      if (kind == "field") {
        alg = AlgebraKind::Field;
        for (int o : a.at("orders").get<std::vector<int>>())
          fields.push_back(field_make(o));
      } else if (kind == "group") {
        alg = AlgebraKind::Group;
        std::vector<GroupFactor> fac;
        for (const auto& f : a.at("factors")) {
          GroupFactor g;
          g.p = f.at(0).get<int>();
          g.r = f.at(1).get<int>();
          g.multiplicity = f.size() > 2 ? f.at(2).get<int>() : 1;
          fac.push_back(g);
        }
        group = group_make(fac);
        if (a.contains("weights"))
          weights = a["weights"].get<std::vector<double>>();
        else
          weights.assign(group->factors.size(), 1.0);
      } else if (kind != "none") {
        throw ConfigError("unknown algebra kind: " + kind);
      }
    }
    return tc_from_input(ch, input, alg, std::move(fields), std::move(group),
                         std::move(weights));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("test-channel JSON: ") + e.what());
  }
}

// Identity test channel: |Q| = 1, U_j = X_j with uniform satellites
// pushed inside the cost budgets, X1 likewise cost-constrained uniform.
TestChannel identity_tc(const Channel3IC& ch, AlgebraKind alg, int field_order,
                        const std::vector<GroupFactor>& gf) {
  int nu;
  std::vector<FieldSpec> fields;
  std::optional<AbelianGroupSpec> group;
  WeightVector weights;
  if (alg == AlgebraKind::Group) {
    group = group_make(gf);
    nu = static_cast<int>(group->order);
    weights.assign(group->factors.size(), 1.0);
  } else if (alg == AlgebraKind::Field) {
    fields.push_back(field_make(field_order));
    nu = fields[0].order;
  } else {
    nu = ch.in_sizes[1];
  }
  auto budgeted_uniform = [&](int n, const std::vector<double>& cost,
                              double budget) {
    std::vector<double> p(n, 1.0 / n);
    double e = 0, cmin = cost[0];
    size_t imin = 0;
    for (int i = 0; i < n; ++i) {
      e += p[i] * cost[i];
      if (cost[i] < cmin) {
        cmin = cost[i];
        imin = i;
      }
    }
    if (e > budget) {
      if (cmin > budget)
        throw InfeasibilityError("cost budget below the cheapest symbol");
      double lam = (budget - cmin) / (e - cmin);
      for (auto& v : p) v *= lam;
      p[imin] += 1 - lam;
    }
    return p;
  };
  JointPmf input = JointPmf::product(
      JointPmf::single("Q", {1.0}),
      JointPmf::single("X1", budgeted_uniform(ch.in_sizes[0], ch.costs[0],
                                              ch.budgets[0])));
  for (int j = 2; j <= 3; ++j) {
    int nx = ch.in_sizes[j - 1];
    std::vector<double> pu = budgeted_uniform(
        nu, [&] {
          std::vector<double> c(nu);
          for (int u = 0; u < nu; ++u) c[u] = ch.costs[j - 1][u % nx];
          return c;
        }(), ch.budgets[j - 1]);
    std::string U = "U" + std::to_string(j), X = "X" + std::to_string(j);
    input = JointPmf::product(input, JointPmf::single(U, pu));
    input = input.with_derived(
        X, {U}, nx, [nx](std::span<const int> v) { return v[0] % nx; });
  }
  return tc_from_input(ch, input, alg, std::move(fields), std::move(group),
                       std::move(weights));
}

json polytope_json(const RatePolytope& r) {
  json faces = json::array();
  for (const auto& h : r.hs) {
    json f;
    f["coeff"] = {sig10(h.coeff[0]), sig10(h.coeff[1]), sig10(h.coeff[2])};
    f["rel"] = h.strict ? "<" : "<=";
    f["rhs"] = sig10(h.rhs);
    faces.push_back(f);
  }
  return faces;
}

struct Common {
  std::string channel_path, tc_path, manifest_path;
  bool auto_tc = false;
  std::string kind = "f";
  int field_order = 2;
  std::string group_desc = "2:2";
};

void add_common(CLI::App* cmd, Common& c, bool needs_tc) {
  cmd->add_option("--channel", c.channel_path, "channel JSON file")
      ->required();
  cmd->add_option("--manifest", c.manifest_path,
                  "write a run manifest to this path");
  if (needs_tc) {
    cmd->add_option("--tc", c.tc_path, "test-channel JSON file");
    cmd->add_flag("--auto-tc", c.auto_tc,
                  "use the identity test channel (U_j = X_j)");
    cmd->add_option("--field-order", c.field_order,
                    "field order for --auto-tc field kinds");
    cmd->add_option("--group", c.group_desc,
                    "group factors p:r:m,... for group kinds");
  }
}

AlgebraKind kind_algebra(const std::string& kind) {
  if (kind == "u") return AlgebraKind::None;
  if (kind == "g" || kind == "gparam") return AlgebraKind::Group;
  return AlgebraKind::Field;
}

TestChannel load_tc(const Common& c, const Channel3IC& ch) {
  if (!c.tc_path.empty()) return tc_from_json(ch, read_file(c.tc_path));
  if (c.auto_tc)
    return identity_tc(ch, kind_algebra(c.kind), c.field_order,
                       parse_group(c.group_desc));
  throw ConfigError("provide --tc FILE or --auto-tc");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"rate-region toolkit for 3-user interference channels"};
  app.require_subcommand(1);

  // ---- example ----
  auto* ex = app.add_subcommand("example", "emit a built-in example channel");
  int ex_index = 1;
  std::string ex_out;
  ExampleParams prm;
  ex->add_option("--index", ex_index, "example number 1..8")->required();
  ex->add_option("-o,--output", ex_out, "output path (default stdout)");
  ex->add_option("--tau", prm.tau, "");
  ex->add_option("--tau1", prm.tau1, "");
  ex->add_option("--tau2", prm.tau2, "");
  ex->add_option("--tau3", prm.tau3, "");
  ex->add_option("--delta", prm.delta, "");
  ex->add_option("--delta1", prm.delta1, "");
  ex->add_option("--delta2", prm.delta2, "");
  ex->add_option("--delta3", prm.delta3, "");
  ex->add_option("--beta-z", prm.beta_z, "");
  ex->add_option("--noise1", prm.noise1, "")->expected(-1);
  ex->add_option("--noise2", prm.noise2, "")->expected(-1);
  ex->add_option("--cost1", prm.cost1, "")->expected(-1);
  ex->add_option("--cost2", prm.cost2, "")->expected(-1);
  std::string ex_manifest;
  ex->add_option("--manifest", ex_manifest, "");

  // ---- verify ----
  auto* ver = app.add_subcommand("verify", "validate a channel JSON file");
  Common vc;
  add_common(ver, vc, false);
  bool require_3to1 = false;
  ver->add_flag("--require-3to1", require_3to1,
                "fail (exit 3) unless the channel factorizes 3-to-1");

  // ---- region ----
  auto* reg = app.add_subcommand(
      "region", "evaluate a rate region for one test channel");
  Common rc;
  reg->add_option("--kind", rc.kind, "u | f | g")->required();
  add_common(reg, rc, true);

  // ---- member ----
  auto* mem = app.add_subcommand("member", "rate-triple membership");
  Common mc;
  mem->add_option("--kind", mc.kind, "u | f | g | fparam | gparam | fgen | uf")
      ->required();
  std::vector<std::string> mem_rates;
  double mem_slack = 1e-9;
  mem->add_option("--rate", mem_rates, "rate triple R1,R2,R3 (repeatable)")
      ->required();
  mem->add_option("--slack", mem_slack, "parametric-system slack");
  add_common(mem, mc, true);

  // ---- project ----
  auto* prj = app.add_subcommand(
      "project", "project a parametric system onto (R1,R2,R3)");
  Common pc;
  prj->add_option("--kind", pc.kind, "f | g")->required();
  double prj_slack = 1e-9;
  prj->add_option("--slack", prj_slack, "slack delta");
  add_common(prj, pc, true);

  // ---- search ----
  auto* sea = app.add_subcommand("search", "weighted-rate maximization");
  Common sc;
  sea->add_option("--kind", sc.kind, "u | f | g")->required();
  std::string sea_mu = "1,1,1";
  SearchConfig scfg;
  sea->add_option("--mu", sea_mu, "objective weights a,b,c");
  sea->add_option("--seed", scfg.seed, "RNG seed")->required();
  sea->add_option("--restarts", scfg.restarts, "");
  sea->add_option("--refine", scfg.refine_iters, "");
  sea->add_option("--q-cap", scfg.q_cap, "max |Q|");
  add_common(sea, sc, false);
  sea->add_option("--field-order", sc.field_order, "");
  sea->add_option("--group", sc.group_desc, "");

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "small-blocklength Monte Carlo");
  Common xc;
  SimConfig simcfg;
  sim->add_option("--n", simcfg.n, "blocklength");
  sim->add_option("--trials", simcfg.trials, "");
  sim->add_option("--seed", simcfg.seed, "RNG seed")->required();
  sim->add_option("--eta", simcfg.eta, "");
  sim->add_option("--eta1", simcfg.eta1, "");
  sim->add_option("--R1", simcfg.R1, "");
  sim->add_option("--S2", simcfg.S2, "");
  sim->add_option("--T2", simcfg.T2, "");
  sim->add_option("--K2", simcfg.K2, "");
  sim->add_option("--L2", simcfg.L2, "");
  sim->add_option("--S3", simcfg.S3, "");
  sim->add_option("--T3", simcfg.T3, "");
  sim->add_option("--K3", simcfg.K3, "");
  sim->add_option("--L3", simcfg.L3, "");
  add_common(sim, xc, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    // Fold CLI11's parse-error codes into the documented contract:
    // 0 for --help/--version, 2 for any malformed command line.
    return rc == 0 ? 0 : 2;
  }

  std::ostringstream out;
  Manifest man;

  if (*ex) {
    man.subcommand = "example";
    Channel3IC ch = make_example(ex_index, prm);
    std::string text = channel_to_json_text(ch);
    if (ex_out.empty()) {
      out << text << "\n";
    } else {
      std::ofstream f(ex_out);
      if (!f) throw ConfigError("cannot write " + ex_out);
      f << text << "\n";
      out << "{ \"written\": \"" << ex_out << "\" }\n";
    }
    std::cout << out.str();
    if (!ex_manifest.empty()) man.write(ex_manifest, out.str());
    return 0;
  }

  Common* cm = *ver   ? &vc
               : *reg ? &rc
               : *mem ? &mc
               : *prj ? &pc
               : *sea ? &sc
                      : &xc;
  man.subcommand = app.get_subcommands().front()->get_name();
  man.inputs.push_back(cm->channel_path);
  if (!cm->tc_path.empty()) man.inputs.push_back(cm->tc_path);
  Channel3IC ch = channel_from_json_text(read_file(cm->channel_path));

  if (*ver) {
    ch.validate();
    ThreeToOneCertificate cert = is_three_to_one(ch);
    json j;
    j["valid"] = true;
    j["three_to_one"] = cert.ok;
    j["factorization_deviation"] = sig10(cert.max_deviation);
    out << j.dump(2) << "\n";
    std::cout << out.str();
    if (!cm->manifest_path.empty()) man.write(cm->manifest_path, out.str());
    if (require_3to1 && !cert.ok)
      throw CertificationError("channel is not 3-to-1");
    return 0;
  }

  if (*reg) {
    TestChannel tc = load_tc(rc, ch);
    RatePolytope poly;
    if (rc.kind == "u") {
      certify(tc, ch, TcKind::U);
      poly = alpha_u_3to1(tc);
    } else if (rc.kind == "f") {
      certify(tc, ch, TcKind::F);
      poly = alpha_f_3to1(tc);
    } else if (rc.kind == "g") {
      certify(tc, ch, TcKind::G);
      poly = alpha_g_3to1(tc);
    } else {
      throw ConfigError("region kind must be u, f, or g");
    }
    json j;
    j["kind"] = rc.kind;
    j["faces"] = polytope_json(poly);
    out << j.dump(2) << "\n";
  } else if (*mem) {
    TestChannel tc = load_tc(mc, ch);
    json results = json::array();
    for (const std::string& rs : mem_rates) {
      std::array<double, 3> rate = parse_rate(rs);
      Verdict v;
      std::map<std::string, double> witness;
      if (mc.kind == "u") {
        certify(tc, ch, TcKind::U);
        v = alpha_u_3to1(tc).classify(rate);
      } else if (mc.kind == "f") {
        certify(tc, ch, TcKind::F);
        v = alpha_f_3to1(tc).classify(rate);
      } else if (mc.kind == "g") {
        certify(tc, ch, TcKind::G);
        v = alpha_g_3to1(tc).classify(rate);
      } else if (mc.kind == "fparam") {
        certify(tc, ch, TcKind::F);
        MembershipResult m =
            system_member(alpha_f_3to1_param_system(tc, mem_slack), rate);
        v = m.verdict;
        witness = m.witness;
      } else if (mc.kind == "gparam") {
        certify(tc, ch, TcKind::G);
        MembershipResult m =
            system_member(alpha_g_3to1_param_system(tc, mem_slack), rate);
        v = m.verdict;
        witness = m.witness;
      } else if (mc.kind == "fgen") {
        certify(tc, ch, TcKind::FGeneral);
        MembershipResult m = alpha_f_general_member(tc, rate);
        v = m.verdict;
        witness = m.witness;
      } else if (mc.kind == "uf") {
        certify(tc, ch, TcKind::UF);
        MembershipResult m = alpha_uf_3to1_member(tc, rate);
        v = m.verdict;
        witness = m.witness;
      } else {
        throw ConfigError("unknown membership kind: " + mc.kind);
      }
      json r;
      r["rate"] = {rate[0], rate[1], rate[2]};
      r["verdict"] = verdict_name(v);
      if (!witness.empty()) {
        json w;
        for (const auto& [k, v2] : witness) w[k] = sig10(v2);
        r["witness"] = w;
      }
      results.push_back(r);
    }
    json j;
    j["kind"] = mc.kind;
    j["results"] = results;
    out << j.dump(2) << "\n";
  } else if (*prj) {
    TestChannel tc = load_tc(pc, ch);
    RatePolytope poly;
    if (pc.kind == "f") {
      certify(tc, ch, TcKind::F);
      poly = alpha_f_3to1_params(tc, prj_slack);
    } else if (pc.kind == "g") {
      certify(tc, ch, TcKind::G);
      poly = alpha_g_3to1_params(tc, prj_slack);
    } else {
      throw ConfigError("project kind must be f or g");
    }
    json j;
    j["kind"] = pc.kind;
    j["slack"] = prj_slack;
    j["faces"] = polytope_json(poly);
    out << j.dump(2) << "\n";
  } else if (*sea) {
    man.seed = scfg.seed;
    man.has_seed = true;
    scfg.field_order = sc.field_order;
    scfg.group_factors = parse_group(sc.group_desc);
    RegionKind rk = sc.kind == "u"   ? RegionKind::U
                    : sc.kind == "f" ? RegionKind::F
                    : sc.kind == "g"
                        ? RegionKind::G
                        : throw ConfigError("search kind must be u, f, or g");
    SearchResult res =
        maximize_weighted_rate(ch, rk, parse_rate(sea_mu), scfg);
    json j;
    j["kind"] = sc.kind;
    j["value"] = sig10(res.value);
    j["rates"] = {sig10(res.rates[0]), sig10(res.rates[1]), sig10(res.rates[2])};
    out << j.dump(2) << "\n";
  } else if (*sim) {
    man.seed = simcfg.seed;
    man.has_seed = true;
    simcfg.ch = ch;
    simcfg.tc = load_tc(xc, ch);
    certify(simcfg.tc, ch, TcKind::F);
    SimReport rep = run_trials(simcfg);
    json j;
    j["trials"] = rep.trials;
    j["p_any_error"] = sig10(rep.p_any_error);
    j["err_rx1"] = rep.err_rx1;
    j["err_rx2"] = rep.err_rx2;
    j["err_rx3"] = rep.err_rx3;
    j["dims"] = {{"s2", rep.s2}, {"s3", rep.s3}, {"t2", rep.t2},
                 {"t3", rep.t3}, {"m1", rep.m1}};
    j["events"] = rep.events;
    out << j.dump(2) << "\n";
  }

  std::cout << out.str();
  if (!cm->manifest_path.empty()) man.write(cm->manifest_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CertificationError& e) {
    std::cerr << "certification error: " << e.what() << "\n";
    return 3;
  } catch (const InfeasibilityError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
