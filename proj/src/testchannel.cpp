#include "ic3/testchannel.hpp"

#include <cmath>

#include "ic3/group_info.hpp"

namespace ic3 {
namespace {

std::vector<std::vector<std::string>> blocks_for(TcKind kind) {
  switch (kind) {
    case TcKind::U:
    case TcKind::F:
    case TcKind::G:
      return {{"X1"}, {"U2", "X2"}, {"U3", "X3"}};
    case TcKind::FGeneral:
      return {{"U12", "U13", "X1"}, {"U21", "U23", "X2"}, {"U31", "U32", "X3"}};
    case TcKind::UF:
      return {{"X1"}, {"U2", "V2", "X2"}, {"U3", "V3", "X3"}};
  }
  throw DomainError("unknown test-channel kind");
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

CertifyReport certify(const TestChannel& tc, const Channel3IC& ch, TcKind kind,
                      double tol) {
  CertifyReport rep;
  const JointPmf& p = tc.pmf;
  for (const char* ax : {"Q", "X1", "X2", "X3", "Y1", "Y2", "Y3"})
    if (!p.has_axis(ax))
      throw CertificationError(std::string("missing axis ") + ax);

  // (i) Channel consistency: the pmf must equal the push-forward of its
  // own input marginal.
  JointPmf input = p.without({"Y1", "Y2", "Y3"});
  JointPmf expect = push_forward(ch, input);
  JointPmf got = p.marginal(expect.axes());
  rep.channel_deviation = max_abs_diff(expect.data(), got.data());
  if (rep.channel_deviation > tol)
    throw CertificationError(
        "channel-consistency: pmf does not factor through W (deviation " +
        std::to_string(rep.channel_deviation) + ")");

  // (ii) Conditional mutual independence of the user blocks given Q.
  auto blocks = blocks_for(kind);
  for (const auto& blk : blocks)
    for (const auto& ax : blk)
      if (!p.has_axis(ax))
        throw CertificationError("missing axis " + ax + " for this kind");
  std::vector<std::string> all;
  for (const auto& blk : blocks) all.insert(all.end(), blk.begin(), blk.end());
  for (int q = 0; q < p.size_of("Q"); ++q) {
    double mass = 0;
    JointPmf cond = input.conditioned("Q", q, &mass);
    if (mass <= 0) continue;
    JointPmf joint = cond.marginal(all);
    JointPmf prod = cond.marginal(blocks[0]);
    prod = JointPmf::product(prod, cond.marginal(blocks[1]));
    prod = JointPmf::product(prod, cond.marginal(blocks[2]));
    rep.indep_deviation = std::max(
        rep.indep_deviation, max_abs_diff(joint.data(), prod.data()));
  }
  if (rep.indep_deviation > tol)
    throw CertificationError(
        "conditional-independence: user blocks are not mutually independent "
        "given Q (deviation " + std::to_string(rep.indep_deviation) + ")");

  // (iii) Cost budgets.
  for (int j = 0; j < 3; ++j) {
    rep.costs[j] = p.expectation("X" + std::to_string(j + 1), ch.costs[j]);
    if (rep.costs[j] > ch.budgets[j] + tol)
      throw CertificationError("cost-budget: E[k" + std::to_string(j + 1) +
                               "(X" + std::to_string(j + 1) + ")] = " +
                               std::to_string(rep.costs[j]) + " exceeds " +
                               std::to_string(ch.budgets[j]));
  }

  // (iv) Algebra structure.
  auto need_field = [&](size_t n) {
    if (tc.algebra != AlgebraKind::Field || tc.fields.size() != n)
      throw CertificationError("algebra-structure: kind requires " +
                               std::to_string(n) + " field(s)");
  };
  switch (kind) {
    case TcKind::U:
      break;
    case TcKind::F:
    case TcKind::UF:
      need_field(1);
      if (p.size_of("U2") != tc.fields[0].order ||
          p.size_of("U3") != tc.fields[0].order)
        throw CertificationError(
            "algebra-structure: U2/U3 must match the field order");
      break;
    case TcKind::FGeneral: {
      need_field(3);
      const char* names[6] = {"U12", "U13", "U21", "U23", "U31", "U32"};
      const int target[6] = {1, 2, 0, 2, 0, 1};  // field index of each axis
      for (int i = 0; i < 6; ++i)
        if (p.size_of(names[i]) != tc.fields[target[i]].order)
          throw CertificationError(std::string("algebra-structure: ") +
                                   names[i] + " must live in field theta_" +
                                   std::to_string(target[i] + 1));
      break;
    }
    case TcKind::G: {
      if (tc.algebra != AlgebraKind::Group || !tc.group)
        throw CertificationError("algebra-structure: kind requires a group");
      const auto& g = *tc.group;
      if (p.size_of("U2") != g.order || p.size_of("U3") != g.order)
        throw CertificationError(
            "algebra-structure: U2/U3 must match the group order");
      if (tc.weights.size() != g.factors.size())
        throw CertificationError("algebra-structure: weight vector size");
      double wsum = 0;
      for (double w : tc.weights) {
        if (w < 0)
          throw CertificationError("algebra-structure: negative weight");
        wsum += w;
      }
      if (wsum <= 0)
        throw CertificationError("algebra-structure: weights all zero");
      // Group condition (iv):
      // I(X_j;Y_j|Q,U_j) + C_w(U_j;Y_j|Q) - S_w(U_j;0|Q) >= 0.
      for (int j = 2; j <= 3; ++j) {
        std::string u = "U" + std::to_string(j), x = "X" + std::to_string(j),
                    y = "Y" + std::to_string(j);
        double v = p.mutual_information({x}, {y}, {"Q", u}) +
                   group_channel_info(p, u, {y}, g, tc.weights, {"Q"}) -
                   group_source_info(p, u, {}, g, tc.weights, {"Q"});
        if (v < -tol)
          throw CertificationError("group-condition-iv: violated for user " +
                                   std::to_string(j) + " (value " +
                                   std::to_string(v) + ")");
      }
      break;
    }
  }
  return rep;
}

TestChannel tc_from_input(const Channel3IC& ch, const JointPmf& input,
                          AlgebraKind algebra, std::vector<FieldSpec> fields,
                          std::optional<AbelianGroupSpec> group,
                          WeightVector weights) {
  TestChannel tc;
  JointPmf in = input;
  if (!in.has_axis("Q")) in = JointPmf::product(JointPmf::single("Q", {1.0}), in);
  tc.pmf = push_forward(ch, in);
  tc.algebra = algebra;
  tc.fields = std::move(fields);
  tc.group = std::move(group);
  tc.weights = std::move(weights);
  return tc;
}

}  // namespace ic3
