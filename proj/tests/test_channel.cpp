#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ic3/channel.hpp"

using namespace ic3;

namespace {
ExampleParams base_params() {
  ExampleParams p;
  p.tau = 0.2;
  p.tau1 = 0.1;
  p.tau2 = 0.3;
  p.tau3 = 0.3;
  p.delta = 0.1;
  p.delta1 = 0.05;
  p.delta2 = 0.08;
  p.delta3 = 0.12;
  p.beta_z = 0.25;
  p.noise1 = {0.85, 0.05, 0.05, 0.05};
  p.noise2 = {0.9, 0.04, 0.03, 0.03};
  p.cost1 = {0, 1, 2, 1};
  p.cost2 = {0, 1, 1, 2};
  return p;
}
}  // namespace

TEST_CASE("all example channels validate and report correct sizes") {
  ExampleParams p = base_params();
  for (int k = 1; k <= 8; ++k) {
    CAPTURE(k);
    Channel3IC ch = make_example(k, p);
    CHECK_NOTHROW(ch.validate());
    int expect = (k == 4 || k == 5) ? 4 : 2;
    for (int j = 0; j < 3; ++j) {
      CHECK(ch.in_sizes[j] == expect);
      CHECK(ch.out_sizes[j] == expect);
      CHECK(static_cast<int>(ch.costs[j].size()) == expect);
    }
  }
}

TEST_CASE("examples 1-5 are 3-to-1; examples 6-8 are not") {
  ExampleParams p = base_params();
  for (int k : {1, 2, 3, 4, 5}) {
    CAPTURE(k);
    ThreeToOneCertificate c = is_three_to_one(make_example(k, p));
    CHECK(c.ok);
    CHECK(c.max_deviation < 1e-12);
  }
  // 6: receiver 2 sees X2+X3; 7: every receiver sees interference;
  // 8: receivers 1 and 2 both see interference.
  for (int k : {6, 7, 8}) {
    CAPTURE(k);
    CHECK(!is_three_to_one(make_example(k, p)).ok);
  }
}

TEST_CASE("example 1 kernels match the closed form") {
  ExampleParams p = base_params();
  Channel3IC ch = make_example(1, p);
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int x3 = 0; x3 < 2; ++x3)
        for (int y1 = 0; y1 < 2; ++y1) {
          double w1 = 0;
          for (int y2 = 0; y2 < 2; ++y2)
            for (int y3 = 0; y3 < 2; ++y3)
              w1 += ch.w(x1, x2, x3, y1, y2, y3);
          int s = x1 ^ x2 ^ x3;
          CHECK(w1 == doctest::Approx(y1 == s ? 1 - p.delta1 : p.delta1));
        }
  // User-1 cost is the identity, others zero.
  CHECK(ch.costs[0] == std::vector<double>{0, 1});
  CHECK(ch.budgets[0] == doctest::Approx(p.tau));
  CHECK(ch.budgets[1] == doctest::Approx(0.0));
}

TEST_CASE("example 4 is Z4-additive with symmetric noise") {
  ExampleParams p = base_params();
  Channel3IC ch = make_example(4, p);
  ThreeToOneCertificate c = is_three_to_one(ch);
  REQUIRE(c.ok);
  // W2(y2|x2) depends only on y2 - x2 mod 4.
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      int d = (y - x + 4) % 4;
      double expect = d == 0 ? 1 - p.delta : p.delta / 3;
      CHECK(c.W2[x * 4 + y] == doctest::Approx(expect));
    }
  CHECK(ch.costs[0] == std::vector<double>{0, 1, 1, 1});
}

TEST_CASE("push_forward produces a joint with the right conditionals") {
  ExampleParams p = base_params();
  Channel3IC ch = make_example(1, p);
  // X1 ~ Bern(tau), X2, X3 ~ Bern(1/2) independent.
  JointPmf input = JointPmf::product(
      JointPmf::product(JointPmf::single("X1", {1 - p.tau, p.tau}),
                        JointPmf::single("X2", {0.5, 0.5})),
      JointPmf::single("X3", {0.5, 0.5}));
  JointPmf j = push_forward(ch, input);
  CHECK(j.total() == doctest::Approx(1.0).epsilon(1e-12));
  for (const char* a : {"X1", "X2", "X3", "Y1", "Y2", "Y3"})
    CHECK(j.has_axis(a));
  // Y2 = BSC_{delta2}(X2): check the conditional.
  JointPmf m = j.marginal({"X2", "Y2"});
  CHECK(m.at(std::vector<int>{0, 1}) == doctest::Approx(0.5 * p.delta2));
  // Y1 given inputs matches the kernel: H(Y1|X1,X2,X3) = h(delta1).
  double hb = -p.delta1 * std::log2(p.delta1) -
              (1 - p.delta1) * std::log2(1 - p.delta1);
  CHECK(j.conditional_entropy({"Y1"}, {"X1", "X2", "X3"}) ==
        doctest::Approx(hb).epsilon(1e-10));
}

TEST_CASE("JSON round-trip preserves the channel") {
  ExampleParams p = base_params();
  for (int k : {1, 5, 7}) {
    Channel3IC ch = make_example(k, p);
    Channel3IC back = channel_from_json_text(channel_to_json_text(ch));
    CHECK(back.in_sizes == ch.in_sizes);
    CHECK(back.out_sizes == ch.out_sizes);
    REQUIRE(back.W.size() == ch.W.size());
    for (size_t i = 0; i < ch.W.size(); ++i)
      CHECK(back.W[i] == doctest::Approx(ch.W[i]).epsilon(1e-12));
    for (int j = 0; j < 3; ++j) {
      CHECK(back.costs[j] == ch.costs[j]);
      CHECK(back.budgets[j] == doctest::Approx(ch.budgets[j]));
    }
  }
}

TEST_CASE("malformed JSON and invalid kernels are rejected") {
  CHECK_THROWS_AS(channel_from_json_text("not json"), ConfigError);
  CHECK_THROWS_AS(channel_from_json_text("{}"), ConfigError);
  // Row sums off.
  ExampleParams p = base_params();
  Channel3IC ch = make_example(1, p);
  ch.W[0] += 0.5;
  CHECK_THROWS_AS(ch.validate(), ConfigError);
  ch = make_example(1, p);
  ch.W[0] = -0.1;
  CHECK_THROWS_AS(ch.validate(), ConfigError);
  ch = make_example(1, p);
  ch.costs[0] = {1.0};  // wrong length
  CHECK_THROWS_AS(ch.validate(), ConfigError);
}

TEST_CASE("unknown example index is rejected") {
  CHECK_THROWS_AS(make_example(0, base_params()), ConfigError);
  CHECK_THROWS_AS(make_example(9, base_params()), ConfigError);
}
