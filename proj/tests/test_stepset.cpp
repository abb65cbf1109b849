#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lukas/stepset.hpp"

using namespace lukas;

namespace {

std::vector<StepSet> corpus() {
  return {StepSet::from_steps({-1, 1}),    StepSet::from_steps({-1, 0, 1}),
          StepSet::from_steps({-1, 2}),    StepSet::from_steps({-1, 0, 2}),
          StepSet::from_steps({-1, 1, 3}), StepSet::from_steps({-1, 0, 1, 2, 3})};
}

std::vector<StepSet> random_sets(int count, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::vector<StepSet> out;
  while (int(out.size()) < count) {
    std::vector<int> steps{-1};
    for (int b = 0; b <= 6; ++b)
      if (gen() % 3 == 0) steps.push_back(b);
    if (steps.size() == 1 || (steps.size() == 2 && steps[1] == 0)) continue;
    out.push_back(StepSet::from_steps(std::span<const int>(steps)));
  }
  return out;
}

}  // namespace

TEST_CASE("construction accepts and canonicalizes valid step lists") {
  StepSet s = StepSet::from_steps({-1, 1});
  CHECK(s.ups() == std::vector<int>{1});
  CHECK(s.max_up() == 1);
  CHECK_FALSE(s.has_zero_step());

  StepSet shuffled = StepSet::parse("2, 0 ,-1");
  CHECK(shuffled.ups() == std::vector<int>{0, 2});
  CHECK(shuffled.to_string() == "-1,0,2");
  CHECK(shuffled.has_zero_step());

  StepSet dup = StepSet::from_steps({-1, 1, 1, -1, 3});
  CHECK(dup.ups() == std::vector<int>{1, 3});
}

TEST_CASE("construction rejects invalid step lists") {
  CHECK_THROWS_AS(StepSet::from_steps({-1, 0}), DegenerateSet);
  CHECK_THROWS_AS(StepSet::from_steps({-1, -2, 3}), IllegalStep);
  CHECK_THROWS_AS(StepSet::from_steps({0, 1}), MissingDownStep);
  CHECK_THROWS_AS(StepSet::from_steps({-1}), EmptyUps);
  CHECK_THROWS_AS(StepSet::from_steps({-1, 0, 0}), DegenerateSet);
  CHECK_THROWS_AS(StepSet::parse("-1,x"), ValidationError);
  CHECK_THROWS_AS(StepSet::parse(""), ValidationError);
}

TEST_CASE("eval_S values and derivatives") {
  StepSet dyck = StepSet::from_steps({-1, 1});
  CHECK(dyck.eval_S(1.0, 0) == doctest::Approx(2.0));
  CHECK(dyck.eval_S(1.0, 1) == doctest::Approx(0.0));

  StepSet fuss = StepSet::from_steps({-1, 2});
  // derivative via central difference of the order-0 evaluation
  double h = 1e-6;
  double fd = (fuss.eval_S(1.0 + h, 0) - fuss.eval_S(1.0 - h, 0)) / (2 * h);
  CHECK(fuss.eval_S(1.0, 1) == doctest::Approx(1.0));
  CHECK(fuss.eval_S(1.0, 1) == doctest::Approx(fd).epsilon(1e-6));

  CHECK_THROWS_AS(dyck.eval_S(0.0, 0), NonPositiveArgument);
  CHECK_THROWS_AS(dyck.eval_S(-1.0, 2), NonPositiveArgument);
  CHECK_THROWS_AS(dyck.eval_S(1.0, 5), ValidationError);
}

TEST_CASE("eval_S is exact over rationals") {
  StepSet fuss = StepSet::from_steps({-1, 2});
  Rat half(1, 2);
  CHECK(fuss.eval_S(half, 0) == Rat(9, 4));  // 2 + 1/4
  CHECK(fuss.eval_S(half, 1) == Rat(-3));    // -4 + 1
  CHECK(fuss.eval_S(half, 2) == Rat(18));    // 16 + 2
  StepSet dyck = StepSet::from_steps({-1, 1});
  CHECK(dyck.eval_S(Rat(1), 3) == Rat(-6));
  CHECK(dyck.eval_S(Rat(1), 4) == Rat(24));
}

TEST_CASE("eval_S derivatives match finite differences of the lower order") {
  auto sets = corpus();
  auto extra = random_sets(6, 20240917);
  sets.insert(sets.end(), extra.begin(), extra.end());
  for (const StepSet& s : sets) {
    for (double u : {0.5, 0.8, 1.0, 1.3}) {
      for (int order = 1; order <= 4; ++order) {
        double h = 2e-5 * u;
        double fd =
            (s.eval_S(u + h, order - 1) - s.eval_S(u - h, order - 1)) / (2 * h);
        double direct = s.eval_S(u, order);
        double scale = std::max({std::abs(direct), std::abs(fd), 1.0});
        CHECK(std::abs(direct - fd) / scale < 1e-6);
      }
    }
  }
}

TEST_CASE("period") {
  CHECK(StepSet::from_steps({-1, 1}).period() == 2);
  CHECK(StepSet::from_steps({-1, 0, 1}).period() == 1);
  CHECK(StepSet::from_steps({-1, 2}).period() == 3);
  CHECK(StepSet::from_steps({-1, 1, 3}).period() == 2);

  for (const StepSet& s : random_sets(12, 7)) {
    int p = s.period();
    for (int b : s.ups()) CHECK((b + 1) % p == 0);
  }
}

TEST_CASE("drift and the tau = 1 dichotomy") {
  CHECK(StepSet::from_steps({-1, 1}).drift() == 0);
  CHECK(StepSet::from_steps({-1, 0, 1}).drift() == 0);
  CHECK(StepSet::from_steps({-1, 2}).drift() == 1);

  CHECK(StepSet::from_steps({-1, 1}).tau_is_one());
  CHECK(StepSet::from_steps({-1, 0, 1}).tau_is_one());
  CHECK_FALSE(StepSet::from_steps({-1, 2}).tau_is_one());

  auto sets = corpus();
  auto extra = random_sets(12, 99);
  sets.insert(sets.end(), extra.begin(), extra.end());
  for (const StepSet& s : sets) {
    CHECK(s.drift() >= 0);
    CHECK((s.drift() == 0) == s.tau_is_one());
  }
}
