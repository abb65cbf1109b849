#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "lukas/asymptotics.hpp"
#include "lukas/sampler.hpp"

using namespace lukas;

TEST_CASE("singleton families sample their unique path") {
  StepSet fuss = StepSet::from_steps({-1, 2});
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xdeadbeefULL}) {
    LatticePath p = sample_path(fuss, PathKind::Excursion, 3, seed);
    CHECK(p.steps == std::vector<int>{2, -1, -1});
  }
  LatticePath empty = sample_path(fuss, PathKind::Meander, 0, 9);
  CHECK(empty.steps.empty());
}

TEST_CASE("sampling is deterministic in the seed") {
  StepSet s = StepSet::from_steps({-1, 0, 2});
  CompletionTable table(s, PathKind::Meander, 40);
  LatticePath a = table.sample(1234);
  LatticePath b = table.sample(1234);
  CHECK(a.steps == b.steps);
  bool saw_difference = false;
  for (std::uint64_t seed = 0; seed < 16 && !saw_difference; ++seed)
    saw_difference = table.sample(seed).steps != a.steps;
  CHECK(saw_difference);
}

TEST_CASE("sampled paths satisfy the path invariants") {
  for (auto steps : {std::vector<int>{-1, 1}, {-1, 2}, {-1, 0, 1, 2, 3}}) {
    StepSet s = StepSet::from_steps(std::span<const int>(steps));
    for (PathKind kind : {PathKind::Excursion, PathKind::Dispersed, PathKind::Meander}) {
      if (kind == PathKind::Dispersed && s.has_zero_step()) continue;
      for (long n : {0L, 5L, 6L, 31L}) {
        CompletionTable table(s, kind, n);
        if (table.total() == 0) continue;
        for (std::uint64_t i = 0; i < 25; ++i) {
          LatticePath p = table.sample(derive_seed(99, i));
          CHECK(p.steps.size() == std::size_t(n));
          CHECK(is_valid_path(s, p));
        }
      }
    }
  }
}

TEST_CASE("empty families are rejected") {
  StepSet dyck = StepSet::from_steps({-1, 1});
  CHECK_THROWS_AS(sample_path(dyck, PathKind::Excursion, 7, 3), EmptyFamily);
  CHECK_THROWS_AS(empirical_moments(dyck, PathKind::Excursion, 7, 1, 10, 3),
                  EmptyFamily);
}

TEST_CASE("uniformity over the five Dyck excursions of length 6") {
  StepSet dyck = StepSet::from_steps({-1, 1});
  std::map<std::vector<int>, long> freq;
  enumerate_paths(dyck, PathKind::Excursion, 6,
                  [&](std::span<const int> w) { freq[{w.begin(), w.end()}] = 0; });
  REQUIRE(freq.size() == 5);

  CompletionTable table(dyck, PathKind::Excursion, 6);
  const long trials = 100000;
  for (long i = 0; i < trials; ++i) {
    LatticePath p = table.sample(derive_seed(1, std::uint64_t(i)));
    auto it = freq.find(p.steps);
    REQUIRE(it != freq.end());
    ++it->second;
  }
  double chi2 = 0;
  double expect = double(trials) / 5.0;
  for (const auto& [path, observed] : freq) {
    CHECK(double(observed) / trials > 0.19);
    CHECK(double(observed) / trials < 0.21);
    chi2 += (observed - expect) * (observed - expect) / expect;
  }
  // significance 1e-3 with 4 degrees of freedom
  CHECK(chi2 < 18.467);
}

TEST_CASE("empirical moments agree with the exact moments") {
  StepSet dyck = StepSet::from_steps({-1, 1});
  Moments exact = moments(dyck, PathKind::Excursion, 6, 1);
  EmpiricalMoments em = empirical_moments(dyck, PathKind::Excursion, 6, 1, 100000, 1);
  double se = std::sqrt(em.variance / double(em.trials));
  CHECK(std::abs(em.mean - exact.mean.get_d()) <= 3 * se);

  StepSet fuss = StepSet::from_steps({-1, 2});
  Moments exact_m = moments(fuss, PathKind::Meander, 200, 1);
  EmpiricalMoments em_m = empirical_moments(fuss, PathKind::Meander, 200, 1, 10000, 1);
  double se_m = std::sqrt(em_m.variance / double(em_m.trials));
  CHECK(std::abs(em_m.mean - exact_m.mean.get_d()) <= 3 * se_m);

  CHECK_THROWS_AS(empirical_moments(dyck, PathKind::Excursion, 6, 1, 0, 1),
                  ZeroTrials);
}

TEST_CASE("normality check rejects tiny trial counts") {
  StepSet fuss = StepSet::from_steps({-1, 2});
  CHECK_THROWS_AS(normality_check(fuss, 1, 100, 10, 7), ZeroTrials);
}

TEST_CASE("meander ascent counts are asymptotically normal") {
  StepSet fuss = StepSet::from_steps({-1, 2});
  double ks400 = normality_check(fuss, 1, 400, 10000, 7);
  CHECK(ks400 < 0.05);
  double ks1600 = normality_check(fuss, 1, 1600, 10000, 7);
  CHECK(ks1600 <= ks400 + 0.01);
}

TEST_CASE("explicit mu and sigma2 overrides drive the tau = 1 sets") {
  StepSet dyck = StepSet::from_steps({-1, 1});
  // a crude standardization from the exact moments is enough for a
  // finite-n KS sanity bound
  Moments m = moments(dyck, PathKind::Meander, 200, 1);
  double mu = m.mean.get_d() / 200.0;
  double s2 = m.variance.get_d() / 200.0;
  double ks = normality_check(dyck, 1, 200, 2000, 11, mu, s2);
  CHECK(ks < 0.1);
}
