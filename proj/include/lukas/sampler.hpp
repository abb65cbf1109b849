#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lukas/exact.hpp"

namespace lukas {

/// One concrete path. Dispersed altitude-0 horizontal insertions appear
/// as step value 0 (0 is never a member of a dispersed step set).
struct LatticePath {
  PathKind kind = PathKind::Excursion;
  std::vector<int> steps;
};

/// Checks every LatticePath invariant: steps drawn from S (plus the
/// horizontal insertion for Dispersed, only at altitude 0), prefix sums
/// non-negative, and the kind's end condition.
bool is_valid_path(const StepSet& s, const LatticePath& p);

/// xoshiro256** seeded via splitmix64; the output stream depends only on
/// the seed value, never on the platform.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);
  std::uint64_t next();

 private:
  std::uint64_t s_[4];
};

/// Derives the seed for trial i from a base seed; documented so that
/// parallel trial runs stay reproducible: splitmix64 applied to
/// seed + i * 0x9e3779b97f4a7c15.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i);

/// Backward completion-count tables for one (step set, kind, length).
/// Each sample draws one uniform big integer below total() and unranks it
/// through the table; the result is exactly uniform over the family.
class CompletionTable {
 public:
  CompletionTable(const StepSet& s, PathKind kind, long n);

  const Int& total() const { return total_; }
  long length() const { return n_; }

  /// Deterministic in the seed; exactly uniform over the family.
  LatticePath sample(std::uint64_t seed) const;

 private:
  const Int& completions(long remaining, long altitude) const;

  StepSet s_;
  PathKind kind_;
  long n_;
  // rows_[j][a] = completions with j steps remaining from altitude a,
  // for a < stored_[j]; above that excursions are dead and meanders free.
  std::vector<std::vector<Int>> rows_;
  std::vector<Int> free_;  // S(1)^j, the unconstrained meander counts
  Int total_;
};

/// Convenience wrapper building a one-shot table.
LatticePath sample_path(const StepSet& s, PathKind kind, long n,
                        std::uint64_t seed);

struct EmpiricalMoments {
  double mean = 0;
  double variance = 0;  // unbiased (trials - 1 denominator)
  long trials = 0;
};

EmpiricalMoments empirical_moments(const StepSet& s, PathKind kind, long n,
                                   int r, long trials, std::uint64_t seed);

/// Kolmogorov-Smirnov distance between the standardized r-ascent counts of
/// sampled meanders and the standard normal CDF. mu and sigma2 default to
/// the meander constants; overrides must be supplied for the tau = 1 step
/// sets. Requires trials >= 100.
double normality_check(const StepSet& s, int r, long n, long trials,
                       std::uint64_t seed, std::optional<double> mu = {},
                       std::optional<double> sigma2 = {});

}  // namespace lukas
