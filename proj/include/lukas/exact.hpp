#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "lukas/numeric.hpp"
#include "lukas/stepset.hpp"

namespace lukas {

enum class PathKind { Excursion, Dispersed, Meander };

std::string_view to_string(PathKind kind);
PathKind parse_path_kind(std::string_view text);

/// Exact distribution of the number of r-ascents over all paths of one
/// kind and length: counts[k] = number of paths with exactly k r-ascents.
/// The list is dense of length floor((n+1)/(r+1)) + 1.
struct AscentDistribution {
  long n = 0;
  int r = 1;
  PathKind kind = PathKind::Excursion;
  std::vector<Int> counts;

  Int total() const;
};

struct Moments {
  Int count;
  Rat mean;
  Rat variance;
};

struct ExactOptions {
  /// Number of worker threads for the altitude sweep. The partitioning is
  /// a pure gather, so results are bitwise identical for every value.
  int threads = 1;
};

/// Number of paths of the given kind and length. The empty path counts
/// once for every kind.
Int count(const StepSet& s, PathKind kind, long n, const ExactOptions& opt = {});

/// Exact r-ascent distribution. An r-ascent is a maximal run of exactly r
/// consecutive non-down steps (the step 0, when present, counts toward
/// runs); a run cut off by the end of the path counts; the dispersed
/// altitude-0 horizontal insertions are never part of a run.
AscentDistribution distribution(const StepSet& s, PathKind kind, long n, int r,
                                const ExactOptions& opt = {});

/// Exact mean and variance of the r-ascent count under the uniform model,
/// via a DP that propagates (count, sum k, sum k^2) instead of the full
/// distribution. Errors with EmptyFamily when there are no paths.
Moments moments(const StepSet& s, PathKind kind, long n, int r,
                const ExactOptions& opt = {});

/// Same moments recomputed from an explicit distribution.
Moments moments_from_distribution(const AscentDistribution& d);

/// Independent oracle: walks every path of the family explicitly and
/// counts ascents by direct scan of the definition. Exponential in n.
AscentDistribution brute_force_distribution(const StepSet& s, PathKind kind,
                                            long n, int r, long cap = 14);

/// Visits every path of the family once. Dispersed horizontal insertions
/// appear as step value 0 (never a member of a dispersed step set).
void enumerate_paths(const StepSet& s, PathKind kind, long n,
                     const std::function<void(std::span<const int>)>& fn);

/// Number of r-ascents of one explicit path, by direct scan.
long count_ascents(const StepSet& s, PathKind kind, std::span<const int> steps,
                   int r);

}  // namespace lukas
