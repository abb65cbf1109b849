#include "lukas/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "lukas/asymptotics.hpp"

namespace lukas {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Uniform integer in [0, bound) by rejection on the bit width.
Int uniform_below(Xoshiro256& rng, const Int& bound) {
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  std::size_t words = (bits + 63) / 64;
  int top_shift = int(64 * words - bits);
  std::vector<std::uint64_t> buf(words);
  Int draw;
  do {
    for (std::uint64_t& w : buf) w = rng.next();
    buf.back() >>= top_shift;
    mpz_import(draw.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0,
               buf.data());
  } while (draw >= bound);
  return draw;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (std::uint64_t& v : s_) v = splitmix64(sm);
}

std::uint64_t Xoshiro256::next() {
  std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t state = seed + i * 0x9e3779b97f4a7c15ULL;
  return splitmix64(state);
}

bool is_valid_path(const StepSet& s, const LatticePath& p) {
  const auto& ups = s.ups();
  if (p.kind == PathKind::Dispersed && s.has_zero_step()) return false;
  long a = 0;
  for (int st : p.steps) {
    bool member = st == -1 || std::binary_search(ups.begin(), ups.end(), st);
    if (p.kind == PathKind::Dispersed && st == 0) {
      if (a != 0) return false;  // horizontal insertions only on the axis
    } else if (!member) {
      return false;
    }
    a += st;
    if (a < 0) return false;
  }
  if (p.kind != PathKind::Meander && a != 0) return false;
  return true;
}

CompletionTable::CompletionTable(const StepSet& s, PathKind kind, long n)
    : s_(s), kind_(kind), n_(n) {
  if (kind == PathKind::Dispersed && s.has_zero_step())
    throw DispersedNeedsNoZeroStep();
  if (n < 0) throw ValidationError("path length n must be >= 0");

  const auto& ups = s_.ups();
  const bool meander = kind_ == PathKind::Meander;

  free_.resize(n_ + 1);
  free_[0] = 1;
  Int per_step(long(ups.size()) + 1);
  for (long j = 1; j <= n_; ++j) free_[j] = free_[j - 1] * per_step;

  // rows_[j] stores completions from altitudes where the constraint binds:
  // a < j for meanders (above that every continuation stays non-negative),
  // a <= j for the returning kinds (above that none can come back), both
  // clipped to the altitudes reachable in n - j steps.
  rows_.resize(n_ + 1);
  for (long j = 0; j <= n_; ++j) {
    long reach = (n_ - j) * s_.max_up();
    long need = meander ? j : j + 1;
    rows_[j].assign(std::min(reach + 1, need), Int(0));
  }
  if (!rows_[0].empty()) rows_[0][0] = 1;  // empty completion at altitude 0
  for (long j = 1; j <= n_; ++j) {
    for (long a = 0; a < long(rows_[j].size()); ++a) {
      Int acc = completions(j - 1, a - 1);  // down step
      for (int b : ups) acc += completions(j - 1, a + b);
      if (kind_ == PathKind::Dispersed && a == 0) acc += completions(j - 1, 0);
      rows_[j][a] = std::move(acc);
    }
  }
  total_ = completions(n_, 0);
}

const Int& CompletionTable::completions(long remaining, long altitude) const {
  static const Int zero(0);
  if (altitude < 0) return zero;
  if (altitude < long(rows_[remaining].size())) return rows_[remaining][altitude];
  if (kind_ == PathKind::Meander && altitude >= remaining)
    return free_[remaining];
  return zero;
}

LatticePath CompletionTable::sample(std::uint64_t seed) const {
  if (total_ == 0) throw EmptyFamily();
  Xoshiro256 rng(seed);
  Int x = uniform_below(rng, total_);

  LatticePath path{kind_, {}};
  path.steps.reserve(n_);
  long a = 0;
  for (long j = n_; j >= 1; --j) {
    // Fixed unranking order: -1, then the up steps ascending, then the
    // dispersed horizontal insertion.
    bool chosen = false;
    auto try_step = [&](int st, const Int& weight) {
      if (chosen || weight == 0) return;
      if (x < weight) {
        path.steps.push_back(st);
        a += st;
        chosen = true;
      } else {
        x -= weight;
      }
    };
    if (a >= 1) try_step(-1, completions(j - 1, a - 1));
    for (int b : s_.ups()) try_step(b, completions(j - 1, a + b));
    if (kind_ == PathKind::Dispersed && a == 0)
      try_step(0, completions(j - 1, 0));
    if (!chosen)
      throw Error("completion table is inconsistent");  // unreachable
  }
  return path;
}

LatticePath sample_path(const StepSet& s, PathKind kind, long n,
                        std::uint64_t seed) {
  return CompletionTable(s, kind, n).sample(seed);
}

EmpiricalMoments empirical_moments(const StepSet& s, PathKind kind, long n,
                                   int r, long trials, std::uint64_t seed) {
  if (trials < 1) throw ZeroTrials();
  if (r < 1) throw ValidationError("ascent length r must be >= 1");
  CompletionTable table(s, kind, n);
  if (table.total() == 0) throw EmptyFamily();
  double sum = 0, sum2 = 0;
  for (long i = 0; i < trials; ++i) {
    LatticePath p = table.sample(derive_seed(seed, std::uint64_t(i)));
    double k = double(count_ascents(s, kind, p.steps, r));
    sum += k;
    sum2 += k * k;
  }
  double mean = sum / double(trials);
  double variance =
      trials > 1 ? (sum2 - double(trials) * mean * mean) / double(trials - 1)
                 : 0.0;
  return {mean, variance, trials};
}

double normality_check(const StepSet& s, int r, long n, long trials,
                       std::uint64_t seed, std::optional<double> mu,
                       std::optional<double> sigma2) {
  if (trials < 100) throw ZeroTrials(100);
  if (!mu || !sigma2) {
    MeanderConstants mc = meander_constants(s, r);
    if (!mu) mu = mc.mu.convert_to<double>();
    if (!sigma2) sigma2 = mc.sigma2.convert_to<double>();
  }
  CompletionTable table(s, PathKind::Meander, n);
  std::vector<double> zs;
  zs.reserve(trials);
  double scale = std::sqrt(*sigma2 * double(n));
  for (long i = 0; i < trials; ++i) {
    LatticePath p = table.sample(derive_seed(seed, std::uint64_t(i)));
    double k = double(count_ascents(s, PathKind::Meander, p.steps, r));
    zs.push_back((k - *mu * double(n)) / scale);
  }
  std::sort(zs.begin(), zs.end());
  double ks = 0;
  double m = double(trials);
  for (long i = 0; i < trials; ++i) {
    double cdf = normal_cdf(zs[i]);
    ks = std::max(ks, std::max(cdf - double(i) / m, double(i + 1) / m - cdf));
  }
  return ks;
}

}  // namespace lukas
