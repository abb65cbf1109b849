#include "lukas/exact.hpp"

#include <algorithm>
#include <thread>

namespace lukas {

std::string_view to_string(PathKind kind) {
  switch (kind) {
    case PathKind::Excursion: return "excursion";
    case PathKind::Dispersed: return "dispersed";
    case PathKind::Meander: return "meander";
  }
  return "?";
}

PathKind parse_path_kind(std::string_view text) {
  if (text == "excursion") return PathKind::Excursion;
  if (text == "dispersed") return PathKind::Dispersed;
  if (text == "meander") return PathKind::Meander;
  throw ValidationError("unknown path kind \"" + std::string(text) +
                        "\" (expected excursion|dispersed|meander)");
}

Int AscentDistribution::total() const {
  Int t = 0;
  for (const Int& c : counts) t += c;
  return t;
}

namespace {

void validate_kind(const StepSet& s, PathKind kind) {
  if (kind == PathKind::Dispersed && s.has_zero_step())
    throw DispersedNeedsNoZeroStep();
}

void validate_r(int r) {
  if (r < 1) throw ValidationError("ascent length r must be >= 1");
}

void validate_n(long n) {
  if (n < 0) throw ValidationError("path length n must be >= 0");
}

long max_ascents(long n, int r) { return (n + 1) / (r + 1); }

// Largest altitude reachable after i of n steps.
long alt_cap(PathKind kind, long n, long i, int max_up) {
  long hi = i * max_up;
  if (kind != PathKind::Meander) hi = std::min(hi, n - i);
  return hi;
}

// Runs fn(lo, hi) over a partition of [0, size), on `threads` workers.
// The partition depends only on size and threads, never on timing.
void parallel_ranges(long size, int threads,
                     const std::function<void(long, long)>& fn) {
  if (threads <= 1 || size < 2048) {
    fn(0, size);
    return;
  }
  int t = std::min<long>(threads, (size + 255) / 256);
  std::vector<std::thread> workers;
  workers.reserve(t);
  long chunk = (size + t - 1) / t;
  for (int i = 0; i < t; ++i) {
    long lo = i * chunk, hi = std::min(size, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& w : workers) w.join();
}

// --- altitude-only kernel (plain counting) --------------------------------

Int count_by_altitude(const StepSet& s, PathKind kind, long n,
                      const ExactOptions& opt) {
  const bool dispersed = kind == PathKind::Dispersed;
  const auto& ups = s.ups();
  long max_row = 0;
  for (long i = 0; i <= n; ++i)
    max_row = std::max(max_row, alt_cap(kind, n, i, s.max_up()) + 1);

  std::vector<Int> cur(max_row), nxt(max_row);
  cur[0] = 1;
  long prev_hi = 0;
  for (long i = 1; i <= n; ++i) {
    long hi = alt_cap(kind, n, i, s.max_up());
    parallel_ranges(hi + 1, opt.threads, [&](long lo, long up) {
      for (long a = lo; a < up; ++a) {
        Int& out = nxt[a];
        bool set = false;
        if (a + 1 <= prev_hi) {
          out = cur[a + 1];
          set = true;
        }
        for (int b : ups) {
          long src = a - b;
          if (src < 0 || src > prev_hi) continue;
          if (set) out += cur[src]; else { out = cur[src]; set = true; }
        }
        if (dispersed && a == 0) {
          if (set) out += cur[0]; else { out = cur[0]; set = true; }
        }
        if (!set) out = 0;
      }
    });
    cur.swap(nxt);
    prev_hi = hi;
  }

  if (kind == PathKind::Meander) {
    Int total = 0;
    for (long a = 0; a <= prev_hi; ++a) total += cur[a];
    return total;
  }
  return cur[0];
}

// --- (altitude, run) kernel ------------------------------------------------
//
// State: altitude a and clipped run length u = min(current up-run, r+1).
// A down step (or a dispersed horizontal, or the end of the path) records
// an ascent exactly when u == r.

struct DistPayload {
  std::vector<Int> k;

  explicit DistPayload(long kmax = 0) : k(kmax + 1) {}
  void set_zero() { for (Int& v : k) v = 0; }
  bool is_zero() const {
    for (const Int& v : k) if (v != 0) return false;
    return true;
  }
  void accumulate(const DistPayload& src, bool ascent) {
    if (ascent) {
      for (std::size_t j = 0; j + 1 < k.size(); ++j) k[j + 1] += src.k[j];
    } else {
      for (std::size_t j = 0; j < k.size(); ++j) k[j] += src.k[j];
    }
  }
  void seed_empty_path() { k[0] = 1; }
};

struct MomentPayload {
  Int c, s1, s2;

  explicit MomentPayload(long = 0) : c(0), s1(0), s2(0) {}
  void set_zero() { c = 0; s1 = 0; s2 = 0; }
  bool is_zero() const { return c == 0; }
  void accumulate(const MomentPayload& src, bool ascent) {
    c += src.c;
    if (ascent) {
      // k -> k+1: sum k gains c, sum k^2 gains 2 sum k + c.
      s2 += src.s2;
      s2 += src.s1;
      s2 += src.s1;
      s2 += src.c;
      s1 += src.s1;
      s1 += src.c;
    } else {
      s1 += src.s1;
      s2 += src.s2;
    }
  }
  void seed_empty_path() { c = 1; }
};

template <class Payload>
Payload run_ascent_dp(const StepSet& s, PathKind kind, long n, int r,
                      const ExactOptions& opt, long kmax) {
  const bool dispersed = kind == PathKind::Dispersed;
  const auto& ups = s.ups();
  const int runs = r + 2;  // u in 0..r+1

  long max_row = 0;
  for (long i = 0; i <= n; ++i)
    max_row = std::max(max_row, alt_cap(kind, n, i, s.max_up()) + 1);

  std::vector<Payload> cur(max_row * runs, Payload(kmax));
  std::vector<Payload> nxt(max_row * runs, Payload(kmax));
  cur[0].seed_empty_path();

  long prev_hi = 0;
  for (long i = 1; i <= n; ++i) {
    long hi = alt_cap(kind, n, i, s.max_up());
    parallel_ranges(hi + 1, opt.threads, [&](long lo, long up) {
      for (long a = lo; a < up; ++a) {
        // u' = 0: run-terminating arrivals (down step; dispersed horizontal).
        Payload& head = nxt[a * runs];
        head.set_zero();
        if (a + 1 <= prev_hi)
          for (int u = 0; u < runs; ++u)
            head.accumulate(cur[(a + 1) * runs + u], u == r);
        if (dispersed && a == 0)
          for (int u = 0; u < runs; ++u)
            head.accumulate(cur[u], u == r);
        // u' >= 1: arrivals by an up step extending a run of length u'-1;
        // the top slot also absorbs runs already clipped at r+1.
        for (int u2 = 1; u2 < runs; ++u2) {
          Payload& out = nxt[a * runs + u2];
          out.set_zero();
          for (int b : ups) {
            long src = a - b;
            if (src < 0 || src > prev_hi) continue;
            out.accumulate(cur[src * runs + (u2 - 1)], false);
            if (u2 == r + 1) out.accumulate(cur[src * runs + (r + 1)], false);
          }
        }
      }
    });
    cur.swap(nxt);
    prev_hi = hi;
  }

  // Accepting states; a trailing run of exactly r records a final ascent.
  Payload acc(kmax);
  long accept_hi = kind == PathKind::Meander ? prev_hi : 0;
  for (long a = 0; a <= accept_hi; ++a)
    for (int u = 0; u < runs; ++u)
      acc.accumulate(cur[a * runs + u], u == r);
  return acc;
}

}  // namespace

Int count(const StepSet& s, PathKind kind, long n, const ExactOptions& opt) {
  validate_kind(s, kind);
  validate_n(n);
  if (n == 0) return 1;
  return count_by_altitude(s, kind, n, opt);
}

AscentDistribution distribution(const StepSet& s, PathKind kind, long n, int r,
                                const ExactOptions& opt) {
  validate_kind(s, kind);
  validate_n(n);
  validate_r(r);
  AscentDistribution d{n, r, kind, {}};
  long kmax = max_ascents(n, r);
  if (n == 0) {
    d.counts.assign(1, Int(1));
    return d;
  }
  d.counts = run_ascent_dp<DistPayload>(s, kind, n, r, opt, kmax).k;
  return d;
}

Moments moments(const StepSet& s, PathKind kind, long n, int r,
                const ExactOptions& opt) {
  validate_kind(s, kind);
  validate_n(n);
  validate_r(r);
  if (n == 0) return {Int(1), Rat(0), Rat(0)};
  MomentPayload m = run_ascent_dp<MomentPayload>(s, kind, n, r, opt, 0);
  if (m.c == 0) throw EmptyFamily();
  Rat mean = make_rat(m.s1, m.c);
  Rat second = make_rat(m.s2, m.c);
  return {m.c, mean, second - mean * mean};
}

Moments moments_from_distribution(const AscentDistribution& d) {
  Int c = 0, s1 = 0, s2 = 0;
  for (std::size_t k = 0; k < d.counts.size(); ++k) {
    c += d.counts[k];
    s1 += d.counts[k] * long(k);
    s2 += d.counts[k] * long(k * k);
  }
  if (c == 0) throw EmptyFamily();
  Rat mean = make_rat(s1, c);
  return {c, mean, make_rat(s2, c) - mean * mean};
}

namespace {

// Shared DFS over all paths of one family. `steps` may be null when the
// caller only needs ascent counts. Run lengths are tracked unclipped and
// compared against r on termination, independently of the DP's clipping.
struct Walker {
  const StepSet& s;
  PathKind kind;
  long n;
  int r;  // 0 when unused
  std::vector<int>* steps;
  std::vector<unsigned long>* hist;
  const std::function<void(std::span<const int>)>* visit;

  void leaf(long run, long k) const {
    if (hist) (*hist)[k + (run == r ? 1 : 0)]++;
    if (visit) (*visit)(std::span<const int>(*steps));
  }

  // depth steps taken, at altitude a, current up-run length `run`,
  // k ascents recorded so far.
  void go(long depth, long a, long run, long k) const {
    if (depth == n) {
      if (kind == PathKind::Meander || a == 0) leaf(run, k);
      return;
    }
    long remaining = n - depth;
    for (int b : s.ups()) {
      long na = a + b;
      if (kind != PathKind::Meander && na > remaining - 1) continue;
      if (steps) steps->push_back(b);
      go(depth + 1, na, run + 1, k);
      if (steps) steps->pop_back();
    }
    if (a >= 1) {
      if (steps) steps->push_back(-1);
      go(depth + 1, a - 1, 0, k + (run == r ? 1 : 0));
      if (steps) steps->pop_back();
    }
    if (kind == PathKind::Dispersed && a == 0) {
      if (steps) steps->push_back(0);
      go(depth + 1, 0, 0, k + (run == r ? 1 : 0));
      if (steps) steps->pop_back();
    }
  }
};

}  // namespace

AscentDistribution brute_force_distribution(const StepSet& s, PathKind kind,
                                            long n, int r, long cap) {
  validate_kind(s, kind);
  validate_n(n);
  validate_r(r);
  if (n > cap) throw CapExceeded(n, cap);
  std::vector<unsigned long> hist(max_ascents(n, r) + 1, 0);
  Walker w{s, kind, n, r, nullptr, &hist, nullptr};
  w.go(0, 0, 0, 0);
  AscentDistribution d{n, r, kind, {}};
  d.counts.reserve(hist.size());
  for (unsigned long h : hist) d.counts.emplace_back(h);
  return d;
}

void enumerate_paths(const StepSet& s, PathKind kind, long n,
                     const std::function<void(std::span<const int>)>& fn) {
  validate_kind(s, kind);
  validate_n(n);
  std::vector<int> steps;
  steps.reserve(n);
  Walker w{s, kind, n, 0, &steps, nullptr, &fn};
  w.go(0, 0, 0, 0);
}

long count_ascents(const StepSet&, PathKind kind, std::span<const int> steps,
                   int r) {
  validate_r(r);
  long k = 0, run = 0;
  for (int st : steps) {
    bool up = st >= 0 && !(kind == PathKind::Dispersed && st == 0);
    if (up) {
      ++run;
    } else {
      if (run == r) ++k;
      run = 0;
    }
  }
  if (run == r) ++k;
  return k;
}

}  // namespace lukas
