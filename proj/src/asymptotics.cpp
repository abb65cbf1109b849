#include "lukas/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace lukas {

namespace {

// Guard digits for intermediate arithmetic; results still satisfy the
// requested tolerance after cancellations.
unsigned work_digits(unsigned digits) { return digits + 8; }

Real rel_tol(unsigned digits) {
  Real t = make_real(10L, work_digits(digits));
  return pow_int(t, 4 - long(digits));
}

// Root of a strictly monotone f inside [lo, hi] with a sign change.
// Bisection down to an absolute width of 1e-3, then Newton steps clipped
// to the shrinking bracket.
Real solve_bracketed(const std::function<Real(const Real&)>& f,
                     const std::function<Real(const Real&)>& df, Real lo,
                     Real hi, unsigned digits, const char* what) {
  const unsigned wd = work_digits(digits);
  const Real tol = rel_tol(digits);
  bool increasing = f(hi) > 0;
  Real width_goal = make_real(1e-3, wd);
  while (hi - lo > width_goal) {
    Real mid = (lo + hi) / 2;
    Real fm = f(mid);
    if ((fm > 0) == increasing) hi = mid; else lo = mid;
  }
  Real x = (lo + hi) / 2;
  for (int it = 0; it < int(4 * digits + 64); ++it) {
    Real fx = f(x);
    if (fx != 0) {
      if ((fx > 0) == increasing) hi = x; else lo = x;
    }
    Real step = fx / df(x);
    Real next = x - step;
    if (next <= lo || next >= hi) next = (lo + hi) / 2;
    Real delta = abs(next - x);
    x = next;
    if (delta <= tol * abs(x)) return x;
  }
  throw NoConvergence(std::string(what) + ": iteration budget exhausted");
}

Real real_n(long n, unsigned wd) { return make_real(n, wd); }

int parity_sign(long n) { return n % 2 == 0 ? 1 : -1; }

bool is_dyck(const StepSet& s) { return s.ups() == std::vector<int>{1}; }
bool is_motzkin(const StepSet& s) { return s.ups() == std::vector<int>{0, 1}; }

}  // namespace

Real solve_tau(const StepSet& s, unsigned digits) {
  const unsigned wd = work_digits(digits);
  if (s.tau_is_one()) return make_real(1L, wd);
  auto f = [&](const Real& u) { return s.eval_S(u, 1); };
  auto df = [&](const Real& u) { return s.eval_S(u, 2); };
  // S' is strictly increasing, negative near 0, and S'(1) = drift > 0 here.
  Real hi = make_real(1L, wd);
  Real lo = hi / 2;
  while (f(lo) >= 0) lo /= 2;
  return solve_bracketed(f, df, lo, hi, digits, "solve_tau");
}

StructuralConstants structural_constants(const StepSet& s, unsigned digits) {
  const unsigned wd = work_digits(digits);
  StructuralConstants sc;
  sc.digits = digits;
  sc.tau_exact_one = s.tau_is_one();
  sc.period = s.period();
  sc.drift = s.drift();
  sc.tau = solve_tau(s, digits);
  sc.S_tau = s.eval_S(sc.tau, 0);
  sc.S2_tau = s.eval_S(sc.tau, 2);
  sc.S3_tau = s.eval_S(sc.tau, 3);
  sc.S4_tau = s.eval_S(sc.tau, 4);
  sc.rho = make_real(1L, wd) / sc.S_tau;
  sc.c = sc.tau * sc.S_tau;
  sc.d0 = sc.tau;
  sc.d1 = sqrt(2 * sc.S_tau / sc.S2_tau);
  sc.d2 = sc.S_tau * sc.S3_tau / (3 * sc.S2_tau * sc.S2_tau);
  return sc;
}

ExcursionAscentConstants excursion_ascent_constants(const StepSet& s, int r,
                                                    unsigned digits) {
  if (r < 1) throw ValidationError("ascent length r must be >= 1");
  StructuralConstants sc = structural_constants(s, digits);
  const Real& c = sc.c;
  const Real& tau = sc.tau;
  const Real& S = sc.S_tau;
  const Real& S2 = sc.S2_tau;
  const Real& S3 = sc.S3_tau;

  ExcursionAscentConstants out;
  out.r = r;
  out.digits = digits;
  out.mu = pow_int(c - 1, r) / pow_int(c, r + 2);

  Real bracket = S2 * S2 * tau * tau * (4 * c * c - (r + 8) * c + (r + 4)) -
                 S2 * S * (6 * c * c - 6 * (r + 2) * c + (r * r + 5 * r + 6)) -
                 S3 * c * (2 * c * c - (r + 4) * c + (r + 2));
  out.c0 = pow_int(c - 1, r - 2) * bracket /
           (2 * tau * tau * pow_int(c, r + 2) * S2 * S2);

  out.sigma2 = out.mu +
               (2 * c - 2 * r - 3) * pow_int(c - 1, 2 * r) / pow_int(c, 2 * r + 4) -
               pow_int(c - 1, 2 * r - 2) * (2 * c - r - 2) * (2 * c - r - 2) /
                   (pow_int(c, 2 * r + 3) * pow_int(tau, 3) * S2);
  return out;
}

Real excursion_count_asym(const StepSet& s, long n, unsigned digits) {
  if (n < 1) throw ValidationError("length n must be >= 1");
  StructuralConstants sc = structural_constants(s, digits);
  const unsigned wd = work_digits(digits);
  if (n % sc.period != 0) return make_real(0L, wd);
  const Real& S = sc.S_tau;
  const Real& S2 = sc.S2_tau;
  const Real& S3 = sc.S3_tau;
  const Real& S4 = sc.S4_tau;
  Real p = make_real(long(sc.period), wd);
  Real pi = real_pi(wd);
  Real growth = pow_int(S, n);
  Real rn = real_n(n, wd);
  Real n32 = rn * sqrt(rn);

  Real main = p * sqrt(pow_int(S, 3) / (2 * pi * S2)) * growth / n32;
  Real corr = (p / 24) * sqrt(pow_int(S, 3) / (2 * pi * pow_int(S2, 7))) *
              (45 * pow_int(S2, 3) + 5 * S * S3 * S3 - 3 * S * S2 * S4) *
              growth / (n32 * rn);
  return main - corr;
}

Real excursion_expectation_asym(const StepSet& s, int r, long n,
                                unsigned digits) {
  int p = s.period();
  if (n < 1 || n % p != 0) throw PeriodMismatch(n, p);
  ExcursionAscentConstants k = excursion_ascent_constants(s, r, digits);
  return k.mu * real_n(n, work_digits(digits)) + k.c0;
}

Real excursion_variance_asym(const StepSet& s, int r, long n,
                             unsigned digits) {
  int p = s.period();
  if (n < 1 || n % p != 0) throw PeriodMismatch(n, p);
  ExcursionAscentConstants k = excursion_ascent_constants(s, r, digits);
  return k.sigma2 * real_n(n, work_digits(digits));
}

Real dispersed_count_asym(const StepSet& s, long n, unsigned digits) {
  if (s.has_zero_step()) throw DispersedNeedsNoZeroStep();
  if (n < 1) throw ValidationError("length n must be >= 1");
  const unsigned wd = work_digits(digits);
  Real rn = real_n(n, wd);
  Real pi = real_pi(wd);
  if (is_dyck(s)) {
    // central binomial: sqrt(2/pi) 2^n n^{-1/2} - (2-(-1)^n)/(2 sqrt(2 pi)) 2^n n^{-3/2}
    Real two_n = pow_int(make_real(2L, wd), n);
    Real main = sqrt(2 / pi) * two_n / sqrt(rn);
    Real corr = make_real(long(2 - parity_sign(n)), wd) /
                (2 * sqrt(2 * pi)) * two_n / (rn * sqrt(rn));
    return main - corr;
  }
  StructuralConstants sc = structural_constants(s, digits);
  long k = n % sc.period;
  Real p = make_real(long(sc.period), wd);
  Real tau_p = pow_int(sc.tau, sc.period);
  Real residue_factor = p * pow_int(sc.tau, k) *
                        (tau_p * (sc.period - k - 1) + (k + 1)) /
                        ((1 - tau_p) * (1 - tau_p));
  return residue_factor / sqrt(2 * pi) *
         sqrt(pow_int(sc.S_tau, 3) / sc.S2_tau) * pow_int(sc.S_tau, n) /
         (rn * sqrt(rn));
}

Real dispersed_expectation_asym(const StepSet& s, int r, long n,
                                unsigned digits) {
  if (s.has_zero_step()) throw DispersedNeedsNoZeroStep();
  if (r < 1) throw ValidationError("ascent length r must be >= 1");
  const unsigned wd = work_digits(digits);
  Real rn = real_n(n, wd);
  if (is_dyck(s)) {
    Real pi = real_pi(wd);
    Real root = sqrt(pi / 2);
    Real t1 = rn / pow_int(make_real(2L, wd), r + 2);
    Real t2 = root * (r - 2) / pow_int(make_real(2L, wd), r + 2) * sqrt(rn);
    Real t3 = make_real(long(r - 1) * (r - 4), wd) /
              pow_int(make_real(2L, wd), r + 3);
    Real t4 = root * (r - 2) * (2 - parity_sign(n)) /
              pow_int(make_real(2L, wd), r + 4) / sqrt(rn);
    return t1 - t2 + t3 - t4;
  }
  ExcursionAscentConstants k = excursion_ascent_constants(s, r, digits);
  return k.mu * rn;
}

MeanderConstants meander_constants(const StepSet& s, int r, unsigned digits) {
  if (s.tau_is_one()) throw TauIsOne();
  if (r < 1) throw ValidationError("ascent length r must be >= 1");
  const unsigned wd = work_digits(digits);
  Real tau = solve_tau(s, digits);
  Real S1 = s.eval_S(make_real(1L, wd), 0);

  MeanderConstants mc;
  mc.r = r;
  mc.digits = digits;
  mc.xi = make_real(1L, wd) / S1;

  // V(xi): the solution of S(u) = S(1) below tau. S is strictly
  // decreasing on (0, tau), unbounded at 0+, and S(tau) < S(1).
  auto g = [&](const Real& u) { return s.eval_S(u, 0) - S1; };
  auto dg = [&](const Real& u) { return s.eval_S(u, 1); };
  Real hi = tau;
  Real lo = tau / 2;
  while (g(lo) <= 0) lo /= 2;
  mc.V_xi = solve_bracketed(g, dg, lo, hi, digits, "meander_constants");

  // From z S(V(z)) = 1: V'(z) = -S(V)/(z S'(V)).
  Real Sp_V = s.eval_S(mc.V_xi, 1);
  mc.Vz_xi = -s.eval_S(mc.V_xi, 0) / (mc.xi * Sp_V);
  mc.Vt_xi = -mc.xi * pow_int(mc.V_xi - mc.xi, r) /
             (pow_int(mc.V_xi, r + 2) * Sp_V);

  Real up = S1 - 1;  // S_+(1)
  mc.mu = pow_int(up, r) / pow_int(S1, r + 2);
  // Constant term of the simple-pole coefficient extraction of F_t(z,1),
  // normalized by the meander count: with A(z) = (uz)^r (1-uz)^2 (1-V(z))
  // and u = S(1)-1, it equals [A(xi) - A'(xi)/S(1)]/(1-V(xi)) minus
  // V_t(xi)/(1-V(xi)). The A' term puts S(1)^{r+3} under V_z(xi).
  mc.c0 = pow_int(up, r) * (2 * S1 - 1 - r) / pow_int(S1, r + 2) +
          pow_int(up, r) * mc.Vz_xi / (pow_int(S1, r + 3) * (1 - mc.V_xi)) -
          mc.Vt_xi / (1 - mc.V_xi);
  mc.sigma2 = mc.mu + pow_int(up, 2 * r) * (2 * S1 - 3 - 2 * r) /
                          pow_int(S1, 2 * r + 4);
  return mc;
}

Real meander_count_asym(const StepSet& s, long n, unsigned digits) {
  if (n < 1) throw ValidationError("length n must be >= 1");
  const unsigned wd = work_digits(digits);
  Real rn = real_n(n, wd);
  Real pi = real_pi(wd);
  if (is_dyck(s)) {
    Real two_n = pow_int(make_real(2L, wd), n);
    Real base = sqrt(2 / pi) * two_n;
    int sgn = parity_sign(n);
    return base / sqrt(rn) - base * (2 - sgn) / (4 * rn * sqrt(rn)) +
           base * (13 - 12 * sgn) / (32 * rn * rn * sqrt(rn));
  }
  if (is_motzkin(s)) {
    // Leading constant sqrt(3/pi), with the next correction -9/16 n^{-3/2};
    // derived from V(z) = (1 - z - sqrt(1-2z-3z^2))/(2z) at z -> 1/3 and
    // cross-checked against exact series ratios in the tests.
    Real three_n = pow_int(make_real(3L, wd), n);
    return sqrt(3 / pi) * three_n *
           (1 / sqrt(rn) - make_real(9L, wd) / (16 * rn * sqrt(rn)));
  }
  MeanderConstants mc = meander_constants(s, 1, digits);
  Real S1 = s.eval_S(make_real(1L, wd), 0);
  return (1 - mc.V_xi) * pow_int(S1, n);
}

Real meander_expectation_asym(const StepSet& s, int r, long n,
                              unsigned digits) {
  if (n < 1) throw ValidationError("length n must be >= 1");
  if (r < 1) throw ValidationError("ascent length r must be >= 1");
  const unsigned wd = work_digits(digits);
  Real rn = real_n(n, wd);
  Real pi = real_pi(wd);
  if (is_dyck(s)) {
    Real root = sqrt(2 * pi);
    return rn / pow_int(make_real(2L, wd), r + 2) +
           root * (r - 2) / pow_int(make_real(2L, wd), r + 3) * sqrt(rn) -
           make_real(long(r) * r - r - 8, wd) / pow_int(make_real(2L, wd), r + 3) +
           root * (2 - parity_sign(n)) * (r - 2) /
               pow_int(make_real(2L, wd), r + 5) / sqrt(rn);
  }
  if (is_motzkin(s)) {
    Real root = sqrt(3 * pi);
    Real p3 = pow_int(make_real(3L, wd), r + 2);
    return pow_int(make_real(2L, wd), r) / p3 * rn +
           root * (r - 4) * pow_int(make_real(2L, wd), r - 2) / p3 * sqrt(rn) -
           make_real(3L * r * r - r - 96, wd) *
               pow_int(make_real(2L, wd), r - 4) / p3 +
           root * (r - 4) * pow_int(make_real(2L, wd), r - 6) /
               pow_int(make_real(3L, wd), r) / sqrt(rn);
  }
  MeanderConstants mc = meander_constants(s, r, digits);
  return mc.mu * rn + mc.c0;
}

Real meander_variance_asym(const StepSet& s, int r, long n, unsigned digits) {
  if (n < 1) throw ValidationError("length n must be >= 1");
  if (r < 1) throw ValidationError("ascent length r must be >= 1");
  const unsigned wd = work_digits(digits);
  Real rn = real_n(n, wd);
  Real pi = real_pi(wd);
  if (is_dyck(s)) {
    Real lin = (pow_int(make_real(2L, wd), r + 3) - r * r * (pi - 2) +
                4 * r * (pi - 3) - 4 * pi + 10) /
               pow_int(make_real(2L, wd), 2 * r + 5);
    Real half = sqrt(2 * pi) *
                (pow_int(make_real(2L, wd), r + 2) * (r - 2) -
                 make_real(long(r) * r * r - 3L * r * r + 2 * r - 4, wd)) /
                pow_int(make_real(2L, wd), 2 * r + 5);
    return lin * rn + half * sqrt(rn);
  }
  if (is_motzkin(s)) {
    Real p2 = pow_int(make_real(2L, wd), 2 * r);
    Real lin = (pow_int(make_real(3L, wd), r + 2) * pow_int(make_real(2L, wd), r + 4) -
                p2 * (3 * r * r * (pi - 2) - 8 * r * (3 * pi - 10) + 48 * pi - 144)) /
               (16 * pow_int(make_real(3L, wd), 2 * r + 4));
    Real half = sqrt(3 * pi) *
                (72 * (r - 4) * pow_int(make_real(6L, wd), r) -
                 p2 * make_real(3L * r * r * r - 9L * r * r - 28 * r - 32, wd)) /
                (32 * pow_int(make_real(3L, wd), 2 * r + 4));
    return lin * rn + half * sqrt(rn);
  }
  MeanderConstants mc = meander_constants(s, r, digits);
  return mc.sigma2 * rn;
}

CompareReport compare_report(const StepSet& s, PathKind kind, int r,
                             std::span<const long> lengths, unsigned digits,
                             const ExactOptions& opt) {
  CompareReport rep;
  rep.kind = kind;
  rep.r = r;
  rep.digits = digits;
  const unsigned wd = work_digits(digits);
  for (long n : lengths) {
    Real asym(0, wd);
    switch (kind) {
      case PathKind::Excursion:
        asym = excursion_expectation_asym(s, r, n, digits);
        break;
      case PathKind::Dispersed:
        asym = dispersed_expectation_asym(s, r, n, digits);
        break;
      case PathKind::Meander:
        asym = meander_expectation_asym(s, r, n, digits);
        break;
    }
    Moments m = moments(s, kind, n, r, opt);
    Real residual = abs(to_real(m.mean, wd) - asym);
    rep.rows.push_back({n, m.mean, asym, residual});
  }
  // log-log least squares over the nonzero residuals
  std::vector<double> xs, ys;
  for (const CompareRow& row : rep.rows) {
    if (row.residual <= 0) continue;
    xs.push_back(std::log(double(row.n)));
    ys.push_back(std::log(row.residual.convert_to<double>()));
  }
  if (xs.size() < 2) {
    rep.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
  mx /= double(xs.size());
  my /= double(xs.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  rep.fitted_exponent = num / den;
  return rep;
}

}  // namespace lukas
