#pragma once

#include <span>
#include <vector>

#include "lukas/exact.hpp"
#include "lukas/numeric.hpp"
#include "lukas/stepset.hpp"

namespace lukas {

inline constexpr unsigned kDefaultDigits = 50;

/// Everything the asymptotic formulas need: the positive root tau of
/// S'(tau) = 0, the radius rho = 1/S(tau), c = tau S(tau), and the
/// derivative evaluations at tau. d0, d1, d2 are the leading coefficients
/// of the square-root expansion of V(z) at z -> rho.
struct StructuralConstants {
  Real tau;
  Real rho;
  Real c;
  int period = 1;
  long drift = 0;
  Real S_tau, S2_tau, S3_tau, S4_tau;
  Real d0, d1, d2;
  bool tau_exact_one = false;
  unsigned digits = kDefaultDigits;
};

/// Constants of the meander expansions (tau != 1 only): xi = 1/S(1), the
/// evaluation V(xi) and its z- and t-derivatives, and the resulting
/// mu, c0, sigma^2.
struct MeanderConstants {
  Real xi, V_xi, Vz_xi, Vt_xi;
  Real mu, c0, sigma2;
  int r = 1;
  unsigned digits = kDefaultDigits;
};

/// mu, c0, sigma2 of the excursion expectation/variance expansions.
struct ExcursionAscentConstants {
  Real mu, c0, sigma2;
  int r = 1;
  unsigned digits = kDefaultDigits;
};

/// Unique positive root of S'(u) = 0. Returns exactly 1 for the two
/// tau = 1 step sets; otherwise bracketed bisection followed by
/// safeguarded Newton to relative tolerance 10^(4-digits).
Real solve_tau(const StepSet& s, unsigned digits = kDefaultDigits);

StructuralConstants structural_constants(const StepSet& s,
                                         unsigned digits = kDefaultDigits);

ExcursionAscentConstants excursion_ascent_constants(
    const StepSet& s, int r, unsigned digits = kDefaultDigits);

/// Two-term expansion of the number of excursions of length n; zero when
/// the period does not divide n.
Real excursion_count_asym(const StepSet& s, long n,
                          unsigned digits = kDefaultDigits);

/// mu n + c0; requires period | n.
Real excursion_expectation_asym(const StepSet& s, int r, long n,
                                unsigned digits = kDefaultDigits);

/// sigma^2 n; requires period | n.
Real excursion_variance_asym(const StepSet& s, int r, long n,
                             unsigned digits = kDefaultDigits);

/// Main term of the number of dispersed excursions of length n, with the
/// residue-class factor for k = n mod p; {-1,1} takes the dedicated
/// two-term central-binomial expansion.
Real dispersed_count_asym(const StepSet& s, long n,
                          unsigned digits = kDefaultDigits);

/// mu n for tau != 1; the four-term expansion for {-1,1}.
Real dispersed_expectation_asym(const StepSet& s, int r, long n,
                                unsigned digits = kDefaultDigits);

/// Errors with TauIsOne for {-1,1} and {-1,0,1}.
MeanderConstants meander_constants(const StepSet& s, int r,
                                   unsigned digits = kDefaultDigits);

/// (1 - V(xi)) S(1)^n for tau != 1; dedicated expansions for {-1,1} and
/// {-1,0,1}.
Real meander_count_asym(const StepSet& s, long n,
                        unsigned digits = kDefaultDigits);

Real meander_expectation_asym(const StepSet& s, int r, long n,
                              unsigned digits = kDefaultDigits);

Real meander_variance_asym(const StepSet& s, int r, long n,
                           unsigned digits = kDefaultDigits);

struct CompareRow {
  long n;
  Rat exact_mean;
  Real asym;
  Real residual;
};

/// Exact means against the matching asymptotic expectation formula, plus
/// the decay exponent of the residual fitted by log-log least squares
/// (NaN when fewer than two nonzero residuals).
struct CompareReport {
  PathKind kind = PathKind::Excursion;
  int r = 1;
  unsigned digits = kDefaultDigits;
  std::vector<CompareRow> rows;
  double fitted_exponent = 0.0;
};

CompareReport compare_report(const StepSet& s, PathKind kind, int r,
                             std::span<const long> lengths,
                             unsigned digits = kDefaultDigits,
                             const ExactOptions& opt = {});

}  // namespace lukas
