#pragma once

#include <vector>

#include "lukas/numeric.hpp"
#include "lukas/stepset.hpp"

namespace lukas {

/// Dense polynomial in the ascent-marking variable t, integer coefficients.
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(Int constant);
  static TPoly monomial(Int coeff, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return int(c_.size()) - 1; }
  /// Coefficient of t^k; zero beyond the stored degree.
  const Int& coeff(int k) const;
  bool is_zero() const { return c_.empty(); }

  TPoly& operator+=(const TPoly& o);
  TPoly& operator-=(const TPoly& o);
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  friend bool operator==(const TPoly&, const TPoly&) = default;

  Int eval_one() const;              // sum of coefficients
  Int weighted_sum() const;          // sum k c_k      (d/dt at t=1)
  Int weighted_sum_second() const;   // sum k(k-1) c_k (d^2/dt^2 at t=1)

 private:
  std::vector<Int> c_;
  void trim();
  friend class BivariateSeries;
};

/// Power series in z truncated at a tracked order, with TPoly
/// coefficients. Arithmetic never extends knowledge past what the
/// operands support.
class BivariateSeries {
 public:
  explicit BivariateSeries(int order);
  static BivariateSeries constant(TPoly value, int order);

  int order() const { return order_; }
  const TPoly& coeff(int n) const;
  TPoly& coeff_mut(int n) { return c_.at(n); }

  BivariateSeries truncated(int order) const;
  BivariateSeries shifted_up(int k) const;    // multiply by z^k
  BivariateSeries shifted_down(int k) const;  // divide by z^k; valuation >= k required
  long valuation() const;                     // order_+1 if zero up to order

  friend BivariateSeries operator+(const BivariateSeries&, const BivariateSeries&);
  friend BivariateSeries operator-(const BivariateSeries&, const BivariateSeries&);
  friend BivariateSeries operator*(const BivariateSeries&, const BivariateSeries&);
  BivariateSeries& operator+=(const BivariateSeries& o);
  BivariateSeries& operator-=(const BivariateSeries& o);

  /// Multiplicative inverse; the constant term must be the unit 1.
  BivariateSeries inverse() const;
  BivariateSeries pow(int e) const;

 private:
  int order_ = 0;
  std::vector<TPoly> c_;
};

/// Univariate truncated series with exact rational coefficients.
class RatSeries {
 public:
  explicit RatSeries(int order);
  static RatSeries constant(Rat value, int order);
  static RatSeries z(int order);

  int order() const { return order_; }
  const Rat& coeff(int n) const;
  Rat& coeff_mut(int n) { return c_.at(n); }

  RatSeries truncated(int order) const;
  RatSeries shifted_up(int k) const;
  RatSeries shifted_down(int k) const;
  long valuation() const;

  friend RatSeries operator+(const RatSeries&, const RatSeries&);
  friend RatSeries operator-(const RatSeries&, const RatSeries&);
  friend RatSeries operator*(const RatSeries&, const RatSeries&);
  RatSeries operator*(const Rat& scalar) const;

  /// Inverse; requires a nonzero constant term.
  RatSeries inverse() const;
  /// this / den with common valuation stripped first; the result is known
  /// to order() - valuation(den).
  RatSeries divided_by(const RatSeries& den) const;
  RatSeries pow(int e) const;

 private:
  int order_ = 0;
  std::vector<Rat> c_;
};

/// The series solution of V = z L(z,t,V) with
/// L(z,t,v) = 1/(1 - z S_+(v)) + (t-1) (z S_+(v))^r, truncated at z-order
/// `order`. V/z enumerates excursions by length (z) and r-ascents (t).
/// Runs exactly order+1 fixed-point iterations; each gains one z-order.
BivariateSeries solve_V(const StepSet& s, int r, int order);

/// Coefficients of F(z,t,1) = (1 - V) L(z,t,1) / (1 - z L(z,t,1)):
/// meanders by length and r-ascents.
BivariateSeries meander_series(const StepSet& s, int r, int order);

/// Coefficients of D(z,t) = V / (z (1 - V)): dispersed excursions by
/// length and r-ascents. Requires 0 not in S.
BivariateSeries dispersed_series(const StepSet& s, int r, int order);

/// V(z) = V(z,1), computed coefficientwise from V = z phi(V) with
/// phi(u) = u S(u) via Lagrange inversion: [z^n] V = (1/n) [u^{n-1}] phi^n.
RatSeries V_univariate(const StepSet& s, int order);

/// V_t(z) = -z (V - z)^r / (V^{r+2} S'(V)), by series division from
/// V_univariate. Equals the slice sum_k k c_{n,k} of solve_V.
RatSeries V_t_series(const StepSet& s, int r, int order);

}  // namespace lukas
