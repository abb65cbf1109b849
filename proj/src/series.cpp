#include "lukas/series.hpp"

#include <algorithm>

namespace lukas {

namespace {
const Int kZeroInt(0);
const Rat kZeroRat(0);
}  // namespace

// --- TPoly -------------------------------------------------------------

TPoly::TPoly(Int constant) {
  if (constant != 0) c_.push_back(std::move(constant));
}

TPoly TPoly::monomial(Int coeff, int degree) {
  TPoly p;
  if (coeff != 0) {
    p.c_.assign(degree + 1, Int(0));
    p.c_[degree] = std::move(coeff);
  }
  return p;
}

const Int& TPoly::coeff(int k) const {
  if (k < 0 || k >= int(c_.size())) return kZeroInt;
  return c_[k];
}

void TPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

TPoly& TPoly::operator+=(const TPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Int(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Int(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

TPoly operator*(const TPoly& a, const TPoly& b) {
  TPoly p;
  if (a.c_.empty() || b.c_.empty()) return p;
  p.c_.assign(a.c_.size() + b.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (b.c_[j] != 0) p.c_[i + j] += a.c_[i] * b.c_[j];
  }
  p.trim();
  return p;
}

Int TPoly::eval_one() const {
  Int s = 0;
  for (const Int& v : c_) s += v;
  return s;
}

Int TPoly::weighted_sum() const {
  Int s = 0;
  for (std::size_t k = 1; k < c_.size(); ++k) s += c_[k] * long(k);
  return s;
}

Int TPoly::weighted_sum_second() const {
  Int s = 0;
  for (std::size_t k = 2; k < c_.size(); ++k) s += c_[k] * (long(k) * long(k - 1));
  return s;
}

// --- BivariateSeries ----------------------------------------------------

BivariateSeries::BivariateSeries(int order) : order_(order), c_(order + 1) {
  if (order < 0) throw ValidationError("series order must be >= 0");
}

BivariateSeries BivariateSeries::constant(TPoly value, int order) {
  BivariateSeries s(order);
  s.c_[0] = std::move(value);
  return s;
}

const TPoly& BivariateSeries::coeff(int n) const { return c_.at(n); }

BivariateSeries BivariateSeries::truncated(int order) const {
  BivariateSeries s(std::min(order, order_));
  for (int n = 0; n <= s.order_; ++n) s.c_[n] = c_[n];
  return s;
}

BivariateSeries BivariateSeries::shifted_up(int k) const {
  BivariateSeries s(order_ + k);
  for (int n = 0; n <= order_; ++n) s.c_[n + k] = c_[n];
  return s;
}

BivariateSeries BivariateSeries::shifted_down(int k) const {
  if (valuation() < k)
    throw ValidationError("series shift: valuation too small");
  BivariateSeries s(order_ - k);
  for (int n = 0; n <= s.order_; ++n) s.c_[n] = c_[n + k];
  return s;
}

long BivariateSeries::valuation() const {
  for (int n = 0; n <= order_; ++n)
    if (!c_[n].is_zero()) return n;
  return order_ + 1;
}

BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateSeries s = a.truncated(std::min(a.order_, b.order_));
  for (int n = 0; n <= s.order_; ++n) s.c_[n] += b.c_[n];
  return s;
}

BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateSeries s = a.truncated(std::min(a.order_, b.order_));
  for (int n = 0; n <= s.order_; ++n) s.c_[n] -= b.c_[n];
  return s;
}

BivariateSeries& BivariateSeries::operator+=(const BivariateSeries& o) {
  *this = *this + o;
  return *this;
}

BivariateSeries& BivariateSeries::operator-=(const BivariateSeries& o) {
  *this = *this - o;
  return *this;
}

BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateSeries s(std::min(a.order_, b.order_));
  for (int i = 0; i <= s.order_; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; i + j <= s.order_; ++j) {
      if (b.c_[j].is_zero()) continue;
      s.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return s;
}

BivariateSeries BivariateSeries::inverse() const {
  if (!(c_[0] == TPoly(Int(1))))
    throw ValidationError("series inverse requires constant term 1");
  BivariateSeries q(order_);
  q.c_[0] = TPoly(Int(1));
  for (int n = 1; n <= order_; ++n) {
    TPoly acc;
    for (int j = 1; j <= n; ++j) {
      if (c_[j].is_zero() || q.c_[n - j].is_zero()) continue;
      acc += c_[j] * q.c_[n - j];
    }
    TPoly neg;
    neg -= acc;
    q.c_[n] = std::move(neg);
  }
  return q;
}

BivariateSeries BivariateSeries::pow(int e) const {
  BivariateSeries acc = BivariateSeries::constant(TPoly(Int(1)), order_);
  for (int i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

// --- RatSeries -----------------------------------------------------------

RatSeries::RatSeries(int order) : order_(order), c_(order + 1, Rat(0)) {
  if (order < 0) throw ValidationError("series order must be >= 0");
}

RatSeries RatSeries::constant(Rat value, int order) {
  RatSeries s(order);
  s.c_[0] = std::move(value);
  return s;
}

RatSeries RatSeries::z(int order) {
  RatSeries s(order);
  if (order >= 1) s.c_[1] = 1;
  return s;
}

const Rat& RatSeries::coeff(int n) const {
  if (n < 0 || n > order_) return kZeroRat;
  return c_[n];
}

RatSeries RatSeries::truncated(int order) const {
  RatSeries s(std::min(order, order_));
  for (int n = 0; n <= s.order_; ++n) s.c_[n] = c_[n];
  return s;
}

RatSeries RatSeries::shifted_up(int k) const {
  RatSeries s(order_ + k);
  for (int n = 0; n <= order_; ++n) s.c_[n + k] = c_[n];
  return s;
}

RatSeries RatSeries::shifted_down(int k) const {
  if (valuation() < k)
    throw ValidationError("series shift: valuation too small");
  RatSeries s(order_ - k);
  for (int n = 0; n <= s.order_; ++n) s.c_[n] = c_[n + k];
  return s;
}

long RatSeries::valuation() const {
  for (int n = 0; n <= order_; ++n)
    if (c_[n] != 0) return n;
  return order_ + 1;
}

RatSeries operator+(const RatSeries& a, const RatSeries& b) {
  RatSeries s = a.truncated(std::min(a.order_, b.order_));
  for (int n = 0; n <= s.order_; ++n) s.c_[n] += b.c_[n];
  return s;
}

RatSeries operator-(const RatSeries& a, const RatSeries& b) {
  RatSeries s = a.truncated(std::min(a.order_, b.order_));
  for (int n = 0; n <= s.order_; ++n) s.c_[n] -= b.c_[n];
  return s;
}

RatSeries operator*(const RatSeries& a, const RatSeries& b) {
  RatSeries s(std::min(a.order_, b.order_));
  for (int i = 0; i <= s.order_; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; i + j <= s.order_; ++j) {
      if (b.c_[j] == 0) continue;
      s.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return s;
}

RatSeries RatSeries::operator*(const Rat& scalar) const {
  RatSeries s = *this;
  for (Rat& v : s.c_) v *= scalar;
  return s;
}

RatSeries RatSeries::inverse() const {
  if (c_[0] == 0)
    throw ValidationError("series inverse requires a nonzero constant term");
  RatSeries q(order_);
  q.c_[0] = Rat(1) / c_[0];
  for (int n = 1; n <= order_; ++n) {
    Rat acc(0);
    for (int j = 1; j <= n; ++j)
      if (c_[j] != 0 && q.c_[n - j] != 0) acc += c_[j] * q.c_[n - j];
    q.c_[n] = -acc / c_[0];
  }
  return q;
}

RatSeries RatSeries::divided_by(const RatSeries& den) const {
  long v = den.valuation();
  if (v > den.order_)
    throw ValidationError("series division by the zero series");
  if (valuation() < v)
    throw ValidationError("series division: numerator valuation too small");
  RatSeries num = shifted_down(v);
  RatSeries d = den.shifted_down(v);
  return num * d.inverse();
}

RatSeries RatSeries::pow(int e) const {
  RatSeries acc = RatSeries::constant(Rat(1), order_);
  for (int i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

// --- generating functions -------------------------------------------------

namespace {

// sum_{b in ups} V^b, the up-step part of S at a series argument.
BivariateSeries S_plus_of(const StepSet& s, const BivariateSeries& V) {
  int order = V.order();
  BivariateSeries acc(order);
  BivariateSeries power = BivariateSeries::constant(TPoly(Int(1)), order);
  int prev = 0;
  for (int b : s.ups()) {
    for (; prev < b; ++prev) power = power * V;
    acc += power;
  }
  return acc;
}

}  // namespace

BivariateSeries solve_V(const StepSet& s, int r, int order) {
  if (r < 1) throw ValidationError("ascent length r must be >= 1");
  const BivariateSeries one = BivariateSeries::constant(TPoly(Int(1)), order);
  // (t-1) as a polynomial constant.
  TPoly t_minus_one = TPoly::monomial(Int(1), 1);
  t_minus_one -= TPoly(Int(1));

  BivariateSeries V(order);
  for (int it = 0; it <= order; ++it) {
    BivariateSeries w = S_plus_of(s, V).shifted_up(1).truncated(order);
    BivariateSeries L = (one - w).inverse() +
                        BivariateSeries::constant(t_minus_one, order) * w.pow(r);
    V = L.shifted_up(1).truncated(order);
  }
  return V;
}

BivariateSeries meander_series(const StepSet& s, int r, int order) {
  if (r < 1) throw ValidationError("ascent length r must be >= 1");
  BivariateSeries V = solve_V(s, r, order);
  // L(z,t,1): S_+(1) is just the number of up steps.
  Int m(long(s.ups().size()));
  Int m_pow_r = 1;
  BivariateSeries L1(order);
  Int mp = 1;
  for (int n = 0; n <= order; ++n) {
    L1.coeff_mut(n) = TPoly(mp);
    if (n == r) m_pow_r = mp;
    mp *= m;
  }
  if (r <= order) {
    TPoly extra = TPoly::monomial(m_pow_r, 1);  // (t-1) m^r at z^r
    extra -= TPoly(m_pow_r);
    L1.coeff_mut(r) += extra;
  }
  const BivariateSeries one = BivariateSeries::constant(TPoly(Int(1)), order);
  BivariateSeries zL1 = L1.shifted_up(1).truncated(order);
  return (one - V) * L1 * (one - zL1).inverse();
}

BivariateSeries dispersed_series(const StepSet& s, int r, int order) {
  if (s.has_zero_step()) throw DispersedNeedsNoZeroStep();
  BivariateSeries V = solve_V(s, r, order + 1);
  const BivariateSeries one = BivariateSeries::constant(TPoly(Int(1)), order + 1);
  BivariateSeries D = V * (one - V).inverse();
  return D.shifted_down(1);
}

RatSeries V_univariate(const StepSet& s, int order) {
  // phi(u) = u S(u) = 1 + sum_b u^{b+1}
  std::vector<Int> phi(s.max_up() + 2, Int(0));
  phi[0] = 1;
  for (int b : s.ups()) phi[b + 1] = 1;

  RatSeries V(order);
  // Phi holds phi^m truncated at degree order-1; only [u^{m-1}] is read.
  std::vector<Int> Phi(std::max(order, 1), Int(0));
  if (!Phi.empty()) Phi[0] = 1;
  for (int m = 1; m <= order; ++m) {
    // Phi <- Phi * phi, in place from the top.
    for (int j = int(Phi.size()) - 1; j >= 0; --j) {
      Int acc = Phi[j];  // phi[0] == 1
      for (int i = 1; i < int(phi.size()) && i <= j; ++i)
        if (phi[i] != 0) acc += Phi[j - i];
      Phi[j] = std::move(acc);
    }
    V.coeff_mut(m) = make_rat(Phi[m - 1], Int(m));
  }
  return V;
}

RatSeries V_t_series(const StepSet& s, int r, int order) {
  if (r < 1) throw ValidationError("ascent length r must be >= 1");
  const int work = order + r;
  RatSeries V = V_univariate(s, work);

  // numerator: -z (V - z)^r
  RatSeries num = ((V - RatSeries::z(work)).pow(r) *
                   Rat(-1)).shifted_up(1);

  // denominator: V^{r+2} S'(V) = -V^r + sum_{b>=1} b V^{b+r+1}
  RatSeries den = V.pow(r) * Rat(-1);
  RatSeries power = V.pow(r + 1);
  int prev = 0;
  for (int b : s.ups()) {
    if (b < 1) continue;
    for (; prev < b; ++prev) power = power * V;
    den = den + power * Rat(b);
  }
  return num.divided_by(den).truncated(order);
}

}  // namespace lukas
