#include "lukas/stepset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace lukas {

namespace {

// Falling factorial b (b-1) ... (b-order+1); the order-th derivative of
// u^b has this coefficient. Zero once the exponent is exhausted.
long falling(long b, int order) {
  long f = 1;
  for (int i = 0; i < order; ++i) f *= b - i;
  return f;
}

template <class T, class PowFn>
T eval_S_impl(const std::vector<int>& ups, int order, PowFn upow) {
  if (order < 0 || order > 4)
    throw ValidationError("eval_S: derivative order must be in 0..4");
  // d^k/du^k u^{-1} = (-1)^k k! u^{-(k+1)}
  long down_coef = falling(-1, order);
  T acc = upow(-(order + 1)) * down_coef;
  for (int b : ups) {
    long c = falling(b, order);
    if (c != 0) acc += upow(b - order) * c;
  }
  return acc;
}

}  // namespace

StepSet StepSet::from_steps(std::span<const int> steps) {
  bool has_down = false;
  std::vector<int> ups;
  for (int s : steps) {
    if (s == -1) {
      has_down = true;
    } else if (s < -1) {
      throw IllegalStep(s);
    } else {
      ups.push_back(s);
    }
  }
  if (!has_down) throw MissingDownStep();
  std::sort(ups.begin(), ups.end());
  ups.erase(std::unique(ups.begin(), ups.end()), ups.end());
  if (ups.empty()) throw EmptyUps();
  if (ups.size() == 1 && ups[0] == 0) throw DegenerateSet();
  return StepSet(std::move(ups));
}

StepSet StepSet::from_steps(std::initializer_list<int> steps) {
  return from_steps(std::span<const int>(steps.begin(), steps.size()));
}

StepSet StepSet::parse(std::string_view text) {
  std::vector<int> steps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - pos);
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
    if (tok.empty())
      throw ValidationError("step set text: empty entry in \"" + std::string(text) + "\"");
    int value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw ValidationError("step set text: cannot parse \"" + std::string(tok) + "\"");
    steps.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return from_steps(steps);
}

int StepSet::period() const noexcept {
  int g = 0;
  for (int b : ups_) g = std::gcd(g, b + 1);
  return g;
}

long StepSet::drift() const noexcept {
  long sum = 0;
  for (int b : ups_) sum += b;
  return sum - 1;
}

bool StepSet::tau_is_one() const noexcept {
  return ups_ == std::vector<int>{1} || ups_ == std::vector<int>{0, 1};
}

double StepSet::eval_S(double u, int order) const {
  if (!(u > 0)) throw NonPositiveArgument();
  return eval_S_impl<double>(ups_, order,
                             [&](long e) { return std::pow(u, double(e)); });
}

Rat StepSet::eval_S(const Rat& u, int order) const {
  if (sgn(u) <= 0) throw NonPositiveArgument();
  return eval_S_impl<Rat>(ups_, order, [&](long e) {
    Rat p = 1;
    Rat base = e >= 0 ? u : Rat(u.get_den(), u.get_num());
    for (long i = 0, m = e >= 0 ? e : -e; i < m; ++i) p *= base;
    return p;
  });
}

Real StepSet::eval_S(const Real& u, int order) const {
  if (u <= 0) throw NonPositiveArgument();
  return eval_S_impl<Real>(ups_, order,
                           [&](long e) { return pow_int(u, e); });
}

std::string StepSet::to_string() const {
  std::string out = "-1";
  for (int b : ups_) {
    out += ',';
    out += std::to_string(b);
  }
  return out;
}

}  // namespace lukas
