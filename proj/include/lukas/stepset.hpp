#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lukas/errors.hpp"
#include "lukas/numeric.hpp"

namespace lukas {

/// Validated Lukasiewicz step alphabet. The down step -1 is implicit and
/// always a member; only the non-negative steps are stored, strictly
/// increasing. Immutable value type, safe for unrestricted concurrent use.
class StepSet {
 public:
  /// Builds a step set from an arbitrary list of steps. The list must
  /// contain -1, all other entries must be >= 0, and {-1,0} is rejected.
  /// Duplicates collapse.
  static StepSet from_steps(std::span<const int> steps);
  static StepSet from_steps(std::initializer_list<int> steps);

  /// Parses the canonical text form: comma-separated integers in any
  /// order, e.g. "-1,0,2".
  static StepSet parse(std::string_view text);

  /// The non-negative steps b_1 < ... < b_{m-1}.
  const std::vector<int>& ups() const noexcept { return ups_; }
  int max_up() const noexcept { return ups_.back(); }
  bool has_zero_step() const noexcept { return ups_.front() == 0; }

  /// gcd of {b+1 : b up step}. Excursions exist only at lengths that are
  /// multiples of the period.
  int period() const noexcept;

  /// S'(1) = (sum of up steps) - 1. Always a non-negative integer for a
  /// valid step set, zero exactly when tau_is_one().
  long drift() const noexcept;

  /// True exactly for {-1,1} and {-1,0,1}, the only step sets whose
  /// structural constant tau equals 1. These dispatch to dedicated
  /// formulas downstream.
  bool tau_is_one() const noexcept;

  /// d^order/du^order of S(u) = 1/u + sum_b u^b at u > 0, exact in the
  /// arithmetic of the argument. order must lie in 0..4.
  double eval_S(double u, int order) const;
  Rat eval_S(const Rat& u, int order) const;
  Real eval_S(const Real& u, int order) const;

  /// Canonical text form, ascending: "-1,0,2".
  std::string to_string() const;

  friend bool operator==(const StepSet&, const StepSet&) = default;

 private:
  explicit StepSet(std::vector<int> ups) : ups_(std::move(ups)) {}

  std::vector<int> ups_;
};

}  // namespace lukas
