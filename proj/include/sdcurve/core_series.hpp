// Evaluation of the standard diffusion curve
//
//   s(t) = pi * SUM_{n>=0} (-1)^n (2n+1) exp(-(2n+1)^2 pi^2 t / 4),   t > 0,
//
// the outlet flux of a unit pulse diffusing through a 1D reactor with a
// closed inlet and an open (vacuum) outlet.
//
// Two evaluation routes are provided:
//
//   * direct summation, which adds terms until the accumulator stops
//     changing. Accurate for t >= 1/pi; for small t the alternating terms
//     cancel catastrophically and the result loses all digits.
//
//   * the reflection identity  (pi t)^{3/2} s(t) = s(1 / (pi^2 t)), which maps
//     every t < 1/pi onto a point above the fixed point 1/pi where direct
//     summation needs at most a handful of terms.
//
// All functions are templates over the working arithmetic: float (IEEE
// binary32), double (binary64) or BigFloat (MPFR, any width >= 64 bits).
// Every intermediate, including pi and the exponentials, is computed in that
// arithmetic. The summation is deliberately naive: no compensated summation,
// no series acceleration, so its floating-point failure modes can be studied.

#ifndef SDCURVE_CORE_SERIES_HPP_
#define SDCURVE_CORE_SERIES_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include "sdcurve/bigfloat.hpp"

namespace sdcurve {

enum class Precision { binary32, binary64, extended };

// Which arithmetic an evaluation runs in.
struct EvalMode {
  Precision kind = Precision::binary64;
  int bits = 53;  // significand width; >= 64 for extended

  static EvalMode binary32() { return {Precision::binary32, 24}; }
  static EvalMode binary64() { return {Precision::binary64, 53}; }
  static EvalMode extended(int bits = BigFloat::kDefaultBits);

  // "single", "double", "big", "big:<bits>".
  static EvalMode parse(std::string_view name);
  std::string name() const;

  friend bool operator==(const EvalMode&, const EvalMode&) = default;
};

enum class Branch { direct, reflected, zero_shortcut };
std::string_view branch_name(Branch branch);

// Upper bound on the number of series terms an evaluation may add.
struct TermBudget {
  std::optional<std::int64_t> max_terms;  // nullopt = unbounded

  static TermBudget unbounded() { return {}; }
  static TermBudget at_most(std::int64_t terms);

  std::int64_t limit() const { return max_terms.value_or(std::numeric_limits<std::int64_t>::max()); }
};

template <class Real>
struct SeriesEval {
  Real value;
  // Index n of the first term that left the accumulator unchanged. If the
  // budget runs out first, max_terms + 1.
  std::int64_t terms_used = 0;
  EvalMode mode{};
  Branch branch = Branch::direct;
  bool budget_exhausted = false;
};

template <class Real>
concept WorkingReal = std::is_same_v<Real, float> || std::is_same_v<Real, double> || std::is_same_v<Real, BigFloat>;

namespace detail {

inline EvalMode mode_of(const float&) { return EvalMode::binary32(); }
inline EvalMode mode_of(const double&) { return EvalMode::binary64(); }
inline EvalMode mode_of(const BigFloat& x) { return EvalMode::extended(x.precision()); }

// pi rounded once into the working precision.
inline float pi_like(const float&) { return std::numbers::pi_v<float>; }
inline double pi_like(const double&) { return std::numbers::pi_v<double>; }
inline BigFloat pi_like(const BigFloat& x) { return BigFloat::pi(x.precision()); }

inline float from_integer(std::int64_t n, const float&) { return static_cast<float>(n); }
inline double from_integer(std::int64_t n, const double&) { return static_cast<double>(n); }
inline BigFloat from_integer(std::int64_t n, const BigFloat& x) { return BigFloat(n, x.precision()); }

inline bool is_nan(float x) { return std::isnan(x); }
inline bool is_nan(double x) { return std::isnan(x); }
inline bool is_nan(const BigFloat& x) { return x.is_nan(); }
inline bool is_inf(float x) { return std::isinf(x); }
inline bool is_inf(double x) { return std::isinf(x); }
inline bool is_inf(const BigFloat& x) { return x.is_inf(); }
inline bool is_zero(float x) { return x == 0.0f; }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const BigFloat& x) { return x.is_zero(); }

inline float exp_of(float x) { return std::exp(x); }
inline double exp_of(double x) { return std::exp(x); }
inline BigFloat exp_of(const BigFloat& x) { return exp(x); }

inline float pow_three_halves(float x) { return std::pow(x, 1.5f); }
inline double pow_three_halves(double x) { return std::pow(x, 1.5); }
inline BigFloat pow_three_halves(const BigFloat& x) { return pow(x, 1.5); }

// Stagnation test: the accumulator compares equal after adding a term.
template <WorkingReal Real>
bool unchanged(const Real& before, const Real& after) {
  return before == after;
}

template <WorkingReal Real>
void require_nonnegative(const Real& t, const char* op) {
  if (is_nan(t) || t < from_integer(0, t)) {
    throw std::domain_error(std::string(op) + ": t must be a nonnegative number");
  }
}

// Time reflection without the t > 0 check, so t = 0 yields inf.
template <WorkingReal Real>
Real reflect_unchecked(const Real& t) {
  const Real pi = pi_like(t);
  return from_integer(1, t) / (pi * pi * t);
}

// (t pi)^{3/2} as a power 1.5 in working precision.
template <WorkingReal Real>
Real reflection_prefactor(const Real& t) {
  return pow_three_halves(t * pi_like(t));
}

// Divides by the reflection prefactor. An exact zero numerator stays zero
// even when the prefactor itself underflows (avoids 0/0).
template <WorkingReal Real>
Real unreflect(const Real& reflected_value, const Real& t) {
  if (is_zero(reflected_value)) return reflected_value;
  return reflected_value / reflection_prefactor(t);
}

template <WorkingReal Real>
Real series_rate(const Real& t) {
  const Real pi = pi_like(t);
  return pi * pi * t / from_integer(4, t);
}

// sigma^n (2n+1) exp(-(2n+1)^2 tau), with the integer coefficient formed first.
template <WorkingReal Real>
Real series_term(std::int64_t n, const Real& tau, bool absolute) {
  const std::int64_t odd = 2 * n + 1;
  const std::int64_t coefficient = (absolute || n % 2 == 0) ? odd : -odd;
  // (2n+1)^2 in 64-bit integers; saturates instead of overflowing (the
  // exponential is zero long before that).
  const std::int64_t square = odd <= 3037000499 ? odd * odd : std::numeric_limits<std::int64_t>::max();
  return from_integer(coefficient, tau) * exp_of(-(from_integer(square, tau) * tau));
}

}  // namespace detail

// Direct summation with stop-on-stagnation. With absolute = true every term
// is taken positive, giving the sum of magnitudes used for condition numbers.
template <WorkingReal Real>
SeriesEval<Real> sdc_direct(const Real& t, bool absolute = false, TermBudget budget = TermBudget::unbounded()) {
  detail::require_nonnegative(t, "sdc_direct");
  const Real tau = detail::series_rate(t);
  const std::int64_t limit = budget.limit();
  Real s = detail::from_integer(0, t);
  for (std::int64_t n = 0; n < limit; ++n) {
    Real next = s + detail::series_term(n, tau, absolute);
    if (detail::unchanged(s, next)) {
      return {s * detail::pi_like(t), n, detail::mode_of(t), Branch::direct, false};
    }
    s = std::move(next);
  }
  return {s * detail::pi_like(t), limit == std::numeric_limits<std::int64_t>::max() ? limit : limit + 1,
          detail::mode_of(t), Branch::direct, true};
}

// t_hat = 1 / (pi^2 t). Involution with fixed point 1/pi.
template <WorkingReal Real>
Real reflect_time(const Real& t) {
  if (detail::is_nan(t) || !(t > detail::from_integer(0, t))) {
    throw std::domain_error("reflect_time: t must be positive");
  }
  return detail::reflect_unchecked(t);
}

// Regime-switching evaluator: direct summation above the fixed point 1/pi,
// reflected summation at or below it.
template <WorkingReal Real>
SeriesEval<Real> sdc(const Real& t, TermBudget budget = TermBudget::unbounded()) {
  detail::require_nonnegative(t, "sdc");
  const Real t_hat = detail::reflect_unchecked(t);
  if (detail::is_inf(t_hat)) {
    return {detail::from_integer(0, t), 0, detail::mode_of(t), Branch::zero_shortcut, false};
  }
  if (t > t_hat) {
    return sdc_direct(t, false, budget);
  }
  SeriesEval<Real> reflected = sdc_direct(t_hat, false, budget);
  reflected.value = detail::unreflect(reflected.value, t);
  reflected.branch = Branch::reflected;
  return reflected;
}

// The branch sdc() would take for t > 0.
template <WorkingReal Real>
Branch auto_branch(const Real& t) {
  const Real t_hat = detail::reflect_unchecked(t);
  if (detail::is_inf(t_hat)) return Branch::zero_shortcut;
  return t > t_hat ? Branch::direct : Branch::reflected;
}

// Exactly the first k terms of the chosen formula, no stagnation test.
template <WorkingReal Real>
Real sdc_truncated(const Real& t, std::int64_t k, Branch branch) {
  if (k < 1) throw std::domain_error("sdc_truncated: k must be at least 1");
  switch (branch) {
    case Branch::direct: {
      detail::require_nonnegative(t, "sdc_truncated");
      const Real tau = detail::series_rate(t);
      Real s = detail::from_integer(0, t);
      for (std::int64_t n = 0; n < k; ++n) s += detail::series_term(n, tau, false);
      return s * detail::pi_like(t);
    }
    case Branch::reflected: {
      const Real t_hat = reflect_time(t);
      return detail::unreflect(sdc_truncated(t_hat, k, Branch::direct), t);
    }
    case Branch::zero_shortcut:
      break;
  }
  throw std::invalid_argument("sdc_truncated: branch must be direct or reflected");
}

// k-term truncation on the branch sdc() would pick.
template <WorkingReal Real>
Real sdc_truncated_auto(const Real& t, std::int64_t k) {
  if (detail::is_nan(t) || !(t > detail::from_integer(0, t))) {
    throw std::domain_error("sdc_truncated_auto: t must be positive");
  }
  const Branch branch = auto_branch(t);
  if (branch == Branch::zero_shortcut) return detail::from_integer(0, t);
  return sdc_truncated(t, k, branch);
}

}  // namespace sdcurve

#endif  // SDCURVE_CORE_SERIES_HPP_
