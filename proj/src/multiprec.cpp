#include "sdcurve/multiprec.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "sdcurve/core_series.hpp"

namespace sdcurve {
namespace {

void require_reference_bits(int bits) {
  if (bits < kReferenceBits) {
    throw std::invalid_argument("reference precision must be at least 256 bits, got " + std::to_string(bits));
  }
}

struct Panel {
  BigFloat a;
  BigFloat b;
  BigFloat estimate;
  int depth;
};

class PanelIntegrator {
 public:
  PanelIntegrator(QuadratureRule rule, int bits) : rule_(std::move(rule)), bits_(bits) {}

  BigFloat integrate(const BigFloat& a, const BigFloat& b) {
    const BigFloat half_width = (b - a) / 2;
    const BigFloat center = (a + b) / 2;
    BigFloat sum(bits_);
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      const BigFloat t = center + half_width * rule_.nodes[i];
      sum += rule_.weights[i] * sdc_reference(t, bits_).value;
      ++evaluations_;
    }
    return sum * half_width;
  }

  int evaluations() const { return evaluations_; }

 private:
  QuadratureRule rule_;
  int bits_;
  int evaluations_ = 0;
};

}  // namespace

ReferenceValue sdc_reference(const BigFloat& t, int bits) {
  require_reference_bits(bits);
  BigFloat at(t, bits);
  if (at.is_nan() || at < BigFloat(bits)) throw std::domain_error("sdc_reference: t must be nonnegative");
  SeriesEval<BigFloat> eval = sdc(at);
  return {std::move(eval.value), bits, std::move(at)};
}

ReferenceValue sdc_reference(double t, int bits) { return sdc_reference(BigFloat(t, std::max(bits, 53)), bits); }

ReferenceValue sdc_reference(float t, int bits) { return sdc_reference(BigFloat(t, std::max(bits, 24)), bits); }

ReferenceValue abs_sum_reference(const BigFloat& t, int bits) {
  require_reference_bits(bits);
  BigFloat at(t, bits);
  if (at.is_nan() || !(at > BigFloat(bits))) throw std::domain_error("abs_sum_reference: t must be positive");
  SeriesEval<BigFloat> eval = sdc_direct(at, /*absolute=*/true);
  return {std::move(eval.value), bits, std::move(at)};
}

ReferenceValue abs_sum_reference(double t, int bits) { return abs_sum_reference(BigFloat(t, std::max(bits, 53)), bits); }

QuadratureRule gauss_legendre(int points, int bits) {
  if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  QuadratureRule rule;
  rule.nodes.assign(points, BigFloat(bits));
  rule.weights.assign(points, BigFloat(bits));
  const BigFloat one(1, bits);
  const BigFloat converged(std::ldexp(1.0, -(bits - 4)), bits);
  // Newton iteration on P_n from the usual cosine guesses; the root count
  // is symmetric so only the positive half is solved.
  for (int i = 0; i < (points + 1) / 2; ++i) {
    BigFloat x(std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5)), bits);
    BigFloat derivative(bits);
    for (int iteration = 0; iteration < 200; ++iteration) {
      BigFloat p0 = one;
      BigFloat p1 = x;
      for (int k = 2; k <= points; ++k) {
        BigFloat p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      if (points == 1) p0 = one;
      // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
      derivative = static_cast<std::int64_t>(points) * (x * p1 - p0) / (x * x - one);
      const BigFloat step = p1 / derivative;
      x -= step;
      if (abs(step) <= converged) break;
    }
    const BigFloat weight = 2 / ((one - x * x) * derivative * derivative);
    rule.nodes[i] = x;
    rule.weights[i] = weight;
    rule.nodes[points - 1 - i] = -x;
    rule.weights[points - 1 - i] = weight;
  }
  return rule;
}

MassIntegral integrate_mass(const MassOptions& options) {
  require_reference_bits(options.bits);
  if (!(options.horizon > 0) || options.initial_panels < 1) {
    throw std::invalid_argument("integrate_mass: horizon and panel count must be positive");
  }
  const int bits = options.bits;
  PanelIntegrator integrator(gauss_legendre(options.points, bits), bits);
  const BigFloat horizon(options.horizon, bits);
  const BigFloat tolerance(options.tolerance, bits);

  std::vector<Panel> stack;
  for (int i = options.initial_panels - 1; i >= 0; --i) {
    BigFloat a = horizon * BigFloat(static_cast<std::int64_t>(i), bits) / options.initial_panels;
    BigFloat b = horizon * BigFloat(static_cast<std::int64_t>(i + 1), bits) / options.initial_panels;
    BigFloat estimate = integrator.integrate(a, b);
    stack.push_back({std::move(a), std::move(b), std::move(estimate), 0});
  }

  MassIntegral result{BigFloat(bits), BigFloat(bits), BigFloat(bits), BigFloat(bits), 0, 0};
  while (!stack.empty()) {
    Panel panel = std::move(stack.back());
    stack.pop_back();
    const BigFloat mid = (panel.a + panel.b) / 2;
    BigFloat left = integrator.integrate(panel.a, mid);
    BigFloat right = integrator.integrate(mid, panel.b);
    const BigFloat refined = left + right;
    const BigFloat allowed = tolerance * (panel.b - panel.a) / horizon;
    if (abs(refined - panel.estimate) <= allowed || panel.depth >= options.max_depth) {
      result.body += refined;
      ++result.panels;
      continue;
    }
    stack.push_back({mid, panel.b, std::move(right), panel.depth + 1});
    stack.push_back({panel.a, mid, std::move(left), panel.depth + 1});
  }

  const BigFloat pi = BigFloat::pi(bits);
  const BigFloat rate = pi * pi * horizon / 4;
  for (std::int64_t n = 0;; ++n) {
    const std::int64_t odd = 2 * n + 1;
    const BigFloat term = exp(-(BigFloat(odd * odd, bits) * rate)) / odd;
    const BigFloat next = (n % 2 == 0) ? result.tail + term : result.tail - term;
    if (next == result.tail) break;
    result.tail = next;
    if (n == 0) result.tail_bound = term;
  }
  const BigFloat four_over_pi = BigFloat(4, bits) / pi;
  result.tail *= four_over_pi;
  result.tail_bound *= four_over_pi;
  result.total = result.body + result.tail;
  result.evaluations = integrator.evaluations();
  return result;
}

}  // namespace sdcurve
