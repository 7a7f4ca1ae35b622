// High-precision reference values for the standard diffusion curve.
//
// The reference uses the reflected evaluator at >= 256 bits. Direct
// summation at 256 bits is not a valid reference below t ~ 0.0015, where
// the condition number of the alternating sum exceeds 2^256; the reflected
// form stays well conditioned for every t.

#ifndef SDCURVE_MULTIPREC_HPP_
#define SDCURVE_MULTIPREC_HPP_

#include <vector>

#include "sdcurve/bigfloat.hpp"

namespace sdcurve {

inline constexpr int kReferenceBits = 256;

struct ReferenceValue {
  BigFloat value;
  int bits = kReferenceBits;
  BigFloat t;
};

// s(t) at `bits` (>= 256). A BigFloat t wider than `bits` is rounded first.
ReferenceValue sdc_reference(const BigFloat& t, int bits = kReferenceBits);
ReferenceValue sdc_reference(double t, int bits = kReferenceBits);
ReferenceValue sdc_reference(float t, int bits = kReferenceBits);

// pi * SUM (2n+1) exp(-(2n+1)^2 pi^2 t / 4), summed to stagnation. t > 0.
ReferenceValue abs_sum_reference(const BigFloat& t, int bits = kReferenceBits);
ReferenceValue abs_sum_reference(double t, int bits = kReferenceBits);

// Gauss-Legendre rule on [-1, 1] with nodes and weights at `bits`.
struct QuadratureRule {
  std::vector<BigFloat> nodes;
  std::vector<BigFloat> weights;
};
QuadratureRule gauss_legendre(int points, int bits);

struct MassOptions {
  int bits = kReferenceBits;
  double horizon = 20.0;      // quadrature covers (0, horizon]
  double tolerance = 1e-40;   // absolute, spread over the horizon
  int points = 16;            // Gauss-Legendre order per panel
  int initial_panels = 16;
  int max_depth = 40;
};

// Integral of s over (0, inf), split as adaptive quadrature on (0, horizon]
// plus the closed-form tail beyond it. The tail of the term-wise integrated
// series is (4/pi) SUM (-1)^n exp(-(2n+1)^2 pi^2 T / 4) / (2n+1), an
// alternating series bounded by its first term.
struct MassIntegral {
  BigFloat body;        // quadrature over (0, horizon]
  BigFloat tail;        // exact tail series
  BigFloat tail_bound;  // first-omitted-term bound on |tail|
  BigFloat total;       // body + tail
  int panels = 0;
  int evaluations = 0;
};
MassIntegral integrate_mass(const MassOptions& options = {});

}  // namespace sdcurve

#endif  // SDCURVE_MULTIPREC_HPP_
