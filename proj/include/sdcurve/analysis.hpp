// Floating-point error study of the standard diffusion curve: condition
// numbers, term counts and relative errors over a log-spaced sweep in
// binary32, binary64 and 256-bit arithmetic, emitted as eight CSV tables.
//
//   fig-1-a  t,bigfloat,double,single   terms used, direct summation
//   fig-1-b  t,k                        condition number SUM|s_n| / |SUM s_n|
//   fig-1-c  t,double,single            relative error, direct summation
//   fig-1-d  t,bigfloat,double,single   computed value, direct summation
//   fig-2-a  t,oneterm,twoterms         relative error of 1- and 2-term sums
//                                       on the automatically chosen branch
//   fig-2-b  t,bigfloat,double,single   terms used, reflection evaluator
//   fig-2-c  t,double,single            relative error, reflection evaluator
//   fig-2-d  t,bigfloat,double,single   computed value, reflection evaluator
//
// Relative errors are measured against the 256-bit reference evaluated at
// the input exactly as the working precision sees it (single-precision runs
// are compared at float(t), not at t).

#ifndef SDCURVE_ANALYSIS_HPP_
#define SDCURVE_ANALYSIS_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sdcurve/bigfloat.hpp"
#include "sdcurve/core_series.hpp"
#include "sdcurve/figure_table.hpp"
#include "sdcurve/multiprec.hpp"

namespace sdcurve {

struct SweepGrid {
  double t_min = 1e-3;
  double t_max = 10.0;
  int points = 400;

  void validate() const;
  // Log-spaced, endpoints exact.
  std::vector<double> values() const;
};

// SUM|s_n| / |SUM s_n| at t, both sums at `bits`.
double condition_number(double t, int bits = kReferenceBits);

// Smallest k whose k-term direct sum at `bits` is within relative `epsilon`
// of the reference. Throws std::runtime_error ("not reached") past max_terms.
std::int64_t terms_required_exact(double t, double epsilon, int bits = kReferenceBits,
                                  std::int64_t max_terms = 1'000'000);

enum class Method { direct, reflected_auto };

// |computed - reference| / |reference|, rounded to double. Reference zero
// gives 0 if computed is also zero, otherwise infinity.
double relative_error(const BigFloat& computed, const BigFloat& reference);

// t is first rounded to `mode`; the reference is taken at that rounded t.
double relative_error(double t, EvalMode mode, Method method);

// Everything computed at one grid point.
struct SweepPoint {
  double t = 0.0;
  double kappa = 0.0;
  SeriesEval<BigFloat> direct_big{BigFloat(kReferenceBits)};
  SeriesEval<double> direct_double{};
  SeriesEval<float> direct_single{};
  SeriesEval<BigFloat> auto_big{BigFloat(kReferenceBits)};
  SeriesEval<double> auto_double{};
  SeriesEval<float> auto_single{};
  double direct_error_double = 0.0;
  double direct_error_single = 0.0;
  double auto_error_double = 0.0;
  double auto_error_single = 0.0;
  double oneterm_error = 0.0;
  double twoterms_error = 0.0;
};

SweepPoint evaluate_point(double t, int bits = kReferenceBits);
// Points are independent; `threads` <= 1 evaluates serially. The result is
// the same for any thread count.
std::vector<SweepPoint> run_sweep(const SweepGrid& grid, int bits = kReferenceBits, unsigned threads = 1);

// Figure names in emission order and their column schemas.
std::vector<std::string> figure_names();
std::vector<Column> figure_columns(const std::string& name, int bits = kReferenceBits);

std::vector<FigureTable> build_figures(std::span<const SweepPoint> points, int bits = kReferenceBits);

// Builds all eight tables and writes them into out_dir (created if needed).
// Throws std::runtime_error naming the directory or file on I/O failure.
std::vector<FigureTable> emit_figures(const SweepGrid& grid, const std::filesystem::path& out_dir,
                                      unsigned threads = 1);

}  // namespace sdcurve

#endif  // SDCURVE_ANALYSIS_HPP_
