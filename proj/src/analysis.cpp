#include "sdcurve/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <system_error>
#include <thread>

namespace sdcurve {
namespace {

template <WorkingReal Real>
SeriesEval<Real> evaluate(const Real& t, Method method) {
  return method == Method::direct ? sdc_direct(t) : sdc(t);
}

BigFloat widen(float x, int bits) { return BigFloat(x, bits); }
BigFloat widen(double x, int bits) { return BigFloat(x, bits); }
BigFloat widen(const BigFloat& x, int bits) { return BigFloat(x, std::max(bits, x.precision())); }

template <WorkingReal Real>
double error_against(const SeriesEval<Real>& eval, const ReferenceValue& reference) {
  return relative_error(widen(eval.value, reference.bits), reference.value);
}

Column t_column() { return {"t", CellKind::binary64, 53}; }
Column count_column(std::string name) { return {std::move(name), CellKind::integer, 0}; }
Column real_column(std::string name) { return {std::move(name), CellKind::binary64, 53}; }

}  // namespace

void SweepGrid::validate() const {
  if (!(t_min > 0.0) || !std::isfinite(t_min)) throw std::invalid_argument("sweep grid: t_min must be positive");
  if (!(t_max > t_min) || !std::isfinite(t_max)) throw std::invalid_argument("sweep grid: t_max must exceed t_min");
  if (points < 2) throw std::invalid_argument("sweep grid: need at least 2 points");
}

std::vector<double> SweepGrid::values() const {
  validate();
  const double lo = std::log(t_min);
  const double hi = std::log(t_max);
  std::vector<double> ts(points);
  for (int i = 0; i < points; ++i) ts[i] = std::exp(lo + (hi - lo) * i / (points - 1));
  ts.front() = t_min;
  ts.back() = t_max;
  return ts;
}

double condition_number(double t, int bits) {
  if (!(t > 0.0)) throw std::domain_error("condition_number: t must be positive");
  const ReferenceValue absolute = abs_sum_reference(t, bits);
  const ReferenceValue signed_sum = sdc_reference(t, bits);
  return (absolute.value / abs(signed_sum.value)).to_double();
}

std::int64_t terms_required_exact(double t, double epsilon, int bits, std::int64_t max_terms) {
  if (!(t > 0.0)) throw std::domain_error("terms_required_exact: t must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("terms_required_exact: epsilon must be in (0, 1)");
  const BigFloat at(t, bits);
  const BigFloat reference = sdc_reference(at, std::max(bits, kReferenceBits)).value;
  const BigFloat tolerance(epsilon, bits);
  const BigFloat pi = BigFloat::pi(bits);
  const BigFloat tau = detail::series_rate(at);
  // Running partial sum; bit-identical to sdc_truncated(t, k, direct).
  BigFloat partial(bits);
  for (std::int64_t k = 1; k <= max_terms; ++k) {
    partial += detail::series_term(k - 1, tau, false);
    if (abs(partial * pi - reference) < tolerance * abs(reference)) return k;
  }
  throw std::runtime_error("terms_required_exact: not reached within " + std::to_string(max_terms) + " terms");
}

double relative_error(const BigFloat& computed, const BigFloat& reference) {
  if (reference.is_zero()) return computed.is_zero() ? 0.0 : INFINITY;
  return (abs(computed - reference) / abs(reference)).to_double();
}

double relative_error(double t, EvalMode mode, Method method) {
  if (!(t > 0.0)) throw std::domain_error("relative_error: t must be positive");
  switch (mode.kind) {
    case Precision::binary32: {
      const float tf = static_cast<float>(t);
      return error_against(evaluate(tf, method), sdc_reference(tf));
    }
    case Precision::binary64:
      return error_against(evaluate(t, method), sdc_reference(t));
    case Precision::extended: {
      const BigFloat tb(t, mode.bits);
      return error_against(evaluate(tb, method), sdc_reference(tb, std::max(kReferenceBits, mode.bits + 64)));
    }
  }
  throw std::logic_error("relative_error: unknown mode");
}

SweepPoint evaluate_point(double t, int bits) {
  if (!(t > 0.0)) throw std::domain_error("evaluate_point: t must be positive");
  SweepPoint p;
  p.t = t;
  const float tf = static_cast<float>(t);
  const BigFloat tb(t, bits);
  const ReferenceValue reference = sdc_reference(t, bits);
  const ReferenceValue reference_single = sdc_reference(tf, bits);

  p.kappa = (abs_sum_reference(t, bits).value / abs(reference.value)).to_double();

  p.direct_big = sdc_direct(tb);
  p.direct_double = sdc_direct(t);
  p.direct_single = sdc_direct(tf);
  p.auto_big = sdc(tb);
  p.auto_double = sdc(t);
  p.auto_single = sdc(tf);

  p.direct_error_double = error_against(p.direct_double, reference);
  p.direct_error_single = error_against(p.direct_single, reference_single);
  p.auto_error_double = error_against(p.auto_double, reference);
  p.auto_error_single = error_against(p.auto_single, reference_single);
  p.oneterm_error = relative_error(sdc_truncated_auto(tb, 1), reference.value);
  p.twoterms_error = relative_error(sdc_truncated_auto(tb, 2), reference.value);
  return p;
}

std::vector<SweepPoint> run_sweep(const SweepGrid& grid, int bits, unsigned threads) {
  const std::vector<double> ts = grid.values();
  std::vector<SweepPoint> points(ts.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < ts.size(); ++i) points[i] = evaluate_point(ts[i], bits);
    return points;
  }
  std::vector<std::exception_ptr> failures(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < ts.size(); i += threads) points[i] = evaluate_point(ts[i], bits);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return points;
}

std::vector<std::string> figure_names() {
  return {"fig-1-a", "fig-1-b", "fig-1-c", "fig-1-d", "fig-2-a", "fig-2-b", "fig-2-c", "fig-2-d"};
}

std::vector<Column> figure_columns(const std::string& name, int bits) {
  if (name == "fig-1-a" || name == "fig-2-b") {
    return {t_column(), count_column("bigfloat"), count_column("double"), count_column("single")};
  }
  if (name == "fig-1-b") return {t_column(), real_column("k")};
  if (name == "fig-1-c" || name == "fig-2-c") return {t_column(), real_column("double"), real_column("single")};
  if (name == "fig-1-d" || name == "fig-2-d") {
    return {t_column(), {"bigfloat", CellKind::extended, bits}, real_column("double"),
            {"single", CellKind::binary32, 24}};
  }
  if (name == "fig-2-a") return {t_column(), real_column("oneterm"), real_column("twoterms")};
  throw std::invalid_argument("unknown figure '" + name + "'");
}

std::vector<FigureTable> build_figures(std::span<const SweepPoint> points, int bits) {
  std::vector<FigureTable> tables;
  for (const std::string& name : figure_names()) {
    FigureTable table{name, figure_columns(name, bits), {}};
    for (const SweepPoint& p : points) {
      const bool direct = name.starts_with("fig-1");
      const auto& big = direct ? p.direct_big : p.auto_big;
      const auto& dbl = direct ? p.direct_double : p.auto_double;
      const auto& sgl = direct ? p.direct_single : p.auto_single;
      const char panel = name.back();
      if (name == "fig-1-b") {
        table.add_row({p.t, p.kappa});
      } else if (name == "fig-2-a") {
        table.add_row({p.t, p.oneterm_error, p.twoterms_error});
      } else if (panel == 'a' || panel == 'b') {
        table.add_row({p.t, big.terms_used, dbl.terms_used, sgl.terms_used});
      } else if (panel == 'c') {
        table.add_row({p.t, direct ? p.direct_error_double : p.auto_error_double,
                       direct ? p.direct_error_single : p.auto_error_single});
      } else {
        table.add_row({p.t, BigFloat(big.value, bits), dbl.value, sgl.value});
      }
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

std::vector<FigureTable> emit_figures(const SweepGrid& grid, const std::filesystem::path& out_dir, unsigned threads) {
  grid.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw std::runtime_error("cannot create output directory " + out_dir.string() +
                             (ec ? ": " + ec.message() : std::string()));
  }
  const std::vector<SweepPoint> points = run_sweep(grid, kReferenceBits, threads);
  std::vector<FigureTable> tables = build_figures(points);
  for (const FigureTable& table : tables) table.write(out_dir);
  return tables;
}

}  // namespace sdcurve
