#include "sdcurve/pde_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sdcurve/multiprec.hpp"

namespace sdcurve {
namespace {

// Constant tridiagonal system (I - r/2 A) x = b with A the discrete
// Laplacian including both boundary closures; factored once.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(int n, double r) : n_(n), half_r_(0.5 * r), upper_(n), inverse_pivot_(n), rhs_(n) {
    const double off = -half_r_;
    double previous_upper = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double pivot = diagonal(i) - (i > 0 ? off * previous_upper : 0.0);
      inverse_pivot_[i] = 1.0 / pivot;
      upper_[i] = (i + 1 < n_) ? off * inverse_pivot_[i] : 0.0;
      previous_upper = upper_[i];
    }
  }

  void step(std::vector<double>& c) {
    // rhs = (I + r/2 A) c
    for (int i = 0; i < n_; ++i) {
      const double left = (i == 0) ? c[0] : c[i - 1];       // mirror ghost at the inlet
      const double right = (i == n_ - 1) ? -c[i] : c[i + 1];  // odd ghost, C(1) = 0
      rhs_[i] = c[i] + half_r_ * (left - 2.0 * c[i] + right);
    }
    const double off = -half_r_;
    c[0] = rhs_[0] * inverse_pivot_[0];
    for (int i = 1; i < n_; ++i) c[i] = (rhs_[i] - off * c[i - 1]) * inverse_pivot_[i];
    for (int i = n_ - 2; i >= 0; --i) c[i] -= upper_[i] * c[i + 1];
  }

 private:
  double diagonal(int i) const {
    if (i == 0) return 1.0 + half_r_;           // -C0 + C1
    if (i == n_ - 1) return 1.0 + 3.0 * half_r_;  // C_{N-2} - 3 C_{N-1}
    return 1.0 + 2.0 * half_r_;
  }

  int n_;
  double half_r_;
  std::vector<double> upper_;
  std::vector<double> inverse_pivot_;
  std::vector<double> rhs_;
};

void check_samples(std::span<const double> sample_times, double t_end) {
  if (sample_times.empty()) throw std::invalid_argument("solve_flux: no sample times");
  double previous = 0.0;
  for (const double t : sample_times) {
    if (!(t > previous) || t > t_end) {
      throw std::invalid_argument("solve_flux: sample times must be strictly increasing within (0, t_end]; got " +
                                  std::to_string(t));
    }
    previous = t;
  }
}

}  // namespace

Grid1D::Grid1D(int cells) : n_cells(cells) {
  if (cells < 16) throw std::invalid_argument("Grid1D: need at least 16 cells, got " + std::to_string(cells));
}

ConcentrationField ConcentrationField::pulse(const Grid1D& grid) {
  ConcentrationField field;
  field.values.assign(grid.n_cells, 0.0);
  field.values[0] = static_cast<double>(grid.n_cells);
  return field;
}

double ConcentrationField::mass(const Grid1D& grid) const {
  return std::accumulate(values.begin(), values.end(), 0.0) * grid.dx();
}

double ConcentrationField::outlet_flux(const Grid1D& grid) const {
  const auto n = values.size();
  return (9.0 * values[n - 1] - values[n - 2]) / (3.0 * grid.dx());
}

double default_time_step(const Grid1D& grid) { return 0.25 * grid.dx() * grid.dx(); }

FluxTrace solve_flux(const Grid1D& grid, double dt, double t_end, std::span<const double> sample_times) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("solve_flux: dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("solve_flux: t_end must be positive");
  if (dt > t_end) throw std::invalid_argument("solve_flux: dt exceeds t_end");
  check_samples(sample_times, t_end);

  const auto steps = static_cast<long long>(std::ceil(t_end / dt * (1.0 - 1e-12)));
  const double step = t_end / static_cast<double>(steps);
  CrankNicolsonStepper stepper(grid.n_cells, step / (grid.dx() * grid.dx()));

  ConcentrationField field = ConcentrationField::pulse(grid);
  FluxTrace trace;
  trace.times.assign(sample_times.begin(), sample_times.end());
  trace.flux.reserve(sample_times.size());
  trace.mass.reserve(sample_times.size());

  std::size_t next = 0;
  double previous_flux = field.outlet_flux(grid);
  double previous_mass = field.mass(grid);
  double previous_time = 0.0;
  for (long long k = 1; k <= steps && next < sample_times.size(); ++k) {
    stepper.step(field.values);
    field.time = (k == steps) ? t_end : static_cast<double>(k) * step;
    const double flux = field.outlet_flux(grid);
    const double mass = field.mass(grid);
    if (!std::isfinite(flux) || !std::isfinite(mass)) {
      throw std::runtime_error("solve_flux: non-finite field at t = " + std::to_string(field.time));
    }
    while (next < sample_times.size() && sample_times[next] <= field.time) {
      const double w = (sample_times[next] - previous_time) / (field.time - previous_time);
      trace.flux.push_back(previous_flux + w * (flux - previous_flux));
      trace.mass.push_back(previous_mass + w * (mass - previous_mass));
      ++next;
    }
    previous_flux = flux;
    previous_mass = mass;
    previous_time = field.time;
  }
  return trace;
}

std::vector<std::vector<double>> ConvergenceTable::observed_orders() const {
  std::vector<std::vector<double>> orders;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<double> per_probe;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      per_probe.push_back(std::log2(rows[i - 1].relative_error[p] / rows[i].relative_error[p]));
    }
    orders.push_back(std::move(per_probe));
  }
  return orders;
}

ConvergenceTable convergence_study(std::span<const Grid1D> levels, std::span<const double> probes, double dt_ratio,
                                   double t_end) {
  if (levels.empty()) throw std::invalid_argument("convergence_study: no grid levels");
  if (probes.empty()) throw std::invalid_argument("convergence_study: no probe times");
  if (!(dt_ratio > 0.0)) throw std::invalid_argument("convergence_study: dt ratio must be positive");

  std::vector<double> sorted(probes.begin(), probes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (t_end == 0.0) t_end = sorted.back();

  ConvergenceTable table;
  table.probes.assign(probes.begin(), probes.end());
  for (const double p : table.probes) table.reference.push_back(sdc_reference(p).value.to_double());

  for (const Grid1D& grid : levels) {
    const double dt = std::min(dt_ratio * grid.dx() * grid.dx(), t_end);
    const FluxTrace trace = solve_flux(grid, dt, t_end, sorted);
    ConvergenceRow row{grid.n_cells, dt, {}, {}};
    for (std::size_t p = 0; p < table.probes.size(); ++p) {
      const auto at = std::lower_bound(sorted.begin(), sorted.end(), table.probes[p]) - sorted.begin();
      const double flux = trace.flux[at];
      row.flux.push_back(flux);
      row.relative_error.push_back(std::abs(flux - table.reference[p]) / std::abs(table.reference[p]));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace sdcurve
