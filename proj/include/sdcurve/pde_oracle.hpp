// Finite-difference solution of the pulse-response problem
//
//   C_t = C_xx on (0, 1),  C_x(0, t) = 0,  C(1, t) = 0,  C(x, 0) = delta(x),
//
// whose outlet flux -C_x(1, t) is the standard diffusion curve. Used as an
// independent check on the series evaluators for moderate t.
//
// Discretisation: cell-centred grid, Crank-Nicolson in time, ghost cells for
// both boundaries (mirror at the closed inlet, odd reflection at the outlet),
// unit mass placed in the first cell, and a second-order one-sided
// difference for the outlet gradient.

#ifndef SDCURVE_PDE_ORACLE_HPP_
#define SDCURVE_PDE_ORACLE_HPP_

#include <span>
#include <vector>

namespace sdcurve {

struct Grid1D {
  int n_cells = 0;

  explicit Grid1D(int cells);
  double dx() const { return 1.0 / n_cells; }
};

struct ConcentrationField {
  std::vector<double> values;  // one per cell
  double time = 0.0;

  // Unit mass in the first cell: C_0 = 1/dx.
  static ConcentrationField pulse(const Grid1D& grid);
  double mass(const Grid1D& grid) const;
  // -C_x at x = 1 from the two outermost cells and C(1) = 0.
  double outlet_flux(const Grid1D& grid) const;
};

struct FluxTrace {
  std::vector<double> times;
  std::vector<double> flux;
  std::vector<double> mass;  // discrete mass at the same times
};

// Default time step for a grid: dx^2 / 4.
double default_time_step(const Grid1D& grid);

// Marches to t_end (the step is shrunk slightly so t_end is hit exactly)
// and samples flux and mass at `sample_times` by linear interpolation
// between steps. Throws std::invalid_argument on bad arguments and
// std::runtime_error if the field becomes non-finite.
FluxTrace solve_flux(const Grid1D& grid, double dt, double t_end, std::span<const double> sample_times);

struct ConvergenceRow {
  int n_cells = 0;
  double dt = 0.0;
  std::vector<double> flux;            // per probe
  std::vector<double> relative_error;  // per probe, vs the 256-bit reference
};

struct ConvergenceTable {
  std::vector<double> probes;
  std::vector<double> reference;  // s(probe), rounded to double
  std::vector<ConvergenceRow> rows;

  // log2(e_coarse / e_fine) per probe for each consecutive pair of rows.
  // Empty with fewer than two rows.
  std::vector<std::vector<double>> observed_orders() const;
};

// Solves every level with dt = dt_ratio * dx^2 up to t_end (0 = the largest
// probe). Probes must lie in (0, t_end].
ConvergenceTable convergence_study(std::span<const Grid1D> levels, std::span<const double> probes,
                                   double dt_ratio = 0.25, double t_end = 0.0);

}  // namespace sdcurve

#endif  // SDCURVE_PDE_ORACLE_HPP_
