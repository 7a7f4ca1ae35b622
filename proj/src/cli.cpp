#include "sdcurve/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdcurve/analysis.hpp"
#include "sdcurve/core_series.hpp"
#include "sdcurve/decimal.hpp"
#include "sdcurve/multiprec.hpp"
#include "sdcurve/pde_oracle.hpp"

namespace sdcurve::cli {
namespace {

// Argument or precondition problem detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvalOptions {
  std::string t;
  std::string mode = "double";
  std::string method = "auto";
  std::int64_t k = 0;
  std::string branch = "auto";
  std::int64_t max_terms = 0;
  bool check = false;
};

struct GridOptions {
  int points = SweepGrid{}.points;
  double t_min = SweepGrid{}.t_min;
  double t_max = SweepGrid{}.t_max;
  unsigned threads = 1;

  SweepGrid grid() const {
    SweepGrid g{t_min, t_max, points};
    try {
      g.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return g;
  }
};

struct FiguresOptions {
  GridOptions grid;
  std::string out_dir = "figures";
};

struct VerifyOptions {
  std::vector<double> probes{0.1, 0.5, 1.0};
  std::vector<int> levels{64, 128, 256};
  double t_end = 1.0;
  double tolerance = 0.01;
  double dt_ratio = 0.25;
};

std::string fmt_double(double x, const char* spec = "%.6e") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

template <WorkingReal Real>
BigFloat widen(const Real& x, int bits) {
  if constexpr (std::is_same_v<Real, BigFloat>) {
    return BigFloat(x, std::max(bits, x.precision()));
  } else {
    return BigFloat(x, bits);
  }
}

template <WorkingReal Real>
int eval_in(const Real& t, const EvalMode& mode, const EvalOptions& o, std::ostream& out) {
  TermBudget budget = o.max_terms > 0 ? TermBudget::at_most(o.max_terms) : TermBudget::unbounded();
  std::optional<Real> value;
  std::int64_t terms = 0;
  Branch branch = Branch::direct;
  bool exhausted = false;

  if (o.method == "direct") {
    SeriesEval<Real> r = sdc_direct(t, false, budget);
    value = std::move(r.value);
    terms = r.terms_used;
    branch = r.branch;
    exhausted = r.budget_exhausted;
  } else if (o.method == "auto") {
    SeriesEval<Real> r = sdc(t, budget);
    value = std::move(r.value);
    terms = r.terms_used;
    branch = r.branch;
    exhausted = r.budget_exhausted;
  } else {
    if (o.k < 1) throw UsageError("--method truncated needs --k >= 1");
    if (o.branch == "auto") {
      branch = auto_branch(t);
    } else {
      branch = o.branch == "direct" ? Branch::direct : Branch::reflected;
    }
    value = branch == Branch::zero_shortcut ? sdc_truncated_auto(t, o.k) : sdc_truncated(t, o.k, branch);
    terms = o.k;
  }

  out << "t: " << format_shortest(t) << '\n';
  out << "mode: " << mode.name() << '\n';
  out << "method: " << o.method << '\n';
  out << "branch: " << branch_name(branch) << '\n';
  out << "terms: " << terms << (exhausted ? " (budget exhausted)" : "") << '\n';
  out << "value: " << format_shortest(*value) << '\n';
  if (o.check) {
    const int bits = std::max(kReferenceBits, mode.bits + 64);
    const ReferenceValue reference = sdc_reference(widen(t, bits), bits);
    out << "reference: " << reference.value.to_string(20) << '\n';
    out << "relative_error: " << fmt_double(relative_error(widen(*value, bits), reference.value), "%.3e") << '\n';
  }
  return kExitOk;
}

int run_eval(const EvalOptions& o, std::ostream& out) {
  EvalMode mode;
  try {
    mode = EvalMode::parse(o.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  try {
    switch (mode.kind) {
      case Precision::binary32:
        return eval_in(parse_binary32(o.t), mode, o, out);
      case Precision::binary64:
        return eval_in(parse_binary64(o.t), mode, o, out);
      case Precision::extended:
        return eval_in(BigFloat::parse(o.t, mode.bits), mode, o, out);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("domain error: ") + e.what());
  }
  return kExitInternal;
}

int run_figures(const FiguresOptions& o, std::ostream& out) {
  const SweepGrid grid = o.grid.grid();
  const std::filesystem::path dir(o.out_dir);
  const std::vector<FigureTable> tables = emit_figures(grid, dir, o.grid.threads);
  for (const FigureTable& table : tables) {
    out << (dir / table.file_name()).string() << ": " << table.rows.size() << " rows, header " << table.header()
        << '\n';
  }
  return kExitOk;
}

int run_sweep_command(const GridOptions& o, std::ostream& out) {
  const std::vector<SweepPoint> points = run_sweep(o.grid(), kReferenceBits, o.threads);
  out << "t,kappa,direct_double,direct_single,auto_double,auto_single,terms_direct_double,terms_auto_double\n";
  for (const SweepPoint& p : points) {
    out << format_shortest(p.t) << ',' << format_shortest(p.kappa) << ',' << format_shortest(p.direct_error_double)
        << ',' << format_shortest(p.direct_error_single) << ',' << format_shortest(p.auto_error_double) << ','
        << format_shortest(p.auto_error_single) << ',' << p.direct_double.terms_used << ','
        << p.auto_double.terms_used << '\n';
  }
  return kExitOk;
}

int run_verify(const VerifyOptions& o, std::ostream& out) {
  if (!(o.t_end > 0.0)) throw UsageError("--t-end must be positive");
  if (!(o.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  for (const double p : o.probes) {
    if (!(p > 0.0) || p > o.t_end) {
      throw UsageError("probe " + format_shortest(p) + " is outside (0, t_end = " + format_shortest(o.t_end) + "]");
    }
  }
  std::vector<Grid1D> levels;
  try {
    for (const int n : o.levels) levels.emplace_back(n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::sort(levels.begin(), levels.end(), [](const Grid1D& a, const Grid1D& b) { return a.n_cells < b.n_cells; });

  const ConvergenceTable table = convergence_study(levels, o.probes, o.dt_ratio, o.t_end);

  out << "n_cells,dt";
  for (const double p : table.probes) out << ",err(t=" << format_shortest(p) << ")";
  out << '\n';
  for (const ConvergenceRow& row : table.rows) {
    out << row.n_cells << ',' << fmt_double(row.dt, "%.3e");
    for (const double e : row.relative_error) out << ',' << fmt_double(e, "%.3e");
    out << '\n';
  }
  const auto orders = table.observed_orders();
  for (std::size_t i = 0; i < orders.size(); ++i) {
    out << "order " << table.rows[i].n_cells << "->" << table.rows[i + 1].n_cells << ':';
    for (const double q : orders[i]) out << ' ' << fmt_double(q, "%.2f");
    out << '\n';
  }
  const auto& finest = table.rows.back().relative_error;
  const double worst = *std::max_element(finest.begin(), finest.end());
  const bool pass = worst <= o.tolerance;
  out << (pass ? "PASS" : "FAIL") << ": finest level (n_cells = " << table.rows.back().n_cells
      << ") max relative error " << fmt_double(worst, "%.3e") << (pass ? " <= " : " > ") << "tolerance "
      << fmt_double(o.tolerance, "%.3e") << '\n';
  return pass ? kExitOk : kExitVerifyFailed;
}

void add_grid_options(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--points", g.points, "number of log-spaced time points")->capture_default_str();
  cmd->add_option("--t-min", g.t_min, "smallest time")->capture_default_str();
  cmd->add_option("--t-max", g.t_max, "largest time")->capture_default_str();
  cmd->add_option("--threads", g.threads, "worker threads for the sweep (output does not depend on it)")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Standard diffusion curve: stable evaluation and floating-point error study", "sdcurve"};
  app.require_subcommand(1, 1);

  EvalOptions eval_opts;
  CLI::App* eval = app.add_subcommand("eval", "evaluate s(t) at one point");
  eval->add_option("--t", eval_opts.t, "time (decimal, rounded to nearest in the chosen mode)")->required();
  eval->add_option("--mode", eval_opts.mode, "arithmetic: single, double, big or big:<bits>")->capture_default_str();
  eval->add_option("--method", eval_opts.method, "direct, auto (reflection for t <= 1/pi) or truncated")
      ->check(CLI::IsMember({"direct", "auto", "truncated"}))
      ->capture_default_str();
  eval->add_option("--k", eval_opts.k, "number of terms for --method truncated");
  eval->add_option("--branch", eval_opts.branch, "formula for --method truncated: auto, direct or reflected")
      ->check(CLI::IsMember({"auto", "direct", "reflected"}))
      ->capture_default_str();
  eval->add_option("--max-terms", eval_opts.max_terms, "term budget for direct/auto (default unbounded)");
  eval->add_flag("--check", eval_opts.check, "also print the relative error against the high-precision reference");

  FiguresOptions fig_opts;
  CLI::App* figures = app.add_subcommand("figures", "write the eight figure CSV tables");
  figures->add_option("--out-dir", fig_opts.out_dir, "output directory (created if missing)")->capture_default_str();
  add_grid_options(figures, fig_opts.grid);

  GridOptions sweep_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "print condition numbers and relative errors over a grid as CSV");
  add_grid_options(sweep, sweep_opts);

  VerifyOptions verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "cross-check s(t) against a finite-difference PDE solution");
  verify->add_option("--probes", verify_opts.probes, "probe times")->capture_default_str()->delimiter(',');
  verify->add_option("--levels", verify_opts.levels, "grid sizes (cells)")->capture_default_str()->delimiter(',');
  verify->add_option("--t-end", verify_opts.t_end, "end of the simulated interval")->capture_default_str();
  verify->add_option("--tolerance", verify_opts.tolerance, "allowed relative error at the finest level")
      ->capture_default_str();
  verify->add_option("--dt-ratio", verify_opts.dt_ratio, "time step as a multiple of dx^2")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(eval_opts, out);
    if (*figures) return run_figures(fig_opts, out);
    if (*sweep) return run_sweep_command(sweep_opts, out);
    if (*verify) return run_verify(verify_opts, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace sdcurve::cli
