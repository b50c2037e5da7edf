#include <iomanip>
#include <iostream>

#include <omp.h>

#include "CLI11.hpp"
#include "airy/harness.hpp"

namespace airy::harness {

namespace {

struct CommonFlags {
  std::string scenario = "double-riemann";
  std::string solver = "weno";
  std::string format = "csv";
  double dt = NAN, t_end = NAN, tau0 = NAN, tau_end = NAN, x_max = NAN;
  RunOptions opt;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--scenario", f.scenario, "dry-parabola|wet-parabola|double-riemann|double-stoker|full")
      ->capture_default_str();
  app->add_option("--solver", f.solver, "exact|spectral|weno")->capture_default_str();
  app->add_option("--Q", f.opt.params.Q, "background level Q")->capture_default_str();
  app->add_option("--gamma0", f.opt.params.gamma0, "parabola curvature")->capture_default_str();
  app->add_option("--mu0", f.opt.params.mu0, "parabola minimum")->capture_default_str();
  app->add_option("--g0", f.opt.params.g0, "double-Stoker curvature")->capture_default_str();
  app->add_option("--M", f.opt.M, "grid points")->capture_default_str();
  app->add_option("--modes", f.opt.modes, "collocation points")->capture_default_str();
  app->add_option("--dt", f.dt, "time step (tau step for the spectral solver)");
  app->add_option("--t-end", f.t_end, "final time measured from the scenario origin");
  app->add_option("--tau0", f.tau0, "initial unfolded time");
  app->add_option("--tau-end", f.tau_end, "final unfolded time");
  app->add_option("--x-max", f.x_max, "half width of the WENO domain");
  app->add_option("--times", f.opt.times, "snapshot times")->delimiter(',');
  app->add_option("--out", f.opt.out, "output directory")->capture_default_str();
  app->add_option("--format", f.format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app->add_option("--jobs", f.opt.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

RunOptions resolve(CommonFlags& f) {
  RunOptions o = f.opt;
  try {
    o.scenario = scenarios::parse(f.scenario);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  o.solver = parse_solver(f.solver);
  o.format = f.format == "json" ? Format::json : Format::csv;
  auto set = [](std::optional<double>& dst, double v) {
    if (!std::isnan(v)) dst = v;
  };
  set(o.dt, f.dt);
  set(o.t_end, f.t_end);
  set(o.tau0, f.tau0);
  set(o.tau_end, f.tau_end);
  set(o.x_max, f.x_max);
  try {
    o.params.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  for (double t : o.times)
    if (!(t >= 0)) throw UsageError("--times must be non-negative");
  return o;
}

void print_table(const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) std::cout << (c ? "  " : "") << std::setw(14) << t.columns[c];
  std::cout << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) std::cout << (c ? "  " : "") << std::setw(14) << std::setprecision(7) << r[c];
    std::cout << '\n';
  }
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Airy shallow-water solver suite"};
  app.require_subcommand(1);

  CommonFlags run_f, coef_f, cmp_f, conv_f;
  coef_f.scenario = "double-stoker";
  cmp_f.scenario = "full";
  conv_f.scenario = "dry-parabola";

  auto* run = app.add_subcommand("run", "run one scenario with one solver");
  add_common(run, run_f);

  auto* coef = app.add_subcommand("coefficients", "short-time expansion coefficients");
  add_common(coef, coef_f);

  auto* cmp = app.add_subcommand("compare", "spectral and WENO centerline errors against the expansions");
  add_common(cmp, cmp_f);
  double spectral_dt = 1e-4, t_lo = 0.01, t_hi = 0.04;
  cmp->add_option("--spectral-dt", spectral_dt, "tau step of the spectral side")->capture_default_str();
  cmp->add_option("--t-lo", t_lo, "start of the error window")->capture_default_str();
  cmp->add_option("--t-hi", t_hi, "end of the error window")->capture_default_str();

  auto* scal = app.add_subcommand("scaling-study", "F'(0) over a (Q, gamma0) grid");
  ScalingOptions sopt;
  std::string scal_out;
  scal->add_option("--n", sopt.n, "points per axis")->capture_default_str();
  scal->add_option("--lo", sopt.lo, "lower end of both axes")->capture_default_str();
  scal->add_option("--hi", sopt.hi, "upper end of both axes")->capture_default_str();
  scal->add_option("--tau-probe", sopt.tau_probe, "extraction time")->capture_default_str();
  scal->add_option("--modes", sopt.modes, "collocation points")->capture_default_str();
  scal->add_option("--dt", sopt.dt, "tau step")->capture_default_str();
  scal->add_option("--jobs", sopt.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  scal->add_option("--out", scal_out, "output directory");

  auto* conv = app.add_subcommand("convergence", "refinement ladder");
  add_common(conv, conv_f);
  int levels = 4;
  double exclusion = 0.1;
  conv->add_option("--levels", levels, "ladder length")->capture_default_str();
  conv->add_option("--exclusion", exclusion, "half width excluded around splice points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      const auto o = resolve(run_f);
      omp_set_num_threads(o.jobs);
      const auto res = execute_run(o);
      for (const auto& f : res.files) std::cout << f.string() << '\n';
      std::cout << res.manifest["diagnostics"].dump() << '\n';
    } else if (coef->parsed()) {
      const auto o = resolve(coef_f);
      const auto rows = coefficient_table(o.scenario, o.params);
      Table t{{"value", "normalized", "reference", "rel_delta", "oracle"}, {}};
      std::cout << std::left << std::setw(10) << "name" << std::right;
      for (const auto& c : t.columns) std::cout << std::setw(18) << c;
      std::cout << '\n';
      json j = json::array();
      for (const auto& r : rows) {
        const double ref = r.reference.value_or(NAN);
        const double delta = r.reference ? (r.normalized - ref) / std::abs(ref) : NAN;
        std::cout << std::left << std::setw(10) << r.name << std::right << std::setprecision(10);
        for (double v : {r.value, r.normalized, ref, delta, r.oracle.value_or(NAN)}) std::cout << std::setw(18) << v;
        std::cout << '\n';
        j.push_back({{"name", r.name}, {"value", r.value}, {"normalized", r.normalized},
                     {"reference", r.reference ? json(ref) : json(nullptr)},
                     {"rel_delta", r.reference ? json(delta) : json(nullptr)},
                     {"oracle", r.oracle ? json(*r.oracle) : json(nullptr)}});
      }
      if (coef->count("--out")) write_json(o.out / "coefficients.json", j);
    } else if (cmp->parsed()) {
      CompareOptions co;
      co.base = resolve(cmp_f);
      if (!cmp->count("--dt")) co.base.dt = co.base.scenario == Scenario::full ? 4e-6 : 1e-5;
      if (!cmp->count("--M")) co.base.M = 4096;
      co.spectral_dt = spectral_dt;
      co.t_lo = t_lo;
      co.t_hi = t_hi;
      omp_set_num_threads(co.base.jobs);
      const auto rep = compare(co);
      write_table(co.base.out / "compare", rep.series, co.base.format);
      write_json(co.base.out / "summary.json", rep.summary);
      std::cout << std::setw(2) << rep.summary << '\n';
    } else if (scal->parsed()) {
      if (!scal_out.empty()) sopt.out = scal_out;
      const auto rep = scaling_study(sopt);
      print_table(rep.runs);
      std::cout << std::setw(2) << rep.summary << '\n';
    } else if (conv->parsed()) {
      ConvergenceOptions co;
      co.base = resolve(conv_f);
      co.levels = levels;
      co.exclusion = exclusion;
      const auto rep = convergence(co);
      print_table(rep.table);
      write_table(co.base.out / "convergence", rep.table, co.base.format);
      write_json(co.base.out / "summary.json", rep.summary);
      std::cout << std::setw(2) << rep.summary << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace airy::harness
