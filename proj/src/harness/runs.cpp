#include <chrono>
#include <cmath>

#include "airy/harness.hpp"

namespace airy::harness {

namespace fs = std::filesystem;

std::string_view solver_name(Solver s) {
  switch (s) {
    case Solver::exact: return "exact";
    case Solver::spectral: return "spectral";
    case Solver::weno: return "weno";
  }
  return "?";
}

Solver parse_solver(std::string_view text) {
  if (text == "exact") return Solver::exact;
  if (text == "spectral") return Solver::spectral;
  if (text == "weno") return Solver::weno;
  throw UsageError("unknown solver: " + std::string(text));
}

asymptotics::AsymptoticCoefficients coefficients_for(Scenario s, const ScenarioParams& p) {
  switch (s) {
    case Scenario::double_riemann: return asymptotics::riemann_coefficients(p.Q);
    case Scenario::double_stoker: return asymptotics::stoker_coefficients(p.Q, p.g0);
    case Scenario::full: return asymptotics::full_coefficients(p.Q, p.gamma0);
    default: throw UsageError("no post-collapse expansion for " + std::string(scenarios::name(s)));
  }
}

double tau_of_time(const asymptotics::AsymptoticCoefficients& c, double t) {
  if (!(t > 0)) throw DomainError("tau needs t > 0");
  return std::log(asymptotics::shock_position(c, t));
}

namespace {

bool post_collapse(Scenario s) {
  return s == Scenario::double_riemann || s == Scenario::double_stoker || s == Scenario::full;
}

double default_t_end(const RunOptions& o) {
  switch (o.scenario) {
    case Scenario::double_riemann: return 1.0;
    case Scenario::double_stoker:
    case Scenario::full: return 0.04;
    default: return 0.5 * exact::collapse_time(o.params.gamma0);
  }
}

json params_json(const ScenarioParams& p) {
  return {{"Q", p.Q}, {"gamma0", p.gamma0}, {"mu0", p.mu0}, {"g0", p.g0}};
}

Table snapshot_table(const FieldSnapshot& s) {
  Table t{{"x", "eta", "u", "m"}, {}};
  for (std::size_t i = 0; i < s.x.size(); ++i) t.rows.push_back({s.x[i], s.eta[i], s.u[i], s.eta[i] * s.u[i]});
  return t;
}

void run_exact(const RunOptions& o, json& m, std::vector<fs::path>& files) {
  const auto& p = o.params;
  std::vector<double> times = o.times;
  if (o.scenario == Scenario::double_riemann) {
    if (times.empty()) times = {0.25, 0.5, 1.0};
    const double L = o.x_max.value_or(1.0);
    const auto x = weno::uniform_grid(-L, L, o.M);
    const double s0 = shock::initial_shock_speed(p.Q);
    const double Qs = shock::qstar(p.Q / 4.0, p.Q);
    for (double t : times) {
      FieldSnapshot s;
      s.t = t;
      s.x = x;
      for (double xi : x) {
        const auto st = shock::double_riemann_solution(xi, t, p.Q, 0.0);
        s.eta.push_back(st.eta);
        s.u.push_back(st.u);
      }
      files.push_back(write_table(o.out / ("snap_" + time_label(t)), snapshot_table(s), o.format));
    }
    Table ser{{"t", "eta0", "xs_est"}, {}};
    const double t1 = *std::max_element(times.begin(), times.end());
    for (int k = 0; k <= 200; ++k) {
      const double t = t1 * k / 200.0;
      ser.rows.push_back({t, t > 0 ? Qs : p.Q / 4.0, s0 * t});
    }
    files.push_back(write_table(o.out / "series", ser, o.format));
    m["diagnostics"] = {{"Qstar", Qs}, {"s0", s0}};
    return;
  }
  if (o.scenario != Scenario::dry_parabola && o.scenario != Scenario::wet_parabola)
    throw UsageError("no closed-form solution for " + std::string(scenarios::name(o.scenario)));

  const double tc = exact::collapse_time(p.gamma0);
  if (times.empty()) times = {0.0, 0.5 * tc};
  const double t1 = *std::max_element(times.begin(), times.end());
  const double L = o.x_max.value_or(1.25 * exact::outer_edge(t1, p));
  const auto x = weno::uniform_grid(-L, L, o.M);
  for (double t : times) {
    const auto s = exact::presingularity_snapshot(x, t, p);
    files.push_back(write_table(o.out / ("snap_" + time_label(t)), snapshot_table(s), o.format));
  }
  Table ser{{"t", "eta0", "xs_est", "a", "b"}, {}};
  for (int k = 0; k <= 200; ++k) {
    const double t = t1 * k / 200.0;
    const auto s = exact::presingularity_snapshot({0.0}, t, p);
    double a = NAN;
    try {
      a = exact::core_edge_at(t, p).a;
    } catch (const DomainError&) {
    }
    ser.rows.push_back({t, s.eta[0], NAN, a, exact::outer_edge(t, p)});
  }
  files.push_back(write_table(o.out / "series", ser, o.format));
  m["diagnostics"] = {{"t_c", tc}, {"domain", {-L, L}}};
}

Table spectral_snapshot_table(const spectral::UnfoldedState& st, const std::vector<double>& xi,
                              const asymptotics::AsymptoticCoefficients& c) {
  Table t{{"xi", "x", "eta", "u", "eta_tilde", "eta_tilde_th", "u_th"}, {}};
  const double xs = std::exp(st.tau);
  for (int i = 0; i < st.M(); ++i) {
    const double d = st.r(i) - st.s(i);
    const double eta = d * d / 16.0;
    const double u = 0.5 * (st.r(i) + st.s(i));
    asymptotics::Profile th{0.0, 0.0};
    if (c.tag == asymptotics::CaseTag::double_stoker)
      th = asymptotics::inner_profile_stoker(xi[i], st.tau, c, asymptotics::Coords::unfolded);
    else if (c.tag == asymptotics::CaseTag::full)
      th = asymptotics::inner_profile_full(xi[i], st.tau, c, asymptotics::Coords::unfolded);
    t.rows.push_back({xi[i], xi[i] * xs, eta, u, eta - c.Qstar, th.eta, th.u});
  }
  return t;
}

void run_spectral(const RunOptions& o, json& m, std::vector<fs::path>& files) {
  const auto cfg = spectral_config(o);
  const auto c = coefficients_for(o.scenario, o.params);
  const auto tr = spectral::run_shockfit(cfg);
  Table ser{{"tau", "t", "xs", "eta0", "ux0", "etaxx0", "eta0_th", "ux0_th", "etaxx0_th"}, {}};
  for (const auto& r : tr.records) {
    const auto th = asymptotics::centerline_theory(c, r.t);
    ser.rows.push_back({r.tau, r.t, r.xs, r.eta0, r.ux0, r.etaxx0, th.eta0, th.ux0, th.etaxx0});
  }
  files.push_back(write_table(o.out / "series", ser, o.format));
  for (const auto& st : tr.snapshots)
    files.push_back(write_table(o.out / ("snap_" + time_label(st.t)), spectral_snapshot_table(st, tr.xi, c), o.format));
  files.push_back(write_table(o.out / ("snap_" + time_label(tr.final_state.t)),
                              spectral_snapshot_table(tr.final_state, tr.xi, c), o.format));
  json d = {{"steps", tr.steps},
            {"max_bc_residual", tr.max_bc_residual},
            {"min_eta", tr.min_eta},
            {"Qstar", tr.Qstar},
            {"s0", tr.s0},
            {"tau_end", tr.final_state.tau},
            {"t_end", tr.final_state.t},
            {"time_mapping", "tau = log x_s(t) from the short-time shock position"}};
  if (o.scenario == Scenario::full && tr.final_state.tau >= -6.0) d["F1_at_tau_-6"] = spectral::extract_F1(tr, -6.0);
  m["spectral"] = {{"modes", cfg.M}, {"h", cfg.h}, {"tau0", cfg.tau0}, {"tau_end", cfg.tau_end}};
  m["diagnostics"] = d;
}

void run_weno_solver(const RunOptions& o, json& m, std::vector<fs::path>& files) {
  const auto cfg = weno_config(o);
  const auto r = weno::run_weno(cfg);
  Table ser{{"t", "eta0", "xs_est"}, {}};
  Table cl{{"t", "eta0", "ux0", "etaxx0"}, {}};
  for (const auto& s : r.series) {
    ser.rows.push_back({s.t, s.eta0, s.xs});
    cl.rows.push_back({s.t, s.eta0, s.ux0, s.etaxx0});
  }
  files.push_back(write_table(o.out / "series", ser, o.format));
  files.push_back(write_table(o.out / "centerline", cl, o.format));
  auto snap_table = [](const weno::Snapshot& s) {
    Table t{{"x", "eta", "u", "m"}, {}};
    for (std::size_t i = 0; i < s.x.size(); ++i) t.rows.push_back({s.x[i], s.eta[i], s.u[i], s.m[i]});
    return t;
  };
  for (const auto& s : r.snapshots) files.push_back(write_table(o.out / ("snap_" + time_label(s.t)), snap_table(s), o.format));
  const auto fin = weno::snapshot_of(r.final_grid, r.eta_floor);
  bool have_final = false;
  for (const auto& s : r.snapshots) have_final |= s.t == fin.t;
  if (!have_final) files.push_back(write_table(o.out / ("snap_" + time_label(fin.t)), snap_table(fin), o.format));

  json d = {{"steps", r.steps}, {"clamped", r.clamped}, {"min_eta", r.min_eta}, {"eta_floor", r.eta_floor}};
  if (r.overshoot)
    d["overshoot"] = {{"amplitude", r.overshoot->amplitude},
                      {"t_peak", r.overshoot->t_peak},
                      {"support", r.overshoot->support}};
  try {
    const auto sh = weno::locate_shock(r.final_grid, cfg.shock_threshold);
    d["shock"] = {{"x", sh.x}, {"uncertainty", sh.uncertainty}};
  } catch (const DomainError&) {
    d["shock"] = nullptr;
  }
  m["weno"] = {{"M", cfg.M}, {"h", cfg.h}, {"t_end", cfg.t_end}, {"domain", {cfg.x_left, cfg.x_right}},
               {"series_every", cfg.series_every}};
  m["diagnostics"] = d;
}

}  // namespace

spectral::Config spectral_config(const RunOptions& o) {
  if (!post_collapse(o.scenario))
    throw UsageError("spectral solver needs double-riemann, double-stoker or full");
  const auto c = coefficients_for(o.scenario, o.params);
  spectral::Config cfg;
  cfg.scenario = o.scenario;
  cfg.params = o.params;
  cfg.M = o.modes;
  cfg.h = o.dt.value_or(1e-4);
  if (o.tau0) cfg.tau0 = *o.tau0;
  if (o.tau_end)
    cfg.tau_end = *o.tau_end;
  else if (o.t_end)
    cfg.tau_end = tau_of_time(c, *o.t_end);
  for (double t : o.times)
    if (t > 0) cfg.snapshot_taus.push_back(tau_of_time(c, t));
  return cfg;
}

weno::Config weno_config(const RunOptions& o) {
  weno::Config cfg;
  cfg.scenario = o.scenario;
  cfg.params = o.params;
  cfg.M = o.M;
  cfg.h = o.dt.value_or(1e-4);
  cfg.t_end = o.t_end.value_or(default_t_end(o));
  cfg.snapshot_times = o.times;
  const auto& p = o.params;
  double L = 1.0;
  switch (o.scenario) {
    case Scenario::double_riemann: L = 1.0; break;
    case Scenario::full: L = std::sqrt(1.5); break;
    case Scenario::double_stoker: L = 1.2 * scenarios::stoker_front(cfg.t_end, p.Q, p.g0); break;
    default: L = 1.25 * exact::outer_edge(std::min(cfg.t_end, exact::collapse_time(p.gamma0)), p);
  }
  L = o.x_max.value_or(L);
  cfg.x_left = -L;
  cfg.x_right = L;
  const double steps = cfg.t_end / cfg.h;
  cfg.series_every = std::max(1, static_cast<int>(std::lround(steps / 5000.0)));
  return cfg;
}

RunSummary execute_run(const RunOptions& o) {
  o.params.validate();
  if (o.M < 8) throw UsageError("--M must be at least 8");
  if (o.modes < 4) throw UsageError("--modes must be at least 4");
  if (o.dt && !(*o.dt > 0)) throw UsageError("--dt must be positive");
  if (o.t_end && !(*o.t_end > 0)) throw UsageError("--t-end must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(o.out);
  RunSummary res;
  json& m = res.manifest;
  m["tool"] = "airy";
  m["version"] = kVersion;
  m["command"] = "run";
  m["scenario"] = std::string(scenarios::name(o.scenario));
  m["solver"] = std::string(solver_name(o.solver));
  m["params"] = params_json(o.params);
  m["times"] = o.times;
  m["format"] = o.format == Format::csv ? "csv" : "json";
  m["jobs"] = o.jobs;
  switch (o.solver) {
    case Solver::exact: run_exact(o, m, res.files); break;
    case Solver::spectral: run_spectral(o, m, res.files); break;
    case Solver::weno: run_weno_solver(o, m, res.files); break;
  }
  m["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json names = json::array();
  for (const auto& f : res.files) names.push_back(f.filename().string());
  m["files"] = names;
  write_json(o.out / "manifest.json", m);
  res.files.push_back(o.out / "manifest.json");
  return res;
}

}  // namespace airy::harness
