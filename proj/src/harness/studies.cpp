#include <chrono>
#include <cmath>
#include <numeric>

#include <exception>

#include "airy/harness.hpp"

namespace airy::harness {

namespace fs = std::filesystem;
using asymptotics::CaseTag;

std::vector<CoefficientRow> coefficient_table(Scenario s, const ScenarioParams& p) {
  const double Q = p.Q;
  std::vector<CoefficientRow> rows;
  auto add = [&](std::string name, double v, double scale, std::optional<double> ref,
                 std::optional<double> oracle = std::nullopt) {
    rows.push_back({std::move(name), v, v / scale, ref, oracle ? std::optional<double>(*oracle / scale) : std::nullopt});
  };
  switch (s) {
    case Scenario::double_riemann: {
      const auto c = asymptotics::riemann_coefficients(Q);
      add("Qstar", c.Qstar, Q, 0.87349);
      add("s0", c.s0, std::sqrt(Q), 0.4009689);
      break;
    }
    case Scenario::double_stoker: {
      const double g0 = p.g0;
      const auto c = asymptotics::stoker_coefficients(Q, g0);
      const auto o = asymptotics::taylor_hierarchy_oracle(Q, g0);
      add("Qstar", c.Qstar, Q, 0.87349, o.mu0);
      add("s0", c.s0, std::sqrt(Q), 0.4009689, o.s0);
      add("F1", c.F1, std::sqrt(g0 * Q), -0.22215);
      add("nu0", *c.nu0, std::sqrt(g0), -0.23769, o.nu0);
      add("mu1", *c.mu1, std::sqrt(g0) * Q, 0.20762, o.mu1);
      add("Phi1", *c.Phi1, std::sqrt(g0 / Q), -3.6325);
      add("F2", *c.F2, g0, -0.58487);
      add("s1", c.s1, std::sqrt(g0 * Q), 0.11703);
      add("A", c.A, 1.0, std::nullopt);
      add("B", c.B, 1.0, std::nullopt);
      add("Phi0", c.Phi0, 1.0, std::nullopt);
      break;
    }
    case Scenario::full: {
      const double g = p.gamma0;
      const double c3 = std::cbrt(g);
      const auto c = asymptotics::full_coefficients(Q, g);
      add("Qstar", c.Qstar, Q, 0.87349);
      add("s0", c.s0, std::sqrt(Q), 0.4009689);
      add("F1", c.F1, c3 * std::pow(Q, 2.0 / 3.0), 0.16752);
      add("s1", c.s1, c3 * std::sqrt(Q), 0.18006);
      add("c_ux", *c.c_ux, c3, 0.122216);
      add("c_etaxx", *c.c_etaxx, c3, 0.040739);
      add("A", c.A, c3 * std::pow(Q, 1.0 / 6.0), -0.51691);
      add("Phi0", c.Phi0, 1.0, std::nullopt);
      break;
    }
    default: throw UsageError("no coefficient table for " + std::string(scenarios::name(s)));
  }
  return rows;
}

ProfileAgreement compare_profiles(const spectral::UnfoldedState& st, const std::vector<double>& xi,
                                  const weno::ConservedGrid& g, double eta_floor) {
  if (std::abs(st.t - g.t) > 1e-12 * std::max(1.0, st.t)) throw DomainError("profiles at different times");
  const int M = st.M();
  std::vector<double> eta(M), u(M);
  for (int i = 0; i < M; ++i) {
    const double d = st.r(i) - st.s(i);
    eta[i] = d * d / 16.0;
    u[i] = 0.5 * (st.r(i) + st.s(i));
  }
  const auto w = numerics::barycentric_weights(xi);
  const double xs = std::exp(st.tau);
  const auto snap = weno::snapshot_of(g, eta_floor);
  ProfileAgreement a;
  a.t = st.t;
  a.x_shock = xs;
  for (int i = 0; i < g.M(); ++i) {
    const double x = g.x[i];
    if (std::abs(x) >= xs - 4.0 * g.delta) continue;
    const double z = std::abs(x) / xs;
    const double e = numerics::barycentric_eval(xi, w, eta, z);
    const double v = numerics::barycentric_eval(xi, w, u, z) * (x < 0 ? -1.0 : 1.0);
    a.max_deta = std::max(a.max_deta, std::abs(snap.eta[i] - e));
    a.max_du = std::max(a.max_du, std::abs(snap.u[i] - v));
    ++a.points;
  }
  if (a.points == 0) throw DomainError("no WENO points inside the inner region");
  return a;
}

SmoothError parabola_error(const weno::ConservedGrid& g, const ScenarioParams& p, double exclusion,
                           double eta_floor) {
  const auto ex = exact::presingularity_snapshot(g.x, g.t, p);
  const auto snap = weno::snapshot_of(g, eta_floor);
  double a = NAN;
  try {
    a = exact::core_edge_at(g.t, p).a;
  } catch (const DomainError&) {
  }
  const double b = exact::outer_edge(g.t, p);
  SmoothError e;
  for (int i = 0; i < g.M(); ++i) {
    const double x = std::abs(g.x[i]);
    if (std::abs(x - b) < exclusion) continue;
    if (std::isfinite(a) && std::abs(x - a) < exclusion) continue;
    e.eta = std::max(e.eta, std::abs(snap.eta[i] - ex.eta[i]) / p.Q);
    e.u = std::max(e.u, std::abs(snap.u[i] - ex.u[i]) / std::sqrt(p.Q));
    ++e.points;
  }
  return e;
}

namespace {

double rel(double num, double th) { return (num - th) / th; }

// one independent run per index; the first exception is rethrown after the sweep
template <class Fn>
void sweep(int n, int jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
  for (int k = 0; k < n; ++k) {
    try {
      fn(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

CompareReport compare(const CompareOptions& opt) {
  const auto& b = opt.base;
  if (b.scenario != Scenario::full && b.scenario != Scenario::double_stoker)
    throw UsageError("compare needs --scenario full or double-stoker");
  if (!(opt.t_hi > opt.t_lo && opt.t_lo > 0)) throw UsageError("bad comparison window");
  const auto c = coefficients_for(b.scenario, b.params);

  RunOptions so = b;
  so.dt = opt.spectral_dt;
  so.t_end.reset();
  so.times.clear();
  auto scfg = spectral_config(so);
  scfg.tau_end = b.tau_end.value_or(tau_of_time(c, 1.05 * opt.t_hi));
  scfg.record_every = 20;
  const auto tr = spectral::run_shockfit(scfg);

  auto wcfg = weno_config(b);
  wcfg.t_end = tr.final_state.t;
  wcfg.snapshot_times.clear();
  wcfg.series_every = std::max(1, static_cast<int>(std::lround(wcfg.t_end / wcfg.h / 4000.0)));
  const auto wr = weno::run_weno(wcfg);

  std::vector<double> wt, we, wu, wx;
  for (const auto& s : wr.series) {
    if (s.t <= 0) continue;
    wt.push_back(s.t);
    we.push_back(s.eta0);
    wu.push_back(s.ux0);
    wx.push_back(s.etaxx0);
  }
  const numerics::Pchip pe(wt, we), pu(wt, wu), px(wt, wx);

  CompareReport rep;
  rep.series.columns = {"t",        "eta0_spectral", "ux0_spectral", "etaxx0_spectral", "eta0_weno",
                        "ux0_weno", "etaxx0_weno",   "eta0_th",      "ux0_th",          "etaxx0_th",
                        "rel_eta_spectral", "rel_ux_spectral", "rel_etaxx_spectral", "rel_eta_weno",
                        "rel_ux_weno", "rel_etaxx_weno"};
  std::array<double, 6> mx{}, sum{};
  int n = 0;
  for (const auto& r : tr.records) {
    if (r.t < wt.front() || r.t > wt.back()) continue;
    const auto th = asymptotics::centerline_theory(c, r.t);
    const double e = pe(r.t), u = pu(r.t), x = px(r.t);
    const std::array<double, 6> errs = {rel(r.eta0 - c.Qstar, th.eta0 - c.Qstar), rel(r.ux0, th.ux0),
                                        rel(r.etaxx0, th.etaxx0),           rel(e - c.Qstar, th.eta0 - c.Qstar),
                                        rel(u, th.ux0),                     rel(x, th.etaxx0)};
    rep.series.rows.push_back({r.t, r.eta0, r.ux0, r.etaxx0, e, u, x, th.eta0, th.ux0, th.etaxx0, errs[0],
                               errs[1], errs[2], errs[3], errs[4], errs[5]});
    if (r.t >= opt.t_lo && r.t <= opt.t_hi) {
      for (int k = 0; k < 6; ++k) {
        mx[k] = std::max(mx[k], std::abs(errs[k]));
        sum[k] += std::abs(errs[k]);
      }
      ++n;
    }
  }
  const char* names[6] = {"eta_spectral", "ux_spectral", "etaxx_spectral", "eta_weno", "ux_weno", "etaxx_weno"};
  json errs;
  for (int k = 0; k < 6; ++k) errs[names[k]] = {{"max", mx[k]}, {"mean", n ? sum[k] / n : NAN}};
  const auto prof = compare_profiles(tr.final_state, tr.xi, wr.final_grid, wr.eta_floor);
  rep.summary = {{"scenario", std::string(scenarios::name(b.scenario))},
                 {"alignment", "monotone cubic (pchip) interpolation of the denser WENO series at spectral record times"},
                 {"window", {opt.t_lo, opt.t_hi}},
                 {"samples", n},
                 {"relative_errors", errs},
                 {"profiles",
                  {{"t", prof.t}, {"x_shock", prof.x_shock}, {"max_deta", prof.max_deta},
                   {"max_du", prof.max_du}, {"points", prof.points}}},
                 {"spectral", {{"modes", scfg.M}, {"h", scfg.h}, {"tau_end", scfg.tau_end}}},
                 {"weno", {{"M", wcfg.M}, {"h", wcfg.h}, {"t_end", wcfg.t_end}}}};
  return rep;
}

ScalingReport scaling_study(const ScalingOptions& opt) {
  if (opt.n < 2) throw UsageError("scaling grid needs n >= 2");
  if (!(opt.lo > 0 && opt.hi > opt.lo)) throw UsageError("bad scaling range");
  std::vector<double> v(opt.n);
  for (int i = 0; i < opt.n; ++i) v[i] = opt.lo * std::pow(opt.hi / opt.lo, double(i) / (opt.n - 1));
  const int N = opt.n * opt.n;
  std::vector<double> F(N, NAN);
  std::vector<std::string> err(N);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opt.jobs))
  for (int k = 0; k < N; ++k) {
    const double Q = v[k / opt.n], g = v[k % opt.n];
    try {
      spectral::Config cfg;
      cfg.scenario = Scenario::full;
      cfg.params.Q = Q;
      cfg.params.gamma0 = g;
      cfg.M = opt.modes;
      cfg.h = opt.dt;
      cfg.tau_end = opt.tau_probe;
      cfg.record_every = 50;
      const auto tr = spectral::run_shockfit(cfg);
      F[k] = spectral::extract_F1(tr, opt.tau_probe);
      if (opt.out) {
        Table t{{"tau", "t", "eta0"}, {}};
        for (const auto& r : tr.records) t.rows.push_back({r.tau, r.t, r.eta0});
        write_table(*opt.out / ("run_" + std::to_string(k)) / "series", t, Format::csv);
      }
    } catch (const std::exception& e) {
      err[k] = e.what();
    }
  }
  ScalingReport rep;
  rep.runs.columns = {"Q", "gamma0", "F1", "F1_normalized"};
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  double sum = 0;
  for (int k = 0; k < N; ++k) {
    const double Q = v[k / opt.n], g = v[k % opt.n];
    if (!err[k].empty()) {
      rep.failures.push_back("Q=" + format_number(Q) + " gamma0=" + format_number(g) + ": " + err[k]);
      continue;
    }
    const double norm = F[k] / (std::cbrt(g) * std::pow(Q, 2.0 / 3.0));
    rep.runs.rows.push_back({Q, g, F[k], norm});
    X.push_back({1.0, std::log(Q), std::log(g)});
    y.push_back(std::log(F[k]));
    sum += norm;
  }
  if (y.size() < 4) throw NumericalError("too few successful runs for a fit");
  const auto fit = numerics::least_squares(X, y);
  rep.slope_Q = fit.coef[1];
  rep.slope_Q_err = fit.std_err[1];
  rep.slope_gamma = fit.coef[2];
  rep.slope_gamma_err = fit.std_err[2];
  rep.constant = sum / y.size();
  rep.summary = {{"tau_probe", opt.tau_probe},
                 {"grid", v},
                 {"slope_Q", {rep.slope_Q, rep.slope_Q_err}},
                 {"slope_gamma0", {rep.slope_gamma, rep.slope_gamma_err}},
                 {"normalized_F1_mean", rep.constant},
                 {"fit_residual_rms", fit.residual_rms},
                 {"failures", rep.failures}};
  if (opt.out) {
    write_table(*opt.out / "scaling", rep.runs, Format::csv);
    write_json(*opt.out / "summary.json", rep.summary);
  }
  return rep;
}

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::vector<double>> X;
  for (double v : x) X.push_back({1.0, v});
  return numerics::least_squares(X, y).coef[1];
}

}  // namespace

ConvergenceReport convergence(const ConvergenceOptions& opt) {
  const auto& b = opt.base;
  if (opt.levels < 2) throw UsageError("convergence needs at least two levels");
  ConvergenceReport rep;
  const int L = opt.levels;
  const int jobs = std::max(1, b.jobs);

  if (b.solver == Solver::weno &&
      (b.scenario == Scenario::dry_parabola || b.scenario == Scenario::wet_parabola)) {
    std::vector<SmoothError> errs(L);
    std::vector<double> delta(L);
    sweep(L, jobs, [&](int k) {
      RunOptions o = b;
      o.M = b.M << k;
      if (!o.dt) o.dt = 5e-5;
      auto cfg = weno_config(o);
      cfg.kernel = jobs > 1 ? weno::Kernel::reference : weno::Kernel::parallel;
      cfg.series_every = 1000000;
      const auto r = weno::run_weno(cfg);
      errs[k] = parabola_error(r.final_grid, b.params, opt.exclusion, r.eta_floor);
      delta[k] = r.final_grid.delta;
    });
    rep.table.columns = {"M", "delta", "err_eta", "err_u", "order_eta"};
    std::vector<double> lx, ly;
    for (int k = 0; k < L; ++k) {
      const double ord = k ? numerics::observed_order(errs[k - 1].eta, errs[k].eta, 2.0) : NAN;
      rep.table.rows.push_back({double(b.M << k), delta[k], errs[k].eta, errs[k].u, ord});
      lx.push_back(std::log(delta[k]));
      ly.push_back(std::log(errs[k].eta));
    }
    rep.fitted_order = ls_slope(lx, ly);
    rep.summary = {{"kind", "weno-smooth"}, {"exclusion", opt.exclusion}, {"fitted_order", rep.fitted_order}};
    return rep;
  }

  if (b.solver == Solver::weno) {
    std::vector<weno::Overshoot> ov(L);
    std::vector<double> hs(L), plateau(L);
    sweep(L, jobs, [&](int k) {
      RunOptions o = b;
      o.M = b.M << k;
      o.dt = b.dt.value_or(1e-4) / double(1 << k);
      if (!o.t_end) o.t_end = b.scenario == Scenario::double_riemann ? 0.2 : 0.04;
      auto cfg = weno_config(o);
      cfg.kernel = jobs > 1 ? weno::Kernel::reference : weno::Kernel::parallel;
      cfg.series_every = 1000000;
      const auto r = weno::run_weno(cfg);
      if (!r.overshoot) throw UsageError("overshoot ladder needs double-riemann or full");
      ov[k] = *r.overshoot;
      hs[k] = cfg.h;
      plateau[k] = r.centerline.back().second;
    });
    rep.table.columns = {"M", "h", "amplitude", "t_peak", "support", "eta0_final"};
    std::vector<double> lx, ly;
    for (int k = 0; k < L; ++k) {
      rep.table.rows.push_back({double(b.M << k), hs[k], ov[k].amplitude, ov[k].t_peak, ov[k].support, plateau[k]});
      lx.push_back(std::log(double(b.M << k)));
      ly.push_back(std::log(ov[k].support));
    }
    rep.fitted_order = -ls_slope(lx, ly);
    rep.summary = {{"kind", "weno-overshoot"}, {"support_order", rep.fitted_order}};
    return rep;
  }

  if (b.solver == Solver::spectral) {
    RunOptions o = b;
    if (!o.dt) o.dt = 5e-5;
    if (!o.tau_end) o.tau_end = -8.0;
    std::vector<int> modes(L);
    for (int k = 0; k < L; ++k) modes[k] = 8 * (k + 1);
    o.modes = std::max(b.modes, 2 * modes.back());
    auto ref_cfg = spectral_config(o);
    ref_cfg.record_every = 1000000;
    const auto ref = spectral::run_shockfit(ref_cfg);
    auto eta_of = [](const spectral::UnfoldedState& st) {
      std::vector<double> e(st.M());
      for (int i = 0; i < st.M(); ++i) e[i] = (st.r(i) - st.s(i)) * (st.r(i) - st.s(i)) / 16.0;
      return e;
    };
    const auto eref = eta_of(ref.final_state);
    std::vector<double> errs(L);
    sweep(L, jobs, [&](int k) {
      RunOptions ok = o;
      ok.modes = modes[k];
      auto cfg = spectral_config(ok);
      cfg.record_every = 1000000;
      const auto tr = spectral::run_shockfit(cfg);
      const auto e = eta_of(tr.final_state);
      const auto w = numerics::barycentric_weights(tr.xi);
      double m = 0;
      for (std::size_t i = 0; i < ref.xi.size(); ++i)
        m = std::max(m, std::abs(numerics::barycentric_eval(tr.xi, w, e, ref.xi[i]) - eref[i]));
      errs[k] = m;
    });
    rep.table.columns = {"modes", "err_eta"};
    std::vector<double> lx, ly;
    for (int k = 0; k < L; ++k) {
      rep.table.rows.push_back({double(modes[k]), errs[k]});
      lx.push_back(modes[k]);
      ly.push_back(std::log(std::max(errs[k], 1e-300)));
    }
    rep.fitted_order = -ls_slope(lx, ly);
    rep.summary = {{"kind", "spectral-self"}, {"reference_modes", o.modes}, {"decay_rate", rep.fitted_order}};
    return rep;
  }
  throw UsageError("convergence supports --solver weno or spectral");
}

}  // namespace airy::harness
