#include "airy/weno_fd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <memory>
#include <sstream>

#include "airy/asymptotics.hpp"
#include "weno_stencil.hpp"

namespace airy::weno {

Flux conservative_flux(double eta, double m, double eta_floor, bool* clamped) {
  const auto s = detail::guard(eta, m, eta_floor);
  if (clamped) *clamped = s.clamped;
  return {m, m * s.u + 0.5 * s.eta * s.eta};
}

SplitFlux lf_split(const Flux& f, double eta, double m, double alpha) {
  return {0.5 * (f.G + alpha * eta), 0.5 * (f.G - alpha * eta), 0.5 * (f.L + alpha * m),
          0.5 * (f.L - alpha * m)};
}

double lf_alpha(const std::vector<double>& eta, const std::vector<double>& m, double eta_floor) {
  double a = 0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const auto s = detail::guard(eta[i], m[i], eta_floor);
    a = std::max(a, std::abs(s.u) + std::sqrt(s.eta));
  }
  return a;
}

Reconstruction weno5_reconstruct(const std::array<double, 5>& v, Direction d) {
  Reconstruction r{};
  if (d == Direction::plus)
    r.value = detail::weno5_left(v[0], v[1], v[2], v[3], v[4], r.weights.data());
  else
    r.value = detail::weno5_left(v[4], v[3], v[2], v[1], v[0], r.weights.data());
  return r;
}

void ConservedGrid::check_uniform(double tol) const {
  for (int i = 0; i + 1 < M(); ++i)
    if (std::abs(x[i + 1] - x[i] - delta) > tol) throw NumericalError("grid is not uniform");
}

double ConservedGrid::mass() const {
  double s = 0;
  for (double e : eta) s += e;
  return s * delta;
}

double ConservedGrid::momentum() const {
  double s = 0;
  for (double v : m) s += v;
  return s * delta;
}

std::vector<double> uniform_grid(double a, double b, int M) {
  if (M < 2 || !(b > a)) throw DomainError("bad grid");
  std::vector<double> x(M);
  const double n = M - 1;
  for (int i = 0; i < M; ++i) x[i] = (a * (n - i) + b * i) / n;
  return x;
}

ConservedGrid make_grid(double a, double b, int M, double t0,
                        const std::function<State(double)>& state) {
  if (M < 2 * kGhost + 2) throw DomainError("too few grid points");
  ConservedGrid g;
  g.x = uniform_grid(a, b, M);
  g.delta = (b - a) / (M - 1);
  g.t = t0;
  g.eta.resize(M);
  g.m.resize(M);
  for (int i = 0; i < M; ++i) {
    const State s = state(g.x[i]);
    g.eta[i] = s.eta;
    g.m[i] = s.eta * s.u;
  }
  for (int k = 0; k < kGhost; ++k) {
    const State l = state(a - (k + 1) * g.delta);
    const State r = state(b + (k + 1) * g.delta);
    g.eta_left[k] = l.eta;
    g.m_left[k] = l.eta * l.u;
    g.eta_right[k] = r.eta;
    g.m_right[k] = r.eta * r.u;
  }
  return g;
}

RhsResult semidiscrete_rhs(const ConservedGrid& g, double eta_floor, Kernel k) {
  RhsResult out;
  Workspace ws;
  semidiscrete_rhs(g, eta_floor, k, out, ws);
  return out;
}

StepReport Stepper::step(ConservedGrid& g, double h) {
  if (!(h > 0)) throw DomainError("time step must be positive");
  const int M = g.M();
  StepReport rep;
  eta0_ = g.eta;
  m0_ = g.m;

  auto accumulate = [&](double w) {
    rep.mass_in += w * h * (r_.flux_left.G - r_.flux_right.G);
    rep.momentum_in += w * h * (r_.flux_left.L - r_.flux_right.L);
    rep.clamped += r_.clamped;
  };

  semidiscrete_rhs(g, floor_, kernel_, r_, ws_);
  rep.alpha = r_.alpha;
  const double limit = kCfl * g.delta / r_.alpha;
  if (h > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "CFL violation: h = " << h << " > " << limit;
    throw NumericalError(os.str());
  }
  accumulate(1.0 / 6.0);
  for (int i = 0; i < M; ++i) {
    g.eta[i] = eta0_[i] + h * r_.deta[i];
    g.m[i] = m0_[i] + h * r_.dm[i];
  }

  semidiscrete_rhs(g, floor_, kernel_, r_, ws_);
  accumulate(1.0 / 6.0);
  for (int i = 0; i < M; ++i) {
    g.eta[i] = 0.75 * eta0_[i] + 0.25 * (g.eta[i] + h * r_.deta[i]);
    g.m[i] = 0.75 * m0_[i] + 0.25 * (g.m[i] + h * r_.dm[i]);
  }

  semidiscrete_rhs(g, floor_, kernel_, r_, ws_);
  accumulate(2.0 / 3.0);
  for (int i = 0; i < M; ++i) {
    g.eta[i] = eta0_[i] / 3.0 + 2.0 / 3.0 * (g.eta[i] + h * r_.deta[i]);
    g.m[i] = m0_[i] / 3.0 + 2.0 / 3.0 * (g.m[i] + h * r_.dm[i]);
  }
  for (int i = 0; i < M; ++i)
    if (!(g.eta[i] >= floor_)) {
      if (std::isnan(g.eta[i]) || std::isnan(g.m[i])) throw NumericalError("non-finite state");
      g.eta[i] = floor_;
      ++rep.clamped;
    }
  g.t += h;
  return rep;
}

ConservedGrid ssp_rk3_step(const ConservedGrid& g, double h, double eta_floor, Kernel k,
                           StepReport* report) {
  ConservedGrid out = g;
  Stepper st(eta_floor, k);
  const auto rep = st.step(out, h);
  if (report) *report = rep;
  return out;
}

namespace {

int central_index(const ConservedGrid& g) {
  auto it = std::upper_bound(g.x.begin(), g.x.end(), 0.0);
  const int k = static_cast<int>(it - g.x.begin()) - 1;
  if (k < 1 || k + 2 >= g.M()) throw DomainError("origin not inside the grid");
  return k;
}

// coefficients c0..c3 of the cubic through (x_{k-1+a}, f_a), a = 0..3
Eigen::Vector4d central_cubic(const ConservedGrid& g, int k, const std::array<double, 4>& f) {
  Eigen::Matrix4d V;
  Eigen::Vector4d y;
  for (int a = 0; a < 4; ++a) {
    const double x = g.x[k - 1 + a];
    V.row(a) << 1.0, x, x * x, x * x * x;
    y(a) = f[a];
  }
  return V.fullPivLu().solve(y);
}

}  // namespace

double centerline_eta(const ConservedGrid& g) {
  const int k = central_index(g);
  double v = 0;
  for (int a = k - 1; a <= k + 2; ++a) {
    double w = 1;
    for (int b = k - 1; b <= k + 2; ++b)
      if (b != a) w *= (0.0 - g.x[b]) / (g.x[a] - g.x[b]);
    v += w * g.eta[a];
  }
  return v;
}

CenterlineFields centerline_fields(const ConservedGrid& g, double eta_floor) {
  const int k = central_index(g);
  std::array<double, 4> e, u;
  for (int a = 0; a < 4; ++a) {
    e[a] = g.eta[k - 1 + a];
    u[a] = detail::guard(g.eta[k - 1 + a], g.m[k - 1 + a], eta_floor).u;
  }
  const auto ce = central_cubic(g, k, e);
  const auto cu = central_cubic(g, k, u);
  return {centerline_eta(g), cu(1), 2.0 * ce(2)};
}

ShockEstimate locate_shock(const std::vector<double>& x, const std::vector<double>& u,
                           double threshold, double x_lo, double x_hi) {
  const int n = static_cast<int>(x.size());
  int best = -1;
  double big = 0;
  for (int i = 0; i + 1 < n; ++i) {
    const double xm = 0.5 * (x[i] + x[i + 1]);
    if (xm < x_lo || xm > x_hi) continue;
    const double d = std::abs(u[i + 1] - u[i]);
    if (d > big) {
      big = d;
      best = i;
    }
  }
  if (best < 0 || !(big > threshold)) throw DomainError("no shock detected");
  const double dx = x[best + 1] - x[best];
  double off = 0;
  if (best >= 1 && best + 2 < n) {
    const double dm = std::abs(u[best] - u[best - 1]);
    const double dp = std::abs(u[best + 2] - u[best + 1]);
    const double den = dm - 2.0 * big + dp;
    if (den < 0) off = std::clamp(0.5 * (dm - dp) / den, -0.5, 0.5);
  }
  return {0.5 * (x[best] + x[best + 1]) + off * dx, 2.0 * dx, big};
}

Snapshot snapshot_of(const ConservedGrid& g, double eta_floor) {
  Snapshot s;
  s.t = g.t;
  s.x = g.x;
  s.eta = g.eta;
  s.m = g.m;
  s.u.resize(g.M());
  for (int i = 0; i < g.M(); ++i) s.u[i] = detail::guard(g.eta[i], g.m[i], eta_floor).u;
  return s;
}

ShockEstimate locate_shock(const ConservedGrid& g, double threshold) {
  const auto s = snapshot_of(g, 1e-300);
  return locate_shock(s.x, s.u, threshold);
}

std::function<State(double)> initial_state(const Config& cfg) {
  const auto p = cfg.params;
  p.validate();
  switch (cfg.scenario) {
    case Scenario::double_riemann:
      return [Q = p.Q](double x) { return scenarios::double_riemann_ic(x, Q); };
    case Scenario::double_stoker:
      return [p](double x) {
        const auto nv = scenarios::double_stoker_fields(x, 0.0, p.Q, p.g0);
        return State{nv.N, nv.V};
      };
    case Scenario::full:
      if (cfg.tabulated_ic) {
        auto table = std::make_shared<scenarios::FullProfileTable>(p);
        return [table](double x) { return (*table)(x); };
      }
      return [p](double x) { return scenarios::full_ic(x, p); };
    case Scenario::dry_parabola:
    case Scenario::wet_parabola:
      return [p](double x) { return scenarios::truncated_parabola_ic(x, p); };
  }
  throw DomainError("unknown scenario");
}

Overshoot overshoot_diagnostics(const std::vector<std::pair<double, double>>& centerline,
                                const std::function<double(double)>& reference, double t_from) {
  Overshoot o;
  o.amplitude = -INFINITY;
  for (const auto& [t, e] : centerline) {
    if (t < t_from) continue;
    const double d = e - reference(t);
    if (d > o.amplitude) {
      o.amplitude = d;
      o.t_peak = t;
    }
  }
  if (!std::isfinite(o.amplitude)) throw DomainError("empty centerline series");
  const double level = 0.1 * std::abs(o.amplitude);
  for (const auto& [t, e] : centerline)
    if (t >= t_from && std::abs(e - reference(t)) > level) o.support = t - t_from;
  return o;
}

Result run_weno(const Config& cfg) {
  if (!(cfg.h > 0) || !(cfg.t_end > 0)) throw DomainError("h and t_end must be positive");
  if (cfg.series_every < 1) throw DomainError("series_every must be >= 1");
  Result res;
  res.eta_floor = 1e-12 * cfg.params.Q;
  ConservedGrid g = make_grid(cfg.x_left, cfg.x_right, cfg.M, 0.0, initial_state(cfg));
  Stepper stepper(res.eta_floor, cfg.kernel);

  std::vector<double> times;
  for (double t : cfg.snapshot_times) {
    if (t < 0) throw DomainError("negative snapshot time");
    if (t <= cfg.t_end) times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::size_t next = 0;

  auto record_series = [&]() {
    double xs = NAN;
    try {
      xs = locate_shock(g, cfg.shock_threshold).x;
    } catch (const DomainError&) {
    }
    const auto cf = centerline_fields(g, res.eta_floor);
    res.series.push_back({g.t, res.centerline.back().second, xs, cf.ux0, cf.etaxx0});
  };
  auto take_snapshots = [&]() {
    while (next < times.size() && times[next] <= g.t) {
      res.snapshots.push_back(snapshot_of(g, res.eta_floor));
      ++next;
    }
  };

  for (double e : g.eta) res.min_eta = std::min(res.min_eta, e);
  res.centerline.emplace_back(g.t, centerline_eta(g));
  record_series();
  take_snapshots();

  while (g.t < cfg.t_end) {
    const double target = next < times.size() ? times[next] : cfg.t_end;
    const bool land = target - g.t <= cfg.h * (1.0 + 1e-9);
    const double h = land ? target - g.t : cfg.h;
    const auto rep = stepper.step(g, h);
    if (land) g.t = target;
    ++res.steps;
    res.clamped += rep.clamped;
    for (double e : g.eta) res.min_eta = std::min(res.min_eta, e);
    res.centerline.emplace_back(g.t, centerline_eta(g));
    if (res.steps % cfg.series_every == 0 || g.t >= cfg.t_end) record_series();
    take_snapshots();
  }

  if (cfg.scenario == Scenario::double_riemann) {
    const double Qs = shock::qstar(cfg.params.Q / 4.0, cfg.params.Q);
    res.overshoot = overshoot_diagnostics(res.centerline, [Qs](double) { return Qs; });
  } else if (cfg.scenario == Scenario::full) {
    const auto c = asymptotics::full_coefficients(cfg.params.Q, cfg.params.gamma0);
    res.overshoot = overshoot_diagnostics(
        res.centerline,
        [c](double t) { return t > 0 ? asymptotics::centerline_theory(c, t).eta0 : c.Qstar; });
  }
  res.final_grid = std::move(g);
  return res;
}

}  // namespace airy::weno
