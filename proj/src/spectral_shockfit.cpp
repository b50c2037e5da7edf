#include "airy/spectral_shockfit.hpp"

#include <algorithm>
#include <numbers>

#include "airy/forcing.hpp"
#include "airy/shock_algebra.hpp"

namespace airy::spectral {

std::vector<double> glc_grid(int M) {
  if (M < 2) throw DomainError("glc grid needs M >= 2");
  std::vector<double> xi(M);
  for (int i = 0; i < M; ++i) {
    // symmetric evaluation keeps xi_i + xi_{M-1-i} = 1 exact
    const double c = std::cos(std::numbers::pi * i / (M - 1));
    xi[i] = 0.5 - 0.5 * c;
  }
  if (M % 2 == 1) xi[M / 2] = 0.5;
  xi.front() = 0.0;
  xi.back() = 1.0;
  return xi;
}

Eigen::MatrixXd lagrange_diff_matrix(const std::vector<double>& pts) {
  const int M = static_cast<int>(pts.size());
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j)
      if (pts[i] == pts[j]) throw DomainError("duplicate collocation points");
  const auto w = numerics::barycentric_weights(pts);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(M, M);
  for (int i = 0; i < M; ++i) {
    double diag = 0;
    for (int j = 0; j < M; ++j) {
      if (i == j) continue;
      D(i, j) = (w[j] / w[i]) / (pts[i] - pts[j]);
      diag -= D(i, j);
    }
    D(i, i) = diag;
  }
  return D;
}

ShockFitSolver::ShockFitSolver(const Config& cfg) : cfg_(cfg) {
  cfg_.params.validate();
  if (cfg_.scenario != Scenario::double_riemann && cfg_.scenario != Scenario::double_stoker &&
      cfg_.scenario != Scenario::full)
    throw DomainError("shock fitting needs double-riemann, double-stoker or full");
  if (cfg_.h <= 0) throw DomainError("step must be positive");
  xi_ = glc_grid(cfg_.M);
  D_ = lagrange_diff_matrix(xi_);
  D2row0_ = D_.row(0) * D_;
  const double Q = cfg_.params.Q;
  Qs_ = shock::qstar(Q / 4.0, Q);
  s0_ = shock::initial_shock_speed(Q);
  K_ = exact::cusp_constant(Q, cfg_.params.gamma0);
}

UnfoldedState ShockFitSolver::initial_state() const {
  UnfoldedState st;
  st.tau = cfg_.tau0;
  st.t = std::exp(cfg_.tau0) / s0_;
  st.r = Eigen::VectorXd::Constant(cfg_.M, 2.0 * std::sqrt(Qs_));
  st.s = -st.r;
  return st;
}

BoundaryForcing ShockFitSolver::boundary_forcing(double tau, double t, double eta1, double u1) const {
  if (!(eta1 > 0)) throw DomainError("boundary elevation must be positive");
  const auto& p = cfg_.params;
  const double xs = std::exp(tau);
  double N = 0, V = 0;
  switch (cfg_.scenario) {
    case Scenario::double_riemann:
      N = p.Q / 4.0;
      V = -std::sqrt(p.Q);
      break;
    case Scenario::double_stoker: {
      auto nv = scenarios::double_stoker_fields(xs, t, p.Q, p.g0);
      N = nv.N;
      V = nv.V;
      break;
    }
    case Scenario::full:
      if (cfg_.full_forcing == FullForcing::expansion)
        N = exact::shock_trace_value(xs, t, p);
      else
        N = exact::shoulder_outer_eval(xs, exact::collapse_time(p.gamma0) + t, p).N;
      V = forcing::simple_wave_V(N, p.Q);
      break;
    default:
      throw DomainError("unsupported scenario");
  }
  const double phi = forcing::shock_slowness(N, eta1, u1, p.Q) - 1.0 / s0_;
  return {N, V, phi, forcing::psi(N, eta1, p.Q)};
}

Rhs ShockFitSolver::rhs(const UnfoldedState& st) const {
  const int M = st.M();
  const double rM = st.r(M - 1), sM = st.s(M - 1);
  const double eta1 = (rM - sM) * (rM - sM) / 16.0, u1 = 0.5 * (rM + sM);
  const auto F = boundary_forcing(st.tau, st.t, eta1, u1);
  const double c = 1.0 / s0_ + F.phi;
  const Eigen::VectorXd Dr = D_ * st.r;
  const Eigen::VectorXd Ds = D_ * st.s;
  Rhs out;
  out.dr.resize(M);
  out.ds.resize(M);
  for (int i = 0; i < M; ++i) {
    out.dr(i) = xi_[i] * Dr(i) - c * (0.75 * st.r(i) + 0.25 * st.s(i)) * Dr(i);
    out.ds(i) = xi_[i] * Ds(i) - c * (0.75 * st.s(i) + 0.25 * st.r(i)) * Ds(i);
  }
  out.dt = std::exp(st.tau) * c;
  return out;
}

double ShockFitSolver::max_wave_speed(const UnfoldedState& st) const {
  const int M = st.M();
  const double rM = st.r(M - 1), sM = st.s(M - 1);
  const auto F = boundary_forcing(st.tau, st.t, (rM - sM) * (rM - sM) / 16.0, 0.5 * (rM + sM));
  const double c = 1.0 / s0_ + F.phi;
  double lam = 0;
  for (int i = 0; i < M; ++i) {
    lam = std::max(lam, std::abs(-xi_[i] + c * (0.75 * st.r(i) + 0.25 * st.s(i))));
    lam = std::max(lam, std::abs(-xi_[i] + c * (0.75 * st.s(i) + 0.25 * st.r(i))));
  }
  return lam;
}

double ShockFitSolver::step_limit(const UnfoldedState& st) const {
  const int M = st.M();
  return cfg_.cfl * (xi_[M - 1] - xi_[M - 2]) / max_wave_speed(st);
}

double ShockFitSolver::bc_residual(const UnfoldedState& st) const {
  const int M = st.M();
  const double r = st.r(M - 1), s = st.s(M - 1);
  const double eta = (r - s) * (r - s) / 16.0;
  const auto F = boundary_forcing(st.tau, st.t, eta, 0.5 * (r + s));
  return r + s - 2.0 * F.psi;
}

UnfoldedState ShockFitSolver::apply_bcs(UnfoldedState st, double s_guess, BcReport* report) const {
  const int M = st.M();
  st.r(0) = -st.s(0);
  const double r = st.r(M - 1);
  const auto& p = cfg_.params;
  const double N = boundary_forcing(st.tau, st.t, p.Q, 0.0).N;
  auto g = [&](double s) {
    const double d = r - s;
    const double eta = d * d / 16.0;
    const double S = std::sqrt(1.0 / (2.0 * eta) + 1.0 / (2.0 * N));
    const double dev = eta - N;
    const double psi = forcing::simple_wave_V(N, p.Q) + std::abs(dev) * S;
    const double psi_eta = (dev >= 0 ? S : -S) - std::abs(dev) / (4.0 * eta * eta * S);
    return std::pair{r + s - 2.0 * psi, 1.0 + 2.0 * psi_eta * d / 8.0};
  };
  double s = s_guess;
  auto [f, df] = g(s);
  const double tol = 1e-13 * std::max(1.0, std::abs(r));
  BcReport rep;
  rep.history.push_back(std::abs(f));
  int it = 0;
  while (std::abs(f) > tol) {
    if (++it > 50) throw NumericalError("shock boundary closure: Newton stagnation");
    const double step = -f / df;
    double lam = 1.0;
    double s_new = s + step;
    auto trial = g(s_new);
    for (int k = 0; k < 8 && !(std::abs(trial.first) < std::abs(f)); ++k) {
      lam *= 0.5;
      s_new = s + lam * step;
      trial = g(s_new);
    }
    if (!(std::abs(trial.first) < std::abs(f))) {
      // roundoff floor reached
      if (std::abs(f) < 1e-12) break;
      throw NumericalError("shock boundary closure: no descent");
    }
    s = s_new;
    f = trial.first;
    df = trial.second;
    rep.history.push_back(std::abs(f));
  }
  st.s(M - 1) = s;
  rep.iterations = it;
  rep.residual = std::abs(f);
  if (report) *report = std::move(rep);
  return st;
}

UnfoldedState ShockFitSolver::advance(const UnfoldedState& st, double h, Scheme scheme, BcReport* report) const {
  const double lim = step_limit(st);
  if (h > lim * (1.0 + 1e-12))
    throw NumericalError("step violates the CFL bound at xi = 1 (h = " + std::to_string(h) +
                         ", limit = " + std::to_string(lim) + ")");
  auto axpy = [](const UnfoldedState& y, const Rhs& k, double a) {
    UnfoldedState z;
    z.tau = y.tau + a;
    z.t = y.t + a * k.dt;
    z.r = y.r + a * k.dr;
    z.s = y.s + a * k.ds;
    return z;
  };
  UnfoldedState out;
  if (scheme == Scheme::euler) {
    out = axpy(st, rhs(st), h);
  } else {
    const Rhs k1 = rhs(st);
    const Rhs k2 = rhs(axpy(st, k1, 0.5 * h));
    const Rhs k3 = rhs(axpy(st, k2, 0.5 * h));
    const Rhs k4 = rhs(axpy(st, k3, h));
    out.tau = st.tau + h;
    out.t = st.t + h / 6.0 * (k1.dt + 2.0 * k2.dt + 2.0 * k3.dt + k4.dt);
    out.r = st.r + h / 6.0 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
    out.s = st.s + h / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds);
  }
  return apply_bcs(std::move(out), st.s(st.M() - 1), report);
}

Centerline ShockFitSolver::centerline(const UnfoldedState& st) const {
  const Eigen::VectorXd u = 0.5 * (st.r + st.s);
  const Eigen::VectorXd d = st.r - st.s;
  const Eigen::VectorXd eta = d.cwiseProduct(d) / 16.0;
  const double ex = std::exp(-st.tau);
  return {eta(0), D_.row(0).dot(u) * ex, D2row0_.dot(eta) * ex * ex};
}

Trajectory run_shockfit(const Config& cfg) {
  ShockFitSolver solver(cfg);
  if (!(cfg.tau_end > cfg.tau0)) throw DomainError("tau_end must exceed tau0");
  Trajectory tr;
  tr.Qstar = solver.Qstar();
  tr.s0 = solver.s0();
  tr.xi = solver.xi();
  std::vector<double> events = cfg.snapshot_taus;
  events.erase(std::remove_if(events.begin(), events.end(),
                              [&](double x) { return x <= cfg.tau0 || x > cfg.tau_end; }),
               events.end());
  events.push_back(cfg.tau_end);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  UnfoldedState st = solver.initial_state();
  auto record = [&](const UnfoldedState& s) {
    auto c = solver.centerline(s);
    tr.records.push_back({s.tau, s.t, std::exp(s.tau), c.eta0, c.ux0, c.etaxx0});
  };
  record(st);
  if (std::find(cfg.snapshot_taus.begin(), cfg.snapshot_taus.end(), cfg.tau0) != cfg.snapshot_taus.end())
    tr.snapshots.push_back(st);
  std::size_t next = 0;
  long n = 0;
  const double eps = 1e-9 * cfg.h;
  while (next < events.size()) {
    const double target = events[next];
    double h = cfg.h;
    bool hit = false;
    if (st.tau + h >= target - eps) {
      h = target - st.tau;
      hit = true;
    }
    BcReport rep;
    const double t_prev = st.t;
    st = solver.advance(st, h, cfg.scheme, &rep);
    if (hit) st.tau = target;
    ++n;
    if (!(st.t > t_prev)) throw NumericalError("physical time failed to increase");
    tr.max_bc_residual = std::max(tr.max_bc_residual, rep.residual);
    const Eigen::VectorXd d = st.r - st.s;
    const double emin = d.cwiseProduct(d).minCoeff() / 16.0;
    if (!(emin > 0)) throw NumericalError("non-positive elevation in the inner region");
    tr.min_eta = std::min(tr.min_eta, emin);
    if (hit || n % std::max(cfg.record_every, 1) == 0) record(st);
    if (hit) {
      if (std::find(cfg.snapshot_taus.begin(), cfg.snapshot_taus.end(), target) != cfg.snapshot_taus.end())
        tr.snapshots.push_back(st);
      ++next;
    }
  }
  tr.steps = n;
  tr.final_state = st;
  return tr;
}

FieldSnapshot unfold_to_physical(const UnfoldedState& st, const std::vector<double>& xi) {
  const int M = st.M();
  const double xs = std::exp(st.tau);
  FieldSnapshot snap;
  snap.t = st.t;
  for (int i = M - 1; i >= 1; --i) {
    const double d = st.r(i) - st.s(i);
    snap.x.push_back(-xi[i] * xs);
    snap.eta.push_back(d * d / 16.0);
    snap.u.push_back(-0.5 * (st.r(i) + st.s(i)));
  }
  for (int i = 0; i < M; ++i) {
    const double d = st.r(i) - st.s(i);
    snap.x.push_back(xi[i] * xs);
    snap.eta.push_back(d * d / 16.0);
    snap.u.push_back(0.5 * (st.r(i) + st.s(i)));
  }
  return snap;
}

namespace {

double log_excess_at(const Trajectory& tr, double tau) {
  const auto& R = tr.records;
  if (R.empty() || tau < R.front().tau || tau > R.back().tau) throw DomainError("probe outside trajectory");
  auto it = std::lower_bound(R.begin(), R.end(), tau, [](const TrajectoryRecord& r, double v) { return r.tau < v; });
  auto val = [&](const TrajectoryRecord& r) {
    const double e = r.eta0 - tr.Qstar;
    if (!(e > 0)) throw NumericalError("eta excess not positive at probe");
    return std::log(e) - 2.0 / 3.0 * r.tau;
  };
  if (it->tau == tau || it == R.begin()) return val(*it);
  auto lo = it - 1;
  const double w = (tau - lo->tau) / (it->tau - lo->tau);
  return (1 - w) * val(*lo) + w * val(*it);
}

}  // namespace

double extract_F1(const Trajectory& tr, double tau_probe) {
  const double eta00 = std::exp(log_excess_at(tr, tau_probe));
  return eta00 / std::cbrt(std::pow(std::sqrt(tr.Qstar) / tr.s0, 2.0));
}

double centerline_wobble(const Trajectory& tr, double tau_a, double tau_b, double k) {
  std::vector<double> g;
  for (const auto& r : tr.records)
    if (r.tau >= tau_a && r.tau <= tau_b) g.push_back((r.eta0 - tr.Qstar) * std::exp(-k * r.tau));
  if (g.size() < 3) throw DomainError("window holds too few records");
  double mean = 0;
  for (double v : g) mean += v;
  mean /= static_cast<double>(g.size());
  double dev = 0;
  for (double v : g) dev = std::max(dev, std::abs(v - mean));
  return dev / std::abs(mean);
}

}  // namespace airy::spectral
