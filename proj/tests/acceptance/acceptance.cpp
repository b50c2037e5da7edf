#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "airy/harness.hpp"

using namespace airy;
using scenarios::Scenario;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome a1() {
  const double v = exact::collapse_time(1.0);
  const double d = std::abs(v - M_PI / 4.0);
  return {d <= 1e-12, fmt("collapse_time(1) = %.16f, |delta| = %.2e (tol 1e-12)", v, d)};
}

Outcome a2() {
  Outcome o{true, ""};
  for (double Q : {0.05, 0.5, 1.0}) {
    const double r = shock::qstar(Q / 4.0, Q) / Q;
    const double d = std::abs(r - 0.87349);
    o.pass = o.pass && d <= 5e-6;
    o.detail += fmt("Q=%g: Q*/Q = %.8f |delta| = %.1e; ", Q, r, d);
  }
  o.detail += "tol 5e-6";
  return o;
}

Outcome a3() {
  Outcome o{true, ""};
  for (double Q : {0.05, 0.5, 1.0}) {
    const double r = shock::initial_shock_speed(Q) / std::sqrt(Q);
    const double d = std::abs(r - 0.4009689);
    o.pass = o.pass && d <= 1e-7;
    o.detail += fmt("Q=%g: s0/sqrt(Q) = %.10f |delta| = %.1e; ", Q, r, d);
  }
  o.detail += "tol 1e-7";
  return o;
}

struct Check {
  const char* name;
  double value, reference;
};

Outcome relative_table(const std::vector<Check>& rows, double tol) {
  Outcome o{true, ""};
  for (const auto& r : rows) {
    const double d = std::abs(r.value - r.reference) / std::abs(r.reference);
    o.pass = o.pass && d <= tol;
    o.detail += fmt("%s %.7g (ref %.7g, rel %.1e); ", r.name, r.value, r.reference, d);
  }
  o.detail += fmt("tol %.0e relative", tol);
  return o;
}

Outcome a4() {
  Outcome all{true, ""};
  for (auto [Q, g] : {std::pair{1.0, 1.0}, {0.5, 1.0 / 16.0}, {0.2, 3.0}}) {
    const auto c = asymptotics::stoker_coefficients(Q, g);
    auto o = relative_table({{"F1", c.F1 / std::sqrt(g * Q), -0.22215},
                             {"nu0", *c.nu0 / std::sqrt(g), -0.23769},
                             {"mu1", *c.mu1 / (std::sqrt(g) * Q), 0.20762},
                             {"Phi1", *c.Phi1 * std::sqrt(Q / g), -3.6325},
                             {"F2", *c.F2 / g, -0.58487},
                             {"s1", c.s1 / std::sqrt(g * Q), 0.11703}},
                            1e-4);
    all.pass = all.pass && o.pass;
    if (all.detail.empty()) all.detail = fmt("(Q=%g, g0=%g) ", Q, g) + o.detail;
  }
  all.detail += "; also checked at (0.5, 1/16) and (0.2, 3)";
  return all;
}

Outcome a5() {
  Outcome all{true, ""};
  for (auto [Q, g] : {std::pair{1.0, 1.0}, {0.5, 1.0 / 16.0}, {2.0, 0.3}}) {
    const auto c = asymptotics::full_coefficients(Q, g);
    const double g3 = std::cbrt(g);
    auto o = relative_table({{"F1", c.F1 / (g3 * std::pow(Q, 2.0 / 3.0)), 0.16752},
                             {"s1", c.s1 / (g3 * std::sqrt(Q)), 0.18006},
                             {"c_ux", *c.c_ux / g3, 0.122216},
                             {"c_etaxx", *c.c_etaxx / g3, 0.040739},
                             {"A", c.A / (g3 * std::pow(Q, 1.0 / 6.0)), -0.51691}},
                            1e-4);
    all.pass = all.pass && o.pass;
    if (all.detail.empty()) all.detail = fmt("(Q=%g, gamma0=%g) ", Q, g) + o.detail;
  }
  all.detail += "; also checked at (0.5, 1/16) and (2, 0.3)";
  return all;
}

Outcome a6() {
  Outcome all{true, ""};
  for (auto [Q, g] : {std::pair{1.0, 1.0}, {0.5, 1.0 / 16.0}}) {
    const auto c = asymptotics::stoker_coefficients(Q, g);
    const auto t = asymptotics::taylor_hierarchy_oracle(Q, g);
    auto o = relative_table({{"mu0", t.mu0, c.Qstar}, {"s0", t.s0, c.s0}, {"nu0", t.nu0, *c.nu0}, {"mu1", t.mu1, *c.mu1}},
                            1e-4);
    all.pass = all.pass && o.pass;
    all.detail += fmt("(Q=%g, g0=%g) ", Q, g) + o.detail + " | ";
  }
  return all;
}

Outcome a7() {
  const ScenarioParams p{0.5, 1.0, 0.0, 1.0 / 16.0};
  const auto c = asymptotics::stoker_coefficients(p.Q, p.g0);
  spectral::Config cfg;
  cfg.scenario = Scenario::double_stoker;
  cfg.params = p;
  cfg.M = 64;
  cfg.h = 1e-4;
  cfg.tau_end = harness::tau_of_time(c, 0.042);
  cfg.record_every = 20;
  const auto tr = spectral::run_shockfit(cfg);
  double e_eta = 0, e_ux = 0;
  int n = 0;
  for (const auto& r : tr.records) {
    if (r.t < 0.01 || r.t > 0.04) continue;
    const auto th = asymptotics::centerline_theory(c, r.t);
    e_eta = std::max(e_eta, std::abs((r.eta0 - th.eta0) / (th.eta0 - c.Qstar)));
    e_ux = std::max(e_ux, std::abs((r.ux0 - th.ux0) / th.ux0));
    ++n;
  }
  return {n > 10 && e_eta < 0.1 && e_ux < 0.1,
          fmt("%d samples in t in [0.01, 0.04]: max rel error of eta(0,t) - Q* %.2e, of u_x(0,t) %.2e (tol 0.1)",
              n, e_eta, e_ux)};
}

Outcome a8() {
  const ScenarioParams p{0.5, 1.0 / 16.0, 0.0, 1.0};
  spectral::Config cfg;
  cfg.scenario = Scenario::full;
  cfg.params = p;
  cfg.M = 64;
  cfg.h = 1e-4;
  cfg.tau_end = -6.0;
  cfg.record_every = 20;
  const auto tr = spectral::run_shockfit(cfg);
  const double norm = std::cbrt(p.gamma0) * std::pow(p.Q, 2.0 / 3.0);
  const double F = spectral::extract_F1(tr, -6.0) / norm;
  const double F10 = spectral::extract_F1(tr, -10.0) / norm;
  const double d = std::abs(F - 0.16752);
  const bool part1 = d <= 5e-4;

  harness::ScalingOptions so;
  so.n = 4;
  so.jobs = 1;
  const auto rep = harness::scaling_study(so);
  const bool part2 = rep.failures.empty() && std::abs(rep.slope_Q - 2.0 / 3.0) <= 0.02 &&
                     std::abs(rep.slope_gamma - 1.0 / 3.0) <= 0.02;
  return {part1 && part2,
          fmt("F1 at tau=-6 normalized %.6f vs 0.16752, |delta| = %.1e (tol 5e-4) %s [tau=-10: %.6f]; "
              "slopes Q %.4f +- %.4f, gamma0 %.4f +- %.4f (targets 2/3, 1/3, tol 0.02) %s",
              F, d, part1 ? "ok" : "MISS", F10, rep.slope_Q, rep.slope_Q_err, rep.slope_gamma,
              rep.slope_gamma_err, part2 ? "ok" : "MISS")};
}

Outcome a9() {
  const double Q = 0.5;
  const double qs = shock::qstar(Q / 4.0, Q);
  weno::Config cfg;
  cfg.scenario = Scenario::double_riemann;
  cfg.params.Q = Q;
  cfg.M = 1024;
  cfg.h = 1e-4;
  cfg.t_end = 3.3;
  cfg.series_every = 1000;
  const auto r = weno::run_weno(cfg);
  double sum = 0;
  int n = 0;
  for (const auto& [t, e] : r.centerline)
    if (t >= 2.0 && t <= 3.3) {
      sum += e;
      ++n;
    }
  const double plateau = sum / n;
  const double d = std::abs(plateau - qs);
  const bool part1 = d <= 5e-6;

  std::vector<weno::Overshoot> ladder;
  std::string rows;
  for (int k = 0; k <= 4; ++k) {
    weno::Config c = cfg;
    c.M = 1024 << k;
    c.h = 1e-4 / (1 << k);
    c.t_end = 0.2;
    c.series_every = 1 << 30;
    const auto rr = weno::run_weno(c);
    ladder.push_back(*rr.overshoot);
    rows += fmt("M=%d amp %.5f support %.5f; ", c.M, rr.overshoot->amplitude, rr.overshoot->support);
  }
  bool shrinking = true;
  for (size_t k = 1; k < ladder.size(); ++k) shrinking = shrinking && ladder[k].support < ladder[k - 1].support;
  shrinking = shrinking && ladder.back().support <= 0.25 * ladder.front().support;
  const bool persistent = ladder.back().amplitude >= 0.5 * ladder.front().amplitude && ladder.back().amplitude > 0;
  return {part1 && shrinking && persistent,
          fmt("mean eta(0,t) over t in [2, 3.3] = %.8f vs Q* = %.8f, |delta| = %.1e (tol 5e-6) %s; ", plateau, qs, d,
              part1 ? "ok" : "MISS") +
              rows + fmt("amplitude persistent %s, support shrinking %s", persistent ? "yes" : "NO",
                         shrinking ? "yes" : "NO")};
}

Outcome a10() {
  const ScenarioParams p{0.5, 1.0 / 16.0, 0.0, 1.0};
  spectral::Config sc;
  sc.scenario = Scenario::full;
  sc.params = p;
  sc.M = 64;
  sc.h = 1e-4;
  sc.tau_end = -4.0;
  const auto tr = spectral::run_shockfit(sc);

  harness::RunOptions ro;
  ro.scenario = Scenario::full;
  ro.params = p;
  ro.M = 1 << 14;
  ro.dt = 1e-6;
  auto wc = harness::weno_config(ro);
  wc.t_end = tr.final_state.t;
  wc.snapshot_times.clear();
  wc.series_every = 1 << 30;
  const auto wr = weno::run_weno(wc);
  const auto a = harness::compare_profiles(tr.final_state, tr.xi, wr.final_grid, wr.eta_floor);
  const double worst = std::max(a.max_deta, a.max_du);
  std::string level;
  bool pass = false;
  if (worst <= 5e-4) {
    level = "3 digits";
    pass = true;
  } else if (worst <= 5e-3) {
    level = "2 digits (degraded: 3 digits unattainable at M=2^14)";
    pass = true;
  } else {
    level = "below 2 digits";
  }
  return {pass, fmt("t* = %.6f, x_s = %.5f, delta = %.2e, %d points inside |x| < x_s - 4 delta: max|d eta| = %.2e, "
                    "max|d u| = %.2e (3 digits: 5e-4, 2 digits: 5e-3) -> %s",
                    a.t, a.x_shock, wr.final_grid.delta, a.points, a.max_deta, a.max_du, level.c_str())};
}

Outcome a11() {
  const ScenarioParams p{2.0, 1.0, 0.0, 1.0};
  weno::Config cfg;
  cfg.scenario = Scenario::dry_parabola;
  cfg.params = p;
  cfg.x_left = -2.5;
  cfg.x_right = 2.5;
  cfg.M = 2048;
  cfg.h = 1e-4;
  cfg.t_end = 0.5 * exact::collapse_time(p.gamma0);
  cfg.series_every = 1 << 30;
  const auto r = weno::run_weno(cfg);
  const auto e = harness::parabola_error(r.final_grid, p, 0.05, r.eta_floor);
  return {e.eta < 1e-4 && e.u < 1e-4,
          fmt("t = %.6f, %d points outside 0.05 of the splice points: max|d eta|/Q = %.2e, max|d u|/sqrt(Q) = %.2e "
              "(tol 1e-4)",
              r.final_grid.t, e.points, e.eta, e.u)};
}

// generated-input property suites
Outcome a12() {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::string detail;
  bool pass = true;
  auto note = [&](const char* name, int cases, double worst, double tol) {
    const bool ok = worst <= tol;
    pass = pass && ok;
    detail += fmt("%s: %d cases, worst %.1e (tol %.0e)%s; ", name, cases, worst, tol, ok ? "" : " MISS");
  };

  {  // Riemann invariants along core characteristics
    double worst = 0;
    int n = 0;
    for (int k = 0; k < 200; ++k) {
      ScenarioParams p{0.1 + 2 * U(rng), 0.1 + 2 * U(rng), k % 2 ? 0.0 : 0.05 * U(rng), 1.0};
      const double x0 = (2 * U(rng) - 1) * exact::initial_half_width(p);
      const double s1 = 1.0 + 5.0 * U(rng);
      for (auto fam : {Family::plus, Family::minus}) {
        const double sg = fam == Family::plus ? 1.0 : -1.0;
        auto R = [&](double sigma) {
          const auto s = exact::parabola_state(sigma, p);
          const double x = exact::characteristic_position(sigma, x0, fam, p);
          return s.nu * x + sg * 2.0 * std::sqrt(s.gamma * x * x + s.mu);
        };
        worst = std::max(worst, std::abs(R(s1) - R(1.0)) / std::sqrt(p.Q));
        ++n;
      }
    }
    note("riemann invariants", n, worst, 1e-10);
  }
  {  // conservation: mass and momentum change equal the boundary inflow
    double worst = 0;
    int n = 0;
    for (int k = 0; k < 20; ++k) {
      const double base = 0.2 + U(rng), amp = 0.5 * base * U(rng), jump = U(rng) - 0.5, w = 0.05 + 0.2 * U(rng);
      auto g = weno::make_grid(-1.0, 1.0, 200 + 8 * k, 0.0, [&](double x) {
        return weno::State{base + amp * std::exp(-x * x / (w * w)) + (x > 0.3 ? 0.3 * base : 0.0), jump};
      });
      weno::Stepper st(1e-12, k % 2 ? weno::Kernel::parallel : weno::Kernel::reference);
      const double m0 = g.mass(), p0 = g.momentum();
      double im = 0, ip = 0;
      for (int s = 0; s < 100; ++s) {
        const auto rep = st.step(g, 5e-4);
        im += rep.mass_in;
        ip += rep.momentum_in;
      }
      worst = std::max({worst, std::abs(g.mass() - m0 - im) / m0, std::abs(g.momentum() - p0 - ip) / m0});
      ++n;
    }
    note("conservation", n, worst, 1e-12);
  }
  {  // mirror symmetry of random even/odd data
    double worst = 0;
    int n = 0;
    for (int k = 0; k < 10; ++k) {
      std::array<double, 4> a{}, b{};
      for (auto& v : a) v = 0.1 * U(rng);
      for (auto& v : b) v = 0.2 * (U(rng) - 0.5);
      auto g = weno::make_grid(-1.0, 1.0, 256 + 2 * k, 0.0, [&](double x) {
        double e = 1.0, u = 0.0;
        for (int j = 0; j < 4; ++j) {
          e += a[j] * std::cos((j + 1) * M_PI * x);
          u += b[j] * std::sin((j + 1) * M_PI * x);
        }
        return weno::State{e, u};
      });
      weno::Stepper st(1e-12, weno::Kernel::parallel);
      for (int s = 0; s < 200; ++s) st.step(g, 1e-3);
      const int M = g.M();
      for (int i = 0; i < M; ++i)
        worst = std::max({worst, std::abs(g.eta[i] - g.eta[M - 1 - i]), std::abs(g.m[i] + g.m[M - 1 - i])});
      ++n;
    }
    note("mirror symmetry", n, worst, 1e-10);
  }
  {  // positivity on dry data, closed form and WENO
    double worst = 0;
    int n = 0;
    for (int k = 0; k < 8; ++k) {
      ScenarioParams p{0.2 + 2 * U(rng), 0.5 + 4 * U(rng), 0.0, 1.0};
      weno::Config cfg;
      cfg.scenario = Scenario::dry_parabola;
      cfg.params = p;
      const double half = 1.3 * exact::outer_edge(0.6 * exact::collapse_time(p.gamma0), p);
      cfg.x_left = -half;
      cfg.x_right = half;
      cfg.M = 256;
      cfg.t_end = 0.6 * exact::collapse_time(p.gamma0);
      cfg.h = 0.2 * (2 * half / 255) / (3.0 * std::sqrt(p.Q));
      cfg.series_every = 1 << 30;
      const auto r = weno::run_weno(cfg);
      for (double e : r.final_grid.eta) worst = std::max(worst, r.eta_floor - e);
      const auto ex = exact::presingularity_snapshot(r.final_grid.x, r.final_grid.t, p);
      for (double e : ex.eta) worst = std::max(worst, -e);
      ++n;
    }
    note("positivity", n, worst, 0.0);
  }
  {  // GLC differentiation exact on random polynomials of degree M-1
    double worst = 0;
    int n = 0;
    for (int M : {4, 9, 16, 25, 33, 48, 64}) {
      const auto xi = spectral::glc_grid(M);
      const auto D = spectral::lagrange_diff_matrix(xi);
      std::vector<double> a(M);
      for (auto& v : a) v = 2 * U(rng) - 1;
      Eigen::VectorXd p(M), dp(M);
      double scale = 0;
      for (int i = 0; i < M; ++i) {
        double v = 0, d = 0;
        for (int k = M - 1; k >= 0; --k) {
          d = d * xi[i] + v;
          v = v * xi[i] + a[k];
        }
        p(i) = v;
        dp(i) = d;
        scale = std::max(scale, std::abs(d));
      }
      worst = std::max(worst, (D * p - dp).cwiseAbs().maxCoeff() / (scale * M * M));
      ++n;
    }
    note("GLC differentiation", n, worst, 1e-13);
  }
  return {pass, detail};
}

const std::map<std::string, std::function<Outcome()>>& criteria() {
  static const std::map<std::string, std::function<Outcome()>> m = {
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},   {"A5", a5},   {"A6", a6},
      {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}, {"A11", a11}, {"A12", a12}};
  return m;
}

int run_one(const std::string& id) {
  const auto it = criteria().find(id);
  if (it == criteria().end()) {
    std::cerr << "unknown criterion " << id << '\n';
    return 2;
  }
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = it->second();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << id << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << fmt("  [%.1f s]", secs) << std::endl;
  return o.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(argv[i]);
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all"))
    for (int k = 1; k <= 12; ++k) ids.push_back("A" + std::to_string(k));
  if (ids.front() == "all") ids.erase(ids.begin());
  int rc = 0;
  for (const auto& id : ids) rc = std::max(rc, run_one(id));
  return rc;
}
