#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "airy/shock_algebra.hpp"
#include "airy/weno_fd.hpp"

using namespace airy;
using namespace airy::weno;

namespace {

// flux of the shallow-water system in primitive form, written out independently
std::array<double, 2> swe_flux(double eta, double m) {
  const double u = m / eta;
  return {eta * u, eta * u * u + 0.5 * eta * eta};
}

std::function<State(double)> bump(double amp, double width) {
  return [=](double x) { return State{1.0 + amp * std::exp(-x * x / (width * width)), 0.0}; };
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

ConservedGrid advance(ConservedGrid g, double h, double t_end, Kernel k = Kernel::reference) {
  Stepper st(1e-12, k);
  while (g.t < t_end - 1e-12) st.step(g, std::min(h, t_end - g.t));
  return g;
}

}  // namespace

TEST_SUITE("weno") {

TEST_CASE("conservative flux") {
  auto f = conservative_flux(0.25, -0.25, 1e-12);
  auto o = swe_flux(0.25, -0.25);
  CHECK(f.G == -0.25);
  CHECK(f.L == doctest::Approx(o[1]).epsilon(1e-15));
  CHECK(f.L == doctest::Approx(0.28125).epsilon(1e-15));
  auto z = conservative_flux(0.6, 0.0, 1e-12);
  CHECK(z.G == 0.0);
  CHECK(z.L == doctest::Approx(0.18));
  bool clamped = false;
  auto c = conservative_flux(-1e-3, 0.0, 1e-6, &clamped);
  CHECK(clamped);
  CHECK(std::isfinite(c.L));
}

TEST_CASE("lax friedrichs split") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> U(0.05, 2.0), V(-1.5, 1.5);
  for (int i = 0; i < 50; ++i) {
    const double eta = U(rng), m = V(rng) * eta;
    const double alpha = std::abs(m / eta) + std::sqrt(eta) + 0.1 * U(rng);
    auto f = conservative_flux(eta, m, 0.0);
    auto s = lf_split(f, eta, m, alpha);
    CHECK(s.G_plus + s.G_minus == doctest::Approx(f.G).epsilon(1e-14).scale(1.0));
    CHECK(s.L_plus + s.L_minus == doctest::Approx(f.L).epsilon(1e-14));
    // dF+/dq has non-negative eigenvalues, dF-/dq non-positive
    const double d = 1e-7;
    auto jac = [&](bool plus) {
      auto F = [&](double e, double mm) {
        auto ff = conservative_flux(e, mm, 0.0);
        auto ss = lf_split(ff, e, mm, alpha);
        return plus ? std::array<double, 2>{ss.G_plus, ss.L_plus} : std::array<double, 2>{ss.G_minus, ss.L_minus};
      };
      auto ep = F(eta + d, m), em = F(eta - d, m), mp = F(eta, m + d), mm = F(eta, m - d);
      return std::array<double, 4>{(ep[0] - em[0]) / (2 * d), (mp[0] - mm[0]) / (2 * d), (ep[1] - em[1]) / (2 * d),
                                   (mp[1] - mm[1]) / (2 * d)};
    };
    for (bool plus : {true, false}) {
      auto J = jac(plus);
      const double tr = J[0] + J[3], det = J[0] * J[3] - J[1] * J[2];
      const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
      const double lo = tr / 2 - disc, hi = tr / 2 + disc;
      if (plus) CHECK(lo > -1e-6);
      else CHECK(hi < 1e-6);
    }
  }
}

TEST_CASE("alpha is the largest characteristic speed") {
  std::vector<double> eta = {1.0, 0.25, 4.0}, m = {0.0, -0.25, 2.0};
  CHECK(lf_alpha(eta, m, 1e-12) == doctest::Approx(2.5));
}

TEST_CASE("weno weights on constant data are the linear weights") {
  auto r = weno5_reconstruct({2.0, 2.0, 2.0, 2.0, 2.0}, Direction::plus);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.weights[0] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(r.weights[1] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(r.weights[2] == doctest::Approx(0.3).epsilon(1e-14));
  auto q = weno5_reconstruct({2.0, 2.0, 2.0, 2.0, 2.0}, Direction::minus);
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("weno reconstruction is fifth order on smooth data") {
  // (q_{i+1/2} - q_{i-1/2}) / delta approximates f'(x_i)
  auto err = [](double dx, Direction dir) {
    const double x0 = 0.3;
    auto v = [&](int j) { return std::sin(x0 + j * dx); };
    auto rec = [&](int shift) {
      return dir == Direction::plus
                 ? weno5_reconstruct({v(shift - 2), v(shift - 1), v(shift), v(shift + 1), v(shift + 2)}, dir).value
                 : weno5_reconstruct({v(shift - 1), v(shift), v(shift + 1), v(shift + 2), v(shift + 3)}, dir).value;
    };
    return std::abs((rec(0) - rec(-1)) / dx - std::cos(x0));
  };
  for (auto dir : {Direction::plus, Direction::minus}) {
    const double e1 = err(0.02, dir), e2 = err(0.01, dir);
    CHECK(std::log2(e1 / e2) > 4.5);
  }
}

TEST_CASE("weno reconstruction stays within the stencil range near a step") {
  for (int k = 0; k <= 5; ++k) {
    std::array<double, 5> v{};
    for (int j = 0; j < 5; ++j) v[j] = j < k ? 1.0 : 0.2;
    for (auto dir : {Direction::plus, Direction::minus}) {
      auto r = weno5_reconstruct(v, dir);
      CHECK(r.value >= 0.2 - 1e-3);
      CHECK(r.value <= 1.0 + 1e-3);
    }
  }
}

TEST_CASE("uniform grid and ghost cells") {
  auto x = uniform_grid(-1.0, 1.0, 101);
  CHECK(x.front() == -1.0);
  CHECK(x.back() == 1.0);
  for (int i = 0; i < 101; ++i) CHECK(x[i] == -x[100 - i]);
  auto g = make_grid(-1.0, 1.0, 101, 0.0, [](double xx) { return State{1.0 + xx * xx, xx}; });
  g.check_uniform();
  CHECK(g.delta == doctest::Approx(0.02));
  CHECK(g.eta_left[0] == doctest::Approx(1.0 + 1.02 * 1.02));
  CHECK(g.eta_right[2] == doctest::Approx(1.0 + 1.06 * 1.06));
  CHECK(g.m_right[0] == doctest::Approx(1.02 * (1.0 + 1.02 * 1.02)));
  g.x[5] += 1e-6;
  CHECK_THROWS(g.check_uniform());
}

TEST_CASE("uniform state has zero residual") {
  auto g = make_grid(-1.0, 1.0, 64, 0.0, [](double) { return State{0.7, -0.3}; });
  auto r = semidiscrete_rhs(g, 1e-12);
  double mx = 0;
  for (int i = 0; i < g.M(); ++i) mx = std::max({mx, std::abs(r.deta[i]), std::abs(r.dm[i])});
  CHECK(mx < 1e-13);
}

TEST_CASE("semi-discrete update telescopes") {
  auto g = make_grid(-1.0, 1.0, 200, 0.0, [](double x) { return shock::State{1.0 + 0.3 * std::sin(3 * x), 0.2 * std::cos(x)}; });
  for (auto k : {Kernel::reference, Kernel::parallel}) {
    auto r = semidiscrete_rhs(g, 1e-12, k);
    double se = 0, sm = 0;
    for (int i = 0; i < g.M(); ++i) {
      se += r.deta[i];
      sm += r.dm[i];
    }
    CHECK(se * g.delta == doctest::Approx(r.flux_left.G - r.flux_right.G).epsilon(1e-13).scale(1.0));
    CHECK(sm * g.delta == doctest::Approx(r.flux_left.L - r.flux_right.L).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("residual is fifth order for a smooth wave") {
  // eta = 1 + eps sin(k x), m = eps sin(k x): deta/dt = -m_x exactly
  auto err = [](int M) {
    const double eps = 1e-2, k = 2.0;
    auto g = make_grid(-1.0, 1.0, M, 0.0, [&](double x) {
      const double e = 1.0 + eps * std::sin(k * x);
      return State{e, eps * std::sin(k * x) / e};
    });
    auto r = semidiscrete_rhs(g, 1e-12);
    double mx = 0;
    for (int i = 0; i < M; ++i) mx = std::max(mx, std::abs(r.deta[i] + eps * k * std::cos(k * g.x[i])));
    return mx;
  };
  const double e1 = err(81), e2 = err(161);
  CHECK(std::log2(e1 / e2) > 4.5);
}

TEST_CASE("reference and parallel kernels are bit identical") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> U(0.1, 1.0);
  std::vector<double> noise(1000);
  for (auto& v : noise) v = U(rng);
  int idx = 0;
  auto g = make_grid(-1.0, 1.0, 997, 0.0, [&](double) {
    const double e = noise[idx++ % 1000];
    return State{e, noise[(idx * 7) % 1000] - 0.5};
  });
  auto a = semidiscrete_rhs(g, 1e-12, Kernel::reference);
  auto b = semidiscrete_rhs(g, 1e-12, Kernel::parallel);
  CHECK(a.deta == b.deta);
  CHECK(a.dm == b.dm);
  CHECK(a.alpha == b.alpha);
  auto ga = advance(g, 2e-4, 2e-3, Kernel::reference), gb = advance(g, 2e-4, 2e-3, Kernel::parallel);
  CHECK(ga.eta == gb.eta);
  CHECK(ga.m == gb.m);
}

TEST_CASE("steady state is preserved and CFL is enforced") {
  auto g = make_grid(-1.0, 1.0, 100, 0.0, [](double) { return State{1.0, 0.5}; });
  auto e0 = g.eta;
  auto g1 = advance(g, 1e-3, 0.05);
  CHECK(max_abs_diff(e0, g1.eta) < 1e-13);
  Stepper st(1e-12, Kernel::reference);
  CHECK_THROWS_AS(st.step(g, 1.0), NumericalError);
}

TEST_CASE("mass changes only through the boundary fluxes") {
  auto g = make_grid(-1.0, 1.0, 400, 0.0, [](double x) { return State{0.25, x < 0 ? 1.0 : -1.0}; });
  Stepper st(1e-12, Kernel::parallel);
  double in_mass = 0, in_mom = 0;
  const double M0 = g.mass(), P0 = g.momentum();
  for (int n = 0; n < 200; ++n) {
    auto rep = st.step(g, 1e-3);
    in_mass += rep.mass_in;
    in_mom += rep.momentum_in;
  }
  CHECK(g.mass() - M0 == doctest::Approx(in_mass).epsilon(1e-12).scale(1.0));
  CHECK(g.momentum() - P0 == doctest::Approx(in_mom).epsilon(1e-12).scale(1.0));
}

TEST_CASE("time stepping is third order") {
  auto g = make_grid(-1.0, 1.0, 200, 0.0, bump(0.1, 0.2));
  const double T = 0.1;
  auto ref = advance(g, T / 640, T);
  const double e1 = max_abs_diff(advance(g, T / 40, T).eta, ref.eta);
  const double e2 = max_abs_diff(advance(g, T / 80, T).eta, ref.eta);
  CHECK(std::log2(e1 / e2) == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("mirror symmetric data stays mirror symmetric") {
  for (auto sc : {Scenario::double_riemann, Scenario::dry_parabola}) {
    Config cfg;
    cfg.scenario = sc;
    cfg.params = {1.0, 1.0, 0.0, 1.0};
    cfg.M = 256;
    cfg.h = 5e-4;
    cfg.t_end = 0.3;
    if (sc == Scenario::dry_parabola) {
      cfg.x_left = -1.5;
      cfg.x_right = 1.5;
    }
    auto r = run_weno(cfg);
    const auto& g = r.final_grid;
    const int M = g.M();
    double de = 0, dm = 0;
    for (int i = 0; i < M; ++i) {
      de = std::max(de, std::abs(g.eta[i] - g.eta[M - 1 - i]));
      dm = std::max(dm, std::abs(g.m[i] + g.m[M - 1 - i]));
    }
    CHECK(de < 1e-10);
    CHECK(dm < 1e-10);
  }
}

TEST_CASE("dry region stays non-negative") {
  Config cfg;
  cfg.scenario = Scenario::dry_parabola;
  cfg.params = {1.0, 4.0, 0.0, 1.0};
  cfg.x_left = -1.0;
  cfg.x_right = 1.0;
  cfg.M = 200;
  cfg.h = 1e-3;
  cfg.t_end = 0.3;
  auto r = run_weno(cfg);
  CHECK(r.min_eta >= r.eta_floor);
  for (double e : r.final_grid.eta) CHECK(e >= r.eta_floor);
}

TEST_CASE("shock location for the double riemann problem") {
  Config cfg;
  cfg.params.Q = 1.0;
  cfg.M = 512;
  cfg.h = 5e-4;
  cfg.t_end = 1.0;
  cfg.x_left = -1.0;
  cfg.x_right = 1.0;
  auto r = run_weno(cfg);
  auto s = locate_shock(r.final_grid);
  CHECK(std::abs(s.x - shock::initial_shock_speed(1.0)) <= 2.0 * r.final_grid.delta);
  CHECK(s.uncertainty == doctest::Approx(2.0 * r.final_grid.delta));
  CHECK(s.jump > 0.3);
  // smooth data before collapse has no shock
  auto smooth = make_grid(-1.0, 1.0, 200, 0.0, bump(0.1, 0.3));
  CHECK_THROWS_WITH(locate_shock(smooth), "no shock detected");
}

TEST_CASE("centerline helpers are exact for low-order polynomials") {
  auto g = make_grid(-1.0, 1.0, 100, 0.0, [](double x) { return State{2.0 + 0.5 * x * x, 0.3 * x}; });
  CHECK(centerline_eta(g) == doctest::Approx(2.0).epsilon(1e-13));
  auto c = centerline_fields(g, 1e-12);
  CHECK(c.eta0 == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(c.ux0 == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(c.etaxx0 == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("overshoot diagnostics") {
  std::vector<std::pair<double, double>> series;
  for (int i = 0; i <= 100; ++i) {
    const double t = 0.01 * i;
    series.push_back({t, 1.0 + 0.2 * std::exp(-10 * t) * std::cos(20 * t)});
  }
  auto o = overshoot_diagnostics(series, [](double) { return 1.0; });
  CHECK(o.amplitude == doctest::Approx(0.2));
  CHECK(o.t_peak == 0.0);
  CHECK(o.support > 0.1);
  CHECK(o.support < 0.3);
}

}
