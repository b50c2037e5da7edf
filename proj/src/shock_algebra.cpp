#include "airy/shock_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace airy::shock {
namespace {

void vacuum_guard(const ShockSides& s) {
  const double scale = std::max(s.eta_minus, s.eta_plus);
  if (!(s.eta_minus > 1e-14 * scale) || !(s.eta_plus > 1e-14 * scale) || !(scale > 0))
    throw DomainError("shock sides too close to vacuum");
}

}  // namespace

double shock_speed(const ShockSides& s) {
  vacuum_guard(s);
  const double jump = s.eta_plus - s.eta_minus;
  if (std::abs(jump) <= 1e-14 * std::max(s.eta_plus, s.eta_minus)) throw DomainError("degenerate jump: [eta] = 0");
  return (s.eta_plus * s.u_plus - s.eta_minus * s.u_minus) / jump;
}

double shock_speed_momentum(const ShockSides& s) {
  vacuum_guard(s);
  auto flux = [](double e, double u) { return e * u * u + 0.5 * e * e; };
  const double jm = s.eta_plus * s.u_plus - s.eta_minus * s.u_minus;
  if (jm == 0.0) throw DomainError("degenerate jump: [eta u] = 0");
  return (flux(s.eta_plus, s.u_plus) - flux(s.eta_minus, s.u_minus)) / jm;
}

double jump_consistency_residual(const ShockSides& s) {
  vacuum_guard(s);
  const double du = s.u_plus - s.u_minus;
  const double de = s.eta_plus - s.eta_minus;
  return du * du - de * de * (s.eta_plus + s.eta_minus) / (2.0 * s.eta_plus * s.eta_minus);
}

double qstar_cubic(double eta, double Q) {
  return ((eta - Q / 4.0) * eta - 9.0 * Q * Q / 16.0) * eta + Q * Q * Q / 64.0;
}

double qstar(double N00, double Q) {
  if (!(Q > 0) || !(N00 > 0) || !(N00 < Q)) throw DomainError("qstar needs 0 < N00 < Q");
  // general simple-wave form: (eta - N)^2 (eta + N) - 2 N eta V^2 with V = 2 sqrt N - 2 sqrt Q
  const double V = 2.0 * std::sqrt(N00) - 2.0 * std::sqrt(Q);
  auto f = [&](double e) {
    const double d = e - N00;
    const double val = d * d * (e + N00) - 2.0 * N00 * e * V * V;
    const double der = 2.0 * d * (e + N00) + d * d - 2.0 * N00 * V * V;
    return std::pair{val, der};
  };
  double hi = 4.0 * Q;
  while (f(hi).first <= 0) hi *= 2.0;
  numerics::RootOptions opt;
  opt.xtol_rel = 1e-16;
  return numerics::bracketed_newton(f, N00 * (1.0 + 1e-12), hi, opt).x;
}

double initial_shock_speed(double Q) {
  const double qs = qstar(Q / 4.0, Q);
  return Q * std::sqrt(Q) / (4.0 * qs - Q);
}

ShockSides riemann_sides(double Q) { return {qstar(Q / 4.0, Q), 0.0, Q / 4.0, -std::sqrt(Q)}; }

int lax_entering_count(const ShockSides& s, double speed) {
  const double cl = std::sqrt(s.eta_minus), cr = std::sqrt(s.eta_plus);
  int n = 0;
  n += (s.u_minus + cl > speed);
  n += (s.u_minus - cl > speed);
  n += (s.u_plus + cr < speed);
  n += (s.u_plus - cr < speed);
  return n;
}

State double_riemann_solution(double x, double t, double Q, double t_c) {
  const double rq = std::sqrt(Q);
  const double sg = x < 0 ? -1.0 : (x > 0 ? 1.0 : 0.0);
  if (t < t_c) {
    const double dt = t_c - t;
    const double a = 1.5 * rq * dt;
    if (std::abs(x) >= a) return {Q / 4.0, -sg * rq};
    const double r = x / dt;
    return {r * r / 9.0, -2.0 * r / 3.0};
  }
  const double xs = initial_shock_speed(Q) * (t - t_c);
  if (std::abs(x) < xs || x == 0.0) return {qstar(Q / 4.0, Q), 0.0};
  return {Q / 4.0, -sg * rq};
}

}  // namespace airy::shock
