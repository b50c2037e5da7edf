#include "airy/scenarios.hpp"

#include <cmath>

namespace airy::scenarios {

std::string_view name(Scenario s) {
  switch (s) {
    case Scenario::dry_parabola: return "dry-parabola";
    case Scenario::wet_parabola: return "wet-parabola";
    case Scenario::double_riemann: return "double-riemann";
    case Scenario::double_stoker: return "double-stoker";
    case Scenario::full: return "full";
  }
  return "?";
}

Scenario parse(std::string_view text) {
  for (auto s : {Scenario::dry_parabola, Scenario::wet_parabola, Scenario::double_riemann,
                 Scenario::double_stoker, Scenario::full})
    if (name(s) == text) return s;
  throw DomainError("unknown scenario: " + std::string(text));
}

State truncated_parabola_ic(double x, const ScenarioParams& p) {
  p.validate();
  if (p.mu0 > p.Q) throw DomainError("mu0 > Q");
  const double a0 = exact::initial_half_width(p);
  if (std::abs(x) <= a0) return {p.gamma0 * x * x + p.mu0, 0.0};
  return {p.Q, 0.0};
}

double stoker_hinge(double Q, double g0) { return 0.25 * std::sqrt(3.0 * Q / g0); }
double stoker_time_offset(double g0) { return 0.5 * std::sqrt(3.0 / g0); }
double stoker_front(double t, double Q, double g0) {
  return std::sqrt(Q) * t + 0.75 * std::sqrt(3.0 * Q / g0);
}

NV double_stoker_fields(double x, double t, double Q, double g0) {
  if (t < 0) throw DomainError("negative time");
  const double ax = std::abs(x);
  if (ax >= stoker_front(t, Q, g0)) return {Q, 0.0};
  const double r = (ax - stoker_hinge(Q, g0)) / (t + stoker_time_offset(g0));
  const double c = r + 2.0 * std::sqrt(Q);
  const double V = 2.0 * r / 3.0 - 2.0 * std::sqrt(Q) / 3.0;
  const double sg = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
  return {c * c / 9.0, sg * V};
}

State double_riemann_ic(double x, double Q) {
  const double sg = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
  return {Q / 4.0, -sg * std::sqrt(Q)};
}

State full_ic(double x, const ScenarioParams& p) {
  p.validate();
  if (p.mu0 != 0.0) throw DomainError("full case is dry");
  const double tc = exact::collapse_time(p.gamma0);
  const double ax = std::abs(x);
  const double sg = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
  if (ax >= exact::outer_edge(tc, p)) return {p.Q, 0.0};
  const double N = ax == 0.0 ? p.Q / 4.0 : exact::shoulder_eval(ax, tc, p).N;
  return {N, 2.0 * sg * (std::sqrt(N) - std::sqrt(p.Q))};
}

FullProfileTable::FullProfileTable(const ScenarioParams& p, int n) : p_(p) {
  p.validate();
  const double tc = exact::collapse_time(p.gamma0);
  x_max_ = exact::outer_edge(tc, p);
  x_min_ = 1e-9 * x_max_;
  std::vector<double> s, y;
  const double l0 = std::log(x_min_), l1 = std::log(x_max_);
  for (int i = 0; i < n; ++i) {
    double x = std::exp(l0 + (l1 - l0) * i / (n - 1));
    if (i == n - 1) x = x_max_;
    s.push_back(std::cbrt(x));
    y.push_back(i == n - 1 ? p.Q : exact::shoulder_eval(x, tc, p).N);
  }
  table_ = numerics::Pchip(std::move(s), std::move(y));
}

State FullProfileTable::operator()(double x) const {
  const double ax = std::abs(x);
  const double sg = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
  double N;
  if (ax >= x_max_)
    N = p_.Q;
  else if (ax < x_min_)
    N = exact::cusp_profile_N0(ax, p_);
  else
    N = table_(std::cbrt(ax));
  return {N, 2.0 * sg * (std::sqrt(N) - std::sqrt(p_.Q))};
}

}  // namespace airy::scenarios
