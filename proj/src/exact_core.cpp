#include "airy/exact_core.hpp"

#include <cmath>
#include <numbers>

namespace airy {

void ScenarioParams::validate() const {
  if (!(Q > 0)) throw DomainError("Q must be positive");
  if (!(gamma0 > 0)) throw DomainError("gamma0 must be positive");
  if (!(mu0 >= 0)) throw DomainError("mu0 must be non-negative");
  if (!(g0 > 0)) throw DomainError("g0 must be positive");
}

namespace exact {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSplice = 1e-12;

// t as a function of w = sqrt(sigma - 1)
double t_of_w(double w, double gamma0) {
  double sigma = 1.0 + w * w;
  return (w / sigma + std::atan(w)) / (2.0 * std::sqrt(gamma0));
}

// t_c - t(w); series in z = 1/w for large w to dodge cancellation
double tc_minus_t_of_w(double w, double gamma0) {
  if (!std::isfinite(w)) return 0.0;
  double sigma = 1.0 + w * w;
  if (w <= 2.0) return (std::atan2(1.0, w) - w / sigma) / (2.0 * std::sqrt(gamma0));
  double z = 1.0 / w, z2 = z * z, term = z, sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    double c = 2.0 / ((2.0 * k - 1.0) * (2.0 * k + 1.0));
    double add = (k % 2 ? 1.0 : -1.0) * c * term;
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    term *= z2;
  }
  return sum / (2.0 * std::sqrt(gamma0) * sigma);
}

double dt_dw(double w, double gamma0) {
  double sigma = 1.0 + w * w;
  return 1.0 / (std::sqrt(gamma0) * sigma * sigma);
}

double w_from_time(double t, double gamma0) {
  const double tc = collapse_time(gamma0);
  if (t == 0.0) return 0.0;
  double w_hi = 1.0;
  if (t <= 0.5 * tc) {
    while (t_of_w(w_hi, gamma0) <= t) w_hi *= 2.0;
    auto f = [&](double w) { return std::pair{t_of_w(w, gamma0) - t, dt_dw(w, gamma0)}; };
    return numerics::bracketed_newton(f, 0.0, w_hi).x;
  }
  const double d = tc - t;
  while (tc_minus_t_of_w(w_hi, gamma0) >= d) w_hi *= 2.0;
  auto f = [&](double w) { return std::pair{d - tc_minus_t_of_w(w, gamma0), dt_dw(w, gamma0)}; };
  return numerics::bracketed_newton(f, 0.0, w_hi).x;
}

struct EdgeW {
  double A, dA;
};

// edge of the parabola launched from a0 along x_-, as a function of w
EdgeW edge_w(double w, const ScenarioParams& p) {
  const double sigma = 1.0 + w * w;
  const double a0 = std::sqrt((p.Q - p.mu0) / p.gamma0);
  const double c = std::sqrt(p.Q / p.gamma0);
  const double rs = std::sqrt(sigma);
  double A = (a0 * a0 - (p.mu0 / p.gamma0) * w * w) / (sigma * (a0 * rs + c * w));
  double dA = -a0 * w / (sigma * rs) - c * (1.0 - w * w) / (sigma * sigma);
  return {A, dA};
}

struct ShoulderW {
  double f, df, N, V;
};

// residual of x = Lambda (t - T) + A along the x_+ characteristic launched at w
// d = t_c - t (negative past collapse)
ShoulderW shoulder_w(double w, double x, double d, const ScenarioParams& p) {
  const double sigma = 1.0 + w * w;
  auto [A, dA] = edge_w(w, p);
  const double N = p.gamma0 * sigma * sigma * sigma * A * A + p.mu0 * sigma;
  const double dN = p.gamma0 * (6.0 * w * sigma * sigma * A * A + 2.0 * sigma * sigma * sigma * A * dA) +
                    2.0 * p.mu0 * w;
  const double rN = std::sqrt(N);
  const double lam = 3.0 * rN - 2.0 * std::sqrt(p.Q);
  const double dlam = 1.5 / rN * dN;
  const double tmT = tc_minus_t_of_w(w, p.gamma0) - d;
  const double f = lam * tmT + A - x;
  const double df = dlam * tmT - lam * dt_dw(w, p.gamma0) + dA;
  return {f, df, N, 2.0 * rN - 2.0 * std::sqrt(p.Q)};
}

double solve_shoulder_w(double x, double d, double w_lo, double w_hi, const ScenarioParams& p) {
  auto f = [&](double w) {
    auto s = shoulder_w(w, x, d, p);
    return std::pair{s.f, s.df};
  };
  return numerics::bracketed_newton(f, w_lo, w_hi).x;
}

ShoulderPoint point_from_w(double x, double t, double w, const ScenarioParams& p) {
  if (!std::isfinite(w)) return {x, t, INFINITY, p.Q / 4.0, -std::sqrt(p.Q)};
  auto s = shoulder_w(w, x, 0.0, p);
  return {x, t, 1.0 + w * w, s.N, s.V};
}

bool wet(const ScenarioParams& p) { return p.mu0 > 0.0; }

double shoulder_w_at(double x, double t, const ScenarioParams& p) {
  p.validate();
  if (t < 0) throw DomainError("negative time");
  const double tc = collapse_time(p.gamma0);
  if (t > tc) throw DomainError("post-shock query refused");
  if (wet(p) && t > wet_crossing_time(p.Q, p.mu0, p.gamma0))
    throw DomainError("wet shoulders have crossed; shoulder solution not valid");
  x = std::abs(x);
  const double b = outer_edge(t, p);
  const Edge e = core_edge_at(t, p);
  if (x > b + kSplice || x < e.a - kSplice) throw DomainError("outside shoulder region");
  if (x >= b) return 0.0;
  const double d = tc - t;
  if (t < tc) {
    const double wt = w_from_time(t, p.gamma0);
    if (x <= e.a) return wt;
    return solve_shoulder_w(x, d, 0.0, wt, p);
  }
  if (x == 0.0) return INFINITY;
  // at collapse: seed from the cusp asymptotics, then bracket
  double w_s = std::sqrt(std::max(cusp_sigma0_seed(x, p) - 1.0, 1.0));
  double w_hi = 2.0 * w_s;
  while (shoulder_w(w_hi, x, d, p).f > 0) w_hi *= 2.0;
  double w_lo = 0.5 * w_s;
  while (w_lo > 1e-3 && shoulder_w(w_lo, x, d, p).f < 0) w_lo *= 0.5;
  if (shoulder_w(w_lo, x, d, p).f < 0) w_lo = 0.0;
  return solve_shoulder_w(x, d, w_lo, w_hi, p);
}

}  // namespace

double collapse_time(double gamma0) {
  if (!(gamma0 > 0)) throw DomainError("gamma0 must be positive");
  return kPi / (4.0 * std::sqrt(gamma0));
}

double time_of_sigma(double sigma, double gamma0) {
  if (!(sigma >= 1.0)) throw DomainError("sigma must be >= 1");
  if (!std::isfinite(sigma)) return collapse_time(gamma0);
  return t_of_w(std::sqrt(sigma - 1.0), gamma0);
}

double time_to_collapse(double sigma, double gamma0) {
  if (!(sigma >= 1.0)) throw DomainError("sigma must be >= 1");
  return tc_minus_t_of_w(std::sqrt(sigma - 1.0), gamma0);
}

double sigma_from_time(double t, double gamma0) {
  const double tc = collapse_time(gamma0);
  if (t < 0) throw DomainError("negative time");
  if (t >= tc) throw DomainError("post-collapse");
  double w = w_from_time(t, gamma0);
  return 1.0 + w * w;
}

ParabolaState parabola_state(double sigma, const ScenarioParams& p) {
  if (!(sigma >= 1.0)) throw DomainError("sigma must be >= 1");
  const double w = std::sqrt(sigma - 1.0);
  return {sigma, time_of_sigma(sigma, p.gamma0), -2.0 * std::sqrt(p.gamma0) * sigma * w,
          p.gamma0 * sigma * sigma * sigma, p.mu0 * sigma};
}

double wet_crossing_time(double Q, double mu0, double gamma0) {
  if (!(mu0 >= 0 && mu0 <= Q)) throw DomainError("need 0 <= mu0 <= Q");
  if (mu0 == 0.0) return collapse_time(gamma0);
  return time_of_sigma(Q / mu0, gamma0);
}

double characteristic_position(double sigma, double x0, Family sign, const ScenarioParams& p) {
  if (!(sigma >= 1.0)) throw DomainError("sigma must be >= 1");
  if (!std::isfinite(sigma)) return 0.0;
  const double w = std::sqrt(sigma - 1.0);
  const double rs = std::sqrt(sigma);
  if (p.mu0 == 0.0) {
    // sqrt(eta) = sqrt(gamma) |x|: the families swap roles for x0 < 0
    if ((sign == Family::plus) == (x0 >= 0)) return x0 * (rs + w) / sigma;
    return x0 / (sigma * (rs + w));
  }
  const double c = std::sqrt(x0 * x0 + p.mu0 / p.gamma0);
  if (sign == Family::plus) return x0 / rs + w * c / sigma;
  if (x0 > 0) return (x0 * x0 - w * w * p.mu0 / p.gamma0) / (sigma * (x0 * rs + w * c));
  return x0 / rs - w * c / sigma;
}

Edge parabola_edge(double sigma, const ScenarioParams& p) {
  if (!(sigma >= 1.0)) throw DomainError("sigma must be >= 1");
  if (p.mu0 != 0.0) throw DomainError("parabola_edge closed form is for the dry case");
  if (!std::isfinite(sigma)) return {0.0, p.Q / 4.0, -std::sqrt(p.Q)};
  const double w = std::sqrt(sigma - 1.0);
  const double rs = std::sqrt(sigma);
  const double a = std::sqrt(p.Q / p.gamma0) / (sigma * (rs + w));
  const double eta = p.Q * sigma / ((rs + w) * (rs + w));
  const double u = -2.0 * std::sqrt(p.Q) * w / (rs + w);
  return {a, eta, u};
}

Edge core_edge_at(double t, const ScenarioParams& p) {
  const double tc = collapse_time(p.gamma0);
  if (t < 0 || t > tc) throw DomainError("edge defined for 0 <= t <= t_c");
  if (wet(p) && t > wet_crossing_time(p.Q, p.mu0, p.gamma0)) throw DomainError("wet edges have crossed");
  if (t == tc) {
    if (wet(p)) throw DomainError("wet edges have crossed");
    return {0.0, p.Q / 4.0, -std::sqrt(p.Q)};
  }
  const double w = w_from_time(t, p.gamma0);
  const double sigma = 1.0 + w * w;
  auto [A, dA] = edge_w(w, p);
  (void)dA;
  const double nu = -2.0 * std::sqrt(p.gamma0) * sigma * w;
  return {A, p.gamma0 * sigma * sigma * sigma * A * A + p.mu0 * sigma, nu * A};
}

double initial_half_width(const ScenarioParams& p) { return std::sqrt((p.Q - p.mu0) / p.gamma0); }

double outer_edge(double t, const ScenarioParams& p) { return initial_half_width(p) + std::sqrt(p.Q) * t; }

double shoulder_sigma0(double x, double t, const ScenarioParams& p) {
  double w = shoulder_w_at(x, t, p);
  return 1.0 + w * w;
}

ShoulderPoint shoulder_eval(double x, double t, const ScenarioParams& p) {
  const double w = shoulder_w_at(x, t, p);
  auto sp = point_from_w(x, t, w, p);
  return sp;
}

ShoulderPoint shoulder_outer_eval(double x, double t, const ScenarioParams& p) {
  p.validate();
  if (wet(p)) throw DomainError("outer continuation is for the dry case");
  const double tc = collapse_time(p.gamma0);
  if (t < tc) return shoulder_eval(x, t, p);
  if (!(x > 0)) throw DomainError("outer continuation needs x > 0");
  const double b = outer_edge(t, p);
  if (x >= b) return {x, t, 1.0, p.Q, 0.0};
  const double d = tc - t;
  double w_hi = 1.0;
  while (shoulder_w(w_hi, x, d, p).f > 0) {
    w_hi *= 2.0;
    if (w_hi > 1e12) throw NumericalError("outer shoulder root not bracketed");
  }
  const double w = solve_shoulder_w(x, d, 0.0, w_hi, p);
  return point_from_w(x, t, w, p);
}

double cusp_constant(double Q, double gamma0) {
  return std::pow(3.0, 2.0 / 3.0) * std::cbrt(gamma0) * std::pow(Q, 2.0 / 3.0) / 8.0;
}

double cusp_profile_N0(double x, const ScenarioParams& p) {
  return p.Q / 4.0 + cusp_constant(p.Q, p.gamma0) * std::pow(std::abs(x), 2.0 / 3.0);
}

double shock_trace_value(double x_s, double t_rel, const ScenarioParams& p) {
  const double X0 = x_s + 0.5 * std::sqrt(p.Q) * t_rel;
  return p.Q / 4.0 + cusp_constant(p.Q, p.gamma0) * std::pow(X0, 2.0 / 3.0);
}

double cusp_sigma0_seed(double x, const ScenarioParams& p) {
  return std::pow(3.0, -2.0 / 3.0) * std::cbrt(p.Q / p.gamma0) * std::pow(std::abs(x), -2.0 / 3.0);
}

FieldSnapshot presingularity_snapshot(const std::vector<double>& x_grid, double t, const ScenarioParams& p) {
  p.validate();
  const double tc = collapse_time(p.gamma0);
  if (t < 0) throw DomainError("negative time");
  if (t >= tc) throw DomainError("t >= t_c: use the post-collapse solvers");
  if (wet(p) && t >= wet_crossing_time(p.Q, p.mu0, p.gamma0))
    throw DomainError("wet edges have crossed before t");
  const double w = w_from_time(t, p.gamma0);
  const ParabolaState ps = parabola_state(1.0 + w * w, p);
  const Edge e = core_edge_at(t, p);
  const double b = outer_edge(t, p);
  FieldSnapshot snap;
  snap.t = t;
  snap.x = x_grid;
  snap.eta.resize(x_grid.size());
  snap.u.resize(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double x = x_grid[i], ax = std::abs(x);
    const double sg = x < 0 ? -1.0 : 1.0;
    if (ax <= e.a + kSplice) {
      snap.eta[i] = ps.gamma * x * x + ps.mu;
      snap.u[i] = ps.nu * x;
    } else if (ax >= b - kSplice) {
      snap.eta[i] = p.Q;
      snap.u[i] = 0.0;
    } else {
      auto sp = point_from_w(ax, t, solve_shoulder_w(ax, tc - t, 0.0, w, p), p);
      snap.eta[i] = sp.N;
      snap.u[i] = sg * sp.V;
    }
  }
  return snap;
}

}  // namespace exact
}  // namespace airy
