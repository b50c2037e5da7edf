#include "airy/asymptotics.hpp"

#include <boost/math/differentiation/autodiff.hpp>
#include <cmath>

#include "airy/exact_core.hpp"
#include "airy/forcing.hpp"
#include "airy/shock_algebra.hpp"

namespace airy::asymptotics {

namespace ad = boost::math::differentiation;

std::string_view case_name(CaseTag c) {
  switch (c) {
    case CaseTag::double_riemann: return "double_riemann";
    case CaseTag::double_stoker: return "double_stoker";
    case CaseTag::full: return "full";
  }
  return "?";
}

namespace {

double p23(double z) { return std::cbrt(z * z); }

struct Base {
  double Q, Qs, s0, N0, B, phi_eta, phi_u, psi_N, f_N;
};

// limits of the boundary algebra at (N, eta, u) = (Q/4, Q*, 0)
Base base(double Q) {
  Base b{};
  b.Q = Q;
  b.Qs = shock::qstar(Q / 4.0, Q);
  b.s0 = shock::initial_shock_speed(Q);
  b.N0 = Q / 4.0;
  {
    auto v = ad::make_ftuple<double, 1, 1>(b.N0, b.Qs);
    auto psi = forcing::psi(std::get<0>(v), std::get<1>(v), Q);
    b.psi_N = psi.derivative(1, 0);
    b.B = psi.derivative(0, 1);
  }
  {
    auto v = ad::make_ftuple<double, 1, 1, 1>(b.N0, b.Qs, 0.0);
    auto f = forcing::shock_slowness(std::get<0>(v), std::get<1>(v), std::get<2>(v), Q);
    b.f_N = f.derivative(1, 0, 0);
    b.phi_eta = f.derivative(0, 1, 0);
    b.phi_u = f.derivative(0, 0, 1);
  }
  return b;
}

}  // namespace

AsymptoticCoefficients riemann_coefficients(double Q) {
  if (!(Q > 0)) throw DomainError("Q must be positive");
  Base b = base(Q);
  AsymptoticCoefficients c;
  c.tag = CaseTag::double_riemann;
  c.Q = Q;
  c.Qstar = b.Qs;
  c.s0 = b.s0;
  c.B = b.B;
  c.Phi0 = std::sqrt(b.Qs) / b.s0;
  c.phi_eta = b.phi_eta;
  c.phi_u = b.phi_u;
  c.nu0 = 0.0;
  c.mu1 = 0.0;
  return c;
}

AsymptoticCoefficients stoker_coefficients(double Q, double g0) {
  if (!(Q > 0) || !(g0 > 0)) throw DomainError("need Q > 0 and g0 > 0");
  const Base b = base(Q);
  const double rQs = std::sqrt(b.Qs), s0 = b.s0;

  // path x_s = e, t = e/s0 + t2 e^2 with e = e^tau
  auto path_psi = [&](double t2) {
    auto e = ad::make_fvar<double, 2>(0.0);
    auto N = forcing::stoker_N(e, e / s0 + t2 * e * e, Q, g0);
    auto psi = forcing::psi(N, b.Qs, Q);
    return std::pair{psi.derivative(1), 0.5 * psi.derivative(2)};
  };
  double phi01;
  {
    auto e = ad::make_fvar<double, 1>(0.0);
    auto N = forcing::stoker_N(e, e / s0, Q, g0);
    phi01 = forcing::shock_slowness(N, b.Qs, 0.0, Q).derivative(1);
  }
  double B1;
  {
    auto v = ad::make_ftuple<double, 1, 1>(0.0, b.Qs);
    const auto& e = std::get<0>(v);
    auto N = forcing::stoker_N(e, e / s0, Q, g0);
    B1 = forcing::psi(N, std::get<1>(v), Q).derivative(1, 1);
  }

  AsymptoticCoefficients c;
  c.tag = CaseTag::double_stoker;
  c.Q = Q;
  c.param = g0;
  c.Qstar = b.Qs;
  c.s0 = s0;
  c.B = b.B;
  c.phi_eta = b.phi_eta;
  c.phi_u = b.phi_u;
  c.A = path_psi(0.0).first;
  c.F1 = rQs * c.A * s0 / (s0 + b.B * b.Qs);
  c.Phi0 = rQs / s0;
  c.Phi1 = rQs * phi01 / 2.0;
  c.phi0_rate = phi01;
  const double t2 = 0.5 * (phi01 + b.phi_eta * (-c.F1 * c.Phi0) + b.phi_u * c.F1 / rQs);
  c.s1 = -s0 * s0 * s0 * t2;
  const double A2 = path_psi(t2).second;
  c.F2 = (A2 - b.B * c.F1 * *c.Phi1 - B1 * c.F1 * c.Phi0) / (-c.Phi0 / rQs - b.B * (1.0 + c.Phi0 * c.Phi0) / 2.0);
  c.nu0 = c.F1 / rQs;
  c.mu1 = -*c.nu0 * b.Qs;
  return c;
}

AsymptoticCoefficients full_coefficients(double Q, double gamma0) {
  if (!(Q > 0) || !(gamma0 > 0)) throw DomainError("need Q > 0 and gamma0 > 0");
  const Base b = base(Q);
  const double rQs = std::sqrt(b.Qs), s0 = b.s0;
  // N ~ Q/4 + k e^{2 tau/3} along x_s = s0 t
  const double k = exact::cusp_constant(Q, gamma0) * std::pow(1.0 + std::sqrt(Q) / (2.0 * s0), 2.0 / 3.0);
  AsymptoticCoefficients c;
  c.tag = CaseTag::full;
  c.Q = Q;
  c.param = gamma0;
  c.Qstar = b.Qs;
  c.s0 = s0;
  c.B = b.B;
  c.phi_eta = b.phi_eta;
  c.phi_u = b.phi_u;
  c.Phi0 = rQs / s0;
  c.A = b.psi_N * k;
  const double Pm = p23(rQs - s0), Pp = p23(rQs + s0);
  const double den = Pm * (1.0 - rQs * b.B) - Pp * (1.0 + rQs * b.B);
  c.F1 = 2.0 * std::cbrt(s0 * s0) * rQs * c.A / den;
  c.c_ux = 2.0 * c.F1 / (3.0 * p23(b.Qs));
  c.c_etaxx = *c.c_ux / 3.0;
  c.phi0_rate = b.f_N * k;
  // boundary values at xi = 1 at order e^{2 tau/3}
  const double s023 = std::cbrt(s0 * s0);
  const double eta1 = 0.5 * c.F1 / s023 * (Pm + Pp);
  const double u1 = 0.5 * c.F1 / (rQs * s023) * (Pm - Pp);
  const double C = c.phi0_rate + b.phi_eta * eta1 + b.phi_u * u1;
  // dt/dtau = e^tau (1/s0 + C e^{2tau/3}) => shock speed s0 - C s0^{8/3} t^{2/3}
  c.s1 = -C * std::pow(s0, 8.0 / 3.0);
  return c;
}

double shock_position(const AsymptoticCoefficients& c, double t) {
  switch (c.tag) {
    case CaseTag::double_riemann: return c.s0 * t;
    case CaseTag::double_stoker: return c.s0 * t + c.s1 * t * t;
    case CaseTag::full: return c.s0 * t + 0.6 * c.s1 * std::pow(t, 5.0 / 3.0);
  }
  return 0;
}

Profile inner_profile_stoker(double z, double time, const AsymptoticCoefficients& c, Coords coords) {
  if (c.tag != CaseTag::double_stoker) throw DomainError("stoker profile needs double-Stoker coefficients");
  const double rQs = std::sqrt(c.Qstar), F1 = c.F1, F2 = *c.F2, P0 = c.Phi0, P1 = *c.Phi1;
  if (coords == Coords::unfolded) {
    if (std::abs(z) > 1.0 + 1e-12) throw DomainError("xi outside [-1, 1]");
    const double e1 = std::exp(time), e2 = e1 * e1;
    return {-F1 * P0 * e1 + (-F1 * P1 + 0.5 * F2 * (z * z + P0 * P0)) * e2,
            (F1 * z * e1 - F2 * P0 * z * e2) / rQs};
  }
  const double t = time;
  if (t < 0) throw DomainError("negative time");
  if (std::abs(z) > shock_position(c, t) * (1.0 + 1e-12)) throw DomainError("x outside the inner strip");
  const double s0 = c.s0, s1 = c.s1;
  const double eta = c.Qstar - F1 * P0 * s0 * t - (F1 * P0 * s1 + (F1 * P1 - 0.5 * F2 * P0 * P0) * s0 * s0) * t * t +
                     0.5 * F2 * z * z;
  return {eta, z / rQs * (F1 - F2 * P0 * (s0 * t + s1 * t * t))};
}

Profile inner_profile_full(double z, double time, const AsymptoticCoefficients& c, Coords coords) {
  if (c.tag != CaseTag::full) throw DomainError("full profile needs full-case coefficients");
  const double rQs = std::sqrt(c.Qstar), F1 = c.F1;
  if (coords == Coords::unfolded) {
    if (std::abs(z) > 1.0 + 1e-12) throw DomainError("xi outside [-1, 1]");
    const double e = std::exp(2.0 * time / 3.0);
    const double a = p23(c.Phi0 - z), b = p23(c.Phi0 + z);
    return {0.5 * F1 * (a + b) * e, 0.5 * F1 / rQs * (a - b) * e};
  }
  const double t = time;
  if (t < 0) throw DomainError("negative time");
  if (std::abs(z) > c.s0 * t * (1.0 + 1e-12)) throw DomainError("x outside the inner strip");
  const double a = p23(rQs * t - z), b = p23(rQs * t + z);
  return {c.Qstar + 0.5 * F1 * (a + b), 0.5 * F1 / rQs * (a - b)};
}

Centerline centerline_theory(const AsymptoticCoefficients& c, double t) {
  switch (c.tag) {
    case CaseTag::double_riemann: return {c.Qstar, 0.0, 0.0};
    case CaseTag::double_stoker: {
      const double rQs = std::sqrt(c.Qstar), F1 = c.F1, F2 = *c.F2, P0 = c.Phi0, P1 = *c.Phi1;
      const double s0 = c.s0, s1 = c.s1;
      return {c.Qstar - F1 * P0 * s0 * t - (F1 * P0 * s1 + (F1 * P1 - 0.5 * F2 * P0 * P0) * s0 * s0) * t * t,
              (F1 - F2 * P0 * (s0 * t + s1 * t * t)) / rQs, F2};
    }
    case CaseTag::full:
      return {c.Qstar + c.F1 * p23(std::sqrt(c.Qstar) * t), -*c.c_ux / std::cbrt(t),
              -*c.c_etaxx / std::pow(t, 4.0 / 3.0)};
  }
  return {};
}

std::pair<double, double> phi0_leading(const AsymptoticCoefficients& c, double tau) {
  const double k = c.tag == CaseTag::full ? 2.0 / 3.0 : 1.0;
  const double v = c.phi0_rate * std::exp(k * tau);
  return {v, k * v};
}

std::array<double, 3> centerline_identities(const CenterlineSample& s, const AsymptoticCoefficients& c) {
  const double s0 = c.s0, Qs = c.Qstar;
  const double g = 1.0 + s0 * s.phi0;
  return {s.u_xi + s0 * s.eta_tau / (Qs * g),
          s.u_xitau + s0 / (Qs * g) * (s.eta_tautau + Qs * s.phi0_tau * s.u_xi),
          s.eta_xixi + s0 / g * (s.u_xitau - s.u_xi)};
}

OracleResult taylor_hierarchy_oracle(double Q, double g0) {
  if (!(Q > 0) || !(g0 > 0)) throw DomainError("need Q > 0 and g0 > 0");
  const double N0 = Q / 4.0;
  const double V0 = 2.0 * std::sqrt(N0) - 2.0 * std::sqrt(Q);
  auto G = [](auto ep, auto up, auto em, auto um) {
    auto du = up - um;
    auto de = ep - em;
    return du * du - de * de * (ep + em) / (2.0 * ep * em);
  };
  // order 0: inner plateau from the jump relation with the collapse state outside
  const double mu0 = numerics::bisect([&](double e) { return G(N0, V0, e, 0.0); }, N0 * (1.0 + 1e-9), 16.0 * Q);
  const double s0 = (N0 * V0) / (N0 - mu0);
  // order 1: eta_- = mu0 + mu1 t, u_- = nu0 x, mass balance mu1 = -nu0 mu0
  auto v = ad::make_ftuple<double, 1, 1, 1, 1>(N0, V0, mu0, 0.0);
  auto g = G(std::get<0>(v), std::get<1>(v), std::get<2>(v), std::get<3>(v));
  const double Gep = g.derivative(1, 0, 0, 0), Gup = g.derivative(0, 1, 0, 0);
  const double Gem = g.derivative(0, 0, 1, 0), Gum = g.derivative(0, 0, 0, 1);
  auto xt = ad::make_ftuple<double, 1, 1>(0.0, 0.0);
  auto N = forcing::stoker_N(std::get<0>(xt), std::get<1>(xt), Q, g0);
  const double dN = s0 * N.derivative(1, 0) + N.derivative(0, 1);
  const double dV = dN / std::sqrt(N0);
  const double nu0 = -(Gep * dN + Gup * dV) / (-Gem * mu0 + Gum * s0);
  return {mu0, s0, nu0, -nu0 * mu0};
}

}  // namespace airy::asymptotics
