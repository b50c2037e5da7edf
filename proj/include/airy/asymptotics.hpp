#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "airy/numerics.hpp"

namespace airy::asymptotics {

enum class CaseTag { double_riemann, double_stoker, full };
std::string_view case_name(CaseTag c);

struct AsymptoticCoefficients {
  CaseTag tag = CaseTag::double_riemann;
  double Q = 0;
  double param = 0;  // g0 (double-Stoker) or gamma0 (full)
  double Qstar = 0;
  double s0 = 0;
  double A = 0;    // boundary forcing rate
  double B = 0;    // psi_eta limit
  double F1 = 0;   // F'(0)
  std::optional<double> F2;  // F''(0)
  double Phi0 = 0;
  std::optional<double> Phi1;
  // double-Stoker: x_s ~ s0 t + s1 t^2; full: shock speed ~ s0 + s1 t^{2/3}
  double s1 = 0;
  std::optional<double> nu0, mu1;
  std::optional<double> c_ux, c_etaxx;
  double phi_eta = 0, phi_u = 0;
  double phi0_rate = 0;  // phi0 ~ phi0_rate e^{tau} (stoker) or e^{2 tau/3} (full)
};

AsymptoticCoefficients riemann_coefficients(double Q);
AsymptoticCoefficients stoker_coefficients(double Q, double g0);
AsymptoticCoefficients full_coefficients(double Q, double gamma0);

// shock position from the short-time expansion (t measured from collapse)
double shock_position(const AsymptoticCoefficients& c, double t);

enum class Coords { unfolded, physical };

struct Profile {
  double eta;  // eta tilde (unfolded) or eta (physical)
  double u;
};

Profile inner_profile_stoker(double z, double time, const AsymptoticCoefficients& c, Coords coords);
Profile inner_profile_full(double z, double time, const AsymptoticCoefficients& c, Coords coords);

struct Centerline {
  double eta0, ux0, etaxx0;
};
// centerline values of the short-time expansions, t from collapse
Centerline centerline_theory(const AsymptoticCoefficients& c, double t);

// boundary forcing phi0(tau) with eta = Q*, u = 0 along the leading path, and its tau-derivative
std::pair<double, double> phi0_leading(const AsymptoticCoefficients& c, double tau);

struct CenterlineSample {
  double eta_tau = 0, eta_tautau = 0;
  double u_xi = 0, u_xitau = 0;
  double eta_xixi = 0;
  double phi0 = 0, phi0_tau = 0;
};

// residuals of the three centerline relations implied by the linearised unfolded system
std::array<double, 3> centerline_identities(const CenterlineSample& s, const AsymptoticCoefficients& c);

struct OracleResult {
  double mu0, s0, nu0, mu1;
};
OracleResult taylor_hierarchy_oracle(double Q, double g0);

}  // namespace airy::asymptotics
