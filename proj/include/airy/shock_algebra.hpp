#pragma once

#include "airy/numerics.hpp"

namespace airy::shock {

struct ShockSides {
  double eta_minus, u_minus;
  double eta_plus, u_plus;
};

double shock_speed(const ShockSides& s);
// momentum-flux form [eta u^2 + eta^2/2] / [eta u]
double shock_speed_momentum(const ShockSides& s);
double jump_consistency_residual(const ShockSides& s);

// root > N00 of the jump-consistency cubic; N00 = Q/4 in every scenario here
double qstar(double N00, double Q);
double qstar_cubic(double eta, double Q);

// s0 = Q^{3/2} / (4 Q* - Q)
double initial_shock_speed(double Q);

// inner (Q*, 0) and outer (Q/4, -sqrt Q) states of the right shock
ShockSides riemann_sides(double Q);

// number of characteristic families impinging on the shock (Lax: 3 for a 2x2 system)
int lax_entering_count(const ShockSides& s, double speed);

struct State {
  double eta, u;
};

State double_riemann_solution(double x, double t, double Q, double t_c);

}  // namespace airy::shock
