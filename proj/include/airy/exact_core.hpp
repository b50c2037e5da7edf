#pragma once

#include <vector>

#include "airy/numerics.hpp"

namespace airy {

struct ScenarioParams {
  double Q = 1.0;
  double gamma0 = 1.0;
  double mu0 = 0.0;
  double g0 = 1.0;

  void validate() const;
};

struct ParabolaState {
  double sigma;
  double t;
  double nu;
  double gamma;
  double mu;
};

struct ShoulderPoint {
  double x;
  double t;
  double sigma0;
  double N;
  double V;
};

struct FieldSnapshot {
  double t = 0;
  std::vector<double> x, eta, u;
};

enum class Family { plus, minus };

namespace exact {

double collapse_time(double gamma0);

// t(sigma) for the nu0 = 0 core, and its stable complement t_c - t(sigma)
double time_of_sigma(double sigma, double gamma0);
double time_to_collapse(double sigma, double gamma0);

double sigma_from_time(double t, double gamma0);

ParabolaState parabola_state(double sigma, const ScenarioParams& p);

double wet_crossing_time(double Q, double mu0, double gamma0);

double characteristic_position(double sigma, double x0, Family sign, const ScenarioParams& p);

struct Edge {
  double a;
  double eta;
  double u;
};

// dry case only, closed forms in sigma
Edge parabola_edge(double sigma, const ScenarioParams& p);

// edge of the parabolic core at time t, any mu0 (a may reach 0 at t_s when wet)
Edge core_edge_at(double t, const ScenarioParams& p);

double initial_half_width(const ScenarioParams& p);
// outer edge b(t) = a0 + sqrt(Q) t
double outer_edge(double t, const ScenarioParams& p);

double shoulder_sigma0(double x, double t, const ScenarioParams& p);
ShoulderPoint shoulder_eval(double x, double t, const ScenarioParams& p);

// right-shoulder simple wave continued past t_c for x > 0 (outer solution bracketing the shock)
ShoulderPoint shoulder_outer_eval(double x, double t, const ScenarioParams& p);

double cusp_constant(double Q, double gamma0);
double cusp_profile_N0(double x, const ScenarioParams& p);
double shock_trace_value(double x_s, double t_rel, const ScenarioParams& p);

// asymptotic seed for sigma0 at t_c near the origin
double cusp_sigma0_seed(double x, const ScenarioParams& p);

FieldSnapshot presingularity_snapshot(const std::vector<double>& x_grid, double t,
                                      const ScenarioParams& p);

}  // namespace exact
}  // namespace airy
