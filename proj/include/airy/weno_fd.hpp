#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "airy/exact_core.hpp"
#include "airy/scenarios.hpp"

namespace airy::weno {

using scenarios::Scenario;
using shock::State;

constexpr int kGhost = 3;
constexpr double kCfl = 0.4;
constexpr double kWenoEps = 1e-6;

struct Flux {
  double G, L;
};

// G = m, L = m^2/eta + eta^2/2 with eta -> max(eta, eta_floor); clamped is set when the guard was active
Flux conservative_flux(double eta, double m, double eta_floor, bool* clamped = nullptr);

struct SplitFlux {
  double G_plus, G_minus, L_plus, L_minus;
};
// G is the flux of eta and L the flux of m: G± = (G ± alpha eta)/2, L± = (L ± alpha m)/2
SplitFlux lf_split(const Flux& f, double eta, double m, double alpha);

// max over the states of |u| + sqrt(eta)
double lf_alpha(const std::vector<double>& eta, const std::vector<double>& m, double eta_floor);

enum class Direction { plus, minus };

struct Reconstruction {
  double value;
  std::array<double, 3> weights;
};

// plus: v = f[i-2..i+2], left-biased value at i+1/2
// minus: v = f[i-1..i+3], right-biased value at i+1/2
Reconstruction weno5_reconstruct(const std::array<double, 5>& v, Direction d);

struct ConservedGrid {
  std::vector<double> x, eta, m;
  double t = 0;
  double delta = 0;
  // fixed inflow states, index 0 adjacent to the domain
  std::array<double, kGhost> eta_left{}, m_left{}, eta_right{}, m_right{};

  int M() const { return static_cast<int>(x.size()); }
  void check_uniform(double tol = 1e-14) const;
  double mass() const;
  double momentum() const;
};

// uniform grid on [a, b]; mirror-exact when a = -b
std::vector<double> uniform_grid(double a, double b, int M);

// ghost cells are filled from the same state function at x outside [a, b]
ConservedGrid make_grid(double a, double b, int M, double t0,
                        const std::function<State(double)>& state);

enum class Kernel { reference, parallel };

struct Workspace {
  std::vector<double> eta, m, Gp, Gm, Lp, Lm, FG, FL;
  void resize(int M);
};

struct RhsResult {
  std::vector<double> deta, dm;
  double alpha = 0;
  // interface fluxes at the left and right domain edges
  Flux flux_left{0, 0}, flux_right{0, 0};
  long clamped = 0;
};

void semidiscrete_rhs(const ConservedGrid& g, double eta_floor, Kernel k, RhsResult& out,
                      Workspace& ws);
RhsResult semidiscrete_rhs(const ConservedGrid& g, double eta_floor, Kernel k = Kernel::reference);

struct StepReport {
  double alpha = 0;
  long clamped = 0;
  // boundary inflow integrated over the step
  double mass_in = 0, momentum_in = 0;
};

class Stepper {
 public:
  Stepper(double eta_floor, Kernel k) : floor_(eta_floor), kernel_(k) {}
  StepReport step(ConservedGrid& g, double h);
  double eta_floor() const { return floor_; }

 private:
  double floor_;
  Kernel kernel_;
  Workspace ws_;
  RhsResult r_;
  std::vector<double> eta0_, m0_;
};

ConservedGrid ssp_rk3_step(const ConservedGrid& g, double h, double eta_floor,
                           Kernel k = Kernel::reference, StepReport* report = nullptr);

// eta(0) by four-point interpolation about the centre
double centerline_eta(const ConservedGrid& g);

struct CenterlineFields {
  double eta0, ux0, etaxx0;
};
// value and derivatives at x = 0 of the cubics through the four central points
CenterlineFields centerline_fields(const ConservedGrid& g, double eta_floor);

struct ShockEstimate {
  double x;
  double uncertainty;
  double jump;
};

// largest |u_{i+1} - u_i| with x_{i+1/2} in [x_lo, x_hi], parabolic sub-cell refinement
ShockEstimate locate_shock(const std::vector<double>& x, const std::vector<double>& u,
                           double threshold, double x_lo = 0.0, double x_hi = INFINITY);
ShockEstimate locate_shock(const ConservedGrid& g, double threshold = 0.05);

struct Snapshot {
  double t = 0;
  std::vector<double> x, eta, u, m;
};
Snapshot snapshot_of(const ConservedGrid& g, double eta_floor);

struct Config {
  Scenario scenario = Scenario::double_riemann;
  ScenarioParams params;
  double x_left = -1, x_right = 1;
  int M = 1024;
  double h = 1e-4;
  double t_end = 1.0;
  std::vector<double> snapshot_times;
  Kernel kernel = Kernel::parallel;
  int series_every = 1;
  double shock_threshold = 0.05;
  // full case: tabulated initial profile instead of the pointwise root solve
  bool tabulated_ic = false;
};

// t runs from 0: collapse for double-riemann, double-stoker and full,
// the initial data for the parabola scenarios
std::function<State(double)> initial_state(const Config& cfg);

struct SeriesRow {
  double t, eta0, xs, ux0, etaxx0;
};

struct Overshoot {
  double amplitude = 0;  // max eta0 - reference
  double t_peak = 0;
  double support = 0;  // last time the deviation exceeds 10% of the amplitude
};

Overshoot overshoot_diagnostics(const std::vector<std::pair<double, double>>& centerline,
                                const std::function<double(double)>& reference,
                                double t_from = 0.0);

struct Result {
  std::vector<Snapshot> snapshots;
  std::vector<SeriesRow> series;
  std::vector<std::pair<double, double>> centerline;
  ConservedGrid final_grid;
  long steps = 0;
  long clamped = 0;
  double min_eta = INFINITY;
  double eta_floor = 0;
  std::optional<Overshoot> overshoot;
};

Result run_weno(const Config& cfg);

}  // namespace airy::weno
