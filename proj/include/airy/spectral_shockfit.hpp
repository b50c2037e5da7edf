#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "airy/asymptotics.hpp"
#include "airy/exact_core.hpp"
#include "airy/scenarios.hpp"

namespace airy::spectral {

using scenarios::Scenario;

std::vector<double> glc_grid(int M);
Eigen::MatrixXd lagrange_diff_matrix(const std::vector<double>& points);

enum class Scheme { euler, rk4 };
// outer elevation model for the full case at the shock
enum class FullForcing { expansion, exact };

struct Config {
  Scenario scenario = Scenario::double_stoker;
  ScenarioParams params;
  int M = 64;
  double h = 1e-4;
  double tau0 = std::log(1e-8);
  double tau_end = -6.0;
  Scheme scheme = Scheme::rk4;
  double cfl = 1.0;
  int record_every = 100;
  FullForcing full_forcing = FullForcing::expansion;
  std::vector<double> snapshot_taus;
};

struct BoundaryForcing {
  double N, V, phi, psi;
};

struct UnfoldedState {
  double tau = 0, t = 0;
  Eigen::VectorXd r, s;
  int M() const { return static_cast<int>(r.size()); }
};

struct Rhs {
  Eigen::VectorXd dr, ds;
  double dt;
};

struct BcReport {
  int iterations = 0;
  double residual = 0;
  std::vector<double> history;
};

struct Centerline {
  double eta0, ux0, etaxx0;
};

class ShockFitSolver {
 public:
  explicit ShockFitSolver(const Config& cfg);

  const Config& config() const { return cfg_; }
  const std::vector<double>& xi() const { return xi_; }
  const Eigen::MatrixXd& D() const { return D_; }
  double Qstar() const { return Qs_; }
  double s0() const { return s0_; }

  UnfoldedState initial_state() const;
  BoundaryForcing boundary_forcing(double tau, double t, double eta1, double u1) const;
  Rhs rhs(const UnfoldedState& st) const;
  double max_wave_speed(const UnfoldedState& st) const;
  double step_limit(const UnfoldedState& st) const;
  UnfoldedState advance(const UnfoldedState& st, double h, Scheme scheme, BcReport* report = nullptr) const;
  UnfoldedState apply_bcs(UnfoldedState st, double s_guess, BcReport* report = nullptr) const;
  double bc_residual(const UnfoldedState& st) const;
  Centerline centerline(const UnfoldedState& st) const;

 private:
  Config cfg_;
  std::vector<double> xi_;
  Eigen::MatrixXd D_;
  Eigen::RowVectorXd D2row0_;
  double Qs_, s0_, K_;
};

struct TrajectoryRecord {
  double tau, t, xs, eta0, ux0, etaxx0;
};

struct Trajectory {
  double Qstar = 0, s0 = 0;
  std::vector<double> xi;
  std::vector<TrajectoryRecord> records;
  std::vector<UnfoldedState> snapshots;
  UnfoldedState final_state;
  double max_bc_residual = 0;
  double min_eta = INFINITY;
  long steps = 0;
};

Trajectory run_shockfit(const Config& cfg);

FieldSnapshot unfold_to_physical(const UnfoldedState& st, const std::vector<double>& xi);

// F'(0) estimate from eta~(0, tau) ~ F1 (sqrt(Q*)/s0)^{2/3} e^{2 tau/3}
double extract_F1(const Trajectory& tr, double tau_probe);

// max relative deviation of eta~(0,tau) e^{-k tau} from its window mean
double centerline_wobble(const Trajectory& tr, double tau_a, double tau_b, double k);

}  // namespace airy::spectral
