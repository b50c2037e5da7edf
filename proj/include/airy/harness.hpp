#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "airy/asymptotics.hpp"
#include "airy/exact_core.hpp"
#include "airy/scenarios.hpp"
#include "airy/spectral_shockfit.hpp"
#include "airy/weno_fd.hpp"

namespace airy::harness {

using scenarios::Scenario;
using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

// invalid option combination; maps to exit code 2
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Solver { exact, spectral, weno };
enum class Format { csv, json };

std::string_view solver_name(Solver s);
Solver parse_solver(std::string_view text);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// 17 significant digits, nan for missing values; returns the written path
std::filesystem::path write_table(const std::filesystem::path& stem, const Table& t, Format f);
Table read_csv(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);
std::string format_number(double v);
std::string time_label(double t);

struct RunOptions {
  Scenario scenario = Scenario::double_riemann;
  Solver solver = Solver::weno;
  ScenarioParams params;
  int M = 1024;
  int modes = 64;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<double> tau0;
  std::optional<double> tau_end;
  std::optional<double> x_max;
  std::vector<double> times;
  std::filesystem::path out = "run";
  Format format = Format::csv;
  int jobs = 1;
};

struct RunSummary {
  json manifest;
  std::vector<std::filesystem::path> files;
};

// one directory per run: manifest.json, series.csv, snap_<t>.csv
RunSummary execute_run(const RunOptions& opt);

spectral::Config spectral_config(const RunOptions& opt);
weno::Config weno_config(const RunOptions& opt);

// tau at which the short-time shock position reaches x_s(t)
double tau_of_time(const asymptotics::AsymptoticCoefficients& c, double t);
asymptotics::AsymptoticCoefficients coefficients_for(Scenario s, const ScenarioParams& p);

struct CoefficientRow {
  std::string name;
  double value;
  double normalized;
  std::optional<double> reference;  // published decimal, normalized
  std::optional<double> oracle;     // Taylor hierarchy, normalized
};
std::vector<CoefficientRow> coefficient_table(Scenario s, const ScenarioParams& p);

struct ProfileAgreement {
  double t = 0;
  double x_shock = 0;
  double max_deta = 0, max_du = 0;
  int points = 0;
};
// spectral state mapped to x against a WENO grid inside |x| < x_s - 4 delta
ProfileAgreement compare_profiles(const spectral::UnfoldedState& st, const std::vector<double>& xi,
                                  const weno::ConservedGrid& g, double eta_floor);

struct CompareOptions {
  RunOptions base;  // scenario, params, M and dt for the WENO side, modes for the spectral side
  double spectral_dt = 1e-4;
  double t_lo = 0.01, t_hi = 0.04;
};
struct CompareReport {
  Table series;  // t, numerics, theory, relative errors
  json summary;
};
CompareReport compare(const CompareOptions& opt);

struct ScalingOptions {
  int n = 4;
  double lo = 0.05, hi = 1.0;
  double tau_probe = -6.0;
  int modes = 64;
  double dt = 1e-4;
  int jobs = 1;
  std::optional<std::filesystem::path> out;
};
struct ScalingReport {
  Table runs;  // Q, gamma0, F1, normalized F1
  double slope_Q = 0, slope_Q_err = 0;
  double slope_gamma = 0, slope_gamma_err = 0;
  double constant = 0;  // mean normalized F1
  std::vector<std::string> failures;
  json summary;
};
ScalingReport scaling_study(const ScalingOptions& opt);

struct ConvergenceOptions {
  RunOptions base;
  int levels = 4;
  double exclusion = 0.1;  // half width around splice points
};
struct ConvergenceReport {
  Table table;
  double fitted_order = NAN;
  json summary;
};
ConvergenceReport convergence(const ConvergenceOptions& opt);

// smooth-region error of a WENO parabola run against the closed form,
// scaled by Q (eta) and sqrt(Q) (u)
struct SmoothError {
  double eta = 0, u = 0;
  int points = 0;
};
SmoothError parabola_error(const weno::ConservedGrid& g, const ScenarioParams& p, double exclusion,
                           double eta_floor);

int run_cli(int argc, char** argv);

}  // namespace airy::harness
