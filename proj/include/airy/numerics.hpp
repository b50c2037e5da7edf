#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace airy {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace numerics {

struct RootOptions {
  double xtol_rel = 4.0 * std::numeric_limits<double>::epsilon();
  double ftol = 0.0;
  int max_iter = 200;
};

struct RootResult {
  double x;
  double f;
  int iterations;
};

// f returns {value, derivative}; [lo, hi] must bracket a sign change.
// Newton steps that leave the bracket or stall fall back to bisection.
RootResult bracketed_newton(const std::function<std::pair<double, double>(double)>& fdf,
                            double lo, double hi, const RootOptions& opt = {});

// plain bisection to full precision
double bisect(const std::function<double(double)>& f, double lo, double hi, int max_iter = 400);

// monotone piecewise cubic (Fritsch-Carlson via boost)
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  double xmin() const { return x0_; }
  double xmax() const { return x1_; }

 private:
  std::function<double(double)> f_;
  double x0_ = 0, x1_ = 0;
};

// barycentric Lagrange interpolation through arbitrary distinct nodes
std::vector<double> barycentric_weights(const std::vector<double>& nodes);
double barycentric_eval(const std::vector<double>& nodes, const std::vector<double>& w,
                        const std::vector<double>& values, double x);

struct LinearFit {
  std::vector<double> coef;
  std::vector<double> std_err;
  double residual_rms = 0;
};

// ordinary least squares y ~ X b with standard errors
LinearFit least_squares(const std::vector<std::vector<double>>& rows, const std::vector<double>& y);

// observed order from errors at successive refinement ratios
double observed_order(double e_coarse, double e_fine, double ratio);

}  // namespace numerics
}  // namespace airy
