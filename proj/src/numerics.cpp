#include "airy/numerics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <memory>
#include <cmath>

// boost 1.74 pchip calls unqualified isnan
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

namespace airy::numerics {

RootResult bracketed_newton(const std::function<std::pair<double, double>(double)>& fdf,
                            double lo, double hi, const RootOptions& opt) {
  auto [flo, dlo] = fdf(lo);
  auto [fhi, dhi] = fdf(hi);
  (void)dlo;
  (void)dhi;
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo > 0) == (fhi > 0)) throw NumericalError("root not bracketed");

  const double tol = std::max(opt.xtol_rel, 2.0 * std::numeric_limits<double>::epsilon());
  double xl = lo, xh = hi;
  if (flo > 0) std::swap(xl, xh);
  double x = 0.5 * (lo + hi);
  double dxold = std::abs(hi - lo), dx = dxold;
  auto [f, df] = fdf(x);
  for (int it = 1; it <= opt.max_iter; ++it) {
    bool bisect_step = (((x - xh) * df - f) * ((x - xl) * df - f) > 0.0) ||
                       (std::abs(2.0 * f) > std::abs(dxold * df)) || !std::isfinite(df) || df == 0.0;
    if (bisect_step) {
      dxold = dx;
      dx = 0.5 * (xh - xl);
      x = xl + dx;
    } else {
      dxold = dx;
      dx = f / df;
      x -= dx;
    }
    auto r = fdf(x);
    f = r.first;
    df = r.second;
    if (std::abs(f) <= opt.ftol || f == 0.0) return {x, f, it};
    if (std::abs(dx) <= tol * std::max(std::abs(x), 1e-300)) return {x, f, it};
    if (f < 0)
      xl = x;
    else
      xh = x;
    if (std::abs(xh - xl) <= tol * std::abs(x)) return {x, f, it};
  }
  throw NumericalError("bracketed Newton did not converge");
}

double bisect(const std::function<double(double)>& f, double lo, double hi, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if ((flo > 0) == (fhi > 0) && flo != 0 && fhi != 0) throw NumericalError("root not bracketed");
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  for (int i = 0; i < max_iter; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y) {
  if (x.size() < 4 || x.size() != y.size()) throw DomainError("pchip needs >= 4 matching samples");
  x0_ = x.front();
  x1_ = x.back();
  auto p = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(x), std::move(y));
  f_ = [p](double t) { return (*p)(t); };
}

double Pchip::operator()(double x) const {
  if (!f_) throw DomainError("empty interpolant");
  return f_(std::clamp(x, x0_, x1_));
}

std::vector<double> barycentric_weights(const std::vector<double>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> w(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) w[j] *= (nodes[j] - nodes[k]);
    w[j] = 1.0 / w[j];
  }
  return w;
}

double barycentric_eval(const std::vector<double>& nodes, const std::vector<double>& w,
                        const std::vector<double>& values, double x) {
  double num = 0, den = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    double d = x - nodes[j];
    if (d == 0.0) return values[j];
    double c = w[j] / d;
    num += c * values[j];
    den += c;
  }
  return num / den;
}

LinearFit least_squares(const std::vector<std::vector<double>>& rows, const std::vector<double>& y) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw DomainError("empty regression");
  const Eigen::Index p = static_cast<Eigen::Index>(rows[0].size());
  if (n <= p) throw DomainError("regression needs more rows than unknowns");
  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd Y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) X(i, j) = rows[i][j];
    Y(i) = y[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  Eigen::VectorXd b = qr.solve(Y);
  Eigen::VectorXd res = Y - X * b;
  double s2 = res.squaredNorm() / static_cast<double>(n - p);
  Eigen::MatrixXd cov = s2 * (X.transpose() * X).inverse();
  LinearFit out;
  for (Eigen::Index j = 0; j < p; ++j) {
    out.coef.push_back(b(j));
    out.std_err.push_back(std::sqrt(std::max(cov(j, j), 0.0)));
  }
  out.residual_rms = std::sqrt(res.squaredNorm() / static_cast<double>(n));
  return out;
}

double observed_order(double e_coarse, double e_fine, double ratio) {
  return std::log(e_coarse / e_fine) / std::log(ratio);
}

}  // namespace airy::numerics
