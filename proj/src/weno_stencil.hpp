#pragma once

#include <algorithm>
#include <cmath>

namespace airy::weno::detail {

// Jiang-Shu, value at the interface between v2 and v3 from the left
inline double weno5_left(double v0, double v1, double v2, double v3, double v4, double* w = nullptr) {
  const double q0 = (2.0 * v0 - 7.0 * v1 + 11.0 * v2) / 6.0;
  const double q1 = (-v1 + 5.0 * v2 + 2.0 * v3) / 6.0;
  const double q2 = (2.0 * v2 + 5.0 * v3 - v4) / 6.0;

  const double d0 = v0 - 2.0 * v1 + v2, e0 = v0 - 4.0 * v1 + 3.0 * v2;
  const double d1 = v1 - 2.0 * v2 + v3, e1 = v1 - v3;
  const double d2 = v2 - 2.0 * v3 + v4, e2 = 3.0 * v2 - 4.0 * v3 + v4;
  const double b0 = 13.0 / 12.0 * d0 * d0 + 0.25 * e0 * e0;
  const double b1 = 13.0 / 12.0 * d1 * d1 + 0.25 * e1 * e1;
  const double b2 = 13.0 / 12.0 * d2 * d2 + 0.25 * e2 * e2;

  constexpr double eps = 1e-6;
  const double p0 = (eps + b0) * (eps + b0);
  const double p1 = (eps + b1) * (eps + b1);
  const double p2 = (eps + b2) * (eps + b2);
  // d_k / p_k scaled by p0 p1 p2
  const double a0 = 0.1 * p1 * p2;
  const double a1 = 0.6 * p0 * p2;
  const double a2 = 0.3 * p0 * p1;
  const double sum = a0 + a1 + a2;
  if (w) {
    w[0] = a0 / sum;
    w[1] = a1 / sum;
    w[2] = a2 / sum;
  }
  return (a0 * q0 + a1 * q1 + a2 * q2) / sum;
}

struct Guarded {
  double eta, u;
  bool clamped;
};

inline Guarded guard(double eta, double m, double floor) {
  const bool c = !(eta >= floor);
  const double e = c ? floor : eta;
  return {e, m / e, c};
}

}  // namespace airy::weno::detail
