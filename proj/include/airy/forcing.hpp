#pragma once

#include <cmath>

// Shock boundary algebra in unfolded variables. Templated so the same
// expressions serve the solver (double) and exact Taylor coefficients (autodiff).

namespace airy::forcing {

template <class T>
T simple_wave_V(const T& N, double Q) {
  using std::sqrt;
  return 2.0 * sqrt(N) - 2.0 * std::sqrt(Q);
}

// u(1) demanded by the jump condition, branch eta > N
template <class T, class U>
auto psi(const T& N, const U& eta, double Q) {
  using std::sqrt;
  return simple_wave_V(N, Q) + (eta - N) * sqrt((N + eta) / (2.0 * N * eta));
}

// (N - eta) / (N V - eta u); phi = this - 1/s0
template <class T, class U, class W>
auto shock_slowness(const T& N, const U& eta, const W& u, double Q) {
  return (N - eta) / (N * simple_wave_V(N, Q) - eta * u);
}

// right-half double-Stoker elevation, x > 0
template <class X, class Tm>
auto stoker_N(const X& x, const Tm& t, double Q, double g0) {
  const double xd = 0.25 * std::sqrt(3.0 * Q / g0);
  const double td = 0.5 * std::sqrt(3.0 / g0);
  auto c = (x - xd) / (t + td) + 2.0 * std::sqrt(Q);
  return c * c / 9.0;
}

}  // namespace airy::forcing
