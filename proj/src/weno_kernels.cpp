#include <algorithm>
#include <cmath>

#include "airy/weno_fd.hpp"
#include "weno_stencil.hpp"

namespace airy::weno {

namespace {

void fill_extended(const ConservedGrid& g, Workspace& ws) {
  const int M = g.M();
  ws.resize(M);
  for (int k = 0; k < kGhost; ++k) {
    ws.eta[kGhost - 1 - k] = g.eta_left[k];
    ws.m[kGhost - 1 - k] = g.m_left[k];
    ws.eta[M + kGhost + k] = g.eta_right[k];
    ws.m[M + kGhost + k] = g.m_right[k];
  }
  std::copy(g.eta.begin(), g.eta.end(), ws.eta.begin() + kGhost);
  std::copy(g.m.begin(), g.m.end(), ws.m.begin() + kGhost);
}

inline void split_at(Workspace& ws, int k, double floor, double alpha) {
  const auto s = detail::guard(ws.eta[k], ws.m[k], floor);
  const double G = ws.m[k];
  const double L = ws.m[k] * s.u + 0.5 * s.eta * s.eta;
  ws.Gp[k] = 0.5 * (G + alpha * ws.eta[k]);
  ws.Gm[k] = 0.5 * (G - alpha * ws.eta[k]);
  ws.Lp[k] = 0.5 * (L + alpha * ws.m[k]);
  ws.Lm[k] = 0.5 * (L - alpha * ws.m[k]);
}

inline void interface_at(Workspace& ws, int j) {
  const double* gp = ws.Gp.data();
  const double* gm = ws.Gm.data();
  const double* lp = ws.Lp.data();
  const double* lm = ws.Lm.data();
  ws.FG[j - 2] = detail::weno5_left(gp[j - 2], gp[j - 1], gp[j], gp[j + 1], gp[j + 2]) +
                 detail::weno5_left(gm[j + 3], gm[j + 2], gm[j + 1], gm[j], gm[j - 1]);
  ws.FL[j - 2] = detail::weno5_left(lp[j - 2], lp[j - 1], lp[j], lp[j + 1], lp[j + 2]) +
                 detail::weno5_left(lm[j + 3], lm[j + 2], lm[j + 1], lm[j], lm[j - 1]);
}

inline double speed_at(const Workspace& ws, int k, double floor) {
  const auto s = detail::guard(ws.eta[k], ws.m[k], floor);
  return std::abs(s.u) + std::sqrt(s.eta);
}

void finish(const ConservedGrid& g, const Workspace& ws, RhsResult& out) {
  const int M = g.M();
  out.flux_left = {ws.FG[0], ws.FL[0]};
  out.flux_right = {ws.FG[M], ws.FL[M]};
}

}  // namespace

void Workspace::resize(int M) {
  const std::size_t n = M + 2 * kGhost;
  for (auto* v : {&eta, &m, &Gp, &Gm, &Lp, &Lm}) v->resize(n);
  FG.resize(M + 1);
  FL.resize(M + 1);
}

static void rhs_reference(const ConservedGrid& g, double floor, RhsResult& out, Workspace& ws) {
  fill_extended(g, ws);
  const int M = g.M();
  const int n = M + 2 * kGhost;
  double alpha = 0;
  long clamped = 0;
  for (int k = 0; k < n; ++k) alpha = std::max(alpha, speed_at(ws, k, floor));
  for (int i = 0; i < M; ++i) clamped += !(g.eta[i] >= floor);
  for (int k = 0; k < n; ++k) split_at(ws, k, floor, alpha);
  for (int j = 2; j <= M + 2; ++j) interface_at(ws, j);
  out.deta.resize(M);
  out.dm.resize(M);
  const double inv = 1.0 / g.delta;
  for (int i = 0; i < M; ++i) {
    out.deta[i] = -(ws.FG[i + 1] - ws.FG[i]) * inv;
    out.dm[i] = -(ws.FL[i + 1] - ws.FL[i]) * inv;
  }
  out.alpha = alpha;
  out.clamped = clamped;
  finish(g, ws, out);
}

static void rhs_parallel(const ConservedGrid& g, double floor, RhsResult& out, Workspace& ws) {
  fill_extended(g, ws);
  const int M = g.M();
  const int n = M + 2 * kGhost;
  out.deta.resize(M);
  out.dm.resize(M);
  const double inv = 1.0 / g.delta;
  double alpha = 0;
  long clamped = 0;
#pragma omp parallel
  {
#pragma omp for schedule(static) reduction(max : alpha)
    for (int k = 0; k < n; ++k) alpha = std::max(alpha, speed_at(ws, k, floor));
#pragma omp for schedule(static) reduction(+ : clamped)
    for (int i = 0; i < M; ++i) clamped += !(g.eta[i] >= floor);
#pragma omp for schedule(static)
    for (int k = 0; k < n; ++k) split_at(ws, k, floor, alpha);
#pragma omp for schedule(static)
    for (int j = 2; j <= M + 2; ++j) interface_at(ws, j);
#pragma omp for schedule(static)
    for (int i = 0; i < M; ++i) {
      out.deta[i] = -(ws.FG[i + 1] - ws.FG[i]) * inv;
      out.dm[i] = -(ws.FL[i + 1] - ws.FL[i]) * inv;
    }
  }
  out.alpha = alpha;
  out.clamped = clamped;
  finish(g, ws, out);
}

void semidiscrete_rhs(const ConservedGrid& g, double eta_floor, Kernel k, RhsResult& out,
                      Workspace& ws) {
  if (k == Kernel::parallel)
    rhs_parallel(g, eta_floor, out, ws);
  else
    rhs_reference(g, eta_floor, out, ws);
}

}  // namespace airy::weno
