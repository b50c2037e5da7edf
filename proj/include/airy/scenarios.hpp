#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "airy/exact_core.hpp"
#include "airy/numerics.hpp"
#include "airy/shock_algebra.hpp"

namespace airy::scenarios {

enum class Scenario { dry_parabola, wet_parabola, double_riemann, double_stoker, full };

std::string_view name(Scenario s);
Scenario parse(std::string_view text);

using shock::State;

struct NV {
  double N, V;
};

State truncated_parabola_ic(double x, const ScenarioParams& p);

NV double_stoker_fields(double x, double t, double Q, double g0);
double stoker_hinge(double Q, double g0);       // x_d
double stoker_time_offset(double g0);           // t_d
double stoker_front(double t, double Q, double g0);  // x_Q

// collision of two uniform streams; eta0 = Q/4, u = -sgn(x) sqrt(Q)
State double_riemann_ic(double x, double Q);

// cusp profile at t_c from the implicit shoulder solve
State full_ic(double x, const ScenarioParams& p);

// tabulated N0 on a grid clustered at the cusp, monotone cubic in s = x^{1/3}
class FullProfileTable {
 public:
  explicit FullProfileTable(const ScenarioParams& p, int n = 400);
  State operator()(double x) const;

 private:
  ScenarioParams p_;
  double x_min_, x_max_;
  numerics::Pchip table_;
};

}  // namespace airy::scenarios
