#pragma once

// Geodesics, entropy gradient flows, the SIR system and Euler-Lagrange /
// Hamilton flows on the statistical bundles.
//
// Every integrator works in the exponential chart at an anchor density, so
// positivity holds by construction. The anchor moves to the current density
// whenever a chart coordinate exceeds kReanchorBound in absolute value.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "igeo/calculus.hpp"
#include "igeo/measure.hpp"

namespace igeo {

inline constexpr double kReanchorBound = 30.0;

struct FlowResult {
  std::vector<double> times;
  std::vector<Density> densities;
  std::vector<FiberElement> fibers;
  std::map<std::string, std::vector<double>> monitors;

  std::size_t size() const { return times.size(); }
};

struct StepPlan {
  double T;
  double h;
  // Record every k-th step; the final step is always recorded.
  std::size_t record_every = 1;
};

// e_p(t u)
Density exp_geodesic(const Density& p, const FiberElement& u, double t);
// (1 - t) p + t q
Density mix_geodesic(const Density& p, const Density& q, double t);
// Open interval of t where (1 - t) p + t q stays positive.
Interval mix_feasible_interval(const Density& p, const Density& q);

// Curves carrying their analytic first and second derivatives.
SmoothCurve exp_geodesic_curve(const Density& p, const FiberElement& u, Interval domain);
SmoothCurve mix_geodesic_curve(const Density& p, const Density& q, Interval domain);
// Curve through recorded flow states; derivatives are central differences on
// the record grid, which must be uniform. Defined at interior grid times only.
SmoothCurve sampled_curve(const FlowResult& flow);

// q0^{e^{-t}} normalized.
Density entropy_flow_closed(const Density& q0, double t);
// Velocity equals +Grad H (ascent) or -Grad H (descent).
FlowResult entropy_flow_numeric(const Density& q0, const StepPlan& plan, bool ascent);

// Score equations of the SIR model on three points, with P_i = p_i m_i the
// probability mass of compartment i:
//   S: -beta P_I,  I: beta P_S - gamma,  R: gamma P_I / P_R.
std::vector<double> sir_velocity(const Density& p, double beta, double gamma);
// Matrix A with qddot/q = A * velocity.
std::vector<std::vector<double>> sir_acceleration_matrix(const Density& p, double beta,
                                                         double gamma);
FlowResult sir_flow(const Density& p0, double beta, double gamma, const StepPlan& plan);

struct HamiltonianSpec {
  using Value = std::function<double(const Density&, const FiberElement&, double)>;
  using Fiber = std::function<FiberElement(const Density&, const FiberElement&, double)>;
  Value value;
  Fiber grad;        // mixture at q
  Fiber fiber_grad;  // Grad_m H, exponential at q
  bool time_dependent = false;
};

struct LagrangianSpec {
  using Value = std::function<double(const Density&, const FiberElement&, double)>;
  using Fiber = std::function<FiberElement(const Density&, const FiberElement&, double)>;
  Value value;
  Fiber grad;        // mixture at q
  Fiber fiber_grad;  // Grad_e L, mixture at q
  // Inverse of fiber_grad in the fiber; damped Newton is used when empty.
  Fiber fiber_grad_inverse;
  bool time_dependent = false;
};

HamiltonianSpec quadratic_hamiltonian();
LagrangianSpec quadratic_lagrangian();
LagrangianSpec cumulant_lagrangian();
HamiltonianSpec conjugate_cumulant_hamiltonian();

// w in the exponential fiber at q with Grad_e L(q, w, t) = eta.
FiberElement invert_fiber_gradient(const LagrangianSpec& L, const Density& q,
                                   const FiberElement& eta, double t);
// H(q, eta, t) = <eta, w*>_q - L(q, w*, t) with w* the inverse fiber gradient.
HamiltonianSpec legendre_hamiltonian(const LagrangianSpec& L);

// mD eta = -Grad H, velocity = Grad_m H. Fibers hold eta; monitor "energy"
// holds H, or for time-dependent H "energy_rate_residual" holds
// dH/dt - dH/dt|_explicit on the record grid.
FlowResult hamilton_flow(const HamiltonianSpec& H, const Density& q0, const FiberElement& eta0,
                         const StepPlan& plan);
// mD Grad_e L = Grad L with w the velocity. Fibers hold w; monitor "energy"
// holds <Grad_e L, w> - L.
FlowResult euler_lagrange_flow(const LagrangianSpec& L, const Density& q0,
                               const FiberElement& w0, const StepPlan& plan);

}  // namespace igeo
