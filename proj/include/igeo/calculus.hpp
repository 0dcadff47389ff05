#pragma once

// Velocities, covariant derivatives and accelerations of curves of densities
// and of curves in the statistical bundles.

#include <functional>
#include <vector>

#include "igeo/measure.hpp"
#include "igeo/numdiff.hpp"

namespace igeo {

// A curve of densities. The derivative evaluators are optional; when empty
// they are replaced by finite differences of `eval`.
struct SmoothCurve {
  std::function<Density(double)> eval;
  std::function<std::vector<double>(double)> deriv;
  std::function<std::vector<double>(double)> deriv2;
  Interval domain{0.0, 1.0};

  std::vector<double> qdot(double t) const;
  std::vector<double> qddot(double t) const;
};

// A fiber element moving along a base curve; `fiber_deriv` is optional.
struct BundleCurve {
  SmoothCurve base;
  std::function<FiberElement(double)> fiber;
  std::function<std::vector<double>(double)> fiber_deriv;

  std::vector<double> wdot(double t) const;
};

// Assembled quantities whose p-mean exceeds this, relative to max(1, max|x|),
// raise CenteringError instead of being projected silently.
inline constexpr double kCenteringDiagnostic = 1e-6;

// qdot / q, the Fisher score.
FiberElement velocity(const SmoothCurve& c, double t);
// wdot - E_q[wdot]
FiberElement e_cov_deriv(const BundleCurve& bc, double t);
// velocity * eta + etadot
FiberElement m_cov_deriv(const BundleCurve& bc, double t);
// Mean of the two covariant derivatives, tagged with the fiber's own kind.
FiberElement riemannian_deriv(const BundleCurve& bc, double t);
// qddot / q - (velocity^2 - E_q[velocity^2])
FiberElement e_acceleration(const SmoothCurve& c, double t);
// qddot / q
FiberElement m_acceleration(const SmoothCurve& c, double t);

}  // namespace igeo
