#include "igeo/calculus.hpp"

#include <cmath>
#include <sstream>

#include "igeo/errors.hpp"

namespace igeo {

namespace {

void require_domain(const Interval& domain, double t) {
  if (!domain.contains(t)) {
    std::ostringstream msg;
    msg << "t = " << t << " outside the curve domain [" << domain.lo << ", " << domain.hi << "]";
    throw DomainError(msg.str());
  }
}

std::vector<double> density_values(const SmoothCurve& c, double t) {
  const Density q = c.eval(t);
  return {q.values().begin(), q.values().end()};
}

// Projects x onto the fiber at q after checking it was already nearly there.
FiberElement finish(const Density& q, std::vector<double> x, FiberKind kind, const char* what) {
  RandomVariable rv(q.space(), std::move(x));
  const double mean = expectation(rv, q);
  if (std::abs(mean) > kCenteringDiagnostic * std::max(1.0, rv.max_abs())) {
    std::ostringstream msg;
    msg << what << " has p-mean " << mean << " before centering";
    throw CenteringError(msg.str());
  }
  return FiberElement(q, rv - mean, kind);
}

}  // namespace

std::vector<double> SmoothCurve::qdot(double t) const {
  require_domain(domain, t);
  if (deriv) return deriv(t);
  return numdiff::derivative([this](double s) { return density_values(*this, s); }, t, domain);
}

std::vector<double> SmoothCurve::qddot(double t) const {
  require_domain(domain, t);
  if (deriv2) return deriv2(t);
  if (deriv) return numdiff::derivative(deriv, t, domain);
  return numdiff::second_derivative([this](double s) { return density_values(*this, s); }, t,
                                    domain);
}

std::vector<double> BundleCurve::wdot(double t) const {
  require_domain(base.domain, t);
  if (fiber_deriv) return fiber_deriv(t);
  return numdiff::derivative(
      [this](double s) {
        const FiberElement w = fiber(s);
        return std::vector<double>(w.values().begin(), w.values().end());
      },
      t, base.domain);
}

FiberElement velocity(const SmoothCurve& c, double t) {
  const Density q = c.eval(t);
  std::vector<double> v = c.qdot(t);
  if (v.size() != q.size()) throw DimensionError("curve derivative has the wrong length");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] /= q[i];
  return finish(q, std::move(v), FiberKind::exponential, "velocity");
}

FiberElement e_cov_deriv(const BundleCurve& bc, double t) {
  const Density q = bc.base.eval(t);
  const FiberElement w = bc.fiber(t);
  require_base(w, q);
  RandomVariable wdot(q.space(), bc.wdot(t));
  return FiberElement(q, wdot - expectation(wdot, q), w.kind());
}

FiberElement m_cov_deriv(const BundleCurve& bc, double t) {
  const Density q = bc.base.eval(t);
  const FiberElement eta = bc.fiber(t);
  require_base(eta, q);
  const FiberElement score = velocity(bc.base, t);
  std::vector<double> x = bc.wdot(t);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += score[i] * eta[i];
  return finish(q, std::move(x), eta.kind(), "mixture covariant derivative");
}

FiberElement riemannian_deriv(const BundleCurve& bc, double t) {
  const FiberElement m = m_cov_deriv(bc, t);
  const FiberElement e = e_cov_deriv(bc, t);
  return FiberElement(m.base(), 0.5 * (m.rv() + e.rv()), m.kind());
}

FiberElement e_acceleration(const SmoothCurve& c, double t) {
  const Density q = c.eval(t);
  const FiberElement score = velocity(c, t);
  const RandomVariable square = score.rv() * score.rv();
  const double mean_square = expectation(square, q);
  std::vector<double> a = c.qddot(t);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] / q[i] - (square[i] - mean_square);
  return finish(q, std::move(a), FiberKind::exponential, "exponential acceleration");
}

FiberElement m_acceleration(const SmoothCurve& c, double t) {
  const Density q = c.eval(t);
  std::vector<double> a = c.qddot(t);
  if (a.size() != q.size()) throw DimensionError("curve derivative has the wrong length");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] /= q[i];
  return finish(q, std::move(a), FiberKind::mixture, "mixture acceleration");
}

}  // namespace igeo
