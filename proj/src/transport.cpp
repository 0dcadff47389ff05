#include "igeo/transport.hpp"

#include <cmath>

#include "igeo/charts.hpp"
#include "igeo/errors.hpp"

namespace igeo {

FiberElement e_transport(const Density& p, const Density& q, const FiberElement& u) {
  require_base(u, p);
  require_kind(u, FiberKind::exponential);
  require_same_space(p.space(), q.space());
  return FiberElement(q, u.rv() - expectation(u.rv(), q), FiberKind::exponential);
}

FiberElement m_transport(const Density& p, const Density& q, const FiberElement& eta) {
  require_base(eta, p);
  require_kind(eta, FiberKind::mixture);
  require_same_space(p.space(), q.space());
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p[i] / q[i] * eta[i];
  return FiberElement(q, RandomVariable(q.space(), std::move(out)), FiberKind::mixture);
}

FiberElement transport(const Density& p, const Density& q, const FiberElement& f) {
  return f.kind() == FiberKind::exponential ? e_transport(p, q, f) : m_transport(p, q, f);
}

double transport_duality_gap(const Density& p, const Density& q, const FiberElement& u,
                             const FiberElement& v) {
  const double at_q = pairing(v, e_transport(p, q, u), q);
  const double at_p = pairing(m_transport(q, p, v), u, p);
  return std::abs(at_q - at_p);
}

FiberElement change_origin(const Density& from, const Density& to, const FiberElement& u) {
  return e_transport(from, to, u) + exp_chart(to, from);
}

BundlePoint::BundlePoint(Density base, std::vector<FiberElement> fibers,
                         std::vector<double> extra)
    : base_(std::move(base)), fibers_(std::move(fibers)), extra_(std::move(extra)) {
  for (const FiberElement& f : fibers_) require_base(f, base_);
  for (double c : extra_) {
    if (!std::isfinite(c)) throw ValidationError("bundle parameters must be finite");
  }
}

BundlePoint BundlePoint::full(Density base, FiberElement eta, FiberElement w,
                              std::vector<double> extra) {
  require_kind(eta, FiberKind::mixture);
  require_kind(w, FiberKind::exponential);
  return BundlePoint(std::move(base), {std::move(eta), std::move(w)}, std::move(extra));
}

bool BundlePoint::is_full() const {
  return fibers_.size() == 2 && fibers_[0].kind() == FiberKind::mixture &&
         fibers_[1].kind() == FiberKind::exponential;
}

BundleCoordinates bundle_chart(const Density& nu, const BundlePoint& point) {
  std::vector<FiberElement> fibers;
  fibers.reserve(point.fibers().size());
  for (const FiberElement& f : point.fibers()) fibers.push_back(transport(point.base(), nu, f));
  return {exp_chart(nu, point.base()), std::move(fibers), point.extra()};
}

BundlePoint bundle_chart_inv(const Density& nu, const BundleCoordinates& coords) {
  Density base = exp_inv(nu, coords.position);
  std::vector<FiberElement> fibers;
  fibers.reserve(coords.fibers.size());
  for (const FiberElement& f : coords.fibers) fibers.push_back(transport(nu, base, f));
  return BundlePoint(std::move(base), std::move(fibers), coords.extra);
}

}  // namespace igeo
