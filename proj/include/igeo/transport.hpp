#pragma once

// Parallel transports between fibers, and chart maps of the statistical
// bundles. U_{p->q} always maps the fiber at p to the fiber at q.

#include <vector>

#include "igeo/measure.hpp"

namespace igeo {

// u - E_q[u], based at q.
FiberElement e_transport(const Density& p, const Density& q, const FiberElement& u);
// (p/q) eta, based at q.
FiberElement m_transport(const Density& p, const Density& q, const FiberElement& eta);
// Transport matching the element's kind.
FiberElement transport(const Density& p, const Density& q, const FiberElement& f);

// |<e_transport(p,q,u), v>_q - <u, m_transport(q,p,v)>_p| for u at p, v at q.
double transport_duality_gap(const Density& p, const Density& q, const FiberElement& u,
                             const FiberElement& v);

// Exponential chart coordinate at `from` rewritten at `to`:
// s_to(e_from(u)) = e_transport(from, to, u) + s_to(from).
FiberElement change_origin(const Density& from, const Density& to, const FiberElement& u);

// A base density with the fibers over it. The full bundle orders its two
// fibers as (mixture, exponential); `extra` carries the Euclidean block of a
// bundle with parameters.
class BundlePoint {
 public:
  BundlePoint(Density base, std::vector<FiberElement> fibers,
              std::vector<double> extra = {});

  static BundlePoint full(Density base, FiberElement eta, FiberElement w,
                          std::vector<double> extra = {});

  const Density& base() const { return base_; }
  const std::vector<FiberElement>& fibers() const { return fibers_; }
  const std::vector<double>& extra() const { return extra_; }
  bool is_full() const;

 private:
  Density base_;
  std::vector<FiberElement> fibers_;
  std::vector<double> extra_;
};

struct BundleCoordinates {
  FiberElement position;  // exp_chart(nu, base)
  std::vector<FiberElement> fibers;  // each transported to nu
  std::vector<double> extra;
};

BundleCoordinates bundle_chart(const Density& nu, const BundlePoint& point);
BundlePoint bundle_chart_inv(const Density& nu, const BundleCoordinates& coords);

}  // namespace igeo
