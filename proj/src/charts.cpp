#include "igeo/charts.hpp"

#include <cmath>
#include <string>

#include "igeo/errors.hpp"
#include "igeo/kernels.hpp"

namespace igeo {

namespace {

std::vector<double> raw(std::span<const double> s) { return {s.begin(), s.end()}; }

// Density ratio q_i / p_i.
std::vector<double> ratio(const Density& q, const Density& p) {
  require_same_space(p.space(), q.space());
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = q[i] / p[i];
  return out;
}

void require_unit(const RandomVariable& f, const char* what) {
  const double norm2 = l2_inner(f, f);
  if (std::abs(norm2 - 1.0) > kUnitNormTolerance) {
    throw ValidationError(std::string(what) + " is not on the L2(m) unit sphere");
  }
}

}  // namespace

std::string_view to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::flat: return "flat";
    case GeometryKind::mixture: return "mixture";
    case GeometryKind::exponential: return "exponential";
  }
  return "unknown";
}

GeometryKind parse_geometry(std::string_view name) {
  if (name == "flat") return GeometryKind::flat;
  if (name == "mixture") return GeometryKind::mixture;
  if (name == "exponential") return GeometryKind::exponential;
  throw ConfigurationError("unknown geometry kind '" + std::string(name) + "'");
}

FiberElement mix_chart(const Density& p, const Density& q) {
  std::vector<double> r = ratio(q, p);
  for (double& v : r) v -= 1.0;
  return FiberElement(p, RandomVariable(p.space(), std::move(r)), FiberKind::mixture);
}

Density mix_inv(const Density& p, const FiberElement& eta) {
  require_base(eta, p);
  require_kind(eta, FiberKind::mixture);
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(eta[i] > -1.0)) throw DomainError("mixture coordinate has an entry <= -1");
    q[i] = (1.0 + eta[i]) * p[i];
    if (!(q[i] > Density::kPositivityFloor)) {
      throw DomainError("mixture inverse falls below the positivity floor");
    }
  }
  return Density(p.space(), std::move(q));
}

FiberElement exp_chart(const Density& p, const Density& q) {
  std::vector<double> r = ratio(q, p);
  for (double& v : r) v = std::log(v);
  return center(RandomVariable(p.space(), std::move(r)), p, FiberKind::exponential);
}

Density exp_inv(const Density& p, const FiberElement& u) {
  require_base(u, p);
  require_kind(u, FiberKind::exponential);
  const double shift = kernels::max(u.values());
  const double z = kernels::shifted_exp_dot(u.values(), shift, p.values(), p.space().weights());
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = std::exp(u[i] - shift) * p[i] / z;
  for (double v : q) {
    if (!(v > Density::kPositivityFloor)) {
      throw DomainError("exponential inverse underflows the positivity floor");
    }
  }
  return Density(p.space(), std::move(q));
}

RandomVariable flat_chart(const Density& p, const Density& q) {
  return q.as_random_variable() - p.as_random_variable();
}

Density flat_inv(const Density& p, const RandomVariable& u) {
  require_same_space(p.space(), u.space());
  const double mass = integral(u);
  if (std::abs(mass) > Density::kNormTolerance * std::max(1.0, u.max_abs())) {
    throw ValidationError("flat coordinate does not integrate to zero");
  }
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = p[i] + u[i];
    if (!(q[i] > Density::kPositivityFloor)) {
      throw DomainError("flat inverse leaves the positive cone");
    }
  }
  return Density(p.space(), std::move(q));
}

RandomVariable chart(GeometryKind kind, const Density& p, const Density& q) {
  switch (kind) {
    case GeometryKind::flat: return flat_chart(p, q);
    case GeometryKind::mixture: return mix_chart(p, q).rv();
    case GeometryKind::exponential: return exp_chart(p, q).rv();
  }
  throw ConfigurationError("unknown geometry kind");
}

Density chart_inv(GeometryKind kind, const Density& p, const RandomVariable& u) {
  switch (kind) {
    case GeometryKind::flat: return flat_inv(p, u);
    case GeometryKind::mixture: return mix_inv(p, FiberElement(p, u, FiberKind::mixture));
    case GeometryKind::exponential:
      return exp_inv(p, FiberElement(p, u, FiberKind::exponential));
  }
  throw ConfigurationError("unknown geometry kind");
}

double moment(const Density& p, const FiberElement& u) { return std::exp(cumulant(p, u)); }

double cumulant(const Density& p, const FiberElement& u) {
  require_base(u, p);
  const double shift = kernels::max(u.values());
  return shift + std::log(kernels::shifted_exp_dot(u.values(), shift, p.values(),
                                                   p.space().weights()));
}

double cumulant_d1(const Density& p, const FiberElement& u, const FiberElement& h) {
  require_base(h, p);
  return expectation(h.rv(), exp_inv(p, u));
}

double cumulant_d2(const Density& p, const FiberElement& u, const FiberElement& h1,
                   const FiberElement& h2) {
  require_base(h1, p);
  require_base(h2, p);
  // Covariance is shift invariant, so transporting h to e_p(u) changes nothing.
  return covariance(h1.rv(), h2.rv(), exp_inv(p, u));
}

double cumulant_d3(const Density& p, const FiberElement& u, const FiberElement& h1,
                   const FiberElement& h2, const FiberElement& h3) {
  require_base(h1, p);
  require_base(h2, p);
  require_base(h3, p);
  return third_covariance(h1.rv(), h2.rv(), h3.rv(), exp_inv(p, u));
}

double kl(const Density& p, const Density& q) {
  require_same_space(p.space(), q.space());
  std::vector<double> log_ratio(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) log_ratio[i] = std::log(p[i] / q[i]);
  return kernels::dot3(log_ratio, p.values(), p.space().weights());
}

double entropy(const Density& q) {
  return -kernels::transform_dot(q.values(), q.space().weights(),
                                 [](double x) { return x * std::log(x); });
}

PythagorasSides kl_pythagoras(const Density& p, const Density& q, const Density& r) {
  const FiberElement u = exp_chart(p, q);
  const FiberElement v = mix_chart(p, r);
  return {kl(r, q) + pairing(v, u, p), kl(r, p) + kl(p, q)};
}

Displacement displacement_expr(GeometryKind kind, const Density& sigma, const RandomVariable& u,
                               const RandomVariable& v) {
  require_same_space(sigma.space(), u.space());
  require_same_space(sigma.space(), v.space());
  switch (kind) {
    case GeometryKind::flat: return {flat_inv(sigma, u), v - u};
    case GeometryKind::mixture: {
      Density base = mix_inv(sigma, FiberElement(sigma, u, FiberKind::mixture));
      mix_inv(sigma, FiberElement(sigma, v, FiberKind::mixture));
      return {std::move(base), (v - u) / (u + 1.0)};
    }
    case GeometryKind::exponential: {
      Density base = exp_inv(sigma, FiberElement(sigma, u, FiberKind::exponential));
      FiberElement(sigma, v, FiberKind::exponential);
      const RandomVariable d = v - u;
      const double mean = expectation(d, base);
      return {std::move(base), d - mean};
    }
  }
  throw ConfigurationError("unknown geometry kind");
}

RandomVariable sphere_chart(const RandomVariable& alpha, const RandomVariable& beta) {
  require_same_space(alpha.space(), beta.space());
  require_unit(alpha, "sphere chart origin");
  require_unit(beta, "sphere chart argument");
  const double c = l2_inner(alpha, beta);
  if (std::abs(1.0 + c) <= kPoleThreshold) throw PoleError("point is the antipode of the chart origin");
  return (2.0 / (1.0 + c)) * (beta - c * alpha);
}

RandomVariable sphere_inv(const RandomVariable& alpha, const RandomVariable& u) {
  require_same_space(alpha.space(), u.space());
  require_unit(alpha, "sphere chart origin");
  if (std::abs(l2_inner(u, alpha)) > kUnitNormTolerance * std::max(1.0, u.max_abs())) {
    throw ValidationError("sphere chart coordinate is not orthogonal to the origin");
  }
  const double quarter = 0.25 * l2_inner(u, u);
  return (1.0 / (1.0 + quarter)) * (u + (1.0 - quarter) * alpha);
}

RandomVariable sqrt_chart(const Density& p, const Density& q) {
  require_same_space(p.space(), q.space());
  const auto root = [](const Density& d) {
    return d.as_random_variable().map([](double x) { return std::sqrt(x); });
  };
  return sphere_chart(root(p), root(q));
}

Density sqrt_inv(const Density& p, const RandomVariable& u) {
  const RandomVariable alpha = p.as_random_variable().map([](double x) { return std::sqrt(x); });
  const RandomVariable beta = sphere_inv(alpha, u);
  std::vector<double> q = raw(beta.values());
  for (double& v : q) {
    v *= v;
    if (!(v > Density::kPositivityFloor)) {
      throw DomainError("square-root inverse vanishes at a sample point");
    }
  }
  return Density(p.space(), std::move(q));
}

}  // namespace igeo
