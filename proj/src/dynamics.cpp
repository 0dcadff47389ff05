#include "igeo/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "igeo/charts.hpp"
#include "igeo/errors.hpp"
#include "igeo/gradients.hpp"
#include "igeo/kernels.hpp"
#include "igeo/transport.hpp"

namespace igeo {

namespace {

using Vec = std::vector<double>;

Vec copy(std::span<const double> s) { return {s.begin(), s.end()}; }

struct Schedule {
  std::size_t steps;
  double h;
  std::size_t record_every;

  bool records(std::size_t k) const { return k % record_every == 0 || k == steps; }
};

Schedule schedule(const StepPlan& plan) {
  if (!(plan.T > 0.0) || !std::isfinite(plan.T)) throw ValidationError("horizon T must be positive");
  if (!(plan.h > 0.0) || !std::isfinite(plan.h)) throw ValidationError("step h must be positive");
  if (plan.record_every == 0) throw ValidationError("record_every must be at least 1");
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(plan.T / plan.h)));
  return {steps, plan.T / static_cast<double>(steps), plan.record_every};
}

template <class Rhs>
void rk4_step(Vec& y, double t, double h, Rhs&& f) {
  const std::size_t n = y.size();
  Vec k1(n), k2(n), k3(n), k4(n), tmp(n);
  f(t, y, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  f(t + 0.5 * h, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  f(t + 0.5 * h, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
  f(t + h, tmp, k4);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(y[i])) throw IntegrationError("integration produced a non-finite state");
  }
}

void subtract_mean(Vec& x, const Density& p) {
  const double mean = kernels::dot3(x, p.values(), p.space().weights());
  for (double& v : x) v -= mean;
}

// State of a flow in the exponential chart at `anchor`: u is the chart
// coordinate of the current density and aux, when present, a mixture element
// at the anchor.
struct ChartState {
  Density anchor;
  Vec u;
  Vec aux;
};

using ChartRhs = std::function<void(const Density& anchor, const Density& q, double t,
                                    const Vec& u, const Vec& aux, Vec& du, Vec& daux)>;
using ChartRecord = std::function<void(double t, const ChartState& s, const Density& q)>;

void integrate_chart(ChartState s, const StepPlan& plan, const ChartRhs& rhs,
                     const ChartRecord& record) {
  const Schedule sch = schedule(plan);
  const std::size_t n = s.u.size();
  const bool has_aux = !s.aux.empty();
  record(0.0, s, exp_inv(s.anchor, FiberElement(s.anchor, RandomVariable(s.anchor.space(), s.u),
                                                FiberKind::exponential)));
  Vec y(s.u);
  y.insert(y.end(), s.aux.begin(), s.aux.end());
  for (std::size_t k = 1; k <= sch.steps; ++k) {
    const double t0 = static_cast<double>(k - 1) * sch.h;
    rk4_step(y, t0, sch.h, [&](double t, const Vec& state, Vec& out) {
      Vec u(state.begin(), state.begin() + static_cast<std::ptrdiff_t>(n));
      Vec aux(state.begin() + static_cast<std::ptrdiff_t>(n), state.end());
      subtract_mean(u, s.anchor);
      const Density q = exp_inv(
          s.anchor, FiberElement(s.anchor, RandomVariable(s.anchor.space(), u),
                                 FiberKind::exponential));
      Vec du(n), daux(aux.size());
      rhs(s.anchor, q, t, u, aux, du, daux);
      std::copy(du.begin(), du.end(), out.begin());
      std::copy(daux.begin(), daux.end(), out.begin() + static_cast<std::ptrdiff_t>(n));
    });
    s.u.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    s.aux.assign(y.begin() + static_cast<std::ptrdiff_t>(n), y.end());
    subtract_mean(s.u, s.anchor);
    if (has_aux) subtract_mean(s.aux, s.anchor);
    Density q = exp_inv(s.anchor, FiberElement(s.anchor, RandomVariable(s.anchor.space(), s.u),
                                               FiberKind::exponential));
    if (sch.records(k)) record(static_cast<double>(k) * sch.h, s, q);
    if (kernels::max_abs(s.u) > kReanchorBound) {
      for (std::size_t i = 0; i < s.aux.size(); ++i) s.aux[i] *= s.anchor[i] / q[i];
      s.anchor = std::move(q);
      std::fill(s.u.begin(), s.u.end(), 0.0);
      if (has_aux) subtract_mean(s.aux, s.anchor);
      y.assign(s.u.begin(), s.u.end());
      y.insert(y.end(), s.aux.begin(), s.aux.end());
    } else {
      std::copy(s.u.begin(), s.u.end(), y.begin());
      std::copy(s.aux.begin(), s.aux.end(), y.begin() + static_cast<std::ptrdiff_t>(n));
    }
  }
}

double mass_residual(const Density& q) {
  return std::abs(kernels::dot(q.values(), q.space().weights()) - 1.0);
}

void push_state(FlowResult& out, double t, const Density& q) {
  out.times.push_back(t);
  out.densities.push_back(q);
  out.monitors["normalization_residual"].push_back(mass_residual(q));
}

// eta = (anchor / q) aux, the mixture element at q represented by aux.
FiberElement mixture_at(const Density& anchor, const Density& q, const Vec& aux) {
  Vec eta(aux.size());
  for (std::size_t i = 0; i < eta.size(); ++i) eta[i] = anchor[i] / q[i] * aux[i];
  RandomVariable rv(q.space(), std::move(eta));
  return FiberElement(q, rv - expectation(rv, q), FiberKind::mixture);
}

Vec values_of(const FiberElement& f) { return copy(f.values()); }

// Centered differences of a uniformly sampled series, one-sided at the ends.
Vec grid_derivative(const Vec& times, const Vec& y) {
  const std::size_t n = y.size();
  Vec d(n, 0.0);
  if (n < 3) return d;
  const double h = times[1] - times[0];
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (y[k + 1] - y[k - 1]) / (2.0 * h);
  d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
  d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
  return d;
}

}  // namespace

Density exp_geodesic(const Density& p, const FiberElement& u, double t) {
  return exp_inv(p, t * u);
}

Density mix_geodesic(const Density& p, const Density& q, double t) {
  require_same_space(p.space(), q.space());
  Vec v(p.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = (1.0 - t) * p[i] + t * q[i];
    if (!(v[i] > Density::kPositivityFloor)) {
      std::ostringstream msg;
      msg << "mixture geodesic leaves the positive cone at t = " << t
          << " (boundary of the feasible interval crossed)";
      throw DomainError(msg.str());
    }
  }
  return Density(p.space(), std::move(v));
}

Interval mix_feasible_interval(const Density& p, const Density& q) {
  require_same_space(p.space(), q.space());
  Interval out{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = q[i] - p[i];
    if (d > 0.0) out.lo = std::max(out.lo, -p[i] / d);
    if (d < 0.0) out.hi = std::min(out.hi, -p[i] / d);
  }
  return out;
}

SmoothCurve exp_geodesic_curve(const Density& p, const FiberElement& u, Interval domain) {
  require_base(u, p);
  SmoothCurve c;
  c.eval = [p, u](double t) { return exp_geodesic(p, u, t); };
  c.deriv = [p, u](double t) {
    const Density q = exp_geodesic(p, u, t);
    const double mean = expectation(u.rv(), q);
    Vec d(q.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = q[i] * (u[i] - mean);
    return d;
  };
  c.deriv2 = [p, u](double t) {
    const Density q = exp_geodesic(p, u, t);
    const double mean = expectation(u.rv(), q);
    const double var = covariance(u.rv(), u.rv(), q);
    Vec d(q.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double c0 = u[i] - mean;
      d[i] = q[i] * (c0 * c0 - var);
    }
    return d;
  };
  c.domain = domain;
  return c;
}

SmoothCurve mix_geodesic_curve(const Density& p, const Density& q, Interval domain) {
  SmoothCurve c;
  c.eval = [p, q](double t) { return mix_geodesic(p, q, t); };
  c.deriv = [p, q](double) {
    Vec d(p.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = q[i] - p[i];
    return d;
  };
  c.deriv2 = [n = p.size()](double) { return Vec(n, 0.0); };
  c.domain = domain;
  return c;
}

SmoothCurve sampled_curve(const FlowResult& flow) {
  if (flow.size() < 3) throw ValidationError("sampled curve needs at least three records");
  const double h = flow.times[1] - flow.times[0];
  for (std::size_t k = 1; k < flow.size(); ++k) {
    if (std::abs(flow.times[k] - flow.times[k - 1] - h) > 1e-9 * h) {
      throw ValidationError("sampled curve needs a uniform record grid");
    }
  }
  auto data = std::make_shared<const FlowResult>(flow);
  auto index = [data, h](double t) {
    const double x = (t - data->times.front()) / h;
    const double k = std::round(x);
    if (std::abs(x - k) > 1e-6 || k < 1.0 || k > static_cast<double>(data->size() - 2)) {
      throw DomainError("sampled curve is only defined at interior record times");
    }
    return static_cast<std::size_t>(k);
  };
  SmoothCurve c;
  c.eval = [data, index](double t) { return data->densities[index(t)]; };
  c.deriv = [data, index, h](double t) {
    const std::size_t k = index(t);
    const Density& a = data->densities[k - 1];
    const Density& b = data->densities[k + 1];
    Vec d(a.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (b[i] - a[i]) / (2.0 * h);
    return d;
  };
  c.deriv2 = [data, index, h](double t) {
    const std::size_t k = index(t);
    const Density& a = data->densities[k - 1];
    const Density& m = data->densities[k];
    const Density& b = data->densities[k + 1];
    Vec d(a.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (b[i] - 2.0 * m[i] + a[i]) / (h * h);
    return d;
  };
  c.domain = {flow.times[1], flow.times[flow.size() - 2]};
  return c;
}

Density entropy_flow_closed(const Density& q0, double t) {
  const double a = std::exp(-t);
  Vec x(q0.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = a * std::log(q0[i]);
  const double shift = kernels::max(x);
  for (double& v : x) v = std::exp(v - shift);
  return renormalize(q0.space(), std::move(x)).density;
}

FlowResult entropy_flow_numeric(const Density& q0, const StepPlan& plan, bool ascent) {
  const double sign = ascent ? 1.0 : -1.0;
  FlowResult out;
  ChartRhs rhs = [sign](const Density& anchor, const Density& q, double, const Vec&, const Vec&,
                        Vec& du, Vec&) {
    const FiberElement grad = grad_entropy(q);
    const FiberElement v(q, sign * grad.rv(), FiberKind::exponential);
    du = values_of(e_transport(q, anchor, v));
  };
  ChartRecord record = [&out](double t, const ChartState&, const Density& q) {
    push_state(out, t, q);
    out.monitors["entropy"].push_back(entropy(q));
  };
  integrate_chart({q0, Vec(q0.size(), 0.0), {}}, plan, rhs, record);
  return out;
}

std::vector<double> sir_velocity(const Density& p, double beta, double gamma) {
  if (p.size() != 3) throw DimensionError("the SIR model lives on three points");
  const auto m = p.space().weights();
  const double S = p[0] * m[0], I = p[1] * m[1], R = p[2] * m[2];
  return {-beta * I, beta * S - gamma, gamma * I / R};
}

std::vector<std::vector<double>> sir_acceleration_matrix(const Density& p, double beta,
                                                         double gamma) {
  if (p.size() != 3) throw DimensionError("the SIR model lives on three points");
  const auto m = p.space().weights();
  const double S = p[0] * m[0], I = p[1] * m[1], R = p[2] * m[2];
  return {{-beta * I, -beta * I, 0.0}, {beta * S, beta * S - gamma, 0.0}, {0.0, gamma * I / R, 0.0}};
}

FlowResult sir_flow(const Density& p0, double beta, double gamma, const StepPlan& plan) {
  if (p0.size() != 3) throw DimensionError("the SIR model lives on three points");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be non-negative");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be positive");
  const Schedule sch = schedule(plan);
  const FiniteSpace& space = p0.space();
  const auto m = space.weights();

  FlowResult out;
  double drift = 0.0;
  double worst = 0.0;
  auto record = [&](double t, const Density& p, double residual) {
    out.times.push_back(t);
    out.densities.push_back(p);
    out.monitors["mass_residual"].push_back(residual);
    out.monitors["mass_drift"].push_back(drift);
  };

  Vec ell(3);
  for (std::size_t i = 0; i < 3; ++i) ell[i] = std::log(p0[i]);
  record(0.0, p0, mass_residual(p0));
  for (std::size_t k = 1; k <= sch.steps; ++k) {
    rk4_step(ell, static_cast<double>(k - 1) * sch.h, sch.h,
             [&](double, const Vec& l, Vec& dl) {
               const double S = std::exp(l[0]) * m[0];
               const double I = std::exp(l[1]) * m[1];
               const double R = std::exp(l[2]) * m[2];
               if (!(R > 0.0)) throw IntegrationError("recovered compartment underflowed");
               dl = {-beta * I, beta * S - gamma, gamma * I / R};
             });
    Vec p(3);
    for (std::size_t i = 0; i < 3; ++i) {
      p[i] = std::exp(ell[i]);
      if (!(p[i] > Density::kPositivityFloor)) {
        throw IntegrationError("SIR compartment underflowed the positivity floor");
      }
    }
    Renormalized r = renormalize(space, std::move(p));
    drift += r.residual;
    worst = std::max(worst, r.residual);
    for (std::size_t i = 0; i < 3; ++i) ell[i] = std::log(r.density[i]);
    if (sch.records(k)) {
      record(static_cast<double>(k) * sch.h, r.density, worst);
      worst = 0.0;
    }
  }
  return out;
}

HamiltonianSpec quadratic_hamiltonian() {
  HamiltonianSpec H;
  H.value = [](const Density& q, const FiberElement& eta, double) {
    return 0.5 * pairing(eta, eta, q);
  };
  H.grad = [](const Density& q, const FiberElement& eta, double) {
    return FiberElement(q, -1.0 * center(0.5 * (eta.rv() * eta.rv()), q).rv(), FiberKind::mixture);
  };
  H.fiber_grad = [](const Density& q, const FiberElement& eta, double) {
    return FiberElement(q, eta.rv(), FiberKind::exponential);
  };
  return H;
}

LagrangianSpec quadratic_lagrangian() {
  LagrangianSpec L;
  L.value = [](const Density& q, const FiberElement& w, double) { return 0.5 * pairing(w, w, q); };
  L.grad = [](const Density& q, const FiberElement& w, double) {
    return grad_quadratic(q, w).grad;
  };
  L.fiber_grad = [](const Density& q, const FiberElement& w, double) {
    return FiberElement(q, w.rv(), FiberKind::mixture);
  };
  L.fiber_grad_inverse = [](const Density& q, const FiberElement& eta, double) {
    return FiberElement(q, eta.rv(), FiberKind::exponential);
  };
  return L;
}

LagrangianSpec cumulant_lagrangian() {
  LagrangianSpec L;
  L.value = [](const Density& q, const FiberElement& w, double) { return cumulant(q, w); };
  L.grad = [](const Density& q, const FiberElement& w, double) {
    return grad_cumulant_lagrangian(q, w).grad;
  };
  L.fiber_grad = [](const Density& q, const FiberElement& w, double) {
    return grad_cumulant_lagrangian(q, w).fiber;
  };
  return L;
}

HamiltonianSpec conjugate_cumulant_hamiltonian() {
  HamiltonianSpec H;
  H.value = [](const Density& q, const FiberElement& eta, double) {
    return conjugate_cumulant(q, eta);
  };
  H.grad = [](const Density& q, const FiberElement& eta, double) {
    return grad_conjugate_cumulant(q, eta).grad;
  };
  H.fiber_grad = [](const Density& q, const FiberElement& eta, double) {
    return grad_conjugate_cumulant(q, eta).fiber;
  };
  return H;
}

namespace {

constexpr double kNewtonTolerance = 1e-12;
constexpr int kNewtonIterations = 100;
constexpr int kNewtonHalvings = 40;
// Largest sup-norm change of w per Newton step.
constexpr double kNewtonTrust = 1.0;

}  // namespace

FiberElement invert_fiber_gradient(const LagrangianSpec& L, const Density& q,
                                   const FiberElement& eta, double t) {
  require_base(eta, q);
  require_kind(eta, FiberKind::mixture);
  if (L.fiber_grad_inverse) return L.fiber_grad_inverse(q, eta, t);
  if (!L.fiber_grad) throw ConfigurationError("Lagrangian has no fiber gradient");

  const std::size_t n = q.size();
  const auto m = q.space().weights();
  const double tol = kNewtonTolerance * std::max(1.0, eta.rv().max_abs());
  auto residual = [&](const Vec& w) {
    const FiberElement g =
        L.fiber_grad(q, FiberElement(q, RandomVariable(q.space(), w), FiberKind::exponential), t);
    Vec r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = g[i] - eta[i];
    return r;
  };
  auto norm = [](const Vec& r) { return kernels::max_abs(r); };

  Vec w(n, 0.0);
  Vec r = residual(w);
  for (int it = 0; it < kNewtonIterations; ++it) {
    if (norm(r) <= tol) return FiberElement(q, RandomVariable(q.space(), w), FiberKind::exponential);
    // Jacobian columns along d_k = e_k - q_k m_k, bordered by the centering
    // constraint sum q m delta = 0 and a multiplier on the constants.
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N + 1, N + 1);
    constexpr double h = 1e-6;
    for (std::size_t k = 0; k < n; ++k) {
      Vec plus(w), minus(w);
      for (std::size_t i = 0; i < n; ++i) {
        const double d = (i == k ? 1.0 : 0.0) - q[k] * m[k];
        plus[i] += h * d;
        minus[i] -= h * d;
      }
      const Vec rp = residual(plus);
      const Vec rm = residual(minus);
      for (std::size_t i = 0; i < n; ++i) {
        A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = (rp[i] - rm[i]) / (2.0 * h);
      }
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(N + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      A(ii, N) = 1.0;
      A(N, ii) = q[i] * m[i];
      b(ii) = -r[i];
    }
    const Eigen::VectorXd step = A.fullPivLu().solve(b);

    double step_size = 0.0;
    for (std::size_t i = 0; i < n; ++i) step_size = std::max(step_size, std::abs(step(static_cast<Eigen::Index>(i))));
    double lambda = step_size > kNewtonTrust ? kNewtonTrust / step_size : 1.0;
    bool accepted = false;
    for (int k = 0; k < kNewtonHalvings && !accepted; ++k, lambda *= 0.5) {
      Vec trial(w);
      for (std::size_t i = 0; i < n; ++i) trial[i] += lambda * step(static_cast<Eigen::Index>(i));
      subtract_mean(trial, q);
      try {
        Vec rt = residual(trial);
        if (norm(rt) < norm(r)) {
          w = std::move(trial);
          r = std::move(rt);
          accepted = true;
        }
      } catch (const DomainError&) {
        // Left the fiber gradient's domain; shrink the step.
      }
    }
    if (!accepted) break;
  }
  if (norm(r) <= tol) return FiberElement(q, RandomVariable(q.space(), w), FiberKind::exponential);
  std::ostringstream msg;
  msg << "fiber-gradient inversion did not converge (residual " << norm(r) << ")";
  throw RegularityError(msg.str());
}

HamiltonianSpec legendre_hamiltonian(const LagrangianSpec& L) {
  HamiltonianSpec H;
  H.value = [L](const Density& q, const FiberElement& eta, double t) {
    const FiberElement w = invert_fiber_gradient(L, q, eta, t);
    return pairing(eta, w, q) - L.value(q, w, t);
  };
  H.grad = [L](const Density& q, const FiberElement& eta, double t) {
    const FiberElement w = invert_fiber_gradient(L, q, eta, t);
    return -1.0 * L.grad(q, w, t);
  };
  H.fiber_grad = [L](const Density& q, const FiberElement& eta, double t) {
    return invert_fiber_gradient(L, q, eta, t);
  };
  H.time_dependent = L.time_dependent;
  return H;
}

FlowResult hamilton_flow(const HamiltonianSpec& H, const Density& q0, const FiberElement& eta0,
                         const StepPlan& plan) {
  if (!H.value || !H.grad || !H.fiber_grad) {
    throw ConfigurationError("Hamiltonian needs value, grad and fiber_grad");
  }
  require_base(eta0, q0);
  require_kind(eta0, FiberKind::mixture);
  FlowResult out;
  ChartRhs rhs = [&H](const Density& anchor, const Density& q, double t, const Vec&,
                      const Vec& aux, Vec& du, Vec& daux) {
    const FiberElement eta = mixture_at(anchor, q, aux);
    du = values_of(e_transport(q, anchor, H.fiber_grad(q, eta, t)));
    daux = values_of(m_transport(q, anchor, -1.0 * H.grad(q, eta, t)));
  };
  ChartRecord record = [&](double t, const ChartState& s, const Density& q) {
    push_state(out, t, q);
    FiberElement eta = mixture_at(s.anchor, q, s.aux);
    out.monitors["energy"].push_back(H.value(q, eta, t));
    out.fibers.push_back(std::move(eta));
  };
  integrate_chart({q0, Vec(q0.size(), 0.0), values_of(eta0)}, plan, rhs, record);

  if (H.time_dependent) {
    const Vec rate = grid_derivative(out.times, out.monitors["energy"]);
    Vec residual(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double t = out.times[k];
      constexpr double dt = 1e-5;
      const double explicit_rate = (H.value(out.densities[k], out.fibers[k], t + dt) -
                                    H.value(out.densities[k], out.fibers[k], t - dt)) /
                                   (2.0 * dt);
      residual[k] = rate[k] - explicit_rate;
    }
    out.monitors["energy_rate_residual"] = std::move(residual);
  }
  return out;
}

FlowResult euler_lagrange_flow(const LagrangianSpec& L, const Density& q0, const FiberElement& w0,
                               const StepPlan& plan) {
  if (!L.value || !L.grad || !L.fiber_grad) {
    throw ConfigurationError("Lagrangian needs value, grad and fiber_grad");
  }
  require_base(w0, q0);
  require_kind(w0, FiberKind::exponential);
  FlowResult out;
  // aux holds the momentum Grad_e L transported to the anchor.
  ChartRhs rhs = [&L](const Density& anchor, const Density& q, double t, const Vec&,
                      const Vec& aux, Vec& du, Vec& daux) {
    const FiberElement eta = mixture_at(anchor, q, aux);
    const FiberElement w = invert_fiber_gradient(L, q, eta, t);
    du = values_of(e_transport(q, anchor, w));
    daux = values_of(m_transport(q, anchor, L.grad(q, w, t)));
  };
  ChartRecord record = [&](double t, const ChartState& s, const Density& q) {
    push_state(out, t, q);
    const FiberElement eta = mixture_at(s.anchor, q, s.aux);
    FiberElement w = invert_fiber_gradient(L, q, eta, t);
    out.monitors["energy"].push_back(pairing(eta, w, q) - L.value(q, w, t));
    out.fibers.push_back(std::move(w));
  };
  const FiberElement momentum = L.fiber_grad(q0, w0, 0.0);
  integrate_chart({q0, Vec(q0.size(), 0.0), values_of(momentum)}, plan, rhs, record);
  return out;
}

}  // namespace igeo
