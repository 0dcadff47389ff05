#include "igeo/audit.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "igeo/calculus.hpp"
#include "igeo/charts.hpp"
#include "igeo/dynamics.hpp"
#include "igeo/errors.hpp"
#include "igeo/gradients.hpp"
#include "igeo/orlicz.hpp"
#include "igeo/random.hpp"
#include "igeo/transport.hpp"

namespace igeo::audit {

namespace {

using random::Engine;

double linf(std::span<const double> a, std::span<const double> b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

double linf(const RandomVariable& a, const RandomVariable& b) { return linf(a.values(), b.values()); }
double linf(const Density& a, const Density& b) { return linf(a.values(), b.values()); }

Check at_most(std::string name, double value, double bound, std::string note = {}) {
  return {std::move(name), value <= bound, value, bound, std::move(note)};
}

Check timing(double seconds, double bound) {
  Check c{"runtime_seconds", seconds <= bound, seconds, bound, {}};
  c.timing = true;
  return c;
}

Check at_least(std::string name, double value, double bound, std::string note = {}) {
  return {std::move(name), value >= bound, value, bound, std::move(note)};
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// 1 ----------------------------------------------------------------------

void chart_roundtrips(Engine& rng, std::vector<Check>& out) {
  Stopwatch clock;
  double mix = 0.0, expo = 0.0, flat = 0.0;
  for (std::size_t n : {2u, 3u, 5u, 10u, 50u}) {
    const FiniteSpace space = random::space(rng, n);
    for (int k = 0; k < 200; ++k) {
      const Density p = random::density(rng, space);
      const Density q = random::density(rng, space);
      const Density r = random::density(rng, space);

      mix = std::max(mix, linf(mix_inv(p, mix_chart(p, q)), q));
      const FiberElement eta = mix_chart(p, r);
      mix = std::max(mix, linf(mix_chart(p, mix_inv(p, eta)).rv(), eta.rv()));

      expo = std::max(expo, linf(exp_inv(p, exp_chart(p, q)), q));
      const FiberElement u = random::fiber(rng, p, FiberKind::exponential);
      expo = std::max(expo, linf(exp_chart(p, exp_inv(p, u)).rv(), u.rv()));

      flat = std::max(flat, linf(flat_inv(p, flat_chart(p, q)), q));
      const RandomVariable d = flat_chart(p, r);
      flat = std::max(flat, linf(flat_chart(p, flat_inv(p, d)), d));
    }
  }
  const double elapsed = clock.seconds();
  out.push_back(at_most("mixture_roundtrip_linf", mix, 1e-12));
  out.push_back(at_most("exponential_roundtrip_linf", expo, 1e-12));
  out.push_back(at_most("flat_roundtrip_linf", flat, 1e-12));
  out.push_back(timing(elapsed, 1.0));
}

// 2 ----------------------------------------------------------------------

void affine_axioms(Engine& rng, std::vector<Check>& out) {
  double cocycle_e = 0.0, cocycle_m = 0.0;
  double para_e = 0.0, para_m = 0.0, para_f = 0.0;
  for (int k = 0; k < 200; ++k) {
    const FiniteSpace space = random::space(rng, 3 + static_cast<std::size_t>(k % 6));
    const Density p = random::density(rng, space);
    const Density q = random::density(rng, space);
    const Density r = random::density(rng, space);

    const FiberElement u = random::fiber(rng, p, FiberKind::exponential);
    cocycle_e = std::max(cocycle_e, linf(e_transport(q, r, e_transport(p, q, u)).rv(),
                                         e_transport(p, r, u).rv()));
    const FiberElement eta = random::fiber(rng, p, FiberKind::mixture);
    cocycle_m = std::max(cocycle_m, linf(m_transport(q, r, m_transport(p, q, eta)).rv(),
                                         m_transport(p, r, eta).rv()));

    para_e = std::max(para_e, linf((exp_chart(p, q) + e_transport(q, p, exp_chart(q, r))).rv(),
                                   exp_chart(p, r).rv()));
    para_m = std::max(para_m, linf((mix_chart(p, q) + m_transport(q, p, mix_chart(q, r))).rv(),
                                   mix_chart(p, r).rv()));
    para_f = std::max(para_f, linf(flat_chart(p, q) + flat_chart(q, r), flat_chart(p, r)));
  }
  out.push_back(at_most("exponential_cocycle", cocycle_e, 1e-10));
  out.push_back(at_most("mixture_cocycle", cocycle_m, 1e-10));
  out.push_back(at_most("exponential_parallelogram", para_e, 1e-10));
  out.push_back(at_most("mixture_parallelogram", para_m, 1e-10));
  out.push_back(at_most("flat_parallelogram", para_f, 1e-10));
}

// 3 ----------------------------------------------------------------------

void transport_duality(Engine& rng, std::vector<Check>& out) {
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const FiniteSpace space = random::space(rng, 6);
    const Density p = random::density(rng, space);
    const Density q = random::density(rng, space);
    const FiberElement u = random::fiber(rng, p, FiberKind::exponential);
    const FiberElement v = random::fiber(rng, q, FiberKind::mixture);
    worst = std::max(worst, transport_duality_gap(p, q, u, v));
  }
  out.push_back(at_most("duality_gap", worst, 1e-10));
}

// 4 ----------------------------------------------------------------------

// Directional derivatives of s -> K_p(u + s h) at 0, central stencils
// extrapolated from steps d and d/2.
double fd_first(const std::function<double(double)>& f, double d) {
  return numdiff::richardson(f, 0.0, d);
}

double fd_second(const std::function<double(double)>& f, double d) {
  const double coarse = numdiff::central2(f, 0.0, d);
  const double fine = numdiff::central2(f, 0.0, 0.5 * d);
  return (4.0 * fine - coarse) / 3.0;
}

double fd_third(const std::function<double(double)>& f, double d) {
  auto stencil = [&f](double s) {
    return (f(2.0 * s) - 2.0 * f(s) + 2.0 * f(-s) - f(-2.0 * s)) / (2.0 * s * s * s);
  };
  return (4.0 * stencil(0.5 * d) - stencil(d)) / 3.0;
}

void cumulant_derivatives(Engine& rng, std::vector<Check>& out) {
  double rel1 = 0.0, rel2 = 0.0, rel3 = 0.0;
  double min_var = std::numeric_limits<double>::infinity();
  auto rel = [](double a, double b) { return std::abs(a - b) / (std::abs(b) + 1e-8); };
  for (int k = 0; k < 50; ++k) {
    const FiniteSpace space = random::space(rng, 5);
    const Density p = random::density(rng, space);
    const FiberElement u = random::fiber(rng, p, FiberKind::exponential, 0.5);
    const FiberElement h1 = random::fiber(rng, p, FiberKind::exponential);
    const FiberElement h2 = random::fiber(rng, p, FiberKind::exponential);
    const FiberElement h3 = random::fiber(rng, p, FiberKind::exponential);
    auto along = [&](const FiberElement& h) {
      return std::function<double(double)>([&p, &u, h](double s) { return cumulant(p, u + s * h); });
    };

    rel1 = std::max(rel1, rel(cumulant_d1(p, u, h1), fd_first(along(h1), 1e-3)));

    // Polarization of the quadratic and cubic forms from directional derivatives.
    const double d2 = 0.25 * (fd_second(along(h1 + h2), 1e-2) - fd_second(along(h1 - h2), 1e-2));
    rel2 = std::max(rel2, rel(cumulant_d2(p, u, h1, h2), d2));

    double d3 = 0.0;
    for (int a : {1, -1}) {
      for (int b : {1, -1}) {
        for (int c : {1, -1}) {
          const FiberElement dir = double(a) * h1 + double(b) * h2 + double(c) * h3;
          d3 += double(a * b * c) * fd_third(along(dir), 2e-2);
        }
      }
    }
    d3 /= 48.0;
    rel3 = std::max(rel3, rel(cumulant_d3(p, u, h1, h2, h3), d3));

    for (const FiberElement* h : {&h1, &h2, &h3}) {
      min_var = std::min(min_var, cumulant_d2(p, u, *h, *h));
    }
  }
  out.push_back(at_most("d1_relative_error", rel1, 1e-4));
  out.push_back(at_most("d2_relative_error", rel2, 1e-4));
  out.push_back(at_most("d3_relative_error", rel3, 1e-4));
  out.push_back(at_least("d2_min_variance", min_var, 0.0));
}

// 5 ----------------------------------------------------------------------

void kl_identities(Engine& rng, std::vector<Check>& out) {
  double identity = 0.0, pythagoras = 0.0;
  for (int k = 0; k < 100; ++k) {
    const FiniteSpace space = random::space(rng, 5);
    const Density p = random::density(rng, space);
    const Density q = random::density(rng, space);
    const Density r = random::density(rng, space);
    const FiberElement u = exp_chart(p, q);
    identity = std::max(identity, std::abs(kl(q, p) - (cumulant_d1(p, u, u) - cumulant(p, u))));
    const PythagorasSides s = kl_pythagoras(p, q, r);
    pythagoras = std::max(pythagoras, std::abs(s.lhs - s.rhs));
  }
  out.push_back(at_most("kl_cumulant_identity", identity, 1e-10));
  out.push_back(at_most("pythagoras_residual", pythagoras, 1e-10));
}

// 6 ----------------------------------------------------------------------

void covariant_duality(Engine& rng, std::vector<Check>& out) {
  double worst = 0.0;
  std::uniform_real_distribution<double> when(-0.5, 0.5);
  for (int k = 0; k < 20; ++k) {
    const FiniteSpace space = random::space(rng, 4 + static_cast<std::size_t>(k % 4));
    const Density p = random::density(rng, space);
    const FiberElement a = random::fiber(rng, p, FiberKind::exponential, 0.7);
    const FiberElement b = random::fiber(rng, p, FiberKind::exponential, 0.7);
    const RandomVariable g0 = random::variable(rng, space);
    const RandomVariable g1 = random::variable(rng, space);
    const RandomVariable h0 = random::variable(rng, space);
    const RandomVariable h1 = random::variable(rng, space);

    SmoothCurve base;
    base.eval = [p, a, b](double t) { return exp_inv(p, std::sin(t) * a + (t * t) * b); };
    base.domain = {-1.0, 1.0};
    auto eta = [base, g0, g1](double t) {
      return center(g0 + std::cos(t) * g1, base.eval(t), FiberKind::mixture);
    };
    auto w = [base, h0, h1](double t) {
      return center(h0 + (t * t * t) * h1, base.eval(t), FiberKind::exponential);
    };
    const BundleCurve eta_curve{base, eta, {}};
    const BundleCurve w_curve{base, w, {}};

    const double t = when(rng);
    const Density q = base.eval(t);
    const double lhs = numdiff::central(
        [&](double s) { return pairing(eta(s), w(s), base.eval(s)); }, t);
    const double rhs =
        pairing(m_cov_deriv(eta_curve, t), w(t), q) + pairing(eta(t), e_cov_deriv(w_curve, t), q);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  out.push_back(at_most("duality_residual", worst, 1e-6));
}

// 7 ----------------------------------------------------------------------

void geodesics(Engine& rng, std::vector<Check>& out) {
  double e_acc = 0.0, m_acc = 0.0, ratio = 0.0;
  const std::vector<double> grid = linspace(0.0, 1.0, 11);
  for (int k = 0; k < 10; ++k) {
    const FiniteSpace space = random::space(rng, 5);
    const Density p = random::density(rng, space);
    const Density q = random::density(rng, space);
    const FiberElement u = random::fiber(rng, p, FiberKind::exponential);

    const SmoothCurve eg = exp_geodesic_curve(p, u, {-0.5, 1.5});
    const SmoothCurve mg = mix_geodesic_curve(p, q, {0.0, 1.0});
    for (double t : grid) {
      e_acc = std::max(e_acc, e_acceleration(eg, t).rv().max_abs());
      m_acc = std::max(m_acc, m_acceleration(mg, t).rv().max_abs());
    }

    // Gibbs curve e_p(a(t) u) with a = sinh, so a''/a' = tanh; derivatives by
    // finite differences only.
    SmoothCurve gibbs;
    gibbs.eval = [p, u](double t) { return exp_inv(p, std::sinh(t) * u); };
    gibbs.domain = {-1.0, 2.0};
    for (double t : {0.2, 0.5, 0.8, 1.1}) {
      const FiberElement acc = e_acceleration(gibbs, t);
      const FiberElement vel = velocity(gibbs, t);
      const double fitted = pairing(acc, vel) / pairing(vel, vel);
      ratio = std::max(ratio, std::abs(fitted - std::tanh(t)));
    }
  }
  out.push_back(at_most("exp_geodesic_e_acceleration", e_acc, 1e-8));
  out.push_back(at_most("mix_geodesic_m_acceleration", m_acc, 1e-10));
  out.push_back(at_most("gibbs_ratio_error", ratio, 1e-5));
}

// 8 ----------------------------------------------------------------------

void entropy_flow(Engine& rng, std::vector<Check>& out) {
  Stopwatch clock;
  double gap = 0.0;
  for (std::size_t n : {3u, 10u}) {
    const FiniteSpace space = random::space(rng, n);
    const Density q0 = random::density(rng, space);
    const FlowResult flow = entropy_flow_numeric(q0, {3.0, 1e-3, 1}, true);
    for (std::size_t k = 0; k < flow.size(); ++k) {
      gap = std::max(gap, linf(flow.densities[k], entropy_flow_closed(q0, flow.times[k])));
    }
  }

  // Descent: the exponential acceleration equals the velocity. Derivatives
  // come from differences on the record grid at spacings h and 2h, combined
  // by Richardson extrapolation.
  const FiniteSpace space = random::space(rng, 3);
  const Density q0 = random::density(rng, space);
  const double h = 5e-4;
  const SmoothCurve fine = sampled_curve(entropy_flow_numeric(q0, {1.0, h, 1}, false));
  const SmoothCurve coarse = sampled_curve(entropy_flow_numeric(q0, {1.0, h, 2}, false));
  auto extrapolate = [](const FiberElement& f, const FiberElement& c, std::size_t i) {
    return (4.0 * f[i] - c[i]) / 3.0;
  };
  double residual = 0.0;
  for (int k = 1; k < 20; ++k) {
    const double t = 0.05 * k;
    const FiberElement af = e_acceleration(fine, t), ac = e_acceleration(coarse, t);
    const FiberElement vf = velocity(fine, t), vc = velocity(coarse, t);
    for (std::size_t i = 0; i < q0.size(); ++i) {
      residual = std::max(residual, std::abs(extrapolate(af, ac, i) - extrapolate(vf, vc, i)));
    }
  }
  const double elapsed = clock.seconds();
  out.push_back(at_most("closed_form_gap", gap, 1e-6));
  out.push_back(at_most("descent_acceleration_minus_velocity", residual, 1e-5));
  out.push_back(timing(elapsed, 5.0));
}

// 9 ----------------------------------------------------------------------

// Fisher-Rao great circle through q0 with initial score w0: sqrt q moves on
// the L2(m) unit sphere.
Density great_circle(const Density& q0, const FiberElement& w0, double t) {
  const std::size_t n = q0.size();
  std::vector<double> rho(n), rho_dot(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = std::sqrt(q0[i]);
    rho_dot[i] = 0.5 * rho[i] * w0[i];
  }
  double s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) s2 += rho_dot[i] * rho_dot[i] * q0.space().weight(i);
  const double s = std::sqrt(s2);
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::cos(s * t) * rho[i] + std::sin(s * t) / s * rho_dot[i];
    q[i] = r * r;
  }
  return Density(q0.space(), std::move(q));
}

double energy_drift(const FlowResult& flow) {
  const std::vector<double>& e = flow.monitors.at("energy");
  double d = 0.0;
  for (double v : e) d = std::max(d, std::abs(v - e.front()));
  return d;
}

void mechanics(Engine& rng, std::vector<Check>& out) {
  const FiniteSpace space = random::space(rng, 5);
  const Density q0 = random::density(rng, space, 0.5);
  const FiberElement w0 = random::fiber(rng, q0, FiberKind::exponential, 1.0);

  const FlowResult el = euler_lagrange_flow(quadratic_lagrangian(), q0, w0, {1.0, 1e-3, 1});
  double to_geodesic = 0.0, to_circle = 0.0;
  for (std::size_t k = 0; k < el.size(); ++k) {
    to_geodesic = std::max(to_geodesic, linf(el.densities[k], exp_geodesic(q0, w0, el.times[k])));
    to_circle = std::max(to_circle, linf(el.densities[k], great_circle(q0, w0, el.times[k])));
  }
  std::ostringstream note;
  note << "distance to the Fisher-Rao great circle " << to_circle;
  out.push_back(at_most("el_quadratic_vs_exp_geodesic", to_geodesic, 1e-6, note.str()));

  // Momentum scaled to unit Fisher information, so the drift is measured on
  // an O(1) energy.
  const FiberElement eta0(q0, std::sqrt(1.0 / pairing(w0, w0, q0)) * w0.rv(), FiberKind::mixture);
  const HamiltonianSpec H = quadratic_hamiltonian();
  const double drift = energy_drift(hamilton_flow(H, q0, eta0, {1.0, 1e-3, 1}));
  out.push_back(at_most("hamilton_energy_drift", drift, 1e-8));
  // At h = 1e-3 the drift sits at rounding level, so the halving ratio is
  // taken where truncation dominates.
  const double coarse = energy_drift(hamilton_flow(H, q0, eta0, {1.0, 1e-2, 1}));
  const double fine = energy_drift(hamilton_flow(H, q0, eta0, {1.0, 5e-3, 1}));
  std::ostringstream ratio_note;
  ratio_note << "drift " << coarse << " at h=1e-2, " << fine << " at h=5e-3";
  out.push_back(at_least("drift_halving_ratio", coarse / std::max(fine, 1e-300), 8.0, ratio_note.str()));

  double legendre = 0.0, inverse_pair = 0.0, newton = 0.0;
  const HamiltonianSpec numeric_h = legendre_hamiltonian(cumulant_lagrangian());
  for (int k = 0; k < 20; ++k) {
    const FiniteSpace s = random::space(rng, 5);
    const Density q = random::density(rng, s);
    const FiberElement eta = random::mixture_coordinate(rng, q, 0.7);
    legendre = std::max(legendre,
                        std::abs(numeric_h.value(q, eta, 0.0) - conjugate_cumulant(q, eta)));

    const FiberElement w = random::fiber(rng, q, FiberKind::exponential, 0.7);
    const FiberElement grad_e = grad_cumulant_lagrangian(q, w).fiber;
    inverse_pair = std::max(inverse_pair,
                            linf(grad_conjugate_cumulant(q, grad_e).fiber.rv(), w.rv()));
    const FiberElement w_star = invert_fiber_gradient(cumulant_lagrangian(), q, eta, 0.0);
    newton = std::max(newton, linf(grad_cumulant_lagrangian(q, w_star).fiber.rv(), eta.rv()));
  }
  out.push_back(at_most("legendre_cumulant_vs_conjugate", legendre, 1e-8));
  out.push_back(at_most("fiber_gradient_inverse_pair", inverse_pair, 1e-8));
  out.push_back(at_most("newton_inverse_residual", newton, 1e-8));
}

// 10 ---------------------------------------------------------------------

Functional half_square() {
  return {[](const Density& q) { return 0.5 * integral(q.as_random_variable() * q.as_random_variable()); },
          [](const Density& q) { return q.as_random_variable(); }};
}

void natural_gradients(Engine& rng, std::vector<Check>& out) {
  double chain = 0.0;
  for (int k = 0; k < 50; ++k) {
    const FiniteSpace space = random::space(rng, 5);
    const Density p = random::density(rng, space);
    const FiberElement a = random::fiber(rng, p, FiberKind::exponential, 0.7);
    const FiberElement b = random::fiber(rng, p, FiberKind::exponential, 0.7);
    SmoothCurve c;
    c.eval = [p, a, b](double t) { return exp_inv(p, t * a + (t * t) * b); };
    c.domain = {-1.0, 1.0};
    const Functional F = k % 3 == 0   ? entropy_functional()
                         : k % 3 == 1 ? linear_functional(random::variable(rng, space))
                                      : half_square();
    const double t = 0.3;
    const double fd = numdiff::central([&](double s) { return F.value(c.eval(s)); }, t);
    const double exact = pairing(natural_gradient(F, c.eval(t)), velocity(c, t));
    chain = std::max(chain, std::abs(fd - exact) / std::max(1.0, std::abs(fd)));
  }
  out.push_back(at_most("chain_rule_residual", chain, 1e-6));

  // Full exponential family through p with d = n - 1 random directions.
  const std::size_t n = 5;
  const FiniteSpace space = random::space(rng, n);
  const Density p = random::density(rng, space);
  std::vector<FiberElement> dirs;
  for (std::size_t j = 0; j + 1 < n; ++j) dirs.push_back(random::fiber(rng, p, FiberKind::exponential));
  ParametricModel model;
  model.dim = n - 1;
  model.eval = [p, dirs](std::span<const double> th) {
    FiberElement u = FiberElement::zero(p, FiberKind::exponential);
    for (std::size_t j = 0; j < dirs.size(); ++j) u = u + th[j] * dirs[j];
    return exp_inv(p, u);
  };
  model.scores = [model_eval = model.eval, dirs](std::span<const double> th) {
    const Density q = model_eval(th);
    std::vector<RandomVariable> s;
    for (const FiberElement& d : dirs) s.push_back(d.rv() - expectation(d.rv(), q));
    return s;
  };
  std::vector<double> theta(n - 1);
  std::normal_distribution<double> z(0.0, 0.5);
  for (double& v : theta) v = z(rng);

  const Functional F = entropy_functional();
  const FisherInfo info = fisher_matrix(model, theta);
  const Eigen::VectorXd grad = parametric_gradient(model, theta, F);
  const Eigen::VectorXd nat = parametric_natural_gradient(model, theta, F);
  const double solve = (info.matrix * nat - grad).cwiseAbs().maxCoeff();

  const Density q = model.eval(theta);
  const std::vector<FiberElement> scores = model_scores(model, theta);
  const FiberElement G = natural_gradient(F, q);
  double reconstruction = 0.0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    const double dj = numdiff::central(
        [&](double s) {
          std::vector<double> th(theta);
          th[j] += s;
          return F.value(model.eval(th));
        },
        0.0);
    reconstruction = std::max(reconstruction, std::abs(pairing(G, scores[j]) - dj));
  }
  RandomVariable combo = RandomVariable::zeros(space);
  for (std::size_t j = 0; j < scores.size(); ++j) combo = combo + nat(static_cast<Eigen::Index>(j)) * scores[j].rv();
  const double projection = linf(combo, G.rv());
  out.push_back(at_most("fisher_solve_residual", solve, 1e-8));
  out.push_back(at_most("grad_d_reconstruction", std::max(reconstruction, projection), 1e-8));

  const FiniteSpace two({0.5, 0.5});
  const Density flat = Density::uniform(two);
  const FiberElement u(flat, RandomVariable(two, {1.0, -1.0}), FiberKind::exponential);
  ParametricModel bernoulli;
  bernoulli.dim = 1;
  bernoulli.eval = [flat, u](std::span<const double> th) { return exp_inv(flat, th[0] * u); };
  bernoulli.scores = [flat, u](std::span<const double> th) {
    const Density q = exp_inv(flat, th[0] * u);
    return std::vector<RandomVariable>{u.rv() - expectation(u.rv(), q)};
  };
  const std::vector<double> zero{0.0};
  out.push_back(at_most("bernoulli_fisher_error",
                        std::abs(fisher_matrix(bernoulli, zero).matrix(0, 0) - 1.0), 1e-12));
}

// 11 ---------------------------------------------------------------------

void max_entropy(Engine& rng, std::vector<Check>& out) {
  double residual = 0.0;
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (int k = 0; k < 50; ++k) {
    const FiniteSpace space = random::space(rng, 6);
    const Density p = random::density(rng, space);
    const RandomVariable f = random::variable(rng, space);
    double lo = f[0], hi = f[0];
    for (double v : f.values()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double b = lo + unit(rng) * (hi - lo);
    const MaxEntropy sol = constrained_max_entropy(f, b, p);
    residual = std::max(residual, std::abs(expectation(f, sol.q) - b));
  }
  const FiniteSpace two({0.5, 0.5});
  const MaxEntropy bern = constrained_max_entropy(RandomVariable(two, {1.0, -1.0}), std::tanh(1.0),
                                                  Density::uniform(two));
  out.push_back(at_most("constraint_residual", residual, 1e-10));
  out.push_back(at_most("bernoulli_theta_error", std::abs(bern.theta - 1.0), 1e-10));
}

// 12 ---------------------------------------------------------------------

void orlicz(Engine& rng, std::vector<Check>& out) {
  Stopwatch clock;
  const std::vector<YoungPair> kinds = {
      YoungPair::power(1.5), YoungPair::power(2.0), YoungPair::power(3.0), YoungPair::exp2(),
      YoungPair::exp2_conj(), YoungPair::cosh2(),   YoungPair::cosh2_conj(), YoungPair::gauss2(),
      YoungPair::gauss2_conj()};

  double definitional = 0.0, power = 0.0;
  for (int k = 0; k < 50; ++k) {
    const FiniteSpace space = random::space(rng, 20);
    const RandomVariable f = random::variable(rng, space);
    for (const YoungPair& Y : kinds) {
      const double rho = luxemburg_norm(f, Y);
      definitional = std::max(definitional, std::abs(modular(f, Y, rho) - 1.0));
      if (Y.kind() == YoungKind::power) {
        const double a = Y.alpha();
        double s = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]), a) * space.weight(i);
        const double exact = std::pow(a, -1.0 / a) * std::pow(s, 1.0 / a);
        power = std::max(power, std::abs(rho - exact) / exact);
      }
    }
  }
  out.push_back(at_most("luxemburg_definitional_residual", definitional, 1e-10));
  out.push_back(at_most("power_norm_relative_error", power, 1e-10));

  std::size_t young_bad = 0, legendre_bad = 0;
  double worst_young = std::numeric_limits<double>::infinity(), worst_legendre = 0.0;
  const std::vector<double> x_grid = linspace(0.0, 4.0, 100);
  for (const YoungPair& Y : kinds) {
    const YoungReport r = young_identity_audit(Y, x_grid, linspace(0.0, Y.phi_prime(4.0), 100));
    young_bad += r.inequality_violations;
    legendre_bad += r.legendre_violations;
    worst_young = std::min(worst_young, r.worst_inequality);
    worst_legendre = std::max(worst_legendre, r.worst_legendre);
  }
  std::ostringstream yn, ln;
  yn << "worst relative slack " << worst_young;
  ln << "worst relative gap " << worst_legendre;
  out.push_back(at_most("young_inequality_violations", double(young_bad), 0.0, yn.str()));
  out.push_back(at_most("legendre_equality_violations", double(legendre_bad), 0.0, ln.str()));

  double upper = 0.0, lower = 0.0;
  std::size_t tail_bad = 0;
  for (int k = 0; k < 50; ++k) {
    const FiniteSpace space = random::space(rng, 50);
    const RandomVariable f = random::variable(rng, space, 2.0);
    const RandomVariable unit_lux = (1.0 / luxemburg_norm(f, YoungPair::cosh2())) * f;
    upper = std::max(upper, subexp_bracket_norm(unit_lux));
    const RandomVariable unit_bracket = (1.0 / subexp_bracket_norm(f)) * f;
    lower = std::max(lower, luxemburg_norm(unit_bracket, YoungPair::cosh2()));
    const double rho = luxemburg_norm(f, YoungPair::cosh2());
    tail_bad += tail_bound_audit(f, linspace(0.0, 10.0 * rho, 101)).violations;
  }
  out.push_back(at_most("bracket_given_unit_luxemburg", upper, 1.0 + 1e-10));
  out.push_back(at_most("luxemburg_given_unit_bracket", lower, std::sqrt(2.0) + 1e-10));
  out.push_back(at_most("tail_bound_violations", double(tail_bad), 0.0));
  out.push_back(timing(clock.seconds(), 5.0));
}

// 13 ---------------------------------------------------------------------

void sir(Engine&, std::vector<Check>& out) {
  const FiniteSpace space({0.2, 0.3, 0.5});
  const std::vector<double> mass{0.9, 0.09, 0.01};
  std::vector<double> p(3);
  for (std::size_t i = 0; i < 3; ++i) p[i] = mass[i] / space.weight(i);
  const Density p0(space, p);
  const double beta = 1.5, gamma = 0.5;
  const FlowResult flow = sir_flow(p0, beta, gamma, {10.0, 1e-3, 1});
  const double drift = flow.monitors.at("mass_drift").back();

  const SmoothCurve curve = sampled_curve(flow);
  double identity = 0.0;
  for (std::size_t k = 50; k + 50 < flow.size(); k += 50) {
    const double t = flow.times[k];
    const FiberElement acc = m_acceleration(curve, t);
    const std::vector<double> v = sir_velocity(flow.densities[k], beta, gamma);
    const auto A = sir_acceleration_matrix(flow.densities[k], beta, gamma);
    for (std::size_t i = 0; i < 3; ++i) {
      const double av = A[i][0] * v[0] + A[i][1] * v[1] + A[i][2] * v[2];
      identity = std::max(identity, std::abs(acc[i] - av));
    }
  }
  out.push_back(at_most("mass_drift", drift, 1e-9));
  out.push_back(at_most("acceleration_matrix_residual", identity, 1e-5));
}

struct Entry {
  const char* title;
  void (*run)(Engine&, std::vector<Check>&);
};

const Entry kEntries[kCriteria] = {
    {"chart roundtrips", chart_roundtrips},
    {"affine axioms", affine_axioms},
    {"transport duality", transport_duality},
    {"cumulant derivatives", cumulant_derivatives},
    {"KL identities", kl_identities},
    {"covariant-derivative duality", covariant_duality},
    {"geodesics", geodesics},
    {"entropy flow", entropy_flow},
    {"mechanics", mechanics},
    {"natural gradient", natural_gradients},
    {"maximum entropy", max_entropy},
    {"Orlicz norms", orlicz},
    {"SIR", sir},
};

}  // namespace

bool CriterionResult::passed() const {
  if (!error.empty() || checks.empty()) return false;
  for (const Check& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriteria) throw ConfigurationError("criterion id out of range");
  const Entry& e = kEntries[id - 1];
  CriterionResult r{id, e.title, {}, 0.0, {}};
  Engine rng(seed + static_cast<std::uint64_t>(id) * 0x9E3779B97F4A7C15ULL);
  Stopwatch clock;
  try {
    e.run(rng, r.checks);
  } catch (const std::exception& ex) {
    r.error = ex.what();
  }
  r.seconds = clock.seconds();
  return r;
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out(kCriteria);
#pragma omp parallel for schedule(dynamic, 1)
  for (int id = 1; id <= kCriteria; ++id) out[static_cast<std::size_t>(id - 1)] = run_criterion(id, seed);
  return out;
}

std::string format(const CriterionResult& r, bool with_timings) {
  std::ostringstream s;
  s.precision(6);
  const std::string key = "criterion." + std::to_string(r.id);
  s << key << ".title=" << r.title << '\n';
  for (const Check& c : r.checks) {
    s << key << '.' << c.name;
    if (c.timing && !with_timings) {
      s << "<=" << c.bound;
    } else {
      s << '=' << c.value << " bound=" << c.bound;
    }
    s << (c.passed ? " ok" : " FAIL");
    if (!c.note.empty()) s << " (" << c.note << ')';
    s << '\n';
  }
  if (!r.error.empty()) s << key << ".error=" << r.error << '\n';
  if (with_timings) s << key << ".seconds=" << r.seconds << '\n';
  s << key << ".status=" << (r.passed() ? "pass" : "fail") << '\n';
  return s.str();
}

}  // namespace igeo::audit
