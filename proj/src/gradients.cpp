#include "igeo/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "igeo/charts.hpp"
#include "igeo/errors.hpp"
#include "igeo/kernels.hpp"

namespace igeo {

namespace {

constexpr double kContractTolerance = 1e-5;
constexpr double kScoreCentering = 1e-8;

std::vector<double> copy(std::span<const double> s) { return {s.begin(), s.end()}; }

Density scaled(const Density& q, const std::vector<double>& c, double eps) {
  std::vector<double> v(q.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = q[i] * (1.0 + eps * c[i]);
  return Density(q.space(), std::move(v));
}

}  // namespace

Functional entropy_functional() {
  return {[](const Density& q) { return entropy(q); },
          [](const Density& q) { return q.log().map([](double x) { return -x - 1.0; }); }};
}

Functional linear_functional(const RandomVariable& f) {
  return {[f](const Density& q) { return expectation(f, q); }, [f](const Density&) { return f; }};
}

double gradient_contract_residual(const Functional& F, const Density& q) {
  constexpr double eps = 1e-5;
  const RandomVariable g = F.euclid_grad(q);
  require_same_space(g.space(), q.space());
  const auto m = q.space().weights();
  double worst = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    // c = e_k - q_k m_k is centered under q and bounded by 1, so q(1 +- eps c)
    // stays a density.
    std::vector<double> c(q.size(), -q[k] * m[k]);
    c[k] += 1.0;
    const double fd = (F.value(scaled(q, c, eps)) - F.value(scaled(q, c, -eps))) / (2.0 * eps);
    double exact = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) exact += g[i] * q[i] * c[i] * m[i];
    const double scale = std::max(std::abs(fd), std::abs(exact)) + 1e-8;
    worst = std::max(worst, std::abs(fd - exact) / scale);
  }
  return worst;
}

FiberElement natural_gradient(const Functional& F, const Density& q, bool self_check) {
  if (!F.value || !F.euclid_grad) throw ConfigurationError("functional is missing an evaluator");
  if (self_check) {
    const double r = gradient_contract_residual(F, q);
    if (r > kContractTolerance) {
      std::ostringstream msg;
      msg << "euclidean gradient disagrees with the functional (relative " << r << ")";
      throw GradientContractError(msg.str());
    }
  }
  return center(F.euclid_grad(q), q, FiberKind::mixture);
}

FiberElement grad_entropy(const Density& q) {
  const double h = entropy(q);
  return FiberElement(q, q.log().map([h](double x) { return -x - h; }), FiberKind::mixture);
}

std::vector<FiberElement> model_scores(const ParametricModel& model,
                                       std::span<const double> theta) {
  if (theta.size() != model.dim) throw DimensionError("parameter has the wrong dimension");
  const Density q = model.eval(theta);
  std::vector<RandomVariable> raw;
  if (model.scores) {
    raw = model.scores(theta);
    if (raw.size() != model.dim) throw DimensionError("model returned the wrong number of scores");
  } else {
    constexpr double h = 1e-5;
    for (std::size_t j = 0; j < model.dim; ++j) {
      std::vector<double> plus = copy(theta);
      std::vector<double> minus = copy(theta);
      plus[j] += h;
      minus[j] -= h;
      raw.push_back((1.0 / (2.0 * h)) * (model.eval(plus).log() - model.eval(minus).log()));
    }
  }
  std::vector<FiberElement> out;
  out.reserve(raw.size());
  for (const RandomVariable& s : raw) {
    const double mean = expectation(s, q);
    if (std::abs(mean) > kScoreCentering * std::max(1.0, s.max_abs())) {
      throw CenteringError("model score is not centered under q(theta)");
    }
    out.emplace_back(q, s - mean, FiberKind::exponential);
  }
  return out;
}

FisherInfo fisher_matrix(const ParametricModel& model, std::span<const double> theta) {
  const std::vector<FiberElement> s = model_scores(model, theta);
  const auto d = static_cast<Eigen::Index>(s.size());
  FisherInfo info;
  info.matrix.resize(d, d);
  const Density& q = s.front().base();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = kernels::dot4(s[i].values(), s[j].values(), q.values(), q.space().weights());
      info.matrix(i, j) = v;
      info.matrix(j, i) = v;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(info.matrix, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double top = lambda.maxCoeff();
  const double bottom = lambda.minCoeff();
  for (Eigen::Index i = 0; i < d; ++i) {
    if (lambda(i) > top * std::numeric_limits<double>::epsilon() * static_cast<double>(d) * 16.0) {
      ++info.rank;
    }
  }
  info.condition = bottom > 0.0 ? top / bottom : std::numeric_limits<double>::infinity();
  info.singular = info.rank < s.size() || !(info.condition < kConditionLimit);
  return info;
}

Eigen::VectorXd parametric_gradient(const ParametricModel& model, std::span<const double> theta,
                                    const Functional& F) {
  const std::vector<FiberElement> s = model_scores(model, theta);
  const Density& q = s.front().base();
  const RandomVariable g = F.euclid_grad(q);
  Eigen::VectorXd out(static_cast<Eigen::Index>(s.size()));
  for (std::size_t j = 0; j < s.size(); ++j) {
    out(static_cast<Eigen::Index>(j)) =
        kernels::dot4(g.values(), s[j].values(), q.values(), q.space().weights());
  }
  return out;
}

Eigen::VectorXd parametric_natural_gradient(const ParametricModel& model,
                                            std::span<const double> theta, const Functional& F) {
  const FisherInfo info = fisher_matrix(model, theta);
  if (info.singular) {
    std::ostringstream msg;
    msg << "Fisher matrix is ill-conditioned (rank " << info.rank << ", condition "
        << info.condition << ")";
    throw ConditioningError(msg.str());
  }
  return info.matrix.ldlt().solve(parametric_gradient(model, theta, F));
}

GradientPair grad_quadratic(const Density& q, const FiberElement& w) {
  require_base(w, q);
  require_kind(w, FiberKind::exponential);
  return {center(0.5 * (w.rv() * w.rv()), q, FiberKind::mixture), w};
}

GradientPair grad_cumulant_lagrangian(const Density& q, const FiberElement& w) {
  require_base(w, q);
  require_kind(w, FiberKind::exponential);
  const Density r = exp_inv(q, w);
  RandomVariable fiber = r.as_random_variable() / q.as_random_variable() - 1.0;
  FiberElement grad(q, fiber - w.rv(), FiberKind::mixture);
  return {std::move(grad), FiberElement(q, std::move(fiber), FiberKind::mixture)};
}

namespace {

RandomVariable log1p_checked(const FiberElement& eta) {
  return eta.rv().map([](double x) {
    if (!(x > -1.0)) throw DomainError("mixture element has an entry <= -1");
    return std::log1p(x);
  });
}

}  // namespace

GradientPair grad_conjugate_cumulant(const Density& q, const FiberElement& eta) {
  require_base(eta, q);
  require_kind(eta, FiberKind::mixture);
  const RandomVariable l = log1p_checked(eta);
  const RandomVariable lc = l - expectation(l, q);
  return {FiberElement(q, lc - eta.rv(), FiberKind::mixture),
          FiberElement(q, lc, FiberKind::exponential)};
}

double conjugate_cumulant(const Density& q, const FiberElement& eta) {
  require_base(eta, q);
  const RandomVariable l = log1p_checked(eta);
  return expectation((eta.rv() + 1.0) * l, q);
}

double total_derivative(const FullBundleFunction& F, const FullBundleCurve& curve, double t) {
  if (!F.value || !F.grad || !F.grad_m || !F.grad_e || !F.grad_c) {
    throw ConfigurationError("full-bundle function needs all four gradient evaluators");
  }
  if (!curve.eta || !curve.w) throw ConfigurationError("full-bundle curve needs both fibers");
  const Density q = curve.base.eval(t);
  const FiberElement eta = curve.eta(t);
  const FiberElement w = curve.w(t);
  const std::vector<double> c = curve.c ? curve.c(t) : std::vector<double>{};

  const FiberElement grad = F.grad(q, eta, w, c);
  const FiberElement grad_m = F.grad_m(q, eta, w, c);
  const FiberElement grad_e = F.grad_e(q, eta, w, c);
  double total = pairing(grad, velocity(curve.base, t), q);
  total += pairing(m_cov_deriv(BundleCurve{curve.base, curve.eta, {}}, t), grad_m, q);
  total += pairing(grad_e, e_cov_deriv(BundleCurve{curve.base, curve.w, {}}, t), q);
  if (!c.empty()) {
    const std::vector<double> gc = F.grad_c(q, eta, w, c);
    const std::vector<double> cdot = numdiff::derivative(curve.c, t, curve.base.domain);
    if (gc.size() != c.size()) throw DimensionError("parameter gradient has the wrong length");
    for (std::size_t k = 0; k < c.size(); ++k) total += gc[k] * cdot[k];
  }
  return total;
}

namespace {

constexpr double kMaxEntTolerance = 1e-12;
constexpr int kMaxEntIterations = 200;

struct Tilt {
  Density q;
  double gap;       // E_q f - b
  double variance;  // Var_q f, the derivative of gap in theta
};

Tilt tilt(const RandomVariable& f, double b, const Density& p, double theta) {
  Density q = exp_inv(p, center(theta * (f - b), p));
  const double mean = expectation(f, q);
  const double var = covariance(f, f, q);
  return {std::move(q), mean - b, var};
}

}  // namespace

MaxEntropy constrained_max_entropy(const RandomVariable& f, double b, const Density& p) {
  require_same_space(f.space(), p.space());
  const auto values = f.values();
  const double lo_f = *std::min_element(values.begin(), values.end());
  const double hi_f = *std::max_element(values.begin(), values.end());
  if (hi_f - lo_f <= 1e-14 * std::max(1.0, f.max_abs())) {
    throw DegenerateError("constraint function is constant");
  }
  if (!(b > lo_f && b < hi_f)) {
    std::ostringstream msg;
    msg << "target " << b << " outside the open range (" << lo_f << ", " << hi_f << ")";
    throw InfeasibleError(msg.str());
  }

  double lo = -1.0;
  double hi = 1.0;
  for (int k = 0; k < 1100 && tilt(f, b, p, lo).gap > 0.0; ++k) {
    hi = lo;
    lo *= 2.0;
  }
  for (int k = 0; k < 1100 && tilt(f, b, p, hi).gap < 0.0; ++k) {
    lo = hi;
    hi *= 2.0;
  }

  double theta = (lo < 0.0 && hi > 0.0) ? 0.0 : 0.5 * (lo + hi);
  Tilt cur = tilt(f, b, p, theta);
  int it = 0;
  for (; it < kMaxEntIterations && std::abs(cur.gap) > kMaxEntTolerance; ++it) {
    (cur.gap < 0.0 ? lo : hi) = theta;
    double next = cur.variance > 0.0 ? theta - cur.gap / cur.variance : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == theta) break;
    theta = next;
    cur = tilt(f, b, p, theta);
  }
  const double residual = std::abs(cur.gap);
  if (residual > 1e-10) {
    std::ostringstream msg;
    msg << "maximum-entropy solve stalled with residual " << residual;
    throw RegularityError(msg.str());
  }
  return {theta, std::move(cur.q), residual, it};
}

}  // namespace igeo
