#pragma once

// Natural gradients of functionals of densities, fiber gradients of
// functions on the full bundle, Fisher matrices of parametric submodels and
// the single-constraint maximum-entropy problem.

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "igeo/calculus.hpp"
#include "igeo/measure.hpp"

namespace igeo {

// `euclid_grad` represents the differential in L2(m):
// dF(q)[delta] = sum g_i delta_i m_i for every delta with sum delta_i m_i = 0.
struct Functional {
  std::function<double(const Density&)> value;
  std::function<RandomVariable(const Density&)> euclid_grad;
};

Functional entropy_functional();
// E_q[f]
Functional linear_functional(const RandomVariable& f);

// Worst relative mismatch between euclid_grad and central differences of
// value along the directions q(e_k - q_k m_k), k = 0..n-1.
double gradient_contract_residual(const Functional& F, const Density& q);

// g - E_q[g]. With self_check, a contract residual above 1e-5 raises
// GradientContractError.
FiberElement natural_gradient(const Functional& F, const Density& q, bool self_check = false);

// -log q - H(q)
FiberElement grad_entropy(const Density& q);

struct ParametricModel {
  std::size_t dim = 0;
  std::function<Density(std::span<const double>)> eval;
  // d/dtheta_j log q(theta); central differences of log q when empty.
  std::function<std::vector<RandomVariable>(std::span<const double>)> scores;
};

std::vector<FiberElement> model_scores(const ParametricModel& model, std::span<const double> theta);

struct FisherInfo {
  Eigen::MatrixXd matrix;
  std::size_t rank = 0;
  // lambda_max / lambda_min; infinite when lambda_min <= 0.
  double condition = 0.0;
  bool singular = false;
};

inline constexpr double kConditionLimit = 1e12;

FisherInfo fisher_matrix(const ParametricModel& model, std::span<const double> theta);
// dF(q(theta))/dtheta_j = E_q[g s_j].
Eigen::VectorXd parametric_gradient(const ParametricModel& model, std::span<const double> theta,
                                    const Functional& F);
// I(theta)^{-1} times the parametric gradient.
Eigen::VectorXd parametric_natural_gradient(const ParametricModel& model,
                                            std::span<const double> theta, const Functional& F);

// Base gradient and fiber gradient of a function on a bundle.
struct GradientPair {
  FiberElement grad;
  FiberElement fiber;
};

// L = 1/2 <w, w>_q
GradientPair grad_quadratic(const Density& q, const FiberElement& w);
// L = K_q(w)
GradientPair grad_cumulant_lagrangian(const Density& q, const FiberElement& w);
// H = E_q[(1 + eta) log(1 + eta)]
GradientPair grad_conjugate_cumulant(const Density& q, const FiberElement& eta);
double conjugate_cumulant(const Density& q, const FiberElement& eta);

// Scalar function F(q, eta, w, c) on the full bundle with parameters, given
// with its four gradients.
struct FullBundleFunction {
  using Value = std::function<double(const Density&, const FiberElement&, const FiberElement&,
                                     std::span<const double>)>;
  using Fiber = std::function<FiberElement(const Density&, const FiberElement&,
                                           const FiberElement&, std::span<const double>)>;
  using Euclid = std::function<std::vector<double>(const Density&, const FiberElement&,
                                                   const FiberElement&, std::span<const double>)>;
  Value value;
  Fiber grad;    // mixture at q
  Fiber grad_m;  // exponential at q, with respect to eta
  Fiber grad_e;  // mixture at q, with respect to w
  Euclid grad_c;
};

struct FullBundleCurve {
  SmoothCurve base;
  std::function<FiberElement(double)> eta;
  std::function<FiberElement(double)> w;
  // Parameter path; empty means no parameters.
  std::function<std::vector<double>(double)> c;
};

// <Grad F, velocity> + <mD eta, Grad_m F> + <Grad_e F, eD w> + grad_c . cdot
double total_derivative(const FullBundleFunction& F, const FullBundleCurve& curve, double t);

struct MaxEntropy {
  double theta;
  Density q;
  double residual;  // |E_q f - b|
  int iterations;
};

// Maximizes entropy relative to p subject to E_q f = b.
MaxEntropy constrained_max_entropy(const RandomVariable& f, double b, const Density& p);

}  // namespace igeo
