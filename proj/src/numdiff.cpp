#include "igeo/numdiff.hpp"

#include "igeo/errors.hpp"

namespace igeo::numdiff {

namespace {

enum class Side { central, forward, backward };

// Central when [t - inner, t + inner] fits, else the one-sided stencil
// spanning `outer` that fits.
Side pick_side(double t, const Interval& domain, double inner, double outer) {
  if (!domain.contains(t)) throw DomainError("evaluation point outside the curve domain");
  if (t - inner >= domain.lo && t + inner <= domain.hi) return Side::central;
  if (t + outer <= domain.hi) return Side::forward;
  if (t - outer >= domain.lo) return Side::backward;
  throw DomainError("curve domain is shorter than the difference stencil");
}

std::vector<double> combine(const std::vector<std::vector<double>>& samples,
                            const std::vector<double>& coef, double scale) {
  std::vector<double> out(samples.front().size(), 0.0);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (samples[k].size() != out.size()) throw DimensionError("curve changed length");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coef[k] * samples[k][i];
  }
  for (double& v : out) v /= scale;
  return out;
}

}  // namespace

double central(const ScalarFn& f, double t, double h) {
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

double central2(const ScalarFn& f, double t, double h) {
  return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

double richardson(const ScalarFn& f, double t, double h) {
  const double coarse = central(f, t, h);
  const double fine = central(f, t, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

std::vector<double> derivative(const VectorFn& f, double t, const Interval& domain, double h) {
  switch (pick_side(t, domain, h, 2.0 * h)) {
    case Side::central:
      return combine({f(t + h), f(t - h)}, {1.0, -1.0}, 2.0 * h);
    case Side::forward:
      return combine({f(t), f(t + h), f(t + 2.0 * h)}, {-3.0, 4.0, -1.0}, 2.0 * h);
    case Side::backward:
      return combine({f(t), f(t - h), f(t - 2.0 * h)}, {3.0, -4.0, 1.0}, 2.0 * h);
  }
  return {};
}

std::vector<double> second_derivative(const VectorFn& f, double t, const Interval& domain,
                                      double h) {
  switch (pick_side(t, domain, h, 3.0 * h)) {
    case Side::central:
      return combine({f(t + h), f(t), f(t - h)}, {1.0, -2.0, 1.0}, h * h);
    case Side::forward:
      return combine({f(t), f(t + h), f(t + 2.0 * h), f(t + 3.0 * h)}, {2.0, -5.0, 4.0, -1.0},
                     h * h);
    case Side::backward:
      return combine({f(t), f(t - h), f(t - 2.0 * h), f(t - 3.0 * h)}, {2.0, -5.0, 4.0, -1.0},
                     h * h);
  }
  return {};
}

}  // namespace igeo::numdiff
