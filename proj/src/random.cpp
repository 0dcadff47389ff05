#include "igeo/random.hpp"

#include <cmath>

#include "igeo/charts.hpp"
#include "igeo/kernels.hpp"

namespace igeo::random {

FiniteSpace space(Engine& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> w(n);
  for (double& v : w) v = u(rng);
  const double total = kernels::sum(w);
  for (double& v : w) v /= total;
  return FiniteSpace(std::move(w));
}

Density density(Engine& rng, const FiniteSpace& space, double spread) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> v(space.size());
  for (double& x : v) x = std::exp(spread * z(rng));
  return renormalize(space, std::move(v)).density;
}

RandomVariable variable(Engine& rng, const FiniteSpace& space, double scale) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> v(space.size());
  for (double& x : v) x = scale * z(rng);
  return RandomVariable(space, std::move(v));
}

FiberElement fiber(Engine& rng, const Density& p, FiberKind kind, double scale) {
  return center(variable(rng, p.space(), scale), p, kind);
}

FiberElement mixture_coordinate(Engine& rng, const Density& p, double scale) {
  // The mixture chart of another random density is centered and above -1.
  const Density q = density(rng, p.space(), scale);
  return mix_chart(p, q);
}

}  // namespace igeo::random
