#pragma once

// Reproducible random instances for tests, audits and benchmarks.

#include <cstdint>
#include <random>

#include "igeo/measure.hpp"

namespace igeo::random {

using Engine = std::mt19937_64;

// Weights proportional to uniform draws on [0.5, 1.5].
FiniteSpace space(Engine& rng, std::size_t n);
// Density proportional to exp(spread * N(0, 1)).
Density density(Engine& rng, const FiniteSpace& space, double spread = 1.0);
// Entries scale * N(0, 1).
RandomVariable variable(Engine& rng, const FiniteSpace& space, double scale = 1.0);
// Centered under p.
FiberElement fiber(Engine& rng, const Density& p, FiberKind kind, double scale = 1.0);
// Mixture chart coordinate at p of a random density.
FiberElement mixture_coordinate(Engine& rng, const Density& p, double scale = 0.5);

}  // namespace igeo::random
