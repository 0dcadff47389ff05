#pragma once

// Chart maps between densities and fiber coordinates, the cumulant functional
// and its derivatives, divergences, and the stereographic sphere charts.

#include <string_view>

#include "igeo/measure.hpp"

namespace igeo {

enum class GeometryKind { flat, mixture, exponential };

std::string_view to_string(GeometryKind kind);
GeometryKind parse_geometry(std::string_view name);

// q/p - 1, a mixture element at p.
FiberElement mix_chart(const Density& p, const Density& q);
// (1 + eta) p; every eta_i must exceed -1.
Density mix_inv(const Density& p, const FiberElement& eta);

// log(q/p) - E_p log(q/p), an exponential element at p.
FiberElement exp_chart(const Density& p, const Density& q);
// exp(u - K_p(u)) p.
Density exp_inv(const Density& p, const FiberElement& u);

// q - p; integrates to zero against m but is not centered under p.
RandomVariable flat_chart(const Density& p, const Density& q);
Density flat_inv(const Density& p, const RandomVariable& u);

// Kind-dispatched forms over raw coordinates, with the transport of each kind
// taking chart_q coordinates to chart_p coordinates.
RandomVariable chart(GeometryKind kind, const Density& p, const Density& q);
Density chart_inv(GeometryKind kind, const Density& p, const RandomVariable& u);

// E_p[e^u] and its logarithm, evaluated with a max shift.
double moment(const Density& p, const FiberElement& u);
double cumulant(const Density& p, const FiberElement& u);

// Derivatives of K_p at u: mean, covariance and third covariance of the
// directions under e_p(u).
double cumulant_d1(const Density& p, const FiberElement& u, const FiberElement& h);
double cumulant_d2(const Density& p, const FiberElement& u, const FiberElement& h1,
                   const FiberElement& h2);
double cumulant_d3(const Density& p, const FiberElement& u, const FiberElement& h1,
                   const FiberElement& h2, const FiberElement& h3);

// KL(p || q) = sum p log(p/q) m.
double kl(const Density& p, const Density& q);
// -sum q log q m
double entropy(const Density& q);

struct PythagorasSides {
  double lhs;  // KL(r||q) + <v, u>_p
  double rhs;  // KL(r||p) + KL(p||q)
};
// u = exp_chart(p, q), v = mix_chart(p, r).
PythagorasSides kl_pythagoras(const Density& p, const Density& q, const Density& r);

// Coordinate of S^{-1}_sigma(v) in the chart centered at S^{-1}_sigma(u).
struct Displacement {
  Density base;
  RandomVariable rv;
};
Displacement displacement_expr(GeometryKind kind, const Density& sigma, const RandomVariable& u,
                               const RandomVariable& v);

// Stereographic chart of the L2(m) unit sphere centered at alpha.
inline constexpr double kUnitNormTolerance = 1e-10;
inline constexpr double kPoleThreshold = 1e-12;
RandomVariable sphere_chart(const RandomVariable& alpha, const RandomVariable& beta);
RandomVariable sphere_inv(const RandomVariable& alpha, const RandomVariable& u);

// Sphere chart through q -> sqrt(q).
RandomVariable sqrt_chart(const Density& p, const Density& q);
Density sqrt_inv(const Density& p, const RandomVariable& u);

}  // namespace igeo
