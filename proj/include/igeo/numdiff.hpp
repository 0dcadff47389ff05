#pragma once

// Finite-difference stencils. Vector versions act componentwise on the
// returned arrays and switch to one-sided second-order stencils when the
// central stencil would leave the domain.

#include <functional>
#include <vector>

namespace igeo {

struct Interval {
  double lo;
  double hi;

  bool contains(double t) const { return t >= lo && t <= hi; }
};

inline constexpr double kFirstStep = 1e-5;
inline constexpr double kSecondStep = 1e-4;

namespace numdiff {

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<std::vector<double>(double)>;

double central(const ScalarFn& f, double t, double h = kFirstStep);
double central2(const ScalarFn& f, double t, double h = kSecondStep);
// Two central quotients at h and h/2 combined to cancel the h^2 term.
double richardson(const ScalarFn& f, double t, double h);

std::vector<double> derivative(const VectorFn& f, double t, const Interval& domain,
                               double h = kFirstStep);
std::vector<double> second_derivative(const VectorFn& f, double t, const Interval& domain,
                                      double h = kSecondStep);

}  // namespace numdiff

}  // namespace igeo
