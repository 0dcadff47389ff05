#include "igeo/kernels.hpp"

namespace igeo::kernels::serial {

double sum(Span a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s;
}

double dot(Span a, Span b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dot3(Span a, Span b, Span c) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i] * c[i];
  return s;
}

double dot4(Span a, Span b, Span c, Span d) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i] * c[i] * d[i];
  return s;
}

double shifted_exp_dot(Span u, double shift, Span p, Span m) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::exp(u[i] - shift) * p[i] * m[i];
  return s;
}

double max(Span a) {
  double r = -std::numeric_limits<double>::infinity();
  for (double v : a) r = std::max(r, v);
  return r;
}

double max_abs(Span a) {
  double r = 0.0;
  for (double v : a) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace igeo::kernels::serial
