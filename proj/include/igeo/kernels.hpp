#pragma once

// Reduction kernels over sample-space arrays.
//
// Two implementations live side by side: `serial` is the reference, summing
// strictly left to right; `omp` splits the index range into fixed-size chunks,
// reduces the chunks in parallel and adds the partial sums left to right. The
// chunk size does not depend on the thread count, so `omp` results are
// bit-identical across runs and thread counts. The unqualified dispatchers
// use `serial` below kParallelThreshold points.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace igeo::kernels {

using Span = std::span<const double>;

inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 15;
inline constexpr std::size_t kChunk = 4096;

namespace serial {

double sum(Span a);
double dot(Span a, Span b);
double dot3(Span a, Span b, Span c);
double dot4(Span a, Span b, Span c, Span d);
// sum_i exp(u_i - shift) p_i m_i
double shifted_exp_dot(Span u, double shift, Span p, Span m);
double max(Span a);
double max_abs(Span a);

// sum_i f(x_i) w_i
template <class F>
double transform_dot(Span x, Span w, F&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += f(x[i]) * w[i];
  return s;
}

}  // namespace serial

namespace omp {

double sum(Span a);
double dot(Span a, Span b);
double dot3(Span a, Span b, Span c);
double dot4(Span a, Span b, Span c, Span d);
double shifted_exp_dot(Span u, double shift, Span p, Span m);
double max(Span a);
double max_abs(Span a);

template <class ChunkFn>
double chunked_sum(std::size_t n, ChunkFn&& fn) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  const auto count = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    partial[static_cast<std::size_t>(c)] = fn(lo, hi);
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

template <class F>
double transform_dot(Span x, Span w, F&& f) {
  return chunked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::transform_dot(x.subspan(lo, hi - lo), w.subspan(lo, hi - lo), f);
  });
}

}  // namespace omp

inline bool use_parallel(std::size_t n) { return n >= kParallelThreshold; }

inline double sum(Span a) { return use_parallel(a.size()) ? omp::sum(a) : serial::sum(a); }
inline double dot(Span a, Span b) {
  return use_parallel(a.size()) ? omp::dot(a, b) : serial::dot(a, b);
}
inline double dot3(Span a, Span b, Span c) {
  return use_parallel(a.size()) ? omp::dot3(a, b, c) : serial::dot3(a, b, c);
}
inline double dot4(Span a, Span b, Span c, Span d) {
  return use_parallel(a.size()) ? omp::dot4(a, b, c, d) : serial::dot4(a, b, c, d);
}
inline double shifted_exp_dot(Span u, double shift, Span p, Span m) {
  return use_parallel(u.size()) ? omp::shifted_exp_dot(u, shift, p, m)
                                : serial::shifted_exp_dot(u, shift, p, m);
}
inline double max(Span a) { return use_parallel(a.size()) ? omp::max(a) : serial::max(a); }
inline double max_abs(Span a) {
  return use_parallel(a.size()) ? omp::max_abs(a) : serial::max_abs(a);
}
template <class F>
double transform_dot(Span x, Span w, F&& f) {
  return use_parallel(x.size()) ? omp::transform_dot(x, w, f) : serial::transform_dot(x, w, f);
}

}  // namespace igeo::kernels
