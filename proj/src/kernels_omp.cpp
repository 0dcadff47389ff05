#include "igeo/kernels.hpp"

namespace igeo::kernels::omp {

namespace {

Span sub(Span a, std::size_t lo, std::size_t hi) { return a.subspan(lo, hi - lo); }

template <class ChunkFn>
double chunked_max(std::size_t n, ChunkFn&& fn) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, -std::numeric_limits<double>::infinity());
  const auto count = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    partial[static_cast<std::size_t>(c)] = fn(lo, hi);
  }
  double r = -std::numeric_limits<double>::infinity();
  for (double v : partial) r = std::max(r, v);
  return r;
}

}  // namespace

double sum(Span a) {
  return chunked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::sum(sub(a, lo, hi));
  });
}

double dot(Span a, Span b) {
  return chunked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::dot(sub(a, lo, hi), sub(b, lo, hi));
  });
}

double dot3(Span a, Span b, Span c) {
  return chunked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::dot3(sub(a, lo, hi), sub(b, lo, hi), sub(c, lo, hi));
  });
}

double dot4(Span a, Span b, Span c, Span d) {
  return chunked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::dot4(sub(a, lo, hi), sub(b, lo, hi), sub(c, lo, hi), sub(d, lo, hi));
  });
}

double shifted_exp_dot(Span u, double shift, Span p, Span m) {
  return chunked_sum(u.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::shifted_exp_dot(sub(u, lo, hi), shift, sub(p, lo, hi), sub(m, lo, hi));
  });
}

double max(Span a) {
  return chunked_max(a.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::max(sub(a, lo, hi));
  });
}

double max_abs(Span a) {
  if (a.empty()) return 0.0;
  return chunked_max(a.size(), [&](std::size_t lo, std::size_t hi) {
    return serial::max_abs(sub(a, lo, hi));
  });
}

}  // namespace igeo::kernels::omp
