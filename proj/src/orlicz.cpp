#include "igeo/orlicz.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "igeo/errors.hpp"
#include "igeo/kernels.hpp"

namespace igeo {

namespace {

constexpr int kBisectionCap = 200;

// Smallest x >= 0 with phi(x) >= y, by doubling then bisection.
template <class F>
double invert_increasing(F&& phi, double y) {
  if (y <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (phi(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw DomainError("Young function inverse overflowed");
  }
  for (int k = 0; k < kBisectionCap; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi(mid) < y ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

double gauss2_prime_inverse(double y) {
  if (!(y >= 0.0)) throw DomainError("gauss2 conjugate needs y >= 0");
  if (y == 0.0) return 0.0;
  const double log_y = std::log(y);
  // x e^{x^2/2} >= x, and for x >= 1 also e^{x^2/2} <= y.
  const double cap = std::min(y, std::max(1.0, std::sqrt(2.0 * std::max(0.0, log_y))));
  double x = std::min(y, std::sqrt(2.0 * std::log1p(y)));
  for (int k = 0; k < 100; ++k) {
    const double g = std::log(x) + 0.5 * x * x - log_y;
    const double next = x - g / (1.0 / x + x);
    if (!(next > 0.0) || !std::isfinite(next)) break;
    if (std::abs(next - x) <= 1e-12 * x) return next;
    x = next;
  }
  // Newton stagnated; bisect on the monotone map.
  double lo = 0.0;
  double hi = cap;
  for (int k = 0; k < kBisectionCap; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (std::log(mid) + 0.5 * mid * mid < log_y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

YoungPair YoungPair::power(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw ValidationError("power Young function needs alpha > 1");
  }
  return YoungPair(YoungKind::power, alpha);
}

YoungPair YoungPair::parse(std::string_view text) {
  if (text.starts_with("power:")) {
    const std::string_view num = text.substr(6);
    double alpha = 0.0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), alpha);
    if (ec != std::errc() || ptr != num.data() + num.size()) {
      throw ConfigurationError("cannot parse power exponent in '" + std::string(text) + "'");
    }
    return power(alpha);
  }
  if (text == "exp2") return exp2();
  if (text == "exp2_conj") return exp2_conj();
  if (text == "cosh2") return cosh2();
  if (text == "cosh2_conj") return cosh2_conj();
  if (text == "gauss2") return gauss2();
  if (text == "gauss2_conj") return gauss2_conj();
  throw ConfigurationError("unknown Young function '" + std::string(text) + "'");
}

std::string YoungPair::name() const {
  switch (kind_) {
    case YoungKind::power: {
      std::ostringstream s;
      s << "power:" << alpha_;
      return s.str();
    }
    case YoungKind::exp2: return "exp2";
    case YoungKind::exp2_conj: return "exp2_conj";
    case YoungKind::cosh2: return "cosh2";
    case YoungKind::cosh2_conj: return "cosh2_conj";
    case YoungKind::gauss2: return "gauss2";
    case YoungKind::gauss2_conj: return "gauss2_conj";
  }
  return "unknown";
}

double YoungPair::phi(double x) const {
  x = std::abs(x);
  switch (kind_) {
    case YoungKind::power: return std::pow(x, alpha_) / alpha_;
    case YoungKind::exp2: return std::expm1(x) - x;
    case YoungKind::exp2_conj: return (1.0 + x) * std::log1p(x) - x;
    case YoungKind::cosh2: {
      const double s = std::sinh(0.5 * x);
      return 2.0 * s * s;
    }
    case YoungKind::cosh2_conj: return x * std::asinh(x) - std::sqrt(1.0 + x * x) + 1.0;
    case YoungKind::gauss2: return std::expm1(0.5 * x * x);
    case YoungKind::gauss2_conj: {
      const double s = gauss2_prime_inverse(x);
      return s * x - std::expm1(0.5 * s * s);
    }
  }
  return 0.0;
}

double YoungPair::phi_prime(double x) const {
  x = std::abs(x);
  switch (kind_) {
    case YoungKind::power: return std::pow(x, alpha_ - 1.0);
    case YoungKind::exp2: return std::expm1(x);
    case YoungKind::exp2_conj: return std::log1p(x);
    case YoungKind::cosh2: return std::sinh(x);
    case YoungKind::cosh2_conj: return std::asinh(x);
    case YoungKind::gauss2: return x * std::exp(0.5 * x * x);
    case YoungKind::gauss2_conj: return gauss2_prime_inverse(x);
  }
  return 0.0;
}

double YoungPair::inverse(double y) const {
  if (y <= 0.0) return 0.0;
  switch (kind_) {
    case YoungKind::power: return std::pow(alpha_ * y, 1.0 / alpha_);
    case YoungKind::cosh2: return std::acosh(1.0 + y);
    case YoungKind::gauss2: return std::sqrt(2.0 * std::log1p(y));
    default: return invert_increasing([this](double x) { return phi(x); }, y);
  }
}

YoungPair YoungPair::conjugate() const {
  switch (kind_) {
    case YoungKind::power: return power(alpha_ / (alpha_ - 1.0));
    case YoungKind::exp2: return exp2_conj();
    case YoungKind::exp2_conj: return exp2();
    case YoungKind::cosh2: return cosh2_conj();
    case YoungKind::cosh2_conj: return cosh2();
    case YoungKind::gauss2: return gauss2_conj();
    case YoungKind::gauss2_conj: return gauss2();
  }
  return *this;
}

double young_eval(const YoungPair& Y, double x) { return Y.phi(x); }

double modular(const RandomVariable& f, const YoungPair& Y, double rho) {
  return kernels::transform_dot(f.values(), f.space().weights(),
                                [&Y, rho](double x) { return Y.phi(x / rho); });
}

double luxemburg_norm(const RandomVariable& f, const YoungPair& Y) {
  const double top = f.max_abs();
  if (top == 0.0) return 0.0;
  double mass_at_top = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::abs(f[i]) == top) {
      mass_at_top = f.space().weight(i);
      break;
    }
  }
  // At lo the maximal entry alone contributes 1; at hi every entry
  // contributes at most its weight.
  double lo = top / Y.inverse(1.0 / mass_at_top);
  double hi = top / Y.inverse(1.0);
  while (modular(f, Y, lo) < 1.0) lo *= 0.5;
  while (modular(f, Y, hi) > 1.0) hi *= 2.0;
  for (int k = 0; k < kBisectionCap; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (modular(f, Y, mid) > 1.0 ? lo : hi) = mid;
  }
  return hi;
}

double orlicz_dual_pairing_gap(const RandomVariable& u, const RandomVariable& v,
                               const YoungPair& Y) {
  require_same_space(u.space(), v.space());
  const double bound = 2.0 * luxemburg_norm(u, Y) * luxemburg_norm(v, Y.conjugate());
  return bound - std::abs(l2_inner(u, v));
}

double subexp_bracket_norm(const RandomVariable& f, int kmax) {
  if (kmax < 1) throw ValidationError("bracket norm needs kmax >= 1");
  std::vector<double> log_abs;
  std::vector<double> log_m;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] != 0.0) {
      log_abs.push_back(std::log(std::abs(f[i])));
      log_m.push_back(std::log(f.space().weight(i)));
    }
  }
  if (log_abs.empty()) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> terms(log_abs.size());
  for (int k = 1; k <= kmax; ++k) {
    const double two_k = 2.0 * k;
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = two_k * log_abs[i] + log_m[i];
    const double shift = kernels::max(terms);
    double s = 0.0;
    for (double x : terms) s += std::exp(x - shift);
    const double log_moment = shift + std::log(s) - std::lgamma(two_k + 1.0);
    best = std::max(best, log_moment / two_k);
  }
  return std::exp(best);
}

TailReport tail_bound_audit(const RandomVariable& f, const std::vector<double>& t_grid) {
  TailReport report{luxemburg_norm(f, YoungPair::cosh2()), 0, 0,
                    std::numeric_limits<double>::infinity()};
  if (report.rho == 0.0) throw ValidationError("tail bound audit needs a nonzero variable");
  for (double t : t_grid) {
    double tail = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (std::abs(f[i]) >= t) tail += f.space().weight(i);
    }
    const double slack = 4.0 * std::exp(-t / report.rho) - tail;
    ++report.checked;
    if (slack < 0.0) ++report.violations;
    report.worst_slack = std::min(report.worst_slack, slack);
  }
  return report;
}

YoungReport young_identity_audit(const YoungPair& Y, const std::vector<double>& x_grid,
                                 const std::vector<double>& y_grid) {
  const YoungPair Psi = Y.conjugate();
  const double legendre_tol = (Y.numeric() || Psi.numeric()) ? 1e-6 : 1e-8;
  YoungReport r{0, 0, std::numeric_limits<double>::infinity(), 0, 0, 0.0};
  std::vector<double> psi_y(y_grid.size());
  for (std::size_t j = 0; j < y_grid.size(); ++j) psi_y[j] = Psi.phi(y_grid[j]);
  for (double x : x_grid) {
    const double phi_x = Y.phi(x);
    for (std::size_t j = 0; j < y_grid.size(); ++j) {
      const double xy = x * y_grid[j];
      const double slack = (phi_x + psi_y[j] - xy) / std::max(1.0, xy);
      ++r.inequality_checks;
      if (slack < -1e-10) ++r.inequality_violations;
      r.worst_inequality = std::min(r.worst_inequality, slack);
    }
    const double y = Y.phi_prime(x);
    const double xy = x * y;
    const double gap = std::abs(phi_x + Psi.phi(y) - xy) / std::max(1.0, xy);
    ++r.legendre_checks;
    if (gap > legendre_tol) ++r.legendre_violations;
    r.worst_legendre = std::max(r.worst_legendre, gap);
  }
  return r;
}

DominationReport domination_audit(const YoungPair& Y1, const YoungPair& Y2,
                                  const std::vector<RandomVariable>& samples) {
  double c = 0.0;
  for (const RandomVariable& f : samples) {
    const double denom = luxemburg_norm(f, Y2);
    if (denom == 0.0) continue;
    c = std::max(c, luxemburg_norm(f, Y1) / denom);
  }
  return {c, std::isfinite(c)};
}

double growth_bound_slack(const YoungPair& Y, const std::vector<double>& a_grid,
                          const std::vector<double>& y_grid) {
  if (Y.kind() != YoungKind::exp2_conj && Y.kind() != YoungKind::cosh2_conj) {
    throw ConfigurationError("growth bound applies to exp2_conj and cosh2_conj");
  }
  double worst = std::numeric_limits<double>::infinity();
  for (double a : a_grid) {
    for (double y : y_grid) {
      const double lhs = Y.phi(a * y);
      const double slack = a * std::max(1.0, a) * Y.phi(y) - lhs;
      worst = std::min(worst, slack / std::max(1.0, lhs));
    }
  }
  return worst;
}

}  // namespace igeo
