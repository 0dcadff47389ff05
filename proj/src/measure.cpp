#include "igeo/measure.hpp"

#include <cmath>
#include <sstream>

#include "igeo/errors.hpp"
#include "igeo/kernels.hpp"

namespace igeo {

namespace {

std::vector<double> zip(const RandomVariable& a, const RandomVariable& b,
                        double (*op)(double, double)) {
  require_same_space(a.space(), b.space());
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return out;
}

}  // namespace

FiniteSpace::FiniteSpace(std::vector<double> weights) {
  if (weights.empty()) throw ValidationError("finite space needs at least one point");
  for (double w : weights) {
    if (!std::isfinite(w) || !(w > 0.0)) {
      throw ValidationError("reference weights must be finite and strictly positive");
    }
  }
  const double total = kernels::sum(weights);
  if (std::abs(total - 1.0) > kWeightTolerance) {
    std::ostringstream msg;
    msg << "reference weights sum to " << total << ", expected 1";
    throw ValidationError(msg.str());
  }
  weights_ = std::make_shared<const std::vector<double>>(std::move(weights));
}

FiniteSpace FiniteSpace::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("finite space needs at least one point");
  // 1/n summed n times can miss 1 by a few ulps; that is well inside tolerance.
  return FiniteSpace(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

bool FiniteSpace::operator==(const FiniteSpace& other) const {
  return weights_ == other.weights_ || *weights_ == *other.weights_;
}

RandomVariable::RandomVariable(FiniteSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw DimensionError("random variable length does not match the sample space");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("random variable has a non-finite value");
  }
}

RandomVariable RandomVariable::constant(const FiniteSpace& space, double c) {
  return RandomVariable(space, std::vector<double>(space.size(), c));
}

double RandomVariable::max_abs() const { return kernels::max_abs(values_); }

RandomVariable RandomVariable::map(const std::function<double(double)>& fn) const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(values_[i]);
  return RandomVariable(space_, std::move(out));
}

RandomVariable operator+(const RandomVariable& a, const RandomVariable& b) {
  return RandomVariable(a.space(), zip(a, b, [](double x, double y) { return x + y; }));
}

RandomVariable operator-(const RandomVariable& a, const RandomVariable& b) {
  return RandomVariable(a.space(), zip(a, b, [](double x, double y) { return x - y; }));
}

RandomVariable operator-(const RandomVariable& a) { return -1.0 * a; }

RandomVariable operator*(const RandomVariable& a, const RandomVariable& b) {
  return RandomVariable(a.space(), zip(a, b, [](double x, double y) { return x * y; }));
}

RandomVariable operator/(const RandomVariable& a, const RandomVariable& b) {
  return RandomVariable(a.space(), zip(a, b, [](double x, double y) { return x / y; }));
}

RandomVariable operator*(double s, const RandomVariable& a) {
  return a.map([s](double x) { return s * x; });
}

RandomVariable operator+(const RandomVariable& a, double c) {
  return a.map([c](double x) { return x + c; });
}

Density::Density(FiniteSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw DimensionError("density length does not match the sample space");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || !(v > kPositivityFloor)) {
      throw ValidationError("density values must be finite and strictly positive");
    }
  }
  const double mass = kernels::dot(values_, space_.weights());
  if (std::abs(mass - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density integrates to " << mass << ", expected 1";
    throw ValidationError(msg.str());
  }
}

Density Density::uniform(const FiniteSpace& space) {
  return Density(space, std::vector<double>(space.size(), 1.0));
}

RandomVariable Density::log() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(values_[i]);
  return RandomVariable(space_, std::move(out));
}

Renormalized renormalize(const FiniteSpace& space, std::vector<double> values) {
  if (values.size() != space.size()) throw DimensionError("renormalize: length mismatch");
  for (double v : values) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw DomainError("renormalize: values must be finite and strictly positive");
    }
  }
  const double mass = kernels::dot(values, space.weights());
  for (double& v : values) v /= mass;
  return {Density(space, std::move(values)), std::abs(mass - 1.0)};
}

std::string_view to_string(FiberKind kind) {
  return kind == FiberKind::exponential ? "exponential" : "mixture";
}

FiberElement::FiberElement(Density base, RandomVariable rv, FiberKind kind)
    : base_(std::move(base)), rv_(std::move(rv)), kind_(kind) {
  require_same_space(base_.space(), rv_.space());
  const double mean = kernels::dot3(rv_.values(), base_.values(), base_.space().weights());
  const double scale = std::max(1.0, rv_.max_abs());
  if (std::abs(mean) > kCenteringTolerance * scale) {
    std::ostringstream msg;
    msg << "fiber element is not centered under its base (mean " << mean << ")";
    throw ValidationError(msg.str());
  }
}

FiberElement FiberElement::zero(const Density& base, FiberKind kind) {
  return FiberElement(base, RandomVariable::zeros(base.space()), kind);
}

namespace {

void require_compatible(const FiberElement& a, const FiberElement& b) {
  require_kind(b, a.kind());
  if (!same_density(a.base(), b.base())) {
    throw BaseError("fiber elements are based at different densities");
  }
}

}  // namespace

FiberElement operator+(const FiberElement& a, const FiberElement& b) {
  require_compatible(a, b);
  return FiberElement(a.base(), a.rv() + b.rv(), a.kind());
}

FiberElement operator-(const FiberElement& a, const FiberElement& b) {
  require_compatible(a, b);
  return FiberElement(a.base(), a.rv() - b.rv(), a.kind());
}

FiberElement operator*(double s, const FiberElement& a) {
  return FiberElement(a.base(), s * a.rv(), a.kind());
}

void require_same_space(const FiniteSpace& a, const FiniteSpace& b) {
  if (!(a == b)) throw DimensionError("operands live on different sample spaces");
}

bool same_density(const Density& a, const Density& b) {
  if (!(a.space() == b.space())) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
    if (std::abs(a[i] - b[i]) > 1e-12 * scale) return false;
  }
  return true;
}

void require_base(const FiberElement& f, const Density& p) {
  require_same_space(f.base().space(), p.space());
  if (!same_density(f.base(), p)) throw BaseError("fiber element is not based at this density");
}

void require_kind(const FiberElement& f, FiberKind kind) {
  if (f.kind() != kind) {
    throw BaseError(std::string("expected a ") + std::string(to_string(kind)) +
                    " fiber element, got " + std::string(to_string(f.kind())));
  }
}

double expectation(const RandomVariable& f, const Density& p) {
  require_same_space(f.space(), p.space());
  return kernels::dot3(f.values(), p.values(), p.space().weights());
}

double integral(const RandomVariable& f) { return kernels::dot(f.values(), f.space().weights()); }

FiberElement center(const RandomVariable& f, const Density& p, FiberKind kind) {
  const double mean = expectation(f, p);
  FiberElement out(p, f - mean, kind);
  return out;
}

double pairing(const FiberElement& eta, const FiberElement& w, const Density& p) {
  require_base(eta, p);
  require_base(w, p);
  return kernels::dot4(eta.values(), w.values(), p.values(), p.space().weights());
}

double pairing(const FiberElement& eta, const FiberElement& w) {
  return pairing(eta, w, eta.base());
}

double covariance(const RandomVariable& f, const RandomVariable& g, const Density& p) {
  const RandomVariable fc = f - expectation(f, p);
  const RandomVariable gc = g - expectation(g, p);
  return kernels::dot4(fc.values(), gc.values(), p.values(), p.space().weights());
}

double third_covariance(const RandomVariable& f, const RandomVariable& g,
                        const RandomVariable& h, const Density& p) {
  const RandomVariable fc = f - expectation(f, p);
  const RandomVariable gc = g - expectation(g, p);
  const RandomVariable hc = h - expectation(h, p);
  const RandomVariable fg = fc * gc;
  return kernels::dot4(fg.values(), hc.values(), p.values(), p.space().weights());
}

double l2_inner(const RandomVariable& f, const RandomVariable& g) {
  require_same_space(f.space(), g.space());
  return kernels::dot3(f.values(), g.values(), f.space().weights());
}

}  // namespace igeo
