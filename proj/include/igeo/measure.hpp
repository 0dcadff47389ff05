#pragma once

// Finite sample spaces, densities, random variables and centered fiber
// elements. Every value here is immutable once constructed.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace igeo {

// Sample points carrying strictly positive reference weights that sum to one.
class FiniteSpace {
 public:
  static constexpr double kWeightTolerance = 1e-12;

  explicit FiniteSpace(std::vector<double> weights);
  static FiniteSpace uniform(std::size_t n);

  std::size_t size() const { return weights_->size(); }
  std::span<const double> weights() const { return *weights_; }
  double weight(std::size_t i) const { return (*weights_)[i]; }

  // Same object, or identical weights.
  bool operator==(const FiniteSpace& other) const;

 private:
  std::shared_ptr<const std::vector<double>> weights_;
};

class RandomVariable {
 public:
  RandomVariable(FiniteSpace space, std::vector<double> values);

  static RandomVariable constant(const FiniteSpace& space, double c);
  static RandomVariable zeros(const FiniteSpace& space) { return constant(space, 0.0); }

  const FiniteSpace& space() const { return space_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double max_abs() const;

  // Pointwise image under fn.
  RandomVariable map(const std::function<double(double)>& fn) const;

  friend RandomVariable operator+(const RandomVariable& a, const RandomVariable& b);
  friend RandomVariable operator-(const RandomVariable& a, const RandomVariable& b);
  friend RandomVariable operator-(const RandomVariable& a);
  // Pointwise product and quotient.
  friend RandomVariable operator*(const RandomVariable& a, const RandomVariable& b);
  friend RandomVariable operator/(const RandomVariable& a, const RandomVariable& b);
  friend RandomVariable operator*(double s, const RandomVariable& a);
  friend RandomVariable operator*(const RandomVariable& a, double s) { return s * a; }
  friend RandomVariable operator+(const RandomVariable& a, double c);
  friend RandomVariable operator-(const RandomVariable& a, double c) { return a + (-c); }

 private:
  FiniteSpace space_;
  std::vector<double> values_;
};

// Strictly positive function integrating to one against the reference weights.
class Density {
 public:
  static constexpr double kNormTolerance = 1e-10;
  static constexpr double kPositivityFloor = 1e-300;

  // Rejects non-positive entries and normalization off by more than
  // kNormTolerance; never renormalizes.
  Density(FiniteSpace space, std::vector<double> values);

  static Density uniform(const FiniteSpace& space);

  const FiniteSpace& space() const { return space_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  RandomVariable as_random_variable() const { return RandomVariable(space_, values_); }
  RandomVariable log() const;

 private:
  FiniteSpace space_;
  std::vector<double> values_;
};

struct Renormalized {
  Density density;
  // |sum_i v_i m_i - 1| before scaling.
  double residual;
};

// Scales positive values onto a density. Callers decide when drift is
// acceptable; nothing renormalizes implicitly.
Renormalized renormalize(const FiniteSpace& space, std::vector<double> values);

enum class FiberKind { exponential, mixture };

std::string_view to_string(FiberKind kind);

// Random variable centered under its base density.
class FiberElement {
 public:
  // Centering tolerance, relative to max(1, max|rv|).
  static constexpr double kCenteringTolerance = 1e-10;

  FiberElement(Density base, RandomVariable rv, FiberKind kind);

  static FiberElement zero(const Density& base, FiberKind kind);

  const Density& base() const { return base_; }
  const RandomVariable& rv() const { return rv_; }
  FiberKind kind() const { return kind_; }
  std::span<const double> values() const { return rv_.values(); }
  double operator[](std::size_t i) const { return rv_[i]; }
  std::size_t size() const { return rv_.size(); }

  // Fiber-linear operations; both operands must share base and kind.
  friend FiberElement operator+(const FiberElement& a, const FiberElement& b);
  friend FiberElement operator-(const FiberElement& a, const FiberElement& b);
  friend FiberElement operator*(double s, const FiberElement& a);

 private:
  Density base_;
  RandomVariable rv_;
  FiberKind kind_;
};

void require_same_space(const FiniteSpace& a, const FiniteSpace& b);
// Same space and values equal to relative 1e-12.
bool same_density(const Density& a, const Density& b);
void require_base(const FiberElement& f, const Density& p);
void require_kind(const FiberElement& f, FiberKind kind);

// sum_i f_i p_i m_i
double expectation(const RandomVariable& f, const Density& p);
// Plain reference-measure integral sum_i f_i m_i.
double integral(const RandomVariable& f);
// f - E_p[f], as a fiber element at p.
FiberElement center(const RandomVariable& f, const Density& p,
                    FiberKind kind = FiberKind::exponential);
// <eta, w>_p = sum_i eta_i w_i p_i m_i, mixture element first.
double pairing(const FiberElement& eta, const FiberElement& w, const Density& p);
double pairing(const FiberElement& eta, const FiberElement& w);
double covariance(const RandomVariable& f, const RandomVariable& g, const Density& p);
double third_covariance(const RandomVariable& f, const RandomVariable& g,
                        const RandomVariable& h, const Density& p);
// L2(m) inner product, sum_i f_i g_i m_i.
double l2_inner(const RandomVariable& f, const RandomVariable& g);

}  // namespace igeo
