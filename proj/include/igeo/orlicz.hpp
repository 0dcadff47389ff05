#pragma once

// Young functions, Luxemburg norms and the inequality audits built on them.

#include <string>
#include <string_view>
#include <vector>

#include "igeo/measure.hpp"

namespace igeo {

enum class YoungKind { power, exp2, exp2_conj, cosh2, cosh2_conj, gauss2, gauss2_conj };

// A Young function Phi extended symmetrically, with phi = Phi' on [0, inf).
class YoungPair {
 public:
  static YoungPair power(double alpha);
  static YoungPair exp2() { return YoungPair(YoungKind::exp2); }
  static YoungPair exp2_conj() { return YoungPair(YoungKind::exp2_conj); }
  static YoungPair cosh2() { return YoungPair(YoungKind::cosh2); }
  static YoungPair cosh2_conj() { return YoungPair(YoungKind::cosh2_conj); }
  static YoungPair gauss2() { return YoungPair(YoungKind::gauss2); }
  static YoungPair gauss2_conj() { return YoungPair(YoungKind::gauss2_conj); }
  // "power:2.5", "exp2", "cosh2_conj", ...
  static YoungPair parse(std::string_view text);

  YoungKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::string name() const;
  // Whether values come from a numeric Legendre transform.
  bool numeric() const { return kind_ == YoungKind::gauss2_conj; }

  double phi(double x) const;
  double phi_prime(double x) const;
  // Phi^{-1}(y) for y >= 0.
  double inverse(double y) const;
  YoungPair conjugate() const;

 private:
  explicit YoungPair(YoungKind kind, double alpha = 0.0) : kind_(kind), alpha_(alpha) {}

  YoungKind kind_;
  double alpha_;
};

// Solves x exp(x^2 / 2) = y, the inverse of the gauss2 derivative.
double gauss2_prime_inverse(double y);

double young_eval(const YoungPair& Y, double x);

// inf{rho > 0 : sum Phi(|f_i| / rho) m_i <= 1}, bisected to machine precision.
double luxemburg_norm(const RandomVariable& f, const YoungPair& Y);
// sum Phi(|f_i| / rho) m_i
double modular(const RandomVariable& f, const YoungPair& Y, double rho);

// 2 |u|_Phi |v|_Phi* - |<u, v>_m|
double orlicz_dual_pairing_gap(const RandomVariable& u, const RandomVariable& v,
                               const YoungPair& Y);

// max_{k <= kmax} ((2k)!^{-1} sum f^{2k} m)^{1/(2k)}
double subexp_bracket_norm(const RandomVariable& f, int kmax = 30);

struct TailReport {
  double rho;  // cosh2 Luxemburg norm
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_slack;  // min over t of 4 exp(-t/rho) - m(|f| >= t)
};
TailReport tail_bound_audit(const RandomVariable& f, const std::vector<double>& t_grid);

struct YoungReport {
  std::size_t inequality_checks = 0;
  std::size_t inequality_violations = 0;
  double worst_inequality;  // min of (Phi(x) + Psi(y) - xy) / max(1, xy)
  std::size_t legendre_checks = 0;
  std::size_t legendre_violations = 0;
  double worst_legendre;  // max |Phi(x) + Psi(phi(x)) - x phi(x)| / max(1, x phi(x))
};
// Young inequality on x_grid x y_grid; Legendre equality on x_grid.
YoungReport young_identity_audit(const YoungPair& Y, const std::vector<double>& x_grid,
                                 const std::vector<double>& y_grid);

struct DominationReport {
  double constant;  // max |f|_Y1 / |f|_Y2 over the samples
  bool finite;
};
DominationReport domination_audit(const YoungPair& Y1, const YoungPair& Y2,
                                  const std::vector<RandomVariable>& samples);

// min over the grid of a max(1, a) Psi(y) - Psi(a y); applies to exp2_conj
// and cosh2_conj.
double growth_bound_slack(const YoungPair& Y, const std::vector<double>& a_grid,
                          const std::vector<double>& y_grid);

}  // namespace igeo
