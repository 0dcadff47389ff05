#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "igeo/errors.hpp"
#include "igeo/numdiff.hpp"
#include "igeo/orlicz.hpp"
#include "igeo/random.hpp"
#include "support.hpp"

namespace igeo {
namespace {

std::vector<YoungPair> all_kinds() {
  return {YoungPair::power(1.5), YoungPair::power(2.0), YoungPair::power(4.0), YoungPair::exp2(),
          YoungPair::exp2_conj(), YoungPair::cosh2(), YoungPair::cosh2_conj(), YoungPair::gauss2(),
          YoungPair::gauss2_conj()};
}

std::vector<double> grid(double a, double b, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

TEST(Young, TableValues) {
  const double e = std::numbers::e;
  EXPECT_NEAR(young_eval(YoungPair::exp2(), 1.0), e - 2.0, 1e-15);
  EXPECT_EQ(young_eval(YoungPair::cosh2(), 0.0), 0.0);
  EXPECT_NEAR(young_eval(YoungPair::exp2_conj(), e - 1.0), 1.0, 1e-15);
  EXPECT_NEAR(young_eval(YoungPair::power(3.0), -2.0), 8.0 / 3.0, 1e-15);
  EXPECT_NEAR(young_eval(YoungPair::gauss2(), 1.0), std::exp(0.5) - 1.0, 1e-15);
  for (const YoungPair& Y : all_kinds()) EXPECT_EQ(Y.phi(0.0), 0.0) << Y.name();
}

TEST(Young, ShapeOnGrid) {
  const std::vector<double> x = grid(0.0, 5.0, 201);
  for (const YoungPair& Y : all_kinds()) {
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
      EXPECT_GT(Y.phi(x[i]), Y.phi(x[i - 1])) << Y.name();
      EXPECT_LT(Y.phi(x[i]), 0.5 * (Y.phi(x[i - 1]) + Y.phi(x[i + 1])) + 1e-12) << Y.name();
      EXPECT_EQ(Y.phi(-x[i]), Y.phi(x[i]));
      EXPECT_NEAR(Y.phi_prime(x[i]), numdiff::central([&](double s) { return Y.phi(s); }, x[i]),
                  1e-6 * std::max(1.0, Y.phi_prime(x[i])))
          << Y.name();
    }
  }
}

TEST(Young, InverseAndConjugates) {
  for (const YoungPair& Y : all_kinds()) {
    for (double y : {0.01, 0.5, 1.0, 7.0}) {
      EXPECT_NEAR(Y.phi(Y.inverse(y)), y, 1e-12 * std::max(1.0, y)) << Y.name();
    }
    EXPECT_EQ(Y.conjugate().conjugate().name(), Y.name());
  }
  EXPECT_NEAR(YoungPair::power(3.0).conjugate().alpha(), 1.5, 1e-15);
  for (double y : {1e-8, 0.3, 1.0, 50.0, 1e6}) {
    const double x = gauss2_prime_inverse(y);
    EXPECT_NEAR(x * std::exp(0.5 * x * x), y, 1e-11 * y);
  }
}

TEST(Young, Parse) {
  EXPECT_EQ(YoungPair::parse("power:2.5").alpha(), 2.5);
  EXPECT_EQ(YoungPair::parse("cosh2_conj").kind(), YoungKind::cosh2_conj);
  EXPECT_THROW(YoungPair::parse("power:x"), ConfigurationError);
  EXPECT_THROW(YoungPair::parse("sinh"), ConfigurationError);
  EXPECT_THROW(YoungPair::power(1.0), ValidationError);
}

TEST(Luxemburg, HandValues) {
  const FiniteSpace s = testing::half_half();
  EXPECT_EQ(luxemburg_norm(RandomVariable::zeros(s), YoungPair::cosh2()), 0.0);
  EXPECT_NEAR(luxemburg_norm(RandomVariable(s, {1.0, 1.0}), YoungPair::power(2.0)), 1.0 / std::sqrt(2.0),
              1e-15);
  const double c = 1.7;
  EXPECT_NEAR(luxemburg_norm(RandomVariable::constant(s, c), YoungPair::cosh2()), c / std::acosh(2.0),
              1e-14);
}

TEST(Luxemburg, NormAxiomsAndDefinition) {
  random::Engine rng(79);
  const FiniteSpace s = random::space(rng, 12);
  for (const YoungPair& Y : all_kinds()) {
    for (int k = 0; k < 10; ++k) {
      const RandomVariable f = random::variable(rng, s), g = random::variable(rng, s);
      const double nf = luxemburg_norm(f, Y), ng = luxemburg_norm(g, Y);
      EXPECT_NEAR(modular(f, Y, nf), 1.0, 1e-10) << Y.name();
      EXPECT_NEAR(luxemburg_norm(-3.0 * f, Y), 3.0 * nf, 1e-12 * nf) << Y.name();
      EXPECT_LE(luxemburg_norm(f + g, Y), nf + ng + 1e-10) << Y.name();
    }
  }
}

TEST(Luxemburg, PowerFactor) {
  random::Engine rng(83);
  const FiniteSpace s = random::space(rng, 9);
  const RandomVariable f = random::variable(rng, s);
  for (double a : {1.5, 2.0, 3.0, 4.0}) {
    double moment = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) moment += std::pow(std::abs(f[i]), a) * s.weight(i);
    const double expected = std::pow(a, -1.0 / a) * std::pow(moment, 1.0 / a);
    EXPECT_NEAR(luxemburg_norm(f, YoungPair::power(a)), expected, 1e-12 * expected);
  }
}

TEST(Luxemburg, ConvergenceOfShrinkingSequence) {
  random::Engine rng(89);
  const FiniteSpace s = random::space(rng, 8);
  const RandomVariable f = random::variable(rng, s);
  for (const YoungPair& Y : {YoungPair::exp2(), YoungPair::cosh2(), YoungPair::gauss2()}) {
    for (double eps : {0.1, 1.0, 10.0}) {
      double previous = std::numeric_limits<double>::infinity();
      for (double n : {10.0, 100.0, 1000.0, 1e4}) {
        const double m = modular((1.0 / n) * f, Y, eps);
        EXPECT_LT(m, previous);
        previous = m;
      }
      EXPECT_LT(previous, 1e-4);
    }
    EXPECT_NEAR(luxemburg_norm((1.0 / 1e6) * f, Y), luxemburg_norm(f, Y) / 1e6,
                1e-12 * luxemburg_norm(f, Y));
  }
}

TEST(DualPairing, BoundHolds) {
  const FiniteSpace s = testing::half_half();
  const RandomVariable one(s, {1.0, 1.0});
  EXPECT_EQ(orlicz_dual_pairing_gap(RandomVariable::zeros(s), one, YoungPair::exp2()), 0.0);
  EXPECT_GE(orlicz_dual_pairing_gap(one, one, YoungPair::power(2.0)), 0.0);
  random::Engine rng(97);
  const FiniteSpace r = random::space(rng, 10);
  for (int k = 0; k < 100; ++k) {
    const RandomVariable u = random::variable(rng, r), v = random::variable(rng, r);
    EXPECT_GE(orlicz_dual_pairing_gap(u, v, YoungPair::exp2()), -1e-12);
  }
}

TEST(BracketNorm, TwoSidedBounds) {
  random::Engine rng(101);
  const FiniteSpace s = random::space(rng, 50);
  EXPECT_EQ(subexp_bracket_norm(RandomVariable::zeros(s)), 0.0);
  for (int k = 0; k < 20; ++k) {
    const RandomVariable f = random::variable(rng, s, 3.0);
    const RandomVariable a = (1.0 / luxemburg_norm(f, YoungPair::cosh2())) * f;
    EXPECT_LE(subexp_bracket_norm(a), 1.0 + 1e-10);
    const RandomVariable b = (1.0 / subexp_bracket_norm(f)) * f;
    EXPECT_LE(luxemburg_norm(b, YoungPair::cosh2()), std::sqrt(2.0) + 1e-10);
    EXPECT_LE(subexp_bracket_norm(f, 5), subexp_bracket_norm(f, 10));
  }
  // Large entries stay finite through the log-domain moments.
  EXPECT_TRUE(std::isfinite(subexp_bracket_norm(RandomVariable::constant(s, 1e200))));
  EXPECT_THROW(subexp_bracket_norm(RandomVariable::constant(s, 1.0), 0), ValidationError);
}

TEST(TailBound, NoViolations) {
  random::Engine rng(103);
  const FiniteSpace s = random::space(rng, 50);
  for (int k = 0; k < 20; ++k) {
    const RandomVariable f = random::variable(rng, s, 2.0);
    const double rho = luxemburg_norm(f, YoungPair::cosh2());
    const TailReport r = tail_bound_audit(f, grid(0.0, 10.0 * rho, 101));
    EXPECT_EQ(r.violations, 0u);
    EXPECT_EQ(r.checked, 101u);
  }
  const RandomVariable f = random::variable(rng, s);
  const TailReport at_zero = tail_bound_audit(f, {0.0});
  EXPECT_DOUBLE_EQ(at_zero.worst_slack, 3.0);
  const TailReport beyond = tail_bound_audit(f, {f.max_abs() * 1.01});
  EXPECT_GT(beyond.worst_slack, 0.0);
  EXPECT_THROW(tail_bound_audit(RandomVariable::zeros(s), {1.0}), ValidationError);
}

TEST(YoungAudit, InequalityAndLegendre) {
  for (const YoungPair& Y : all_kinds()) {
    const YoungReport r = young_identity_audit(Y, grid(0.0, 4.0, 100), grid(0.0, Y.phi_prime(4.0), 100));
    EXPECT_EQ(r.inequality_violations, 0u) << Y.name();
    EXPECT_EQ(r.legendre_violations, 0u) << Y.name();
    EXPECT_EQ(r.inequality_checks, 10000u);
  }
  const YoungReport origin = young_identity_audit(YoungPair::exp2(), {0.0}, {0.0});
  EXPECT_EQ(origin.worst_inequality, 0.0);
  EXPECT_EQ(origin.worst_legendre, 0.0);
  const double e = std::numbers::e;
  EXPECT_NEAR(YoungPair::exp2().phi(1.0) + YoungPair::exp2_conj().phi(e - 1.0), e - 1.0, 1e-15);
}

TEST(YoungAudit, CauchyCase) {
  const YoungPair Y = YoungPair::power(2.0);
  for (double x : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(Y.phi(x) + Y.conjugate().phi(x), x * x, 1e-15);
    EXPECT_GT(Y.phi(x) + Y.conjugate().phi(x + 0.1), x * (x + 0.1));
  }
}

TEST(Domination, EmpiricalConstants) {
  random::Engine rng(107);
  const FiniteSpace s = random::space(rng, 20);
  std::vector<RandomVariable> samples;
  for (int k = 0; k < 100; ++k) samples.push_back(random::variable(rng, s));
  const DominationReport same = domination_audit(YoungPair::cosh2(), YoungPair::cosh2(), samples);
  EXPECT_NEAR(same.constant, 1.0, 1e-12);
  const DominationReport a = domination_audit(YoungPair::power(2.0), YoungPair::cosh2(), samples);
  EXPECT_TRUE(a.finite);
  EXPECT_GT(a.constant, 0.0);
  EXPECT_TRUE(domination_audit(YoungPair::cosh2(), YoungPair::gauss2(), samples).finite);
}

TEST(GrowthBound, ConjugatesOfExponentialType) {
  const std::vector<double> a = grid(0.0, 5.0, 41), y = grid(0.0, 10.0, 41);
  EXPECT_GE(growth_bound_slack(YoungPair::exp2_conj(), a, y), -1e-12);
  EXPECT_GE(growth_bound_slack(YoungPair::cosh2_conj(), a, y), -1e-12);
  EXPECT_THROW(growth_bound_slack(YoungPair::exp2(), a, y), ConfigurationError);
}

}  // namespace
}  // namespace igeo
