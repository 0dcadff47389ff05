#include <gtest/gtest.h>

#include "igeo/calculus.hpp"
#include "igeo/charts.hpp"
#include "igeo/dynamics.hpp"
#include "igeo/errors.hpp"
#include "igeo/transport.hpp"
#include "support.hpp"

namespace igeo {
namespace {

using testing::expect_near;

TEST(NumDiff, ScalarStencils) {
  auto f = [](double t) { return std::sin(t); };
  EXPECT_NEAR(numdiff::central(f, 0.4), std::cos(0.4), 1e-10);
  EXPECT_NEAR(numdiff::central2(f, 0.4), -std::sin(0.4), 1e-7);
  // Leading truncation term h^4 |f^(5)| / 480.
  EXPECT_NEAR(numdiff::richardson(f, 0.4, 1e-2), std::cos(0.4), 1.01e-8 * std::cos(0.4) / 480.0 + 1e-13);
}

TEST(NumDiff, OneSidedNearDomainEdges) {
  auto f = [](double t) { return std::vector<double>{std::exp(t), t * t * t}; };
  const Interval domain{0.0, 1.0};
  for (double t : {0.0, 1e-6, 0.5, 1.0 - 1e-6, 1.0}) {
    const std::vector<double> d = numdiff::derivative(f, t, domain);
    EXPECT_NEAR(d[0], std::exp(t), 1e-8) << t;
    EXPECT_NEAR(d[1], 3.0 * t * t, 1e-8) << t;
    const std::vector<double> d2 = numdiff::second_derivative(f, t, domain);
    EXPECT_NEAR(d2[0], std::exp(t), 1e-5) << t;
    EXPECT_NEAR(d2[1], 6.0 * t, 1e-5) << t;
  }
}

class CurvesTest : public ::testing::Test {
 protected:
  random::Engine rng{41};
  FiniteSpace space = random::space(rng, 4);
  Density p = random::density(rng, space);
  Density q1 = random::density(rng, space);
  FiberElement u = random::fiber(rng, p, FiberKind::exponential);

  SmoothCurve fd_exp_geodesic() const {
    SmoothCurve c;
    c.eval = [p = p, u = u](double t) { return exp_geodesic(p, u, t); };
    c.domain = {-1.0, 2.0};
    return c;
  }
};

TEST_F(CurvesTest, ConstantCurve) {
  SmoothCurve c;
  c.eval = [p = p](double) { return p; };
  EXPECT_EQ(velocity(c, 0.3).rv().max_abs(), 0.0);
  EXPECT_EQ(e_acceleration(c, 0.3).rv().max_abs(), 0.0);
  EXPECT_EQ(m_acceleration(c, 0.3).rv().max_abs(), 0.0);
  EXPECT_THROW(velocity(c, 1.5), DomainError);
}

TEST_F(CurvesTest, VelocityOfGeodesics) {
  const SmoothCurve c = fd_exp_geodesic();
  for (double t : {-0.5, 0.0, 0.7, 1.9}) {
    const Density q = c.eval(t);
    expect_near(velocity(c, t).values(), center(u.rv(), q).values(), 1e-8);
  }
  const SmoothCurve seg = mix_geodesic_curve(p, q1, {0.0, 1.0});
  for (double t : {0.0, 0.3, 1.0}) {
    const Density q = seg.eval(t);
    const RandomVariable expected =
        (q1.as_random_variable() - p.as_random_variable()) / q.as_random_variable();
    expect_near(velocity(seg, t).values(), expected.values(), 1e-13);
  }
}

TEST_F(CurvesTest, TransportedFramesAreParallel) {
  const SmoothCurve c = fd_exp_geodesic();
  const FiberElement w0 = random::fiber(rng, p, FiberKind::exponential);
  const FiberElement eta0 = random::fiber(rng, p, FiberKind::mixture);
  const BundleCurve e_frame{c, [p = p, w0, c](double t) { return e_transport(p, c.eval(t), w0); }, {}};
  const BundleCurve m_frame{c, [p = p, eta0, c](double t) { return m_transport(p, c.eval(t), eta0); }, {}};
  for (double t : {0.1, 0.5, 1.2}) {
    EXPECT_LE(e_cov_deriv(e_frame, t).rv().max_abs(), 1e-9);
    EXPECT_LE(m_cov_deriv(m_frame, t).rv().max_abs(), 1e-8);
  }
}

TEST_F(CurvesTest, ConstantArrayHasZeroExponentialDerivative) {
  // A fixed array stays centered only on a fixed base, so the base is constant.
  SmoothCurve c;
  c.eval = [p = p](double) { return p; };
  const FiberElement w0 = random::fiber(rng, p, FiberKind::exponential);
  const FiberElement eta0 = random::fiber(rng, p, FiberKind::mixture);
  EXPECT_EQ(e_cov_deriv(BundleCurve{c, [w0](double) { return w0; }, {}}, 0.5).rv().max_abs(), 0.0);
  // On a constant base the mixture derivative reduces to the plain derivative.
  const BundleCurve moving{c, [p = p, eta0](double t) { return (1.0 + t * t) * eta0; }, {}};
  expect_near(m_cov_deriv(moving, 0.5).values(), (1.0 * eta0).values(), 1e-9);
}

TEST_F(CurvesTest, ScaledVelocityFieldMatchesOracle) {
  const SmoothCurve c = fd_exp_geodesic();
  const BundleCurve field{c, [c, u = u](double t) { return t * center(u.rv(), c.eval(t)); }, {}};
  for (double t : {0.2, 0.9}) {
    const Density q = c.eval(t);
    // d/dt [t (u - E_q u)] = (u - E_q u) - t Var_q(u), then centered.
    const FiberElement v = center(u.rv(), q);
    expect_near(e_cov_deriv(field, t).values(), v.values(), 1e-8);
  }
}

TEST_F(CurvesTest, MixtureDerivativeMatchesTransportOracle) {
  SmoothCurve c;
  const FiberElement a = random::fiber(rng, p, FiberKind::exponential, 0.6);
  c.eval = [p = p, a](double t) { return exp_inv(p, std::sin(t) * a); };
  c.domain = {-1.0, 1.0};
  const RandomVariable g0 = random::variable(rng, space), g1 = random::variable(rng, space);
  auto eta = [c, g0, g1](double t) {
    return center(g0 + (t * t) * g1, c.eval(t), FiberKind::mixture);
  };
  const BundleCurve bc{c, eta, {}};
  for (double t : {-0.4, 0.3}) {
    const std::vector<double> inner = numdiff::derivative(
        [&](double s) {
          const FiberElement back = m_transport(c.eval(s), p, eta(s));
          return std::vector<double>(back.values().begin(), back.values().end());
        },
        t, c.domain);
    const FiberElement oracle =
        m_transport(p, c.eval(t), FiberElement(p, RandomVariable(space, inner), FiberKind::mixture));
    expect_near(m_cov_deriv(bc, t).values(), oracle.values(), 1e-6);
  }
}

TEST_F(CurvesTest, RiemannianDerivativeIsMetricCompatible) {
  SmoothCurve c;
  const FiberElement a = random::fiber(rng, p, FiberKind::exponential, 0.6);
  const FiberElement b = random::fiber(rng, p, FiberKind::exponential, 0.6);
  c.eval = [p = p, a, b](double t) { return exp_inv(p, t * a + (t * t) * b); };
  c.domain = {-1.0, 1.0};
  const RandomVariable f0 = random::variable(rng, space), f1 = random::variable(rng, space);
  const RandomVariable g0 = random::variable(rng, space), g1 = random::variable(rng, space);
  const BundleCurve v{c, [c, f0, f1](double t) { return center(f0 + std::cos(t) * f1, c.eval(t)); }, {}};
  const BundleCurve w{c, [c, g0, g1](double t) { return center(g0 + std::exp(t) * g1, c.eval(t)); }, {}};
  for (double t : {-0.3, 0.4}) {
    const Density q = c.eval(t);
    const double lhs =
        numdiff::central([&](double s) { return pairing(v.fiber(s), w.fiber(s), c.eval(s)); }, t);
    const double rhs =
        pairing(riemannian_deriv(v, t), w.fiber(t), q) + pairing(v.fiber(t), riemannian_deriv(w, t), q);
    EXPECT_NEAR(lhs, rhs, 1e-6);
    const FiberElement mean = 0.5 * (m_cov_deriv(v, t) + e_cov_deriv(v, t));
    expect_near(riemannian_deriv(v, t).values(), mean.values(), 1e-15);
  }
}

TEST_F(CurvesTest, Accelerations) {
  const SmoothCurve analytic = exp_geodesic_curve(p, u, {-1.0, 2.0});
  const SmoothCurve fd = fd_exp_geodesic();
  const SmoothCurve seg = mix_geodesic_curve(p, q1, {0.0, 1.0});
  for (double t : {0.0, 0.5, 1.0}) {
    EXPECT_LE(e_acceleration(analytic, t).rv().max_abs(), 1e-12);
    EXPECT_LE(e_acceleration(fd, t).rv().max_abs(), 1e-5);
    EXPECT_EQ(m_acceleration(seg, t).rv().max_abs(), 0.0);
    // Along the exponential geodesic the mixture acceleration is v^2 - E v^2.
    const FiberElement v = velocity(analytic, t);
    const FiberElement expected = center(v.rv() * v.rv(), analytic.eval(t), FiberKind::mixture);
    expect_near(m_acceleration(analytic, t).values(), expected.values(), 1e-12);
  }
}

TEST_F(CurvesTest, GibbsCurveAccelerationIsProportionalToVelocity) {
  SmoothCurve c;
  c.eval = [p = p, u = u](double t) { return exp_inv(p, (t * t * t + t) * u); };
  c.domain = {-1.0, 1.0};
  for (double t : {-0.5, 0.2, 0.6}) {
    const double ratio = 6.0 * t / (3.0 * t * t + 1.0);
    expect_near(e_acceleration(c, t).values(), (ratio * velocity(c, t)).values(), 1e-5);
  }
}

TEST_F(CurvesTest, ReciprocalTimeGibbsCurve) {
  // a(t) = -1/t gives t * acceleration + 2 * velocity = 0.
  SmoothCurve c;
  c.eval = [p = p, u = u](double t) { return exp_inv(p, (-1.0 / t) * u); };
  c.domain = {0.5, 3.0};
  for (double t : {0.8, 1.5, 2.5}) {
    const RandomVariable lhs = t * e_acceleration(c, t).rv() + 2.0 * velocity(c, t).rv();
    EXPECT_LE(lhs.max_abs(), 1e-5 * std::max(1.0, velocity(c, t).rv().max_abs()));
  }
}

TEST_F(CurvesTest, MixtureSegmentAccelerationOnTwoPoints) {
  const FiniteSpace two = testing::half_half();
  const Density a(two, {1.0, 1.0}), b(two, {1.5, 0.5});
  const SmoothCurve seg = mix_geodesic_curve(a, b, {0.0, 1.0});
  for (double t : {0.25, 0.75}) {
    // Oracle: transport back the second derivative of the exponential chart
    // expression at a, then compare with the exponential acceleration.
    const double h = 1e-4;
    auto chart_at = [&](double s) { return exp_chart(a, seg.eval(s)); };
    const RandomVariable second =
        (1.0 / (h * h)) * (chart_at(t + h).rv() - 2.0 * chart_at(t).rv() + chart_at(t - h).rv());
    const FiberElement oracle = e_transport(a, seg.eval(t), center(second, a));
    expect_near(e_acceleration(seg, t).values(), oracle.values(), 1e-6);
  }
}

TEST(Calculus, CenteringDiagnosticFires) {
  const Density p = testing::density2(1.0, 1.0);
  SmoothCurve c;
  c.eval = [p](double) { return p; };
  c.deriv = [](double) { return std::vector<double>{1.0, 1.0}; };
  EXPECT_THROW(velocity(c, 0.5), CenteringError);
}

}  // namespace
}  // namespace igeo
