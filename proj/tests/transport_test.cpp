#include <gtest/gtest.h>

#include "igeo/charts.hpp"
#include "igeo/errors.hpp"
#include "igeo/transport.hpp"
#include "support.hpp"

namespace igeo {
namespace {

using testing::density2;
using testing::expect_near;

TEST(ETransport, HandValuesAndIdentity) {
  const Density p = density2(1.0, 1.0);
  const Density q = density2(1.5, 0.5);
  const FiberElement u = testing::fiber(p, {1.0, -1.0}, FiberKind::exponential);
  const FiberElement moved = e_transport(p, q, u);
  expect_near(moved.values(), {0.5, -1.5}, 1e-15);
  EXPECT_TRUE(same_density(moved.base(), q));
  expect_near(e_transport(p, p, u).values(), u.values(), 0.0);
}

TEST(MTransport, HandValuesAndCentering) {
  const Density p = density2(1.0, 1.0);
  const Density q = density2(1.5, 0.5);
  const FiberElement eta = testing::fiber(p, {1.0, -1.0}, FiberKind::mixture);
  const FiberElement moved = m_transport(p, q, eta);
  expect_near(moved.values(), {2.0 / 3.0, -2.0}, 1e-15);
  EXPECT_LE(std::abs(expectation(moved.rv(), q)), 1e-14);
  expect_near(m_transport(p, p, eta).values(), eta.values(), 0.0);
}

TEST(Transport, RequiresMatchingBase) {
  const Density p = density2(1.0, 1.0);
  const Density q = density2(1.5, 0.5);
  const FiberElement u = testing::fiber(q, {0.5, -1.5}, FiberKind::exponential);
  EXPECT_THROW(e_transport(p, q, u), BaseError);
  EXPECT_THROW(m_transport(q, p, u), BaseError);
}

TEST(Transport, CocycleAndDuality) {
  random::Engine rng(23);
  for (int k = 0; k < 20; ++k) {
    const FiniteSpace s = random::space(rng, 6);
    const Density p = random::density(rng, s), q = random::density(rng, s), r = random::density(rng, s);
    const FiberElement u = random::fiber(rng, p, FiberKind::exponential);
    const FiberElement eta = random::fiber(rng, p, FiberKind::mixture);
    const FiberElement v = random::fiber(rng, q, FiberKind::mixture);
    expect_near(e_transport(q, r, e_transport(p, q, u)).values(), e_transport(p, r, u).values(), 1e-13);
    expect_near(m_transport(q, r, m_transport(p, q, eta)).values(), m_transport(p, r, eta).values(),
                1e-12);
    EXPECT_LE(transport_duality_gap(p, q, u, v), 1e-12);
    EXPECT_LE(transport_duality_gap(p, p, u, random::fiber(rng, p, FiberKind::mixture)), 1e-15);
    EXPECT_EQ(transport_duality_gap(p, q, FiberElement::zero(p, FiberKind::exponential), v), 0.0);
  }
}

TEST(Transport, PreservesChartDifferences) {
  random::Engine rng(29);
  const FiniteSpace s = random::space(rng, 5);
  const Density p = random::density(rng, s), q = random::density(rng, s);
  const Density r = random::density(rng, s), t = random::density(rng, s);
  const FiberElement moved = e_transport(p, q, exp_chart(p, r) - exp_chart(p, t));
  expect_near(moved.values(), (exp_chart(q, r) - exp_chart(q, t)).values(), 1e-13);
}

TEST(ChangeOrigin, MapsChartCoordinates) {
  random::Engine rng(31);
  const FiniteSpace s = random::space(rng, 5);
  const Density from = random::density(rng, s), to = random::density(rng, s);
  const FiberElement u = random::fiber(rng, from, FiberKind::exponential);
  expect_near(change_origin(from, to, u).values(), exp_chart(to, exp_inv(from, u)).values(), 1e-12);
}

TEST(Bundle, ChartAtOwnBaseAndRoundtrip) {
  random::Engine rng(37);
  const FiniteSpace s = random::space(rng, 5);
  const Density base = random::density(rng, s), nu = random::density(rng, s), mu = random::density(rng, s);
  const BundlePoint point = BundlePoint::full(base, random::fiber(rng, base, FiberKind::mixture),
                                              random::fiber(rng, base, FiberKind::exponential), {0.5});
  EXPECT_TRUE(point.is_full());

  const BundleCoordinates own = bundle_chart(base, point);
  EXPECT_LE(own.position.rv().max_abs(), 1e-15);
  expect_near(own.fibers[0].values(), point.fibers()[0].values(), 1e-15);
  expect_near(own.fibers[1].values(), point.fibers()[1].values(), 1e-15);

  const BundlePoint back = bundle_chart_inv(nu, bundle_chart(nu, point));
  expect_near(back.base().values(), base.values(), 1e-12);
  for (std::size_t k = 0; k < 2; ++k) {
    expect_near(back.fibers()[k].values(), point.fibers()[k].values(), 1e-11);
    EXPECT_EQ(back.fibers()[k].kind(), point.fibers()[k].kind());
  }
  EXPECT_EQ(back.extra(), point.extra());

  // Passing through two reference points agrees with a direct change of origin.
  const BundleCoordinates at_nu = bundle_chart(nu, point);
  const BundleCoordinates at_mu = bundle_chart(mu, point);
  expect_near(change_origin(nu, mu, at_nu.position).values(), at_mu.position.values(), 1e-12);
  expect_near(transport(nu, mu, at_nu.fibers[1]).values(), at_mu.fibers[1].values(), 1e-12);

  const BundlePoint zero(base, {FiberElement::zero(base, FiberKind::exponential)});
  EXPECT_EQ(bundle_chart(nu, zero).fibers[0].rv().max_abs(), 0.0);
}

TEST(Bundle, RejectsMisplacedFibers) {
  const Density p = density2(1.0, 1.0);
  const Density q = density2(1.5, 0.5);
  EXPECT_THROW(BundlePoint(p, {testing::fiber(q, {0.5, -1.5}, FiberKind::exponential)}), BaseError);
  EXPECT_THROW(BundlePoint::full(p, FiberElement::zero(p, FiberKind::exponential),
                                 FiberElement::zero(p, FiberKind::exponential)),
               BaseError);
}

}  // namespace
}  // namespace igeo
