#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracle_utils.hpp"
#include "swirl/quadrature.hpp"

using namespace swirl;

namespace {

SnapshotSeries constant_speed_series(const CylGrid& g, double U,
                                     const std::vector<double>& times) {
  // |v| = U carried by the axial component (constant fields satisfy the
  // axis conditions trivially)
  return oracle::velocity_series(g, times, [U](FieldKind k, double, double, double) {
    return k == FieldKind::v_axial ? U : 0.0;
  });
}

ParabolicCylinder axis_probe(double z, double t, double R) {
  ParabolicCylinder q;
  q.z_center = z;
  q.t_top = t;
  q.r = R;
  return q;
}

} // namespace

TEST_CASE("zero field integrates to zero") {
  const CylGrid g = oracle::make_grid(32, 32, 1.0, -1.0, 1.0);
  const auto s = constant_speed_series(g, 0.0, oracle::linspace(0.0, 0.3, 7));
  CHECK(integrate_lp_speed(s, axis_probe(0.0, 0.3, 0.5), 3.0, 4.0 / 3.0) == 0.0);
  CHECK(integrate_lp_speed(s, axis_probe(0.0, 0.3, 0.5), 10.0 / 3.0, std::nullopt) == 0.0);
}

TEST_CASE("constant-speed closed forms on Q(R)") {
  const CylGrid g = oracle::make_grid(128, 128, 1.0, -1.0, 1.0);
  const double R = 0.5;
  const auto s = constant_speed_series(g, 1.0, oracle::linspace(0.0, 0.3, 13));
  const auto q = axis_probe(0.0, 0.3, R);
  // mixed (3, 4/3): ((2 pi R^3)^{4/3} R^2)^{3/4} = 2 pi R^{9/2}
  const double mixed = integrate_lp_speed(s, q, 3.0, 4.0 / 3.0);
  CHECK(mixed == doctest::Approx(2.0 * kPi * std::pow(R, 4.5)).epsilon(1e-12));
  // single exponent 10/3: (2 pi R^5)^{3/10}
  const double single = integrate_lp_speed(s, q, 10.0 / 3.0, std::nullopt);
  CHECK(single ==
        doctest::Approx(std::pow(2.0 * kPi * std::pow(R, 5.0), 0.3)).epsilon(1e-12));
}

TEST_CASE("midpoint quadrature is exact on per-cell-linear integrands") {
  // grid-aligned region, integrand linear in z and t, constant in rho: the
  // radial weight integrates the Jacobian exactly, z and t use midpoint
  const CylGrid g = oracle::make_grid(32, 32, 1.0, -1.0, 1.0);
  const double R = 0.5; // 16 cells, aligned
  const auto times = oracle::linspace(0.0, 0.32, 17);
  const auto s = oracle::analytic_series(g, FieldKind::scalar, times,
                                         [](double, double z, double) { return 2.0 + z; });
  ParabolicCylinder q = axis_probe(0.0, 0.32, R);
  q.mu = 0.24 / (R * R); // window [0.08, 0.32], a multiple of the 0.02 time cell
  const double got = integrate_lp_fn(s, q, 1.0, std::nullopt,
                                     [](const Snapshot& snap, int i, int j) {
                                       return snap.get(FieldKind::scalar)(i, j);
                                     });
  // int (2 + z) over C(R) x window = 2 * piR^2 * 2R * |win| (odd part cancels)
  const double exact = 2.0 * kPi * R * R * 2.0 * R * 0.24;
  CHECK(got == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("mixed norm is monotone under region nesting") {
  const CylGrid g = oracle::make_grid(48, 48, 1.0, -1.0, 1.0);
  const auto times = oracle::linspace(0.0, 0.3, 7);
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  SnapshotSeries s;
  for (double t : times) {
    Snapshot snap;
    snap.time = t;
    for (auto k : {FieldKind::v_rho, FieldKind::v_phi, FieldKind::v_axial}) {
      Field f(g, k, t);
      for (double& x : f.values()) x = u(rng);
      f.enforce_axis();
      snap.fields.push_back(std::move(f));
    }
    s.add(std::move(snap));
  }
  double prev = 0.0;
  for (double R : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double v = integrate_lp_speed(s, axis_probe(0.0, 0.3, R), 3.0, 4.0 / 3.0);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("fine-grid agreement on a smooth integrand") {
  const auto sigma = [](double rho, double, double t) {
    return oracle::vortex_sigma(rho, t, 2.0 * kPi, 1.0);
  };
  const auto times = oracle::linspace(0.0, 0.3, 16);
  double coarse, fine;
  {
    const CylGrid g = oracle::make_grid(64, 64, 1.0, -1.0, 1.0);
    const auto s = oracle::analytic_series(g, FieldKind::swirl, times, sigma);
    coarse = integrate_lp(s, axis_probe(0.0, 0.3, 0.5), 3.0, 4.0 / 3.0, FieldKind::swirl);
  }
  {
    const CylGrid g = oracle::make_grid(256, 256, 1.0, -1.0, 1.0);
    const auto s = oracle::analytic_series(g, FieldKind::swirl, times, sigma);
    fine = integrate_lp(s, axis_probe(0.0, 0.3, 0.5), 3.0, 4.0 / 3.0, FieldKind::swirl);
  }
  CHECK(coarse == doctest::Approx(fine).epsilon(1e-3));
}

TEST_CASE("domain margins are enforced") {
  const CylGrid g = oracle::make_grid(32, 32, 1.0, -1.0, 1.0);
  CHECK_THROWS_AS(spatial_weights(g, 0.999, -0.5, 0.5), DomainError);
  CHECK_THROWS_AS(spatial_weights(g, 0.5, -0.999, 0.0), DomainError);
  CHECK_NOTHROW(spatial_weights(g, 1.0 - g.h_rho(), -0.5, 0.5));

  const auto s = constant_speed_series(g, 1.0, oracle::linspace(0.0, 0.1, 5));
  // time window reaching before the first snapshot
  CHECK_THROWS_AS(
      integrate_lp_speed(s, axis_probe(0.0, 0.1, 0.5), 3.0, 4.0 / 3.0),
      DomainError);
}

TEST_CASE("axis cells never divide by rho and cover the full disk") {
  const CylGrid g = oracle::make_grid(16, 16, 1.0, -1.0, 1.0);
  const auto w = spatial_weights(g, 0.5, -0.5, 0.5);
  CHECK(w.i_lo == 0);
  CHECK(std::isfinite(w.wr(0)));
  CHECK(w.wr(0) == doctest::Approx(kPi * 0.25 * g.h_rho() * g.h_rho()).epsilon(1e-15));
  // the clipped radial cells partition [0, R]: weights sum to pi R^2 exactly
  double sum = 0.0;
  for (int i = w.i_lo; i <= w.i_hi; ++i) sum += w.wr(i);
  CHECK(sum == doctest::Approx(kPi * 0.25).epsilon(1e-14));
}

TEST_CASE("region extrema sample covered nodes only") {
  const CylGrid g = oracle::make_grid(64, 64, 1.0, -1.0, 1.0);
  const auto times = oracle::linspace(0.0, 0.1, 5);
  const auto s = oracle::analytic_series(g, FieldKind::scalar, times,
                                         [](double rho, double, double) { return rho; });
  const auto e = region_extrema(s, axis_probe(0.0, 0.1, 0.25), FieldKind::scalar);
  CHECK(e.min == 0.0);
  // boundary-clipped nodes participate: largest covered node is within half
  // a cell of the region radius
  CHECK(e.max <= 0.25 + 0.5 * g.h_rho());
  CHECK(e.max >= 0.25 - g.h_rho());
}
