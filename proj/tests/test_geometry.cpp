#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_utils.hpp"
#include "swirl/grid.hpp"

using namespace swirl;

TEST_CASE("unit cylinder volume is 2 pi") {
  CHECK(cyl_volume(1.0) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
}

TEST_CASE("parabolic cylinder space-time measure, Monte-Carlo cross-check") {
  ParabolicCylinder q;
  q.r = 0.5;
  q.t_top = 0.0;
  // closed form pi lambda^2 r^3 * 2 * mu r^2 = pi/16 at lambda = mu = 1, r = 1/2
  CHECK(q.spacetime_volume() == doctest::Approx(kPi / 16.0).epsilon(1e-15));
  const double mc = oracle::mc_cylinder_measure(q, 400000, 20240521u);
  CHECK(mc == doctest::Approx(q.spacetime_volume()).epsilon(5e-3));
}

TEST_CASE("degenerate radius gives zero measure") {
  ParabolicCylinder q;
  q.r = 0.0;
  CHECK(cyl_volume(q) == 0.0);
  CHECK(cyl_spacetime_measure(q) == 0.0);
}

TEST_CASE("parabolic cylinder accessors") {
  ParabolicCylinder q;
  q.z_center = 0.25;
  q.t_top = 1.0;
  q.r = 0.1;
  q.lambda = 2.0;
  q.mu = 4.0;
  CHECK(q.spatial_radius() == doctest::Approx(0.2));
  CHECK(q.z_lo() == doctest::Approx(0.05));
  CHECK(q.z_hi() == doctest::Approx(0.45));
  CHECK(q.t_lo() == doctest::Approx(1.0 - 0.04));
  CHECK_THROWS_AS((ParabolicCylinder{0, 0, -1.0, 1, 1}.validate()), ContractError);
  CHECK_THROWS_AS((ParabolicCylinder{0, 0, 1.0, 0.0, 1}.validate()), ContractError);
}

TEST_CASE("annular cylinder") {
  AnnularCylinder p;
  p.a = 0.25;
  p.b = 0.5;
  p.half_height = 0.5;
  CHECK(cyl_volume(p) == doctest::Approx(kPi * (0.25 - 0.0625)).epsilon(1e-15));
  // degenerate inner radius recovers the solid cylinder
  AnnularCylinder solid;
  solid.a = 0.0;
  solid.b = 1.0;
  solid.half_height = 1.0;
  CHECK(cyl_volume(solid) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  AnnularCylinder bad;
  bad.a = 0.5;
  bad.b = 0.5;
  CHECK_THROWS_AS(bad.validate(), ContractError);
}

TEST_CASE("grid invariants") {
  CylGrid g = oracle::make_grid(64, 32, 1.0, -1.0, 1.0);
  CHECK(g.h_rho() == doctest::Approx(1.0 / 64));
  CHECK(g.h_z() == doctest::Approx(2.0 / 32));
  CHECK(g.rho(0) == 0.0); // first radial node line is the axis
  CHECK(g.rho(g.n_rho) == doctest::Approx(g.rho_max));
  CHECK(g.z(0) == g.z_min);
  CylGrid bad = g;
  bad.n_rho = 1;
  CHECK_THROWS_AS(bad.validate(), ContractError);
}
