#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracle_utils.hpp"
#include "swirl/oscillation.hpp"

using namespace swirl;

namespace {

ParabolicCylinder probe(double z, double t, double r) {
  ParabolicCylinder q;
  q.z_center = z;
  q.t_top = t;
  q.r = r;
  return q;
}

} // namespace

TEST_CASE("constant scalar has zero oscillation") {
  // a constant is not an admissible swirl (the axis row is pinned), so the
  // constant-field case runs on the generic scalar kind
  const CylGrid g = oracle::make_grid(32, 32, 1.0, -1.0, 1.0);
  const auto s = oracle::analytic_series(g, FieldKind::scalar,
                                         oracle::linspace(0.0, 0.2, 5),
                                         [](double, double, double) { return 0.75; });
  const auto rec = measure_osc(s, probe(0.0, 0.2, 0.25), FieldKind::scalar);
  CHECK(rec.osc == 0.0);
  CHECK(rec.max == 0.75);
}

TEST_CASE("sigma = rho^2 oscillates by exactly r^2 on node-aligned radii") {
  const CylGrid g = oracle::make_grid(64, 64, 1.0, -1.0, 1.0);
  const auto s = oracle::analytic_series(g, FieldKind::swirl,
                                         oracle::linspace(0.0, 0.3, 7),
                                         [](double rho, double, double) { return rho * rho; });
  for (double r : {0.25, 0.5}) { // 16h and 32h
    const auto rec = measure_osc(s, probe(0.0, 0.3, r));
    CHECK(rec.min == 0.0); // the axis is inside every probe
    CHECK(rec.osc == doctest::Approx(r * r).epsilon(1e-14));
  }
}

TEST_CASE("vortex oscillation matches a dense closed-form sampling") {
  const double circ = 2.0 * kPi, shift = 1.0;
  const CylGrid g = oracle::make_grid(256, 256, 1.0, -1.0, 1.0);
  const auto times = oracle::linspace(0.0, 0.2, 41);
  const auto s = oracle::analytic_series(g, FieldKind::swirl, times,
                                         [&](double rho, double, double t) {
                                           return oracle::vortex_sigma(rho, t, circ, shift);
                                         });
  const double t0 = 0.2;
  for (double r : {0.05, 0.1}) {
    const auto rec = measure_osc(s, probe(0.0, t0, r));
    // independent oracle: dense sampling of the closed form over the cylinder
    double sup = 0.0;
    for (int a = 0; a <= 2000; ++a)
      for (int b = 0; b <= 40; ++b) {
        const double rho = r * a / 2000.0;
        const double t = t0 - r * r * b / 40.0;
        sup = std::max(sup, oracle::vortex_sigma(rho, t, circ, shift));
      }
    CHECK(rec.osc == doctest::Approx(sup).epsilon(0.12));
    // Taylor scale: osc ~ r^2/4 near the axis at unit shifted time
    CHECK(rec.osc == doctest::Approx(r * r / 4.0).epsilon(0.2));
  }
}

TEST_CASE("dyadic scan is monotone in the radius and guards sub-grid scales") {
  const CylGrid g = oracle::make_grid(128, 256, 1.0, -1.0, 1.0); // h = 1/128 both ways
  const auto s = oracle::analytic_series(g, FieldKind::swirl,
                                         oracle::linspace(0.0, 0.3, 13),
                                         [](double rho, double z, double) {
                                           return rho * rho * (1.0 + 0.2 * std::sin(3 * z));
                                         });
  const auto recs = dyadic_scan(s, {0.0, 0.3}, 0.05, 0.4);
  REQUIRE(recs.size() == 4);
  for (std::size_t k = 1; k < recs.size(); ++k) {
    CHECK(recs[k].q.r == doctest::Approx(recs[k - 1].q.r / 2.0));
    CHECK(recs[k].osc <= recs[k - 1].osc); // cylinder inclusion
  }
  CHECK_THROWS_AS(dyadic_scan(s, {0.0, 0.3}, g.h_rho(), 0.4), DomainError);
}

TEST_CASE("decay fit recovers an exact power law") {
  const double R = 0.2, osc2R = 3.0;
  std::vector<OscRecord> recs;
  for (double r = 2.0 * R; r >= R / 16.0; r *= 0.5) {
    OscRecord rec;
    rec.q = probe(0.0, 0.0, r);
    rec.osc = osc2R * std::pow(r / (2.0 * R), 2.0);
    rec.max = rec.osc;
    rec.min = 0.0;
    recs.push_back(rec);
  }
  const DecayFit fit = fit_decay(recs, R);
  CHECK(!fit.degenerate);
  CHECK(fit.C2 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.C1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);
  CHECK(fit.C2_stderr < 1e-12);
  CHECK(fit.violations.empty());
  // the C1 = 2 envelope exponent exceeds the true exponent for exact data
  CHECK(fit.envelope_C2 >= 2.0);
  CHECK(fit.envelope_C2 <= 3.0);
}

TEST_CASE("decay fit on the steady quadratic swirl lands near exponent two") {
  const CylGrid g = oracle::make_grid(256, 512, 1.0, -1.0, 1.0); // h = 1/256 both ways
  const auto s = oracle::analytic_series(g, FieldKind::swirl,
                                         oracle::linspace(0.0, 0.3, 13),
                                         [](double rho, double, double) { return rho * rho; });
  const double R = 0.25;
  const auto recs = dyadic_scan(s, {0.0, 0.3}, R / 16.0, 2.0 * R);
  const DecayFit fit = fit_decay(recs, R);
  CHECK(fit.C2 > 1.9);
  CHECK(fit.C2 < 2.1);
}

TEST_CASE("degenerate and malformed fits") {
  std::vector<OscRecord> zeros;
  for (double r = 0.4; r >= 0.05; r *= 0.5) {
    OscRecord rec;
    rec.q = probe(0.0, 0.0, r);
    zeros.push_back(rec);
  }
  const DecayFit fit = fit_decay(zeros, 0.2);
  CHECK(fit.degenerate);
  CHECK_THROWS_AS(fit_decay(zeros, 0.3), ContractError); // no record at 2R
}

TEST_CASE("maximum-principle monitor flags only genuine violations") {
  const CylGrid g = oracle::make_grid(16, 16, 1.0, -1.0, 1.0);
  SnapshotSeries s;
  for (int k = 0; k < 5; ++k) {
    Snapshot snap;
    snap.time = 0.1 * k;
    Field sig = Field::sampled(g, FieldKind::swirl, snap.time,
                               [](double rho, double) { return rho; });
    if (k == 3)
      for (double& x : sig.values()) x *= 1.5; // injected breach
    snap.fields.push_back(std::move(sig));
    s.add(std::move(snap));
  }
  const double sigma0 = 1.0;
  const auto clean = max_principle_monitor(s, 1.6, 0.0);
  CHECK(!clean.violated);
  const auto hit = max_principle_monitor(s, sigma0, 1e-3);
  CHECK(hit.violated);
  CHECK(hit.first_violation == 3);
  CHECK(hit.sup_abs.size() == 5);
}

TEST_CASE("oscillation-contraction iteration") {
  SUBCASE("all factors one gives eta_k = 2^{-(k+1)}") {
    const auto it = iterate_osc_bound(std::vector<double>(4, 1.0));
    for (int k = 0; k < 4; ++k)
      CHECK(it.eta[k] == doctest::Approx(std::pow(2.0, -(k + 1))).epsilon(1e-15));
  }
  SUBCASE("k = 0 is a single factor") {
    const auto it = iterate_osc_bound({0.5});
    CHECK(it.eta[0] == doctest::Approx(0.75).epsilon(1e-15));
  }
  SUBCASE("logarithmic contraction values against the extended-precision oracle") {
    const double c = 1.0, R = 1.0 / 6.0;
    const auto beta = [&](double r) { return c / std::log(1.0 / r); };
    const auto it = iterate_osc_bound(beta, R, 3);
    std::vector<double> betas;
    for (int i = 0; i <= 3; ++i)
      betas.push_back(beta(R * std::pow(2.0, -(2 * i + 1))));
    const double expect = oracle::product_oracle(betas);
    CHECK(it.eta[3] == doctest::Approx(expect).epsilon(1e-14));
    CHECK(std::exp(it.log_eta[3]) == doctest::Approx(expect).epsilon(1e-14));
    // rigorous majorant ln eta_k <= -(1/2) sum beta_i
    double sum = 0.0;
    for (double b : betas) sum += b;
    CHECK(it.log_eta[3] <= -0.5 * sum + 1e-15);
    CHECK(it.majorant_log == doctest::Approx(-0.5 * sum).epsilon(1e-15));
  }
  SUBCASE("eta is strictly decreasing and in (0,1)") {
    const auto it = iterate_osc_bound([](double r) { return 0.5 / std::log(1.0 / r); },
                                      0.1, 8);
    for (std::size_t k = 0; k < it.eta.size(); ++k) {
      CHECK(it.eta[k] > 0.0);
      CHECK(it.eta[k] < 1.0);
      if (k > 0) CHECK(it.eta[k] < it.eta[k - 1]);
    }
  }
  SUBCASE("factors outside (0,1] are contract errors") {
    CHECK_THROWS_AS(iterate_osc_bound({0.5, 1.5}), ContractError);
    CHECK_THROWS_AS(iterate_osc_bound({0.0}), ContractError);
  }
}
