#pragma once

#include <utility>
#include <vector>

#include "swirl/criterion.hpp"

namespace swirl {

// Iteration-constant calculators.  Each is a pure function of its inputs;
// the generic absolute constant c is a single configurable knob shared by
// all formulas (default 1).  Quantities that underflow double (the beta's)
// are carried in log space and never exponentiated here.

/// c / (tau-tau1)^{16/3} * (1 + (tau-tau1)/sqrt(gamma-gamma1)
///                            + (1/(gamma1 tau1^3))^{1/10} M2R)^3
/// for 0 < tau1 < tau < 2, 0 < gamma1 < gamma < 4 (DomainError otherwise).
double const_c1(double tau1, double tau, double gamma1, double gamma, double M2R,
                double c = 1.0);

/// Variant without the temporal cut-off:
/// c / (1-lambda)^{16/3} * (1 + (1/(theta lambda^3))^{1/10} M2R)^3,
/// 0 < lambda < 1, 0 < theta <= 1.
double const_c1_prime(double lambda, double theta, double M2R, double c = 1.0);

/// mu* = (2 c1)^{-10/3}.
double const_mu_star(double c1);

/// theta0 = min(1, (c delta0^6 / (1 + delta0^2 f2R))^{4/3}), delta0 in (0,1].
double const_theta0(double delta0, double f2R, double c = 1.0);

/// s = entier(c/(delta1^2 mu1^2 theta1) (1 + f2R)) + 1.  Integer-valued but
/// returned as a double: admissible mu1 values can drive s far beyond any
/// integer type, and consumers only ever form 2^{-s} thresholds from it.
double const_s(double delta1, double mu1, double theta1, double f2R, double c = 1.0);

/// log2(beta2) = -c (1-sigma)^{-40} sigma^{-6} g2R^{25} - log2(6),
/// sigma in (0,1), g2R >= 1.
double const_beta2_log2(double sigma_frac, double g2R, double c = 1.0);

/// kappa0 = c/(1+f2R),  delta0 = (c/(M0 (1+f2R)))^{9/4},  M0 >= 1.
std::pair<double, double> const_kappa0_delta0(double f2R, double M0, double c = 1.0);

/// (ln 1/R)^{-1/2} * ln( (ln sqrt(ln 1/R))^alpha ).  Degenerates to 0 at the
/// inner-log boundary; DomainError when the nested logs are undefined
/// (R >= 1/e).
double const_hatbeta2_bound(double R, double alpha);

/// Log-log scale helpers: x = (1/2) ln ln (1/R)  <->  R = exp(-exp(2x)).
double loglog_x_of_r(double R);
double r_of_loglog_x(double x); // 0 when R underflows double

/// One threshold R* on the log-log scale.  Thresholds frequently live far
/// below the smallest positive double; x is always meaningful, r only when
/// representable.
struct Threshold {
  double x = 0.0;          // (1/2) ln ln (1/R*) at the threshold
  double r = 0.0;          // exp(-exp(2x)) when representable, else 0
  bool representable = true;
  bool capped = false;     // the 1/6 cap applied
  bool satisfiable = true; // defining inequality attainable at all
};

struct Thresholds {
  Threshold r1, r3, r4, r2, r5;
};

/// Scale thresholds found by fixed-iteration bisection (bitwise
/// reproducible) on their defining monotone inequalities, all capped at 1/6:
///   R*1: (1/(c g(2r)))^{4/3} <= theta for all r <= R*1
///   R*3: the 1/6 manipulation cap (no separate defining display)
///   R*4: the chained beta0 lower bound (worst case t_bar = -R^2) dominates
///        -(1/2) ln ln (1/R)
///   R*2: min(R*1, R*3, R*4)
///   R*5: 2c x^{224 alpha - 1} <= 1  and  c x^{224 alpha} >= alpha ln x,
///        x = (1/2) ln ln(1/R); additionally capped at R*2.
Thresholds const_thresholds(const GaugeParams& gauge, double theta, double M0,
                            double c = 1.0);

/// Step count and chained lower bound for ln beta0.
struct Beta0Bound {
  double theta0_tilde = 0.0; // (c/g((4/3)R))^{4/3}
  double n_steps = 0.0;      // entier((9/8)|t_bar|/(theta0_tilde R^2)) + 1
  double ln_beta0 = 0.0;     // sum_i [ -ln 6 - c N^40 g(2(1-i/(3N))R)^25 ]
  double target_ln = 0.0;    // -(1/2) ln ln (1/R)
  bool target_applicable = false; // R <= R*2 (usually far below double range)
  bool satisfies_target = false;  // ln_beta0 >= target_ln
};

/// Requires 0 < R <= 1/6, R <= R*1(theta) and -R^2 <= t_bar <= -theta R^2
/// (DomainError naming the violated bound).  The target comparison is
/// returned as data; it is only asserted by the caller when
/// target_applicable holds.
Beta0Bound const_beta0_log(double R, double t_bar, double theta,
                           const GaugeParams& gauge, double c = 1.0);

/// Inputs for the full ledger; defaults match the calculators' documented
/// example points.
struct MoserInputs {
  double tau1 = 0.5, tau = 1.0, gamma1 = 0.5, gamma = 1.0;
  double theta = 1.0;
  double sigma_frac = 0.5;
  double delta0 = 0.5, delta1 = 1.0 / 3.0, mu1 = 0.1, theta1 = 0.5;
  double lambda = 0.75;
  double M0 = 2.0, k_R = 1.0;
  double f2R = 0.0, M2R = 0.0, g2R = 1.0;
  double R = 1.0 / 6.0;
  double t_bar = -(1.0 / 36.0); // -R^2
  double c = 1.0;
  GaugeParams gauge;
};

struct MoserConstants {
  MoserInputs in;
  double c1 = 0.0, c1_prime = 0.0, mu_star = 0.0, theta0 = 0.0, s = 0.0;
  double beta2_log2 = 0.0;
  double kappa0 = 0.0, delta0_out = 0.0;
  double hatbeta2_bound = 0.0;
  Beta0Bound beta0;
  Thresholds thresholds;
};

MoserConstants compute_moser_constants(const MoserInputs& in);

/// Truncation-norm trace over shrinking cylinders:
///   G_i = ((1/(|t_i| r_i^3)) intint f^{5 m_i/2} dz)^{2/(5 m_i)},
///   m_i = (4/3)^i, r_i = tau1 R + (tau-tau1) R 2^{-i+1},
///   t_i = -(gamma1 R^2 + (gamma-gamma1) R^2 4^{-i+1}) relative to the probe
/// top, for i = 1..i_max (i_max capped at 12 to avoid overflow).
/// The field is expected nonnegative (a truncation); ContractError otherwise.
std::vector<double> moser_norm_trace(const SnapshotSeries& s, const ProbePoint& z0,
                                     double R, double tau1, double tau, double gamma1,
                                     double gamma, FieldKind kind, int i_max);

} // namespace swirl
