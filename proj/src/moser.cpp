#include "swirl/moser.hpp"

#include <algorithm>
#include <cmath>

namespace swirl {
namespace {

// Everything threshold-related works on the log-log scale
// x = (1/2) ln ln (1/R): the interesting scales sit far below the smallest
// positive double, but remain ordinary numbers in x.

// x search ceiling; crossings can sit at astronomically large x (tiny
// exponents like 239*alpha/3 against slope 1), so the bisection runs on ln x.
constexpr double kXMax = 1e300;

// x at scale factor*R given x at R: ln(1/(factor R)) = ln(1/R) - ln(factor).
double x_at_scale(double x, double factor) {
  const double lf = std::log(factor);
  if (2.0 * x > 700.0) return x; // ln factor is negligible against e^{2x}
  const double w = std::exp(2.0 * x) - lf;
  if (!(w > 0.0)) throw DomainError("scale factor leaves the admissible range");
  return 0.5 * std::log(w);
}

double gauge_of_x(double x, const GaugeParams& p) {
  if (!(x > 0.0)) return 1.0;
  return std::max(1.0, p.c_star * std::pow(x, p.alpha));
}

struct ChainResult {
  double theta0_tilde;
  double n_steps;
  double ln_beta0;
};

// Term-by-term lower bound chain at log-log position x, for
// |t_bar| = ratio * R^2.  Falls back to the single-g closed bound when the
// step count is too large to sum explicitly (the bound stays a valid
// minorant: g is largest at the smallest scale (4/3)R).
ChainResult beta0_chain_x(double x, double ratio, const GaugeParams& gauge, double c) {
  ChainResult out{};
  const double g43 = gauge_of_x(x_at_scale(x, 4.0 / 3.0), gauge);
  out.theta0_tilde = std::pow(c / g43, 4.0 / 3.0);
  out.n_steps = std::floor(9.0 / 8.0 * ratio / out.theta0_tilde) + 1.0;
  const double n = out.n_steps;
  const double n40 = std::pow(n, 40.0);
  if (n <= 4096.0) {
    double sum = 0.0;
    for (double i = 0.0; i < n; i += 1.0) {
      const double factor = 2.0 * (1.0 - i / (3.0 * n));
      const double g = gauge_of_x(x_at_scale(x, factor), gauge);
      sum += std::log(6.0) + c * n40 * std::pow(g, 25.0);
    }
    out.ln_beta0 = -sum;
  } else {
    out.ln_beta0 = -n * (std::log(6.0) + c * n40 * std::pow(g43, 25.0));
  }
  return out;
}

struct Predicate {
  virtual bool operator()(double x) const = 0;
  virtual ~Predicate() = default;
};

Threshold find_threshold(const Predicate& holds, double x_cap) {
  Threshold t;
  if (holds(x_cap)) {
    t.x = x_cap;
    t.r = 1.0 / 6.0;
    t.capped = true;
    return t;
  }
  if (!holds(kXMax)) {
    t.satisfiable = false;
    t.representable = false;
    t.x = kXMax;
    t.r = 0.0;
    return t;
  }
  double lo = std::log(x_cap), hi = std::log(kXMax);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (holds(std::exp(mid)))
      hi = mid;
    else
      lo = mid;
  }
  t.x = std::exp(hi);
  t.r = r_of_loglog_x(t.x);
  t.representable = t.r > 0.0;
  return t;
}

} // namespace

double loglog_x_of_r(double R) {
  if (!(R > 0.0) || !(R < 1.0)) throw DomainError("loglog scale needs 0 < R < 1");
  const double w = std::log(1.0 / R);
  if (!(w > 1.0)) throw DomainError("loglog scale needs R < 1/e");
  return 0.5 * std::log(w);
}

double r_of_loglog_x(double x) {
  if (2.0 * x > 700.0) return 0.0;
  const double w = std::exp(2.0 * x);
  if (w > 745.0) return 0.0; // exp(-w) underflows
  return std::exp(-w);
}

double const_c1(double tau1, double tau, double gamma1, double gamma, double M2R, double c) {
  if (!(0.0 < tau1) || !(tau1 < tau) || !(tau < 2.0))
    throw DomainError("const_c1: need 0 < tau1 < tau < 2");
  if (!(0.0 < gamma1) || !(gamma1 < gamma) || !(gamma < 4.0))
    throw DomainError("const_c1: need 0 < gamma1 < gamma < 4");
  if (M2R < 0.0 || !(c > 0.0)) throw DomainError("const_c1: need M2R >= 0 and c > 0");
  const double dt = tau - tau1;
  const double paren = 1.0 + dt / std::sqrt(gamma - gamma1) +
                       std::pow(1.0 / (gamma1 * tau1 * tau1 * tau1), 0.1) * M2R;
  return c / std::pow(dt, 16.0 / 3.0) * paren * paren * paren;
}

double const_c1_prime(double lambda, double theta, double M2R, double c) {
  if (!(0.0 < lambda) || !(lambda < 1.0))
    throw DomainError("const_c1_prime: need 0 < lambda < 1");
  if (!(0.0 < theta) || theta > 1.0)
    throw DomainError("const_c1_prime: need 0 < theta <= 1");
  if (M2R < 0.0 || !(c > 0.0)) throw DomainError("const_c1_prime: need M2R >= 0 and c > 0");
  const double paren =
      1.0 + std::pow(1.0 / (theta * lambda * lambda * lambda), 0.1) * M2R;
  return c / std::pow(1.0 - lambda, 16.0 / 3.0) * paren * paren * paren;
}

double const_mu_star(double c1) {
  if (!(c1 > 0.0)) throw DomainError("const_mu_star: need c1 > 0");
  return std::pow(2.0 * c1, -10.0 / 3.0);
}

double const_theta0(double delta0, double f2R, double c) {
  if (!(delta0 > 0.0) || delta0 > 1.0)
    throw DomainError("const_theta0: need delta0 in (0,1]");
  if (f2R < 0.0 || !(c > 0.0)) throw DomainError("const_theta0: need f2R >= 0 and c > 0");
  const double d6 = std::pow(delta0, 6.0);
  const double v = std::pow(c * d6 / (1.0 + delta0 * delta0 * f2R), 4.0 / 3.0);
  return std::min(1.0, v);
}

double const_s(double delta1, double mu1, double theta1, double f2R, double c) {
  if (!(delta1 > 0.0) || !(mu1 > 0.0) || !(theta1 > 0.0) || f2R < 0.0 || !(c > 0.0))
    throw DomainError("const_s: all inputs must be positive (f2R >= 0)");
  return std::floor(c / (delta1 * delta1 * mu1 * mu1 * theta1) * (1.0 + f2R)) + 1.0;
}

double const_beta2_log2(double sigma_frac, double g2R, double c) {
  if (!(sigma_frac > 0.0) || !(sigma_frac < 1.0))
    throw DomainError("const_beta2_log2: need sigma in (0,1)");
  if (!(g2R >= 1.0) || c < 0.0)
    throw DomainError("const_beta2_log2: need g2R >= 1 and c >= 0");
  const double exponent = c * std::pow(1.0 - sigma_frac, -40.0) *
                          std::pow(sigma_frac, -6.0) * std::pow(g2R, 25.0);
  return -exponent - std::log2(6.0);
}

std::pair<double, double> const_kappa0_delta0(double f2R, double M0, double c) {
  if (!(M0 >= 1.0)) throw DomainError("const_kappa0_delta0: need M0 >= 1");
  if (f2R < 0.0 || !(c > 0.0))
    throw DomainError("const_kappa0_delta0: need f2R >= 0 and c > 0");
  const double kappa0 = c / (1.0 + f2R);
  const double delta0 = std::pow(c / (M0 * (1.0 + f2R)), 9.0 / 4.0);
  return {kappa0, delta0};
}

double const_hatbeta2_bound(double R, double alpha) {
  if (alpha < 0.0) throw DomainError("const_hatbeta2_bound: need alpha >= 0");
  if (!(R > 0.0) || !(R < 1.0))
    throw DomainError("const_hatbeta2_bound: need 0 < R < 1");
  const double w = std::log(1.0 / R);
  if (!(w > 1.0))
    throw DomainError("const_hatbeta2_bound: inner logs nonpositive (need R < 1/e)");
  const double x = 0.5 * std::log(w); // ln sqrt(ln 1/R), positive here
  return alpha * std::log(x) / std::sqrt(w);
}

Thresholds const_thresholds(const GaugeParams& gauge, double theta, double M0, double c) {
  gauge.validate();
  if (!(theta > 0.0) || theta > 1.0)
    throw DomainError("const_thresholds: need theta in (0,1]");
  if (!(M0 >= 1.0) || !(c > 0.0))
    throw DomainError("const_thresholds: need M0 >= 1 and c > 0");
  (void)M0; // enters only through the configurable constant c

  const double x_cap = loglog_x_of_r(1.0 / 6.0);
  Thresholds th;

  struct P1 final : Predicate {
    const GaugeParams* g;
    double theta, c;
    bool operator()(double x) const override {
      const double g2 = gauge_of_x(x_at_scale(x, 2.0), *g);
      return std::pow(1.0 / (c * g2), 4.0 / 3.0) <= theta * (1.0 + 1e-15);
    }
  } p1;
  p1.g = &gauge;
  p1.theta = theta;
  p1.c = c;
  th.r1 = find_threshold(p1, x_cap);

  th.r3.x = x_cap;
  th.r3.r = 1.0 / 6.0;
  th.r3.capped = true;

  struct P4 final : Predicate {
    const GaugeParams* g;
    double c;
    bool operator()(double x) const override {
      const ChainResult ch = beta0_chain_x(x, 1.0, *g, c);
      return ch.ln_beta0 >= -x; // -(1/2) ln ln (1/R) = -x
    }
  } p4;
  p4.g = &gauge;
  p4.c = c;
  th.r4 = find_threshold(p4, x_cap);

  // R*2 = min of R*1, R*3, R*4 (largest x)
  th.r2.satisfiable = th.r1.satisfiable && th.r4.satisfiable;
  th.r2.x = std::max({th.r1.x, th.r3.x, th.r4.x});
  th.r2.r = th.r2.satisfiable ? r_of_loglog_x(th.r2.x) : 0.0;
  th.r2.representable = th.r2.r > 0.0;
  th.r2.capped = th.r2.satisfiable && th.r2.x == x_cap;

  struct P5 final : Predicate {
    double alpha, c;
    bool operator()(double x) const override {
      const double a = 2.0 * c * std::pow(x, 224.0 * alpha - 1.0);
      const double b = c * std::pow(x, 224.0 * alpha) - alpha * std::log(x);
      return a <= 1.0 + 1e-15 && b >= 0.0;
    }
  } p5;
  p5.alpha = gauge.alpha;
  p5.c = c;
  th.r5 = find_threshold(p5, x_cap);
  // additionally capped at min(1/6, R*2)
  th.r5.satisfiable = th.r5.satisfiable && th.r2.satisfiable;
  if (th.r5.satisfiable && th.r2.x > th.r5.x) {
    th.r5.x = th.r2.x;
    th.r5.r = th.r2.r;
    th.r5.representable = th.r2.representable;
    th.r5.capped = th.r2.capped;
  }
  if (!th.r5.satisfiable) {
    th.r5.r = 0.0;
    th.r5.representable = false;
  }
  return th;
}

Beta0Bound const_beta0_log(double R, double t_bar, double theta, const GaugeParams& gauge,
                           double c) {
  gauge.validate();
  if (!(R > 0.0) || R > 1.0 / 6.0)
    throw DomainError("const_beta0_log: need 0 < R <= 1/6");
  if (!(theta > 0.0) || theta > 1.0)
    throw DomainError("const_beta0_log: need theta in (0,1]");
  const double R2 = R * R;
  if (t_bar < -R2 * (1.0 + 1e-12) || t_bar > -theta * R2 * (1.0 - 1e-12))
    throw DomainError("const_beta0_log: need -R^2 <= t_bar <= -theta R^2");
  const double x = loglog_x_of_r(R);

  Beta0Bound out;
  const ChainResult ch = beta0_chain_x(x, std::abs(t_bar) / R2, gauge, c);
  if (ch.theta0_tilde > theta * (1.0 + 1e-12))
    throw DomainError("const_beta0_log: step window (c/g((4/3)R))^{4/3} exceeds theta; "
                      "R lies above the R*1-type threshold for this theta");
  out.theta0_tilde = ch.theta0_tilde;
  out.n_steps = ch.n_steps;
  out.ln_beta0 = ch.ln_beta0;
  out.target_ln = -x;

  const Thresholds th = const_thresholds(gauge, theta, 2.0, c);
  out.target_applicable =
      th.r2.satisfiable && th.r2.representable && R <= th.r2.r * (1.0 + 1e-12);
  out.satisfies_target = out.ln_beta0 >= out.target_ln;
  return out;
}

MoserConstants compute_moser_constants(const MoserInputs& in) {
  MoserConstants m;
  m.in = in;
  m.c1 = const_c1(in.tau1, in.tau, in.gamma1, in.gamma, in.M2R, in.c);
  m.c1_prime = const_c1_prime(in.lambda, in.theta, in.M2R, in.c);
  m.mu_star = const_mu_star(m.c1);
  m.theta0 = const_theta0(in.delta0, in.f2R, in.c);
  m.s = const_s(in.delta1, in.mu1, in.theta1, in.f2R, in.c);
  m.beta2_log2 = const_beta2_log2(in.sigma_frac, in.g2R, in.c);
  auto kd = const_kappa0_delta0(in.f2R, in.M0, in.c);
  m.kappa0 = kd.first;
  m.delta0_out = kd.second;
  m.hatbeta2_bound = const_hatbeta2_bound(in.R, in.gauge.alpha);
  m.beta0 = const_beta0_log(in.R, in.t_bar, in.theta, in.gauge, in.c);
  m.thresholds = const_thresholds(in.gauge, in.theta, in.M0, in.c);
  return m;
}

std::vector<double> moser_norm_trace(const SnapshotSeries& s, const ProbePoint& z0,
                                     double R, double tau1, double tau, double gamma1,
                                     double gamma, FieldKind kind, int i_max) {
  if (!(0.0 < tau1) || !(tau1 < tau) || !(0.0 < gamma1) || !(gamma1 < gamma))
    throw DomainError("moser_norm_trace: need 0 < tau1 < tau and 0 < gamma1 < gamma");
  i_max = std::min(i_max, 12); // (4/3)^i exponents overflow beyond this
  std::vector<double> trace;
  for (int i = 1; i <= i_max; ++i) {
    const double m_i = std::pow(4.0 / 3.0, i);
    const double r_i = tau1 * R + (tau - tau1) * R * std::pow(2.0, 1 - i);
    const double win = gamma1 * R * R + (gamma - gamma1) * R * R * std::pow(4.0, 1 - i);
    ParabolicCylinder q;
    q.z_center = z0.z;
    q.t_top = z0.t;
    q.r = r_i;
    q.mu = win / (r_i * r_i);
    const Extrema e = region_extrema(s, q, kind);
    if (e.min < 0.0)
      throw ContractError("moser_norm_trace: field must be a nonnegative truncation");
    const double p = 2.5 * m_i;
    const double bulk = std::pow(integrate_lp(s, q, p, std::nullopt, kind), p);
    trace.push_back(std::pow(bulk / (win * r_i * r_i * r_i), 2.0 / (5.0 * m_i)));
  }
  return trace;
}

} // namespace swirl
