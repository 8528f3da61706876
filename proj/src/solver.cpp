#include "swirl/solver.hpp"

#include <algorithm>
#include <cmath>

#include "swirl/quadrature.hpp"

namespace swirl {
namespace {

constexpr double kInf = 1e300;

// ---------------------------------------------------------------- helpers

void apply_velocity_bc(Field& vr, Field& vp, Field& vz, Field& q, const Scenario& sc,
                       double t) {
  const CylGrid& g = vr.grid();
  const int nr = g.n_rho, nz = g.n_z;
  for (int j = 0; j <= nz; ++j) {
    const double z = g.z(j);
    vr(nr, j) = sc.exact_at(FieldKind::v_rho, g.rho_max, z, t);
    vp(nr, j) = sc.exact_at(FieldKind::v_phi, g.rho_max, z, t);
    vz(nr, j) = sc.exact_at(FieldKind::v_axial, g.rho_max, z, t);
  }
  for (int i = 0; i <= nr; ++i) {
    const double rho = g.rho(i);
    vr(i, 0) = sc.exact_at(FieldKind::v_rho, rho, g.z_min, t);
    vp(i, 0) = sc.exact_at(FieldKind::v_phi, rho, g.z_min, t);
    vz(i, 0) = sc.exact_at(FieldKind::v_axial, rho, g.z_min, t);
    vr(i, nz) = sc.exact_at(FieldKind::v_rho, rho, g.z_max, t);
    vp(i, nz) = sc.exact_at(FieldKind::v_phi, rho, g.z_max, t);
    vz(i, nz) = sc.exact_at(FieldKind::v_axial, rho, g.z_max, t);
  }
  vr.enforce_axis();
  vp.enforce_axis();
  (void)q;
}

void apply_swirl_bc(Field& sigma, const Scenario& sc, double t) {
  const CylGrid& g = sigma.grid();
  const int nr = g.n_rho, nz = g.n_z;
  for (int j = 0; j <= nz; ++j)
    sigma(nr, j) = sc.exact_at(FieldKind::swirl, g.rho_max, g.z(j), t);
  for (int i = 0; i <= nr; ++i) {
    sigma(i, 0) = sc.exact_at(FieldKind::swirl, g.rho(i), g.z_min, t);
    sigma(i, nz) = sc.exact_at(FieldKind::swirl, g.rho(i), g.z_max, t);
  }
  sigma.enforce_axis();
}

// Momentum right-hand side (advection + curvature + pressure gradient +
// diffusion), interior nodes plus the axis column of v_axial.
void nse_rhs_row(const NseState& s, Field& fr, Field& fp, Field& fz, int i) {
  const CylGrid& g = s.v_rho.grid();
  const double hr = g.h_rho(), hz = g.h_z();
  const double ihr2 = 1.0 / (hr * hr), ihz2 = 1.0 / (hz * hz);
  const int nz = g.n_z;
  const Field &vr = s.v_rho, &vp = s.v_phi, &vz = s.v_axial, &q = s.pressure;

  if (i == 0) {
    // axis: v_rho = v_phi = 0; v_axial evolves with the even-limit Laplacian
    for (int j = 1; j < nz; ++j) {
      const double dz_vz = (vz(0, j + 1) - vz(0, j - 1)) / (2.0 * hz);
      const double dz_q = (q(0, j + 1) - q(0, j - 1)) / (2.0 * hz);
      const double lap = 4.0 * (vz(1, j) - vz(0, j)) * ihr2 +
                         (vz(0, j + 1) - 2.0 * vz(0, j) + vz(0, j - 1)) * ihz2;
      fz(0, j) = -vz(0, j) * dz_vz - dz_q + lap;
    }
    return;
  }

  const double rho = g.rho(i);
  const double irho = 1.0 / rho, irho2 = irho * irho;
  for (int j = 1; j < nz; ++j) {
    const double ur = vr(i, j), up = vp(i, j), uz = vz(i, j);

    const double dr_vr = (vr(i + 1, j) - vr(i - 1, j)) / (2.0 * hr);
    const double dz_vr = (vr(i, j + 1) - vr(i, j - 1)) / (2.0 * hz);
    const double dr_vp = (vp(i + 1, j) - vp(i - 1, j)) / (2.0 * hr);
    const double dz_vp = (vp(i, j + 1) - vp(i, j - 1)) / (2.0 * hz);
    const double dr_vz = (vz(i + 1, j) - vz(i - 1, j)) / (2.0 * hr);
    const double dz_vz = (vz(i, j + 1) - vz(i, j - 1)) / (2.0 * hz);
    const double dr_q = (q(i + 1, j) - q(i - 1, j)) / (2.0 * hr);
    const double dz_q = (q(i, j + 1) - q(i, j - 1)) / (2.0 * hz);

    const double lap_vr = (vr(i + 1, j) - 2.0 * ur + vr(i - 1, j)) * ihr2 +
                          dr_vr * irho +
                          (vr(i, j + 1) - 2.0 * ur + vr(i, j - 1)) * ihz2;
    const double lap_vp = (vp(i + 1, j) - 2.0 * up + vp(i - 1, j)) * ihr2 +
                          dr_vp * irho +
                          (vp(i, j + 1) - 2.0 * up + vp(i, j - 1)) * ihz2;
    const double lap_vz = (vz(i + 1, j) - 2.0 * uz + vz(i - 1, j)) * ihr2 +
                          dr_vz * irho +
                          (vz(i, j + 1) - 2.0 * uz + vz(i, j - 1)) * ihz2;

    fr(i, j) = -(ur * dr_vr + uz * dz_vr) + up * up * irho - dr_q + lap_vr - ur * irho2;
    fp(i, j) = -(ur * dr_vp + uz * dz_vp) - ur * up * irho + lap_vp - up * irho2;
    fz(i, j) = -(ur * dr_vz + uz * dz_vz) - dz_q + lap_vz;
  }
}

void nse_rhs(const NseState& s, Field& fr, Field& fp, Field& fz) {
  const int ni = s.v_rho.ni();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < ni - 1; ++i) nse_rhs_row(s, fr, fp, fz, i);
}

// Swirl transport right-hand side: -(v_rho + 2/rho) d_rho - v_axial d_z + lap.
// The first off-axis node closes its stencil with the pinned axis value 0.
void swirl_rhs_row(const Field& sig, const Field& vr, const Field& vz, Field& out, int i) {
  const CylGrid& g = sig.grid();
  const double hr = g.h_rho(), hz = g.h_z();
  const double ihr2 = 1.0 / (hr * hr), ihz2 = 1.0 / (hz * hz);
  const int nz = g.n_z;
  const double rho = g.rho(i);
  const double irho = 1.0 / rho;
  for (int j = 1; j < nz; ++j) {
    const double dr = (sig(i + 1, j) - sig(i - 1, j)) / (2.0 * hr);
    const double dz = (sig(i, j + 1) - sig(i, j - 1)) / (2.0 * hz);
    const double lap = (sig(i + 1, j) - 2.0 * sig(i, j) + sig(i - 1, j)) * ihr2 +
                       dr * irho +
                       (sig(i, j + 1) - 2.0 * sig(i, j) + sig(i, j - 1)) * ihz2;
    const double drift = vr(i, j) + 2.0 * irho;
    out(i, j) = -(drift * dr + vz(i, j) * dz) + lap;
  }
}

void swirl_rhs(const Field& sig, const Field& vr, const Field& vz, Field& out) {
  const int ni = sig.ni();
#pragma omp parallel for schedule(static)
  for (int i = 1; i < ni - 1; ++i) swirl_rhs_row(sig, vr, vz, out, i);
}

double max_speed(const NseState& s) {
  const int ni = s.v_rho.ni(), nj = s.v_rho.nj();
  std::vector<double> part(static_cast<std::size_t>(ni), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < ni; ++i) {
    double m = 0.0;
    for (int j = 0; j < nj; ++j) {
      const double vr = s.v_rho(i, j), vp = s.v_phi(i, j), vz = s.v_axial(i, j);
      m = std::max(m, vr * vr + vp * vp + vz * vz);
    }
    part[static_cast<std::size_t>(i)] = m;
  }
  double m = 0.0;
  for (double x : part) m = std::max(m, x);
  return std::sqrt(m);
}

double max_interior_abs(const Field& f) {
  const int ni = f.ni(), nj = f.nj();
  std::vector<double> part(static_cast<std::size_t>(ni), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < ni - 1; ++i) {
    double m = 0.0;
    for (int j = 1; j < nj - 1; ++j) m = std::max(m, std::abs(f(i, j)));
    part[static_cast<std::size_t>(i)] = m;
  }
  double m = 0.0;
  for (double x : part) m = std::max(m, x);
  return m;
}

// -------------------------------------------------- pressure Poisson (SOR)

// Conservative 5-point cylindrical Laplacian on the full node set: interior
// flux form, even-limit axis row, half-cell boundary rows.  Symmetric with
// respect to the cell volumes and annihilates constants, so subtracting the
// volume-weighted mean of the right-hand side makes the singular Neumann
// system exactly consistent.
struct PoissonStencil {
  int nr, nz;
  double ihz2;
  std::vector<double> ce, cw, cn, cs, diag_r, diag_z; // per-i and per-j parts
  std::vector<double> wr, wz;                         // cell volumes
  double omega;

  explicit PoissonStencil(const CylGrid& g) : nr(g.n_rho), nz(g.n_z) {
    const double hr = g.h_rho(), hz = g.h_z();
    ihz2 = 1.0 / (hz * hz);
    ce.assign(nr + 1, 0.0);
    cw.assign(nr + 1, 0.0);
    wr.assign(nr + 1, 0.0);
    ce[0] = 4.0 / (hr * hr);
    wr[0] = hr * hr / 8.0;
    for (int i = 1; i < nr; ++i) {
      const double rho = g.rho(i);
      ce[i] = (rho + 0.5 * hr) / (rho * hr * hr);
      cw[i] = (rho - 0.5 * hr) / (rho * hr * hr);
      wr[i] = rho * hr;
    }
    const double volr = g.rho_max * hr / 2.0 - hr * hr / 8.0;
    cw[nr] = (g.rho_max - 0.5 * hr) / (hr * volr);
    wr[nr] = volr;

    cn.assign(nz + 1, 0.0);
    cs.assign(nz + 1, 0.0);
    wz.assign(nz + 1, hz);
    cn[0] = 2.0 * ihz2;
    wz[0] = 0.5 * hz;
    for (int j = 1; j < nz; ++j) {
      cn[j] = ihz2;
      cs[j] = ihz2;
    }
    cs[nz] = 2.0 * ihz2;
    wz[nz] = 0.5 * hz;

    diag_r.assign(nr + 1, 0.0);
    diag_z.assign(nz + 1, 0.0);
    for (int i = 0; i <= nr; ++i) diag_r[i] = ce[i] + cw[i];
    for (int j = 0; j <= nz; ++j) diag_z[j] = cn[j] + cs[j];

    const double beta = hr / hz;
    const double rj = (std::cos(kPi / nr) + beta * beta * std::cos(kPi / nz)) /
                      (1.0 + beta * beta);
    omega = 2.0 / (1.0 + std::sqrt(std::max(0.0, 1.0 - rj * rj)));
  }

  double neighbor_sum(const Field& p, int i, int j) const {
    double s = 0.0;
    if (i < nr) s += ce[static_cast<std::size_t>(i)] * p(i + 1, j);
    if (i > 0) s += cw[static_cast<std::size_t>(i)] * p(i - 1, j);
    if (j < nz) s += cn[static_cast<std::size_t>(j)] * p(i, j + 1);
    if (j > 0) s += cs[static_cast<std::size_t>(j)] * p(i, j - 1);
    return s;
  }

  double apply(const Field& p, int i, int j) const {
    return neighbor_sum(p, i, j) -
           (diag_r[static_cast<std::size_t>(i)] + diag_z[static_cast<std::size_t>(j)]) *
               p(i, j);
  }

  void sweep_color(Field& p, const Field& rhs, int color) const {
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= nr; ++i) {
      const double dr = diag_r[static_cast<std::size_t>(i)];
      for (int j = (i + color) % 2; j <= nz; j += 2) {
        const double c = dr + diag_z[static_cast<std::size_t>(j)];
        const double s = neighbor_sum(p, i, j);
        p(i, j) = (1.0 - omega) * p(i, j) + omega * (s - rhs(i, j)) / c;
      }
    }
  }

  double residual_max(const Field& p, const Field& rhs) const {
    std::vector<double> part(static_cast<std::size_t>(nr + 1), 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= nr; ++i) {
      double m = 0.0;
      for (int j = 0; j <= nz; ++j) m = std::max(m, std::abs(apply(p, i, j) - rhs(i, j)));
      part[static_cast<std::size_t>(i)] = m;
    }
    double m = 0.0;
    for (double x : part) m = std::max(m, x);
    return m;
  }

  // volume-weighted mean, combined in row order
  double weighted_mean(const Field& f) const {
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= nr; ++i) {
      double row = 0.0, roww = 0.0;
      for (int j = 0; j <= nz; ++j) {
        row += wz[static_cast<std::size_t>(j)] * f(i, j);
        roww += wz[static_cast<std::size_t>(j)];
      }
      num += wr[static_cast<std::size_t>(i)] * row;
      den += wr[static_cast<std::size_t>(i)] * roww;
    }
    return num / den;
  }
};

void shift_field(Field& f, double c) {
  for (double& x : f.values()) x -= c;
}

// Subtract dt * grad(delta) from the velocity on the nodes the projection
// owns (interior, plus the axis column of the axial component); boundary
// nodes stay untouched and keep their Dirichlet data.
void apply_correction(Field& vr, Field& vz, const Field& delta, double dt) {
  const CylGrid& g = vr.grid();
  const int nr = g.n_rho, nz = g.n_z;
  const double hr = g.h_rho(), hz = g.h_z();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nr; ++i) {
    for (int j = 1; j < nz; ++j) {
      if (i >= 1) vr(i, j) -= dt * (delta(i + 1, j) - delta(i - 1, j)) / (2.0 * hr);
      vz(i, j) -= dt * (delta(i, j + 1) - delta(i, j - 1)) / (2.0 * hz);
    }
  }
}

// Exact divergence response of a unit-dt correction: M(delta) such that
// div(v - dt grad delta) = div(v) - dt * M(delta).  Built from the same
// correction and divergence kernels, so the Krylov solve below controls the
// measured residual exactly.
Field correction_response(const Field& delta) {
  const CylGrid& g = delta.grid();
  Field vr(g, FieldKind::v_rho, delta.time());
  Field vp(g, FieldKind::v_phi, delta.time());
  Field vz(g, FieldKind::v_axial, delta.time());
  apply_correction(vr, vz, delta, -1.0); // -dt grad with dt = -1 gives +grad
  return divergence(vr, vp, vz);
}

double ordered_dot(const Field& a, const Field& b) {
  const int ni = a.ni(), nj = a.nj();
  std::vector<double> part(static_cast<std::size_t>(ni), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < ni; ++i) {
    double s = 0.0;
    for (int j = 0; j < nj; ++j) s += a(i, j) * b(i, j);
    part[static_cast<std::size_t>(i)] = s;
  }
  double total = 0.0;
  for (double x : part) total += x;
  return total;
}

void axpy_field(Field& y, double a, const Field& x) {
  auto yv = y.values();
  auto xv = x.values();
  for (std::size_t n = 0; n < yv.size(); ++n) yv[n] += a * xv[n];
}

// Matrix-free BiCGStab on M x = b, stopping on the max-norm of the true
// residual.  The constant mode is harmless (it is in the null space of the
// correction), so no explicit pinning is needed beyond a consistent start.
// Returns the final residual max-norm; iterations are capped by max_iters.
double bicgstab_response(const Field& b, Field& x, double target, int max_iters,
                         int* iters_used) {
  const CylGrid& g = b.grid();
  Field r = b;
  axpy_field(r, -1.0, correction_response(x));
  double res = max_interior_abs(r);
  Field r_hat = r;
  Field p(g, FieldKind::pressure, b.time()), v(g, FieldKind::pressure, b.time());
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  int it = 0;
  while (res > target && it < max_iters) {
    const double rho_new = ordered_dot(r_hat, r);
    if (std::abs(rho_new) < 1e-300 || std::abs(omega) < 1e-300) {
      // restart against the current residual
      r_hat = r;
      p = Field(g, FieldKind::pressure, b.time());
      v = Field(g, FieldKind::pressure, b.time());
      rho = alpha = omega = 1.0;
      ++it;
      continue;
    }
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    // p = r + beta (p - omega v)
    {
      auto pv = p.values();
      auto rv = r.values();
      auto vv = v.values();
      for (std::size_t n = 0; n < pv.size(); ++n)
        pv[n] = rv[n] + beta * (pv[n] - omega * vv[n]);
    }
    v = correction_response(p);
    const double rhv = ordered_dot(r_hat, v);
    if (std::abs(rhv) < 1e-300) {
      r_hat = r;
      ++it;
      continue;
    }
    alpha = rho / rhv;
    Field s = r;
    axpy_field(s, -alpha, v);
    const Field t = correction_response(s);
    const double tt = ordered_dot(t, t);
    omega = tt > 0.0 ? ordered_dot(t, s) / tt : 0.0;
    axpy_field(x, alpha, p);
    if (omega != 0.0) axpy_field(x, omega, s);
    r = s;
    if (omega != 0.0) axpy_field(r, -omega, t);
    res = max_interior_abs(r);
    ++it;
  }
  if (iters_used) *iters_used = it;
  return res;
}

} // namespace

// ---------------------------------------------------------------- public

void SolverConfig::validate() const {
  if (dt < 0.0) throw ContractError("SolverConfig: dt must be >= 0 (0 = automatic)");
  if (!(cfl_safety > 0.0) || cfl_safety > 1.0)
    throw ContractError("SolverConfig: cfl_safety must lie in (0,1]");
  if (!(pressure_tol > 0.0)) throw ContractError("SolverConfig: pressure_tol must be positive");
  if (max_pressure_iters < 1 || sor_max_sweeps < 8)
    throw ContractError("SolverConfig: iteration budgets too small");
}

NseState initial_state(const CylGrid& g, const Scenario& sc, double t0) {
  g.validate();
  NseState s;
  s.time = t0;
  auto shift = [&](const std::function<double(double, double)>& f, FieldKind k) {
    return Field::sampled(g, k, t0, [&](double rho, double z) {
      return sc.has_exact ? sc.exact(k, rho, z, t0) : f(rho, z);
    });
  };
  s.v_rho = shift(sc.v_rho0, FieldKind::v_rho);
  s.v_phi = shift(sc.v_phi0, FieldKind::v_phi);
  s.v_axial = shift(sc.v_axial0, FieldKind::v_axial);
  s.pressure = Field::sampled(g, FieldKind::pressure, t0, sc.pressure0);
  apply_velocity_bc(s.v_rho, s.v_phi, s.v_axial, s.pressure, sc, t0);
  return s;
}

Field initial_swirl(const CylGrid& g, const Scenario& sc, double t0) {
  if (sc.has_exact)
    return Field::sampled(g, FieldKind::swirl, t0, [&](double rho, double z) {
      return sc.exact(FieldKind::swirl, rho, z, t0);
    });
  return Field::sampled(g, FieldKind::swirl, t0,
                        [&](double rho, double z) { return rho * sc.v_phi0(rho, z); });
}

double stable_dt_nse(const NseState& s, const SolverConfig& cfg) {
  const CylGrid& g = s.v_rho.grid();
  const double h = std::min(g.h_rho(), g.h_z());
  const double vmax = max_speed(s);
  const double adv = vmax > 0.0 ? h / vmax : kInf;
  return cfg.cfl_safety * std::min(h * h / 4.0, adv);
}

double stable_dt_swirl(const Field& v_rho, const Field& v_axial, const SolverConfig& cfg) {
  const CylGrid& g = v_rho.grid();
  const double hr = g.h_rho(), hz = g.h_z();
  const int ni = v_rho.ni(), nj = v_rho.nj();
  // radial speed includes the singular drift 2/rho, largest at the first
  // off-axis node
  double sr = 0.0, sz = 0.0;
  for (int i = 1; i < ni; ++i) {
    const double drift = 2.0 / g.rho(i);
    for (int j = 0; j < nj; ++j) {
      sr = std::max(sr, std::abs(v_rho(i, j)) + drift);
      sz = std::max(sz, std::abs(v_axial(i, j)));
    }
  }
  const double h = std::min(hr, hz);
  double bound = h * h / 4.0;
  if (sr > 0.0) bound = std::min(bound, hr / sr);
  if (sz > 0.0) bound = std::min(bound, hz / sz);
  return cfg.cfl_safety * bound;
}

NseState step_nse(const NseState& s, const Scenario& sc, const SolverConfig& cfg,
                  const CylGrid& g, StepStats* stats) {
  cfg.validate();
  const double dt = cfg.dt;
  if (!(dt > 0.0)) throw ContractError("step_nse: cfg.dt must be positive here");
  const double bound = stable_dt_nse(s, cfg);
  if (dt > bound * (1.0 + 1e-12))
    throw StepSizeError("step_nse: dt exceeds the stability bound", bound);

  const double t1 = s.time + dt;
  Field fr(g, FieldKind::v_rho, s.time), fp(g, FieldKind::v_phi, s.time),
      fz(g, FieldKind::v_axial, s.time);
  nse_rhs(s, fr, fp, fz);

  NseState star;
  star.time = t1;
  star.v_rho = s.v_rho;
  star.v_phi = s.v_phi;
  star.v_axial = s.v_axial;
  star.pressure = s.pressure;
  auto axpy = [](Field& y, double a, const Field& x1, double b, const Field& x2) {
    auto yv = y.values();
    auto v1 = x1.values();
    auto v2 = x2.values();
    for (std::size_t n = 0; n < yv.size(); ++n) yv[n] += a * v1[n] + b * v2[n];
  };
  axpy(star.v_rho, dt, fr, 0.0, fr);
  axpy(star.v_phi, dt, fp, 0.0, fp);
  axpy(star.v_axial, dt, fz, 0.0, fz);
  apply_velocity_bc(star.v_rho, star.v_phi, star.v_axial, star.pressure, sc, t1);

  Field fr2(g, FieldKind::v_rho, t1), fp2(g, FieldKind::v_phi, t1),
      fz2(g, FieldKind::v_axial, t1);
  nse_rhs(star, fr2, fp2, fz2);

  NseState out;
  out.time = t1;
  out.v_rho = s.v_rho;
  out.v_phi = s.v_phi;
  out.v_axial = s.v_axial;
  out.pressure = s.pressure;
  axpy(out.v_rho, 0.5 * dt, fr, 0.5 * dt, fr2);
  axpy(out.v_phi, 0.5 * dt, fp, 0.5 * dt, fp2);
  axpy(out.v_axial, 0.5 * dt, fz, 0.5 * dt, fz2);
  apply_velocity_bc(out.v_rho, out.v_phi, out.v_axial, out.pressure, sc, t1);

  // Projection: the bulk of the increment from a compact conservative
  // Poisson solve (red-black SOR), then a matrix-free BiCGStab polish on the
  // exact divergence response of the correction, which the compact operator
  // only approximates near the axis.
  int sweeps = 0, krylov = 0;
  double div_res = max_interior_abs(divergence(out.v_rho, out.v_phi, out.v_axial));
  if (div_res > cfg.pressure_tol) {
    const PoissonStencil st(g);
    Field b = divergence(out.v_rho, out.v_phi, out.v_axial);
    for (double& x : b.values()) x /= dt;

    Field delta(g, FieldKind::pressure, t1);
    {
      Field b_mf = b;
      shift_field(b_mf, st.weighted_mean(b_mf));
      const double sor_tol =
          std::max(0.05 * cfg.pressure_tol / dt, 1e-3 * max_interior_abs(b_mf));
      double res = st.residual_max(delta, b_mf);
      while (res > sor_tol && sweeps < cfg.sor_max_sweeps) {
        for (int k = 0; k < 8; ++k) {
          st.sweep_color(delta, b_mf, 0);
          st.sweep_color(delta, b_mf, 1);
        }
        sweeps += 8;
        res = st.residual_max(delta, b_mf);
      }
    }
    const double target = 0.8 * cfg.pressure_tol / dt;
    const double res = bicgstab_response(b, delta, target, cfg.max_pressure_iters, &krylov);
    if (res > target)
      throw SolverError("projection did not reach the divergence tolerance", res * dt);
    shift_field(delta, st.weighted_mean(delta));
    apply_correction(out.v_rho, out.v_axial, delta, dt);
    for (int i = 0; i <= g.n_rho; ++i)
      for (int j = 0; j <= g.n_z; ++j) out.pressure(i, j) += delta(i, j);
    apply_velocity_bc(out.v_rho, out.v_phi, out.v_axial, out.pressure, sc, t1);
    div_res = max_interior_abs(divergence(out.v_rho, out.v_phi, out.v_axial));
    if (div_res > cfg.pressure_tol)
      throw SolverError("projection did not reach the divergence tolerance", div_res);
  }
  if (stats) {
    stats->div_residual = div_res;
    stats->sor_sweeps = sweeps;
    stats->krylov_iters = krylov;
  }
  out.v_rho.set_time(t1);
  out.v_phi.set_time(t1);
  out.v_axial.set_time(t1);
  out.pressure.set_time(t1);
  return out;
}

Field step_swirl(const Field& sigma, const Field& v_rho, const Field& v_axial,
                 const Field& v_rho_new, const Field& v_axial_new, const Scenario& sc,
                 const SolverConfig& cfg) {
  cfg.validate();
  const double dt = cfg.dt;
  if (!(dt > 0.0)) throw ContractError("step_swirl: cfg.dt must be positive here");
  if (sigma.kind() != FieldKind::swirl)
    throw ContractError("step_swirl: expected a swirl field");
  if (sigma.axis_violation() > 0.0)
    throw ContractError("step_swirl: sigma must vanish on the axis");
  const double bound = stable_dt_swirl(v_rho, v_axial, cfg);
  if (dt > bound * (1.0 + 1e-12))
    throw StepSizeError("step_swirl: dt exceeds the stability bound (singular drift "
                        "included)", bound);

  const CylGrid& g = sigma.grid();
  const double t1 = sigma.time() + dt;

  Field k1(g, FieldKind::swirl, sigma.time());
  swirl_rhs(sigma, v_rho, v_axial, k1);

  Field star = sigma;
  {
    auto sv = star.values();
    auto kv = k1.values();
    for (std::size_t n = 0; n < sv.size(); ++n) sv[n] += dt * kv[n];
  }
  apply_swirl_bc(star, sc, t1);

  Field k2(g, FieldKind::swirl, t1);
  swirl_rhs(star, v_rho_new, v_axial_new, k2);

  Field out = sigma;
  {
    auto ov = out.values();
    auto k1v = k1.values();
    auto k2v = k2.values();
    for (std::size_t n = 0; n < ov.size(); ++n) ov[n] += 0.5 * dt * (k1v[n] + k2v[n]);
  }
  apply_swirl_bc(out, sc, t1);
  out.set_time(t1);
  return out;
}

double kinetic_energy(const NseState& s) {
  const SpatialWeights w = full_grid_weights(s.v_rho.grid());
  const int ni = s.v_rho.ni(), nj = s.v_rho.nj();
  std::vector<double> part(static_cast<std::size_t>(ni), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < ni; ++i) {
    double acc = 0.0;
    for (int j = 0; j < nj; ++j) {
      const double vr = s.v_rho(i, j), vp = s.v_phi(i, j), vz = s.v_axial(i, j);
      acc += w.wz(j) * 0.5 * (vr * vr + vp * vp + vz * vz);
    }
    part[static_cast<std::size_t>(i)] = w.wr(i) * acc;
  }
  double total = 0.0;
  for (double x : part) total += x;
  return total;
}

RunResult run_scenario(const Scenario& sc, const CylGrid& g, SolverConfig cfg,
                       long snapshot_stride) {
  g.validate();
  cfg.validate();
  if (snapshot_stride < 1) throw ContractError("run_scenario: snapshot_stride must be >= 1");
  const double t0 = g.t_start;
  if (!(cfg.t_end > t0)) throw ContractError("run_scenario: t_end must exceed t_start");

  NseState state = initial_state(g, sc, t0);
  Field sigma = initial_swirl(g, sc, t0);

  // exact-velocity fields for swirl-only advancement
  auto sample_velocity = [&](double t) {
    Field vr = Field::sampled(g, FieldKind::v_rho, t, [&](double rho, double z) {
      return sc.exact_at(FieldKind::v_rho, rho, z, t);
    });
    Field vz = Field::sampled(g, FieldKind::v_axial, t, [&](double rho, double z) {
      return sc.exact_at(FieldKind::v_axial, rho, z, t);
    });
    return std::pair<Field, Field>(std::move(vr), std::move(vz));
  };

  double dt_candidate = cfg.dt;
  if (dt_candidate <= 0.0) {
    dt_candidate = stable_dt_swirl(state.v_rho, state.v_axial, cfg);
    if (sc.mode == AdvanceMode::full_nse)
      dt_candidate = std::min(dt_candidate, stable_dt_nse(state, cfg));
  }
  const double span = cfg.t_end - t0;
  const long steps = std::max<long>(1, static_cast<long>(std::ceil(span / dt_candidate - 1e-9)));
  cfg.dt = span / static_cast<double>(steps);

  RunResult res;
  res.dt_used = cfg.dt;
  res.steps = steps;

  auto record_stats = [&](double div_res, int sweeps) {
    res.stats.time.push_back(state.time);
    res.stats.max_speed.push_back(max_speed(state));
    res.stats.div_residual.push_back(div_res);
    res.stats.energy.push_back(kinetic_energy(state));
    res.stats.sup_abs_swirl.push_back(sigma.max_abs());
    res.stats.sor_sweeps.push_back(sweeps);
  };

  auto snapshot_now = [&]() {
    Snapshot snap;
    snap.time = state.time;
    if (sc.mode == AdvanceMode::swirl_only) {
      // velocity components are the scenario's exact fields except the
      // azimuthal one, which is derived from the solved swirl
      Field vp = vphi_from_swirl(sigma);
      snap.fields.push_back(state.v_rho);
      snap.fields.push_back(std::move(vp));
      snap.fields.push_back(state.v_axial);
      snap.fields.push_back(state.pressure);
      snap.fields.push_back(sigma);
    } else {
      snap.fields.push_back(state.v_rho);
      snap.fields.push_back(state.v_phi);
      snap.fields.push_back(state.v_axial);
      snap.fields.push_back(state.pressure);
      snap.fields.push_back(sigma);
    }
    res.series.add(std::move(snap));
  };

  record_stats(max_interior_abs(divergence(state.v_rho, state.v_phi, state.v_axial)), 0);
  snapshot_now();

  for (long k = 0; k < steps; ++k) {
    const double t_next = t0 + (static_cast<double>(k) + 1.0) * cfg.dt;
    try {
      if (sc.mode == AdvanceMode::full_nse) {
        StepStats st;
        NseState next = step_nse(state, sc, cfg, g, &st);
        sigma = step_swirl(sigma, state.v_rho, state.v_axial, next.v_rho, next.v_axial,
                           sc, cfg);
        state = std::move(next);
        state.time = t_next;
        sigma.set_time(t_next);
        record_stats(st.div_residual, st.sor_sweeps);
      } else {
        auto [vr0, vz0] = sample_velocity(state.time);
        auto [vr1, vz1] = sample_velocity(t_next);
        sigma = step_swirl(sigma, vr0, vz0, vr1, vz1, sc, cfg);
        sigma.set_time(t_next);
        state.v_rho = std::move(vr1);
        state.v_axial = std::move(vz1);
        state.v_phi = vphi_from_swirl(sigma);
        state.time = t_next;
        record_stats(0.0, 0);
      }
    } catch (const StepSizeError& e) {
      throw StepSizeError(std::string(e.what()) + " (step " + std::to_string(k) + ")",
                          e.residual(), k);
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " (step " + std::to_string(k) + ")",
                        e.residual(), k);
    }
    if ((k + 1) % snapshot_stride == 0 || k + 1 == steps) snapshot_now();
  }
  return res;
}

} // namespace swirl
