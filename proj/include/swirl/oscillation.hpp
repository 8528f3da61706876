#pragma once

#include <functional>
#include <vector>

#include "swirl/criterion.hpp"
#include "swirl/quadrature.hpp"

namespace swirl {

/// Oscillation of sigma over one parabolic cylinder.
struct OscRecord {
  ParabolicCylinder q;
  double max = 0.0; // M_r
  double min = 0.0; // m_r
  double osc = 0.0; // M_r - m_r
};

OscRecord measure_osc(const SnapshotSeries& s, const ParabolicCylinder& q,
                      FieldKind kind = FieldKind::swirl);

/// Records at radii r_max, r_max/2, ... down to r_min (>= 4h; sub-grid radii
/// are rejected, nodal sup/inf below grid scale is meaningless).
std::vector<OscRecord> dyadic_scan(const SnapshotSeries& s, const ProbePoint& center,
                                   double r_min, double r_max,
                                   FieldKind kind = FieldKind::swirl);

/// Power-law decay fit osc(Q(r)) ~ C1 (r/2R)^C2 osc(Q(2R)).  The reference
/// record at r = 2R must be present among the records; the least-squares fit
/// runs over the records with r <= R and osc > 0.  Since the target statement
/// is an upper bound rather than an asymptotic, the fit also reports the
/// largest exponent for which the bound holds with C1 = 2 across all records
/// (the envelope), and flags records violating the fitted bound.
struct DecayFit {
  double reference_R = 0.0;
  double osc_ref = 0.0;    // osc(Q(2R))
  double C1 = 0.0;         // fitted prefactor
  double C2 = 0.0;         // fitted exponent
  double C2_stderr = 0.0;  // least-squares confidence width of the exponent
  double envelope_C2 = 0.0;
  double residual = 0.0;   // rms residual of the log-log fit
  bool degenerate = false; // all-zero oscillations; no fit possible
  std::vector<double> radii, osc;
  std::vector<int> violations; // indices violating the fitted bound
};

DecayFit fit_decay(const std::vector<OscRecord>& records, double reference_R);

/// Time series of sup|sigma| with a violation flag against
/// sigma0 * (1 + tol_rel).
struct MaxPrincipleReport {
  std::vector<double> times;
  std::vector<double> sup_abs;
  double sigma0 = 0.0;
  double tol_rel = 0.0;
  long first_violation = -1; // snapshot index, -1 if none
  bool violated = false;
};

MaxPrincipleReport max_principle_monitor(const SnapshotSeries& s, double sigma0,
                                         double tol_rel);

/// Oscillation-contraction iteration eta_k = prod_{i=0..k} (1 - beta_i/2),
/// carried in log space.  Every beta_i must lie in (0,1] (ContractError).
/// `majorant_log` is the rigorous bound ln eta_k <= -(1/2) sum beta_i.
struct OscIteration {
  std::vector<double> beta;
  std::vector<double> log_eta; // ln eta_i, i = 0..k
  std::vector<double> eta;     // exp(log_eta); log space is authoritative
  double majorant_log = 0.0;
};

/// beta_i = beta_of_r(R / 2^{2i+1}), i = 0..k.
OscIteration iterate_osc_bound(const std::function<double(double)>& beta_of_r,
                               double R, int k);
OscIteration iterate_osc_bound(const std::vector<double>& betas);

} // namespace swirl
