#include "swirl/reports.hpp"

#include <cstdio>
#include <sstream>

namespace swirl {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

nlohmann::json to_json(const CriterionReport& r) {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& rec : r.records)
    recs.push_back({{"probe", {{"z", rec.z0.z}, {"t", rec.z0.t}}},
                    {"R", rec.R},
                    {"f", rec.f},
                    {"M", rec.M},
                    {"g", rec.g},
                    {"margin", rec.margin},
                    {"pass", rec.pass}});
  nlohmann::json j{{"gauge", {{"c_star", r.gauge.c_star}, {"alpha", r.gauge.alpha}}},
                   {"sigma0", r.sigma0},
                   {"records", recs},
                   {"worst_margin", r.worst_margin},
                   {"pass", r.pass}};
  if (r.first_failure)
    j["first_failure"] = {{"R", r.first_failure->R},
                          {"probe", {{"z", r.first_failure->z0.z}, {"t", r.first_failure->z0.t}}},
                          {"margin", r.first_failure->margin}};
  else
    j["first_failure"] = nullptr;
  return j;
}

std::string to_csv(const CriterionReport& r) {
  std::ostringstream out;
  out << "probe_z,probe_t,R,f,M,g,margin,pass\n";
  for (const auto& rec : r.records)
    out << num(rec.z0.z) << ',' << num(rec.z0.t) << ',' << num(rec.R) << ',' << num(rec.f)
        << ',' << num(rec.M) << ',' << num(rec.g) << ',' << num(rec.margin) << ','
        << (rec.pass ? 1 : 0) << '\n';
  return out.str();
}

nlohmann::json to_json(const DecayFit& f) {
  return {{"reference_R", f.reference_R}, {"osc_ref", f.osc_ref},
          {"C1", f.C1},                   {"C2", f.C2},
          {"C2_stderr", f.C2_stderr},     {"envelope_C2", f.envelope_C2},
          {"residual", f.residual},       {"degenerate", f.degenerate},
          {"radii", f.radii},             {"osc", f.osc},
          {"violations", f.violations}};
}

std::string osc_records_csv(const std::vector<OscRecord>& records) {
  std::ostringstream out;
  out << "center_z,center_t,r,M_r,m_r,osc\n";
  for (const auto& r : records)
    out << num(r.q.z_center) << ',' << num(r.q.t_top) << ',' << num(r.q.r) << ','
        << num(r.max) << ',' << num(r.min) << ',' << num(r.osc) << '\n';
  return out.str();
}

nlohmann::json to_json(const LevelSetReport& r) {
  return {{"R", r.R},
          {"kappa", r.kappa},
          {"k_R", r.k_R},
          {"times", r.times},
          {"e_measure", r.e_measure},
          {"e_fraction", r.e_fraction},
          {"E_measure", r.E_measure},
          {"E_fraction", r.E_fraction},
          {"region_measure", r.region_measure},
          {"window_measure", r.window_measure},
          {"t_bar", r.t_bar},
          {"mean_value_ok", r.mean_value_ok}};
}

nlohmann::json to_json(const GrowthLedger& l) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : l.rows) {
    nlohmann::json margins;
    for (const auto& [k, v] : row.margins) margins[k] = v;
    rows.push_back({{"lemma", row.lemma},
                    {"status", row.status},
                    {"hypothesis_holds", row.hypothesis_holds},
                    {"conclusion_holds", row.conclusion_holds},
                    {"margins", margins}});
  }
  return {{"probe", {{"z", l.params.probe.z}, {"t", l.params.probe.t}}},
          {"R", l.params.R},
          {"k_R", l.params.k_R},
          {"f2R", l.f2R},
          {"M2R", l.M2R},
          {"M0", l.M0},
          {"rows", rows},
          {"any_failure", l.any_failure()}};
}

std::string moser_csv_header() {
  return "tau1,tau,gamma1,gamma,theta,sigma_frac,delta0,delta1,mu1,theta1,lambda,M0,k_R,"
         "f2R,M2R,g2R,R,t_bar,c,c_star,alpha,"
         "c1,c1_prime,mu_star,theta0,s,beta2_log2,kappa0,delta0_out,hatbeta2_bound,"
         "beta0_n_steps,beta0_ln,beta0_target_ln,beta0_applicable,beta0_satisfied,"
         "r1_x,r1_r,r2_x,r2_r,r4_x,r5_x,r5_satisfiable,error";
}

std::string moser_csv_row(const MoserConstants& m, const std::string& error) {
  const MoserInputs& in = m.in;
  std::ostringstream out;
  out << num(in.tau1) << ',' << num(in.tau) << ',' << num(in.gamma1) << ',' << num(in.gamma)
      << ',' << num(in.theta) << ',' << num(in.sigma_frac) << ',' << num(in.delta0) << ','
      << num(in.delta1) << ',' << num(in.mu1) << ',' << num(in.theta1) << ','
      << num(in.lambda) << ',' << num(in.M0) << ',' << num(in.k_R) << ',' << num(in.f2R)
      << ',' << num(in.M2R) << ',' << num(in.g2R) << ',' << num(in.R) << ','
      << num(in.t_bar) << ',' << num(in.c) << ',' << num(in.gauge.c_star) << ','
      << num(in.gauge.alpha) << ',';
  if (error.empty()) {
    out << num(m.c1) << ',' << num(m.c1_prime) << ',' << num(m.mu_star) << ','
        << num(m.theta0) << ',' << num(m.s) << ',' << num(m.beta2_log2) << ','
        << num(m.kappa0) << ',' << num(m.delta0_out) << ',' << num(m.hatbeta2_bound) << ','
        << num(m.beta0.n_steps) << ',' << num(m.beta0.ln_beta0) << ','
        << num(m.beta0.target_ln) << ',' << (m.beta0.target_applicable ? 1 : 0) << ','
        << (m.beta0.satisfies_target ? 1 : 0) << ',' << num(m.thresholds.r1.x) << ','
        << num(m.thresholds.r1.r) << ',' << num(m.thresholds.r2.x) << ','
        << num(m.thresholds.r2.r) << ',' << num(m.thresholds.r4.x) << ','
        << num(m.thresholds.r5.x) << ',' << (m.thresholds.r5.satisfiable ? 1 : 0) << ',';
  } else {
    for (int k = 0; k < 21; ++k) out << ',';
  }
  out << error;
  return out.str();
}

} // namespace swirl
