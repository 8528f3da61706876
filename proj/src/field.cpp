#include "swirl/field.hpp"

#include <algorithm>
#include <cmath>

namespace swirl {

const char* kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::v_rho: return "v_rho";
    case FieldKind::v_phi: return "v_phi";
    case FieldKind::v_axial: return "v_axial";
    case FieldKind::pressure: return "pressure";
    case FieldKind::swirl: return "swirl";
    case FieldKind::scalar: return "scalar";
  }
  return "unknown";
}

FieldKind kind_from_name(const std::string& name) {
  for (auto k : {FieldKind::v_rho, FieldKind::v_phi, FieldKind::v_axial,
                 FieldKind::pressure, FieldKind::swirl, FieldKind::scalar})
    if (name == kind_name(k)) return k;
  throw ContractError("unknown field kind: " + name);
}

Field::Field(const CylGrid& grid, FieldKind kind, double time)
    : grid_(grid), kind_(kind), time_(time), ni_(grid.ni()), nj_(grid.nj()),
      v_(static_cast<std::size_t>(grid.ni()) * grid.nj(), 0.0) {
  grid.validate();
}

Field Field::sampled(const CylGrid& grid, FieldKind kind, double time,
                     const std::function<double(double, double)>& f) {
  Field out(grid, kind, time);
  for (int i = 0; i < out.ni_; ++i)
    for (int j = 0; j < out.nj_; ++j)
      out(i, j) = f(grid.rho(i), grid.z(j));
  out.enforce_axis();
  return out;
}

void Field::enforce_axis() {
  if (!axis_pinned(kind_)) return;
  for (int j = 0; j < nj_; ++j) (*this)(0, j) = 0.0;
}

double Field::axis_violation() const {
  if (!axis_pinned(kind_)) return 0.0;
  double m = 0.0;
  for (int j = 0; j < nj_; ++j) m = std::max(m, std::abs((*this)(0, j)));
  return m;
}

double Field::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

const Field* Snapshot::find(FieldKind k) const {
  for (const auto& f : fields)
    if (f.kind() == k) return &f;
  return nullptr;
}

const Field& Snapshot::get(FieldKind k) const {
  const Field* f = find(k);
  if (!f) throw ContractError(std::string("snapshot is missing field ") + kind_name(k));
  return *f;
}

void SnapshotSeries::add(Snapshot s) {
  if (s.fields.empty()) throw ContractError("SnapshotSeries: empty snapshot");
  for (std::size_t i = 1; i < s.fields.size(); ++i)
    if (!s.fields[i].same_shape(s.fields[0]))
      throw ContractError("SnapshotSeries: field shapes differ within snapshot");
  if (!snaps_.empty()) {
    if (!s.fields[0].same_shape(snaps_[0].fields[0]))
      throw ContractError("SnapshotSeries: grid differs from previous snapshots");
    if (!(s.time > snaps_.back().time))
      throw ContractError("SnapshotSeries: snapshot times must be strictly increasing");
  }
  snaps_.push_back(std::move(s));
}

double SnapshotSeries::t_first() const {
  if (empty()) throw ContractError("SnapshotSeries: empty");
  return snaps_.front().time;
}

double SnapshotSeries::t_last() const {
  if (empty()) throw ContractError("SnapshotSeries: empty");
  return snaps_.back().time;
}

const CylGrid& SnapshotSeries::grid() const {
  if (empty()) throw ContractError("SnapshotSeries: empty");
  return snaps_.front().fields.front().grid();
}

std::vector<double> SnapshotSeries::times() const {
  std::vector<double> t(snaps_.size());
  for (std::size_t k = 0; k < snaps_.size(); ++k) t[k] = snaps_[k].time;
  return t;
}

std::size_t SnapshotSeries::nearest(double t) const {
  if (empty()) throw ContractError("SnapshotSeries: empty");
  std::size_t best = 0;
  double d = std::abs(snaps_[0].time - t);
  for (std::size_t k = 1; k < snaps_.size(); ++k) {
    const double dk = std::abs(snaps_[k].time - t);
    if (dk < d) { d = dk; best = k; }
  }
  return best;
}

Field swirl_from_vphi(const Field& v_phi) {
  if (v_phi.kind() != FieldKind::v_phi)
    throw ContractError("swirl_from_vphi: expected a v_phi field");
  Field out(v_phi.grid(), FieldKind::swirl, v_phi.time());
  const auto& g = v_phi.grid();
  for (int i = 0; i < out.ni(); ++i) {
    const double rho = g.rho(i);
    for (int j = 0; j < out.nj(); ++j) out(i, j) = rho * v_phi(i, j);
  }
  out.enforce_axis();
  return out;
}

Field vphi_from_swirl(const Field& sigma) {
  if (sigma.kind() != FieldKind::swirl)
    throw ContractError("vphi_from_swirl: expected a swirl field");
  Field out(sigma.grid(), FieldKind::v_phi, sigma.time());
  const auto& g = sigma.grid();
  for (int i = 1; i < out.ni(); ++i) {
    const double rho = g.rho(i);
    for (int j = 0; j < out.nj(); ++j) out(i, j) = sigma(i, j) / rho;
  }
  out.enforce_axis();
  return out;
}

} // namespace swirl
