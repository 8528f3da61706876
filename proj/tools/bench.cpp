// Kernel benchmark: OpenMP parallel kernels against the serial reference
// implementations.  The two paths share per-row arithmetic and combine
// partials in index order, so besides the timing table this also checks
// that results agree bitwise.

#include <chrono>
#include <cstdio>
#include <random>

#include "swirl/calculus.hpp"
#include "swirl/quadrature.hpp"
#include "swirl/threading.hpp"

using namespace swirl;
using h_clock = std::chrono::high_resolution_clock;

namespace {

double ms_since(h_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(h_clock::now() - t0).count();
}

template <class F>
double time_best(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = h_clock::now();
    f();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool bitwise) {
  std::printf("%-22s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   %s\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              bitwise ? "bitwise-equal" : "MISMATCH");
}

bool same_bits(const Field& a, const Field& b) {
  auto va = a.values();
  auto vb = b.values();
  for (std::size_t k = 0; k < va.size(); ++k)
    if (va[k] != vb[k]) return false;
  return true;
}

} // namespace

int main(int argc, char** argv) {
  int n = 512;
  if (argc > 1) n = std::atoi(argv[1]);
  if (argc > 2) set_threads(std::atoi(argv[2]));
  std::printf("grid %dx%d, %d thread(s)\n\n", n, n, max_threads());

  CylGrid g;
  g.n_rho = n;
  g.n_z = n;
  g.rho_max = 1.0;
  g.z_min = -1.0;
  g.z_max = 1.0;

  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto random_field = [&](FieldKind k) {
    Field f(g, k, 0.0);
    for (double& x : f.values()) x = uni(rng);
    f.enforce_axis();
    return f;
  };

  const Field scalar = random_field(FieldKind::pressure);
  const Field vr = random_field(FieldKind::v_rho);
  const Field vp = random_field(FieldKind::v_phi);
  const Field vz = random_field(FieldKind::v_axial);

  const int reps = 7;

  {
    Field a, b;
    const double ts = time_best(reps, [&] { a = ref::cyl_laplacian(scalar); });
    const double tp = time_best(reps, [&] { b = cyl_laplacian(scalar); });
    report("laplacian", ts, tp, same_bits(a, b));
  }
  {
    std::pair<Field, Field> a, b;
    const double ts = time_best(reps, [&] { a = ref::cyl_gradient(scalar); });
    const double tp = time_best(reps, [&] { b = cyl_gradient(scalar); });
    report("gradient", ts, tp,
           same_bits(a.first, b.first) && same_bits(a.second, b.second));
  }
  {
    Field a, b;
    const double ts = time_best(reps, [&] { a = ref::divergence(vr, vp, vz); });
    const double tp = time_best(reps, [&] { b = divergence(vr, vp, vz); });
    report("divergence", ts, tp, same_bits(a, b));
  }

  SnapshotSeries series;
  for (int k = 0; k < 4; ++k) {
    Snapshot snap;
    snap.time = 0.01 * k;
    snap.fields.push_back(random_field(FieldKind::swirl));
    series.add(std::move(snap));
  }
  ParabolicCylinder q;
  q.r = 0.15;
  q.t_top = 0.03;
  q.mu = 0.03 / (q.r * q.r);

  {
    double a = 0.0, b = 0.0;
    const double ts = time_best(
        reps, [&] { a = ref::integrate_lp(series, q, 10.0 / 3.0, std::nullopt,
                                          FieldKind::swirl); });
    const double tp = time_best(
        reps, [&] { b = integrate_lp(series, q, 10.0 / 3.0, std::nullopt,
                                     FieldKind::swirl); });
    report("mixed-norm", ts, tp, a == b);
  }
  {
    const SpatialWeights w = spatial_weights(g, 0.8, -0.8, 0.8);
    Extrema a, b;
    const double ts =
        time_best(reps, [&] { a = ref::snapshot_extrema(series[0], w, FieldKind::swirl); });
    const double tp =
        time_best(reps, [&] { b = snapshot_extrema(series[0], w, FieldKind::swirl); });
    report("region extrema", ts, tp, a.min == b.min && a.max == b.max);
  }
  {
    const SpatialWeights w = spatial_weights(g, 0.8, -0.8, 0.8);
    double a = 0.0, b = 0.0;
    const double ts = time_best(
        reps, [&] { a = ref::measure_ge(series[0], w, FieldKind::swirl, 0.25); });
    const double tp =
        time_best(reps, [&] { b = measure_ge(series[0], w, FieldKind::swirl, 0.25); });
    report("level-set measure", ts, tp, a == b);
  }
  return 0;
}
