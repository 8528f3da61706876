#include "swirl/snapshot_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace swirl {
namespace {

constexpr char kMagic[8] = {'A', 'X', 'S', 'N', 'A', 'P', '1', '\0'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T take(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw DomainError("snapshot file truncated");
  return v;
}

} // namespace

void write_snapshot(const std::filesystem::path& file, const Snapshot& snap) {
  if (snap.fields.empty()) throw ContractError("write_snapshot: no fields");
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot open for writing: " + file.string());
  const CylGrid& g = snap.fields.front().grid();
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_rho));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_z));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(snap.fields.size()));
  put<double>(out, g.h_rho());
  put<double>(out, g.h_z());
  put<double>(out, g.z_min);
  put<double>(out, g.rho_max);
  put<double>(out, snap.time);
  for (const Field& f : snap.fields) {
    if (!f.same_shape(snap.fields.front()))
      throw ContractError("write_snapshot: inconsistent field shapes");
    put<std::uint32_t>(out, static_cast<std::uint32_t>(f.kind()));
    const auto vals = f.values();
    out.write(reinterpret_cast<const char*>(vals.data()),
              static_cast<std::streamsize>(vals.size() * sizeof(double)));
  }
  if (!out) throw DomainError("write failed: " + file.string());
}

Snapshot read_snapshot(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DomainError("cannot open: " + file.string());
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw DomainError("not a snapshot file: " + file.string());
  const auto version = take<std::uint32_t>(in);
  if (version != kVersion) throw DomainError("unsupported snapshot version");
  const auto n_rho = take<std::uint32_t>(in);
  const auto n_z = take<std::uint32_t>(in);
  const auto n_fields = take<std::uint32_t>(in);
  const double h_rho = take<double>(in);
  const double h_z = take<double>(in);
  const double z_min = take<double>(in);
  const double rho_max = take<double>(in);
  const double time = take<double>(in);

  CylGrid g;
  g.n_rho = static_cast<int>(n_rho);
  g.n_z = static_cast<int>(n_z);
  g.rho_max = rho_max;
  g.z_min = z_min;
  g.z_max = z_min + h_z * static_cast<double>(n_z);
  g.validate();
  (void)h_rho; // implied by rho_max and n_rho

  Snapshot snap;
  snap.time = time;
  for (std::uint32_t f = 0; f < n_fields; ++f) {
    const auto kind = take<std::uint32_t>(in);
    if (kind > static_cast<std::uint32_t>(FieldKind::scalar))
      throw DomainError("unknown field kind id in snapshot");
    Field field(g, static_cast<FieldKind>(kind), time);
    auto vals = field.values();
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (!in) throw DomainError("snapshot file truncated: " + file.string());
    snap.fields.push_back(std::move(field));
  }
  return snap;
}

void write_series(const std::filesystem::path& dir, const SnapshotSeries& series,
                  const nlohmann::json& extra) {
  std::filesystem::create_directories(dir);
  nlohmann::json man;
  man["format"] = "axsnap-run";
  const CylGrid& g = series.grid();
  man["grid"] = {{"rho_max", g.rho_max}, {"z_min", g.z_min},     {"z_max", g.z_max},
                 {"n_rho", g.n_rho},     {"n_z", g.n_z},         {"dt", g.dt},
                 {"t_start", g.t_start}, {"t_end", g.t_end}};
  auto files = nlohmann::json::array();
  char name[32];
  for (std::size_t k = 0; k < series.size(); ++k) {
    std::snprintf(name, sizeof(name), "snap_%06zu.axsnap", k);
    write_snapshot(dir / name, series[k]);
    files.push_back({{"file", name}, {"time", series[k].time}});
  }
  man["snapshots"] = files;
  for (auto it = extra.begin(); it != extra.end(); ++it) man[it.key()] = it.value();
  std::ofstream out(dir / "run.json", std::ios::trunc);
  out << man.dump(2) << "\n";
  if (!out) throw DomainError("cannot write run.json in " + dir.string());
}

SnapshotSeries read_series(const std::filesystem::path& dir, nlohmann::json* sidecar) {
  SnapshotSeries series;
  const auto manifest = dir / "run.json";
  std::vector<std::filesystem::path> files;
  if (std::filesystem::exists(manifest)) {
    std::ifstream in(manifest);
    nlohmann::json man = nlohmann::json::parse(in);
    if (sidecar) *sidecar = man;
    for (const auto& e : man.at("snapshots"))
      files.push_back(dir / e.at("file").get<std::string>());
  } else {
    if (!std::filesystem::is_directory(dir))
      throw DomainError("snapshot directory not found: " + dir.string());
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.path().extension() == ".axsnap") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  }
  if (files.empty()) throw DomainError("no snapshots in " + dir.string());
  for (const auto& f : files) series.add(read_snapshot(f));
  return series;
}

} // namespace swirl
