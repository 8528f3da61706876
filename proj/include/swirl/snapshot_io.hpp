#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "swirl/field.hpp"

namespace swirl {

/// One time level per file.  Layout (little-endian):
///   char[8]  magic "AXSNAP1\0"
///   u32      version (1), u32 n_rho, u32 n_z, u32 n_fields
///   f64      h_rho, h_z, z_min, rho_max, time
///   then per field: u32 kind, f64 data[(n_rho+1)*(n_z+1)] row-major (rho major)
/// Round-trips are bit-exact.
void write_snapshot(const std::filesystem::path& file, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& file);

/// Writes snap_NNNNNN.axsnap files plus a plain-text JSON sidecar run.json
/// describing the run (grid, times, file list, and whatever the caller puts
/// in `extra`, e.g. the echoed config and per-step statistics).
void write_series(const std::filesystem::path& dir, const SnapshotSeries& series,
                  const nlohmann::json& extra);

/// Reads a directory written by write_series (uses run.json when present,
/// otherwise globs *.axsnap).  Returns the series; if sidecar is non-null the
/// parsed run.json is stored there.
SnapshotSeries read_series(const std::filesystem::path& dir, nlohmann::json* sidecar = nullptr);

} // namespace swirl
