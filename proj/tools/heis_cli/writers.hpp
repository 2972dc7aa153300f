#pragma once

// Text serializers for meshes and polylines. All numbers go through
// format_real, which is locale-independent and round-trips.

#include <ostream>
#include <string>
#include <vector>

#include "heis/geodesics.hpp"
#include "heis/mesh.hpp"

namespace heis::cli {

/// Shortest "%.17g"-equivalent text of v (17 significant digits, no locale).
std::string format_real(double v);

/// `v x y z` lines, then `f i j k` lines with 1-based indices.
void write_obj(const TriMesh& mesh, std::ostream& out);

/// ASCII PLY 1.0; each scalar field becomes a double vertex property.
void write_ply(const TriMesh& mesh, std::ostream& out);

/// Header `s,x,y,z,alpha,beta,gamma`, one row per sample.
void write_samples_csv(const std::vector<GeodesicSample>& samples, std::ostream& out);

/// One JSON object per sample with the same fields as the CSV.
void write_samples_jsonl(const std::vector<GeodesicSample>& samples, std::ostream& out);

}  // namespace heis::cli
