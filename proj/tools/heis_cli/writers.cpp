#include "heis_cli/writers.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace heis::cli {

std::string format_real(double v) {
  if (v == 0.0) return "0";  // folds -0 so mirrored outputs compare equal
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf.data(), res.ptr};
}

void write_obj(const TriMesh& mesh, std::ostream& out) {
  for (const auto& v : mesh.vertices) {
    out << "v " << format_real(v[0]) << ' ' << format_real(v[1]) << ' ' << format_real(v[2])
        << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

void write_ply(const TriMesh& mesh, std::ostream& out) {
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << mesh.vertices.size() << '\n';
  out << "property double x\nproperty double y\nproperty double z\n";
  for (const auto& s : mesh.scalars) out << "property double " << s.name << '\n';
  out << "element face " << mesh.faces.size() << '\n';
  out << "property list uchar uint vertex_indices\nend_header\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const auto& v = mesh.vertices[i];
    out << format_real(v[0]) << ' ' << format_real(v[1]) << ' ' << format_real(v[2]);
    for (const auto& s : mesh.scalars) out << ' ' << format_real(s.values[i]);
    out << '\n';
  }
  for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

void write_samples_csv(const std::vector<GeodesicSample>& samples, std::ostream& out) {
  out << "s,x,y,z,alpha,beta,gamma\n";
  for (const auto& smp : samples) {
    out << format_real(smp.s) << ',' << format_real(smp.point.x) << ','
        << format_real(smp.point.y) << ',' << format_real(smp.point.z) << ','
        << format_real(smp.velocity_frame.a) << ',' << format_real(smp.velocity_frame.b) << ','
        << format_real(smp.velocity_frame.c) << '\n';
  }
}

void write_samples_jsonl(const std::vector<GeodesicSample>& samples, std::ostream& out) {
  for (const auto& smp : samples) {
    out << "{\"s\":" << format_real(smp.s) << ",\"x\":" << format_real(smp.point.x)
        << ",\"y\":" << format_real(smp.point.y) << ",\"z\":" << format_real(smp.point.z)
        << ",\"alpha\":" << format_real(smp.velocity_frame.a)
        << ",\"beta\":" << format_real(smp.velocity_frame.b)
        << ",\"gamma\":" << format_real(smp.velocity_frame.c) << "}\n";
  }
}

}  // namespace heis::cli
