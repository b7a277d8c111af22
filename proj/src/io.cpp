#include "tvgrav/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace tvgrav::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, const fs::path& path, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": cannot parse number '" +
                  std::string(token) + "'");
  }
  return v;
}

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("file not found: '" + path.string() + "'");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < s.size() && !(s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == ',')) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

void close_checked(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

void write_data_grid(const fs::path& path, const SurveyGrid& grid, const Vector& values) {
  if (grid.size() != values.size()) throw DimensionError("data grid: station/value count mismatch");
  auto out = open_out(path);
  out << "x y z value\n";
  for (Index i = 0; i < values.size(); ++i) {
    const Point3& s = grid.stations[static_cast<std::size_t>(i)];
    out << format_double(s.x) << ' ' << format_double(s.y) << ' ' << format_double(s.z) << ' '
        << format_double(values[i]) << '\n';
  }
  close_checked(out, path);
}

DataGrid read_data_grid(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  ++lineno;
  const auto header = split_ws(line);
  if (header.size() != 4 || header[0] != "x" || header[1] != "y" || header[2] != "z" ||
      header[3] != "value") {
    throw IoError(path.string() + ":1: expected header 'x y z value'");
  }
  DataGrid out;
  std::vector<double> vals;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 4) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 4 columns");
    }
    out.grid.stations.push_back({parse_double(tok[0], path, lineno), parse_double(tok[1], path, lineno),
                                 parse_double(tok[2], path, lineno)});
    vals.push_back(parse_double(tok[3], path, lineno));
  }
  out.values = Eigen::Map<const Vector>(vals.data(), static_cast<Index>(vals.size()));
  return out;
}

void write_model_table(const fs::path& path, const Mesh3D& mesh, const Vector& model) {
  if (model.size() != mesh.size()) throw DimensionError("model table: length does not match mesh");
  auto out = open_out(path);
  out << "i j k x y z density\n";
  for (Index c = 0; c < mesh.size(); ++c) {
    const auto [i, j, k] = mesh.cell_coords(c);
    const Point3 p = mesh.cell_center(c);
    out << i << ' ' << j << ' ' << k << ' ' << format_double(p.x) << ' ' << format_double(p.y) << ' '
        << format_double(p.z) << ' ' << format_double(model[c]) << '\n';
  }
  close_checked(out, path);
}

Vector read_model_table(const fs::path& path, const Mesh3D& mesh) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  Vector model = Vector::Constant(mesh.size(), std::numeric_limits<double>::quiet_NaN());
  std::size_t lineno = 1;
  Index rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 7) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 7 columns");
    }
    const auto idx = [&](std::string_view t) { return static_cast<Index>(parse_double(t, path, lineno)); };
    Index c = 0;
    try {
      c = mesh.cell_index(idx(tok[0]), idx(tok[1]), idx(tok[2]));
    } catch (const std::out_of_range& e) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    model[c] = parse_double(tok[6], path, lineno);
    ++rows;
  }
  if (rows != mesh.size() || !model.allFinite()) {
    throw IoError(path.string() + ": expected one row per cell (" + std::to_string(mesh.size()) +
                  "), got " + std::to_string(rows));
  }
  return model;
}

void write_vtk(const fs::path& path, const Mesh3D& mesh, const Vector& model, const std::string& name) {
  if (model.size() != mesh.size()) throw DimensionError("vtk: model length does not match mesh");
  auto out = open_out(path);
  out << "# vtk DataFile Version 3.0\n"
      << "tvgrav density model (z positive down)\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << mesh.nx() + 1 << ' ' << mesh.ny() + 1 << ' ' << mesh.nz() + 1 << '\n'
      << "ORIGIN " << format_double(mesh.origin().x) << ' ' << format_double(mesh.origin().y) << ' '
      << format_double(mesh.origin().z) << '\n'
      << "SPACING " << format_double(mesh.dx()) << ' ' << format_double(mesh.dy()) << ' '
      << format_double(mesh.dz()) << '\n'
      << "CELL_DATA " << mesh.size() << '\n'
      << "SCALARS " << name << " double 1\n"
      << "LOOKUP_TABLE default\n";
  for (Index c = 0; c < mesh.size(); ++c) out << format_double(model[c]) << '\n';
  close_checked(out, path);
}

void write_sections(const fs::path& dir, const Mesh3D& mesh, const Vector& model) {
  if (model.size() != mesh.size()) throw DimensionError("sections: model length does not match mesh");
  for (Index k = 0; k < mesh.nz(); ++k) {
    const double depth = mesh.origin().z + (static_cast<double>(k) + 0.5) * mesh.dz();
    const fs::path p = dir / ("plane_depth_" + format_double(depth) + ".txt");
    auto out = open_out(p);
    out << "x y density\n";
    for (Index j = 0; j < mesh.ny(); ++j) {
      for (Index i = 0; i < mesh.nx(); ++i) {
        const Index c = mesh.cell_index(i, j, k);
        const Point3 q = mesh.cell_center(c);
        out << format_double(q.x) << ' ' << format_double(q.y) << ' ' << format_double(model[c]) << '\n';
      }
    }
    close_checked(out, p);
  }
  for (Index j = 0; j < mesh.ny(); ++j) {
    const double northing = mesh.origin().y + (static_cast<double>(j) + 0.5) * mesh.dy();
    const fs::path p = dir / ("cross_northing_" + format_double(northing) + ".txt");
    auto out = open_out(p);
    out << "x z density\n";
    for (Index k = 0; k < mesh.nz(); ++k) {
      for (Index i = 0; i < mesh.nx(); ++i) {
        const Index c = mesh.cell_index(i, j, k);
        const Point3 q = mesh.cell_center(c);
        out << format_double(q.x) << ' ' << format_double(q.z) << ' ' << format_double(model[c]) << '\n';
      }
    }
    close_checked(out, p);
  }
}

void save_sensitivity(const fs::path& path, const SensitivityMatrix& G) {
  auto out = open_out(path);
  const std::uint64_t header[3] = {static_cast<std::uint64_t>(G.rows()),
                                   static_cast<std::uint64_t>(G.cols()), sizeof(double)};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  out.write(reinterpret_cast<const char*>(G.entries.data()),
            static_cast<std::streamsize>(G.entries.size() * sizeof(double)));
  close_checked(out, path);
}

SensitivityMatrix load_sensitivity(const fs::path& path) {
  auto in = open_in(path);
  std::uint64_t header[3] = {0, 0, 0};
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  if (!in || header[2] != sizeof(double)) {
    throw IoError(path.string() + ": bad sensitivity header");
  }
  const auto expected = static_cast<std::uintmax_t>(sizeof(header) + header[0] * header[1] * sizeof(double));
  if (fs::file_size(path) != expected) throw IoError(path.string() + ": size does not match header");
  SensitivityMatrix G;
  G.entries.resize(static_cast<Index>(header[0]), static_cast<Index>(header[1]));
  in.read(reinterpret_cast<char*>(G.entries.data()),
          static_cast<std::streamsize>(G.entries.size() * sizeof(double)));
  if (!in) throw IoError(path.string() + ": truncated sensitivity data");
  return G;
}

void write_iteration_log(const fs::path& path, const std::vector<IterationRecord>& log) {
  auto out = open_out(path);
  out << "k,alpha,chi2,relative_error,direction,model_change,alpha_at_endpoint\n";
  for (const auto& r : log) {
    out << r.k << ',' << format_double(r.alpha) << ',' << format_double(r.chi2) << ','
        << (r.relative_error >= 0.0 ? format_double(r.relative_error) : std::string("NA")) << ','
        << to_string(r.direction) << ',' << format_double(r.model_change) << ','
        << (r.alpha_at_endpoint ? 1 : 0) << '\n';
  }
  close_checked(out, path);
}

void write_timings(const fs::path& path, const std::vector<IterationRecord>& log) {
  auto out = open_out(path);
  out << "k,seconds\n";
  for (const auto& r : log) out << r.k << ',' << format_double(r.seconds) << '\n';
  close_checked(out, path);
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  close_checked(out, path);
}

std::string read_text(const fs::path& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tvgrav::io
