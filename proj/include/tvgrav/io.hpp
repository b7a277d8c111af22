#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tvgrav/forward.hpp"
#include "tvgrav/inversion.hpp"
#include "tvgrav/mesh.hpp"

namespace tvgrav::io {

namespace fs = std::filesystem;

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view token, const fs::path& path, std::size_t line);

/// Station grid with one value per station: header `x y z value`.
struct DataGrid {
  SurveyGrid grid;
  Vector values;
};

void write_data_grid(const fs::path& path, const SurveyGrid& grid, const Vector& values);
DataGrid read_data_grid(const fs::path& path);

/// Flat volume table: header `i j k x y z density`, one row per cell in
/// model-vector order, coordinates at cell centres.
void write_model_table(const fs::path& path, const Mesh3D& mesh, const Vector& model);
Vector read_model_table(const fs::path& path, const Mesh3D& mesh);

/// Legacy VTK structured points with cell data.
void write_vtk(const fs::path& path, const Mesh3D& mesh, const Vector& model,
               const std::string& name = "density");

/// Plane sections (one per layer, `x y density`) and cross sections (one per
/// northing row, `x z density`) written into dir.
void write_sections(const fs::path& dir, const Mesh3D& mesh, const Vector& model);

/// Binary dump: uint64 m, uint64 n, uint64 element size, then row-major doubles.
void save_sensitivity(const fs::path& path, const SensitivityMatrix& G);
SensitivityMatrix load_sensitivity(const fs::path& path);

/// Iteration log, one row per iteration. Timings are kept out of this file so
/// that repeated runs produce identical bytes.
void write_iteration_log(const fs::path& path, const std::vector<IterationRecord>& log);
void write_timings(const fs::path& path, const std::vector<IterationRecord>& log);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

}  // namespace tvgrav::io
