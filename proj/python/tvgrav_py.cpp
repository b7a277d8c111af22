#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tvgrav/app.hpp"
#include "tvgrav/forward.hpp"
#include "tvgrav/gsvd.hpp"
#include "tvgrav/inversion.hpp"
#include "tvgrav/regparam.hpp"
#include "tvgrav/rgsvd.hpp"
#include "tvgrav/synthetic.hpp"

namespace py = pybind11;
using namespace tvgrav;

PYBIND11_MODULE(_tvgrav, mod) {
  mod.doc() = "Total-variation gravity inversion with randomized GSVD";

  py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);
  py::register_exception<DimensionError>(mod, "DimensionError", PyExc_ValueError);
  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(mod, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<ResourceError>(mod, "ResourceError", PyExc_MemoryError);
  py::register_exception<IoError>(mod, "IoError", PyExc_OSError);

  py::class_<Point3>(mod, "Point3")
      .def(py::init([](double x, double y, double z) { return Point3{x, y, z}; }), py::arg("x"),
           py::arg("y"), py::arg("z"))
      .def_readwrite("x", &Point3::x)
      .def_readwrite("y", &Point3::y)
      .def_readwrite("z", &Point3::z);

  py::class_<Box>(mod, "Box")
      .def(py::init([](double x0, double x1, double y0, double y1, double z0, double z1) {
        return Box{x0, x1, y0, y1, z0, z1};
      }))
      .def_readwrite("x0", &Box::x0)
      .def_readwrite("x1", &Box::x1)
      .def_readwrite("y0", &Box::y0)
      .def_readwrite("y1", &Box::y1)
      .def_readwrite("z0", &Box::z0)
      .def_readwrite("z1", &Box::z1);

  py::class_<Mesh3D>(mod, "Mesh3D")
      .def(py::init([](Index nx, Index ny, Index nz, double dx, double dy, double dz) {
             return Mesh3D(nx, ny, nz, dx, dy, dz);
           }),
           py::arg("nx"), py::arg("ny"), py::arg("nz"), py::arg("dx"), py::arg("dy"), py::arg("dz"))
      .def_property_readonly("size", &Mesh3D::size)
      .def_property_readonly("shape", [](const Mesh3D& m) { return py::make_tuple(m.nx(), m.ny(), m.nz()); })
      .def("cell_index", &Mesh3D::cell_index)
      .def("cell_coords", &Mesh3D::cell_coords)
      .def("cell_center", &Mesh3D::cell_center)
      .def("cell_box", &Mesh3D::cell_box);

  py::class_<SurveyGrid>(mod, "SurveyGrid")
      .def_readonly("stations", &SurveyGrid::stations)
      .def("__len__", &SurveyGrid::size);

  mod.def("build_survey_grid", &build_survey_grid, py::arg("nx"), py::arg("ny"), py::arg("spacing"),
          py::arg("height") = 0.0, py::arg("x0") = 0.0, py::arg("y0") = 0.0);
  mod.def("surface_grid_over", &surface_grid_over);
  mod.def("dikes_mesh", &dikes_mesh);
  mod.def("multibody_mesh", &multibody_mesh);
  mod.def("multibody_mesh_scaled", &multibody_mesh_scaled);
  mod.def("build_dikes_model", &build_dikes_model);
  mod.def("build_multibody_model", &build_multibody_model);

  mod.def("prism_gz", &prism_gz, py::arg("station"), py::arg("prism"), py::arg("density"));
  mod.def(
      "assemble_G",
      [](const Mesh3D& mesh, const SurveyGrid& grid) { return assemble_G(mesh, grid).entries; },
      py::arg("mesh"), py::arg("grid"));

  mod.def(
      "add_noise",
      [](const Vector& d, double a, double b, std::uint64_t seed) {
        auto n = add_noise(d, a, b, seed);
        return py::make_tuple(n.d_obs, n.eta);
      },
      py::arg("d_exact"), py::arg("a") = 0.02, py::arg("b") = 0.002, py::arg("seed") = 1);

  py::class_<GsvdFactors>(mod, "GsvdFactors")
      .def_readonly("U", &GsvdFactors::U)
      .def_readonly("V", &GsvdFactors::V)
      .def_readonly("lam", &GsvdFactors::lambda)
      .def_readonly("mu", &GsvdFactors::mu)
      .def_readonly("gamma", &GsvdFactors::gamma)
      .def_readonly("u_offset", &GsvdFactors::u_offset)
      .def("Z", &GsvdFactors::Z)
      .def("Z_pinv", &GsvdFactors::Z_pinv)
      .def("project", &GsvdFactors::project);

  mod.def(
      "gsvd",
      [](const Matrix& A, const Matrix& B, bool compute_v) { return gsvd_pair(A, B, {compute_v, 1e-12}); },
      py::arg("A"), py::arg("B"), py::arg("compute_v") = true);
  mod.def(
      "rgsvd",
      [](const Matrix& A, const Matrix& D, Index q, Index p, std::uint64_t seed) {
        return rgsvd(A, D, sketch_basis(A, q, p, seed));
      },
      py::arg("A"), py::arg("D"), py::arg("q"), py::arg("oversampling") = 10, py::arg("seed") = 0);
  mod.def("filtered_solution", &filtered_solution, py::arg("factors"), py::arg("r"), py::arg("alpha"));
  mod.def("upre", &upre_value, py::arg("factors"), py::arg("r"), py::arg("alpha"));
  mod.def(
      "select_alpha",
      [](const GsvdFactors& f, const Vector& r, int grid) { return select_alpha(f, r, grid).alpha_opt; },
      py::arg("factors"), py::arg("r"), py::arg("grid_size") = 100);

  py::enum_<InversionMode>(mod, "InversionMode")
      .value("FULL3D", InversionMode::Full3D)
      .value("AD", InversionMode::AlternatingDirection);

  py::class_<InversionConfig>(mod, "InversionConfig")
      .def(py::init<>())
      .def_readwrite("q", &InversionConfig::q)
      .def_readwrite("oversampling", &InversionConfig::oversampling)
      .def_readwrite("eps", &InversionConfig::eps)
      .def_readwrite("exponent", &InversionConfig::exponent)
      .def_readwrite("rho_min", &InversionConfig::rho_min)
      .def_readwrite("rho_max", &InversionConfig::rho_max)
      .def_readwrite("k_max", &InversionConfig::k_max)
      .def_readwrite("m_apr", &InversionConfig::m_apr)
      .def_readwrite("mode", &InversionConfig::mode)
      .def_readwrite("seed", &InversionConfig::seed)
      .def_readwrite("upre_grid", &InversionConfig::upre_grid)
      .def_readwrite("stagnation_tol", &InversionConfig::stagnation_tol);

  py::class_<IterationRecord>(mod, "IterationRecord")
      .def_readonly("k", &IterationRecord::k)
      .def_readonly("alpha", &IterationRecord::alpha)
      .def_readonly("chi2", &IterationRecord::chi2)
      .def_readonly("relative_error", &IterationRecord::relative_error);

  py::class_<InversionResult>(mod, "InversionResult")
      .def_readonly("model", &InversionResult::model)
      .def_readonly("log", &InversionResult::log)
      .def_readonly("iterations", &InversionResult::iterations)
      .def_readonly("chi2", &InversionResult::chi2)
      .def_readonly("chi2_target", &InversionResult::chi2_target)
      .def_readonly("warnings", &InversionResult::warnings)
      .def_property_readonly("termination",
                             [](const InversionResult& r) { return std::string(to_string(r.termination)); });

  mod.def(
      "invert",
      [](const Vector& d_obs, const RowMatrix& G, const Vector& eta, const Mesh3D& mesh,
         const InversionConfig& cfg, std::optional<Vector> m_true) {
        SensitivityMatrix S{G};
        py::gil_scoped_release release;
        return invert(d_obs, S, eta, mesh, cfg, m_true);
      },
      py::arg("d_obs"), py::arg("G"), py::arg("eta"), py::arg("mesh"), py::arg("config"),
      py::arg("m_true") = py::none());
  mod.def("relative_error", &relative_error);
  mod.def("chi2_target", &chi2_target);

  mod.def("verify", [](int instances) {
    const auto report = app::run_verify(instances);
    py::list out;
    for (const auto& c : report.checks) {
      out.append(py::dict(py::arg("name") = c.name, py::arg("residual") = c.residual,
                          py::arg("threshold") = c.threshold, py::arg("passed") = c.passed));
    }
    return out;
  }, py::arg("instances") = 5);
}
