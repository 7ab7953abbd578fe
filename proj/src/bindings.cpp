#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "calderon/conformal.hpp"
#include "calderon/curve.hpp"
#include "calderon/errors.hpp"
#include "calderon/forward.hpp"
#include "calderon/fourier.hpp"
#include "calderon/solver.hpp"

namespace py = pybind11;

namespace {

calderon::conformal_map make_map(const Eigen::VectorXcd& poly, int grid) {
  calderon::conformal_map map;
  map.poly = poly;
  return calderon::normalize_length(map, grid);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Hilbert transform matrices of planar domains and boundary "
      "reconstruction from them";

  py::register_exception<calderon::invalid_input>(m, "InvalidInput",
                                                  PyExc_ValueError);
  py::register_exception<calderon::numerical_failure>(m, "NumericalFailure",
                                                      PyExc_RuntimeError);

  py::class_<calderon::subspace_basis>(m, "SubspaceBasis")
      .def_readonly("n_max", &calderon::subspace_basis::n_max)
      .def_readonly("vectors", &calderon::subspace_basis::vectors)
      .def_readonly("singular_values",
                    &calderon::subspace_basis::singular_values)
      .def_readonly("degenerate", &calderon::subspace_basis::degenerate);

  py::class_<calderon::reconstruction_result>(m, "ReconstructionResult")
      .def_readonly("gamma_hat", &calderon::reconstruction_result::gamma_hat)
      .def_readonly("coords", &calderon::reconstruction_result::coords)
      .def_readonly("residual_history",
                    &calderon::reconstruction_result::residual_history)
      .def_readonly("subspace_dim",
                    &calderon::reconstruction_result::subspace_dim)
      .def_readonly("converged", &calderon::reconstruction_result::converged)
      .def_readonly("is_simple", &calderon::reconstruction_result::simple)
      .def_readonly("wrong_solution",
                    &calderon::reconstruction_result::wrong_solution)
      .def_readonly("degenerate_basis",
                    &calderon::reconstruction_result::degenerate_basis);

  m.def(
      "normalize_scale",
      [](const Eigen::VectorXcd& poly, int grid) {
        return make_map(poly, grid).scale;
      },
      py::arg("poly"), py::arg("grid") = 4096,
      "Length scale c that gives the boundary curve length 2 pi");

  m.def(
      "build_hilbert_matrix",
      [](const Eigen::VectorXcd& poly, int n_max, int grid) {
        const int m = grid > 0 ? grid : calderon::forward_grid(n_max);
        return calderon::build_hilbert_matrix(make_map(poly, m), n_max, m);
      },
      py::arg("poly"), py::arg("n_max"), py::arg("grid") = 0,
      "Hilbert matrix of the length-normalized boundary map");

  m.def(
      "boundary_coeffs",
      [](const Eigen::VectorXcd& poly, int n_max, int grid) {
        const int m = grid > 0 ? grid : calderon::forward_grid(n_max);
        return calderon::boundary_coeffs_arclength(make_map(poly, m), n_max,
                                                   m);
      },
      py::arg("poly"), py::arg("n_max"), py::arg("grid") = 0,
      "Arc-length Fourier coefficients of the boundary curve");

  m.def("dtn_from_hilbert", &calderon::dtn_from_hilbert, py::arg("h"));

  m.def("near_fixed_subspace", &calderon::near_fixed_subspace, py::arg("h"),
        py::arg("eps") = 1e-3);

  m.def("quadratic_residual", &calderon::quadratic_residual, py::arg("g"));
  m.def("residual_norm", &calderon::residual_norm, py::arg("g"));

  m.def(
      "objective_and_gradient",
      [](const calderon::subspace_basis& basis, const Eigen::VectorXcd& c) {
        return calderon::objective_and_gradient(basis, c);
      },
      py::arg("basis"), py::arg("coords"));

  m.def(
      "reconstruct",
      [](const Eigen::MatrixXcd& h, double eps, double tol, int max_iter,
         const std::vector<calderon::cdouble>& init, int grid,
         double proximity) {
        calderon::solver_config config;
        config.eps = eps;
        config.tol = tol;
        config.max_iter = max_iter;
        config.init_coords = init;
        config.grid_size = grid;
        config.proximity = proximity;
        return calderon::reconstruct(h, config);
      },
      py::arg("h"), py::arg("eps") = 1e-3, py::arg("tol") = 1e-10,
      py::arg("max_iter") = 200,
      py::arg("init") = std::vector<calderon::cdouble>{},
      py::arg("grid") = 4096, py::arg("proximity") = 1e-3,
      "Reconstruct boundary coefficients from a Hilbert matrix; an empty "
      "init means e_1");

  m.def("evaluate", &calderon::evaluate, py::arg("g"), py::arg("grid"));
  m.def("speed_deviation", &calderon::speed_deviation, py::arg("g"),
        py::arg("grid") = 4096);

  m.def(
      "is_simple",
      [](const Eigen::VectorXcd& g, int grid, double proximity) {
        const auto rep = calderon::is_simple(g, grid, proximity);
        return py::make_tuple(rep.simple, rep.witnesses);
      },
      py::arg("g"), py::arg("grid") = 4096, py::arg("proximity") = 1e-3,
      "Returns (simple, witness parameter pairs)");

  m.def(
      "align",
      [](const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
        const auto fit = calderon::align(f, g);
        return py::make_tuple(fit.alpha, fit.shift, fit.distance);
      },
      py::arg("f"), py::arg("g"),
      "Returns (alpha, shift, distance) minimizing |alpha f - g| over "
      "rotations");
}
