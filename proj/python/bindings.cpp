#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "paratuck2/als.hpp"
#include "paratuck2/experiments.hpp"
#include "paratuck2/model.hpp"
#include "paratuck2/solver.hpp"

namespace py = pybind11;
using namespace paratuck2;

namespace {

using ComplexArray = py::array_t<Complex, py::array::f_style | py::array::forcecast>;

Tensor3 tensor_from_array(const ComplexArray& arr) {
  if (arr.ndim() != 3) {
    throw py::value_error("expected a 3-d array");
  }
  const auto n1 = static_cast<Index>(arr.shape(0));
  const auto n2 = static_cast<Index>(arr.shape(1));
  const auto n3 = static_cast<Index>(arr.shape(2));
  std::vector<Complex> data(static_cast<std::size_t>(n1 * n2 * n3));
  // Fortran order of (N1, N2, N3) matches the slice-major layout exactly.
  std::memcpy(data.data(), arr.data(), data.size() * sizeof(Complex));
  return Tensor3::from_data(n1, n2, n3, std::move(data));
}

py::array array_from_tensor(const Tensor3& T) {
  ComplexArray arr({T.dim1(), T.dim2(), T.dim3()});
  std::memcpy(arr.mutable_data(), T.data(),
              static_cast<std::size_t>(T.size()) * sizeof(Complex));
  return arr;
}

py::dict diagnostics_dict(const DecompositionDiagnostics& d) {
  py::dict out;
  out["mode1_rank_ratio"] = d.mode1_rank_ratio;
  out["mode2_rank_ratio"] = d.mode2_rank_ratio;
  out["kernel_ratio"] = d.kernel_ratio;
  out["kernel_gap"] = d.kernel_gap;
  out["ambiguous_kernel"] = d.ambiguous_kernel;
  out["rank1_ratio"] = d.rank1_ratio;
  out["core_rank1_ratio"] = d.core_rank1_ratio;
  out["pivot"] = d.pivot;
  out["residual_abs"] = d.residual_abs;
  out["residual_rel"] = d.residual_rel;
  out["residual_abs_unrefined"] = d.residual_abs_unrefined;
  out["als_iters_run"] = d.als_iters_run;
  return out;
}

}  // namespace

PYBIND11_MODULE(_paratuck2, m) {
  m.doc() = "Rank-(2,2) ParaTuck-2 decomposition of complex third-order tensors";

  py::register_exception<Error>(m, "ParaTuckError");

  py::class_<ParaTuck2Factors>(m, "Factors")
      .def(py::init<Matrix, Matrix, Matrix, Matrix, Matrix>(), py::arg("A"), py::arg("B"),
           py::arg("F"), py::arg("G"), py::arg("H"))
      .def_readonly("A", &ParaTuck2Factors::A)
      .def_readonly("B", &ParaTuck2Factors::B)
      .def_readonly("F", &ParaTuck2Factors::F)
      .def_readonly("G", &ParaTuck2Factors::G)
      .def_readonly("H", &ParaTuck2Factors::H);

  m.def(
      "reconstruct",
      [](const ParaTuck2Factors& f) { return array_from_tensor(reconstruct(f)); },
      py::arg("factors"), "Dense tensor with slices A @ diag(G[:,k]) @ F @ diag(H[:,k]) @ B.T");

  m.def(
      "core_from_factors",
      [](const Matrix& F, const Matrix& G, const Matrix& H) {
        return array_from_tensor(core_from_factors(F, G, H));
      },
      py::arg("F"), py::arg("G"), py::arg("H"));

  m.def(
      "random_instance",
      [](Index n1, Index n2, Index n3, std::uint64_t seed) {
        auto [factors, tensor] = random_instance({n1, n2, n3}, seed);
        return py::make_tuple(factors, array_from_tensor(tensor));
      },
      py::arg("n1"), py::arg("n2"), py::arg("n3"), py::arg("seed"),
      "Seeded rank-(2,2) instance; returns (factors, tensor)");

  m.def(
      "decompose",
      [](const ComplexArray& arr, int als_iters, std::optional<double> verify_tol) {
        DecomposeOptions opts;
        opts.als_iters = als_iters;
        opts.verify_tol = verify_tol;
        const DecomposeResult res = decompose(tensor_from_array(arr), opts);
        return py::make_tuple(res.factors, diagnostics_dict(res.diagnostics));
      },
      py::arg("tensor"), py::arg("als_iters") = 0, py::arg("verify_tol") = py::none(),
      "Algebraic rank-(2,2) decomposition; returns (factors, diagnostics)");

  m.def(
      "als_run",
      [](const ComplexArray& arr, std::optional<ParaTuck2Factors> init, int max_iters,
         double rel_tol, std::uint64_t seed) {
        AlsOptions opts;
        opts.max_iters = max_iters;
        opts.rel_tol = rel_tol;
        opts.seed = seed;
        const Tensor3 T = tensor_from_array(arr);
        auto [factors, trace] = init ? als_run(T, *init, opts) : als_run(T, opts);
        py::dict tr;
        tr["errors"] = trace.errors;
        tr["iterations"] = trace.iterations;
        tr["converged"] = trace.converged;
        tr["rank_deficient_step"] = trace.rank_deficient_step;
        return py::make_tuple(factors, tr);
      },
      py::arg("tensor"), py::arg("init") = py::none(), py::arg("max_iters") = 5000,
      py::arg("rel_tol") = 1e-14, py::arg("seed") = 0,
      "Alternating least squares from given or random initial factors");

  m.def(
      "relative_error",
      [](const ComplexArray& a, const ComplexArray& b) {
        return relative_error(tensor_from_array(a), tensor_from_array(b));
      },
      py::arg("tensor"), py::arg("approx"));

  m.def(
      "frob_dist_sq",
      [](const ComplexArray& a, const ComplexArray& b) {
        return frob_dist_sq(tensor_from_array(a), tensor_from_array(b));
      },
      py::arg("tensor"), py::arg("other"));

  m.def(
      "build_phi_matrix",
      [](const ComplexArray& arr) { return build_phi_matrix(tensor_from_array(arr)); },
      py::arg("core"), "10 x N3 matrix of degree-2 slice monomials");

  m.def("veronese_phi", &veronese_phi, py::arg("m"));
  m.def("theta_map", &theta_map, py::arg("u"), py::arg("v"));
  m.def("sm_matrix", &sm_matrix, py::arg("theta"));
  m.def(
      "psi_matrix", [](const ComplexArray& arr) { return psi_matrix(tensor_from_array(arr)); },
      py::arg("core"));
  m.def(
      "core_residual",
      [](const ComplexArray& arr) { return core_residual(tensor_from_array(arr)); },
      py::arg("core"));

  m.def("reference_factors", &reference_factors,
        "Built-in deterministic 2x2x10 test instance factors");
  m.def("reference_tensor", [] { return array_from_tensor(reference_tensor()); });
}
