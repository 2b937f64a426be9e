#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "pdineq/fuzz.hpp"
#include "pdineq/report.hpp"
#include "pdineq/scenarios.hpp"

namespace py = pybind11;
using namespace pdineq;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::ShapeMismatch, "expected a 2-D array");
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(i, j) = r(i, j);
  return m;
}

Array to_array(const Matrix& m) {
  Array a({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  auto w = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
  return a;
}

py::array_t<double> to_array(const Spectrum& s) {
  py::array_t<double> a(static_cast<py::ssize_t>(s.size()));
  auto w = a.mutable_unchecked<1>();
  for (std::size_t i = 0; i < s.size(); ++i) w(i) = s[i];
  return a;
}

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

PDMatrix pd(const Array& a) { return PDMatrix(to_matrix(a)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Positive definite matrix kernels and inequality checks";
  py::register_exception<Error>(m, "PdineqError", PyExc_ValueError);

  m.def("cholesky", [](const Array& a) { return to_array(cholesky(SymMatrix(to_matrix(a))).matrix()); });
  m.def("pd_inverse", [](const Array& a) { return to_array(pd_inverse(pd(a)).matrix()); });
  m.def("pd_sqrt", [](const Array& a) { return to_array(pd_sqrt(pd(a)).matrix()); });
  m.def("det_pd", [](const Array& a) { return det_pd(pd(a)); });
  m.def(
      "jacobi_eigen",
      [](const Array& a, bool vectors) -> py::object {
        auto e = jacobi_eigen(SymMatrix(to_matrix(a)), vectors);
        if (!vectors) return to_array(e.values);
        return py::make_tuple(to_array(e.values), to_array(*e.vectors));
      },
      py::arg("a"), py::arg("vectors") = false);
  m.def("eig_pd_product", [](const Array& a, const Array& b) { return to_array(eig_pd_product(pd(a), pd(b))); });
  m.def("hyperbolic_power",
        [](const Array& a, const Array& b, double p) { return to_array(hyperbolic_power(pd(a), pd(b), p)); });
  m.def("singular_values", [](const Array& x) { return to_array(singular_values(to_matrix(x))); });
  m.def(
      "loewner_le",
      [](const Array& a, const Array& b, double tol) {
        return loewner_le(SymMatrix(to_matrix(a)), SymMatrix(to_matrix(b)), tol);
      },
      py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "det_exact",
      [](const std::vector<std::vector<std::string>>& rows) {
        return format_rational(det_exact(RationalMatrix::from_strings(rows)));
      },
      "Exact determinant of a matrix of rational strings, returned as 'num/den'.");

  m.def(
      "check_order",
      [](const std::string& kind, std::vector<double> x, std::vector<double> y, double tol, bool pad) {
        return to_python(to_json(check_order(order_kind_from_string(kind), x, y, {tol, pad})));
      },
      py::arg("kind"), py::arg("x"), py::arg("y"), py::arg("tol") = kDefaultTolerance, py::arg("pad") = false);
  m.def("power_mean", [](std::vector<double> a, double r) { return power_mean(a, r); });
  m.def("geometric_mean", [](std::vector<double> a) { return geometric_mean(a); });

  m.def(
      "evaluate",
      [](const std::string& id, std::optional<Array> c, std::optional<Array> d, std::vector<Array> as,
         std::optional<std::vector<std::size_t>> partition, double p, std::vector<std::size_t> indices,
         std::size_t tail_index, double tol) {
        Instance inst;
        std::size_t n = 0;
        if (c) {
          inst.c = pd(*c);
          n = inst.c->dim();
        }
        if (d) inst.d = pd(*d);
        for (const auto& a : as) {
          inst.as.push_back(pd(a));
          n = inst.as.back().dim();
        }
        inst.partition = partition ? validate_partition(*partition, n) : Partition::whole(n);
        inst.p = p;
        inst.indices = std::move(indices);
        inst.tail_index = tail_index;
        return to_python(to_json(evaluate(inequality_from_string(id), inst, tol)));
      },
      py::arg("id"), py::arg("C") = py::none(), py::arg("D") = py::none(), py::arg("As") = std::vector<Array>{},
      py::arg("partition") = py::none(), py::arg("p") = 1.0, py::arg("indices") = std::vector<std::size_t>{},
      py::arg("tail_index") = 0, py::arg("tol") = kDefaultTolerance);

  m.def(
      "fuzz",
      [](const std::string& id, std::size_t n, std::optional<std::vector<std::size_t>> partition, std::size_t m_count,
         std::uint64_t trials, std::uint64_t seed, const std::string& style, double kappa, double p,
         std::size_t tail_index, double tol, bool inject, unsigned threads) {
        GenConfig cfg;
        cfg.n = n;
        if (partition) cfg.partition = *partition;
        cfg.m = m_count;
        cfg.seed = seed;
        cfg.style = style_from_string(style);
        cfg.kappa_max = kappa;
        cfg.p = p;
        cfg.tail_index = tail_index;
        cfg.tolerance = tol;
        cfg.inject_known = inject;
        cfg.threads = threads;
        FuzzReport r;
        {
          py::gil_scoped_release release;
          r = fuzz(inequality_from_string(id), cfg, trials);
        }
        return to_python(to_json(r));
      },
      py::arg("id"), py::arg("n") = 4, py::arg("partition") = py::none(), py::arg("m") = 2,
      py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("style") = "spectral", py::arg("kappa") = 1e6,
      py::arg("p") = 1.0, py::arg("tail_index") = 0, py::arg("tol") = kDefaultTolerance, py::arg("inject") = true,
      py::arg("threads") = 0);

  m.def("verify_paper", [] {
    py::list out;
    for (const auto& r : run_reference_scenarios()) out.append(to_python(to_json(r)));
    return out;
  });

  m.def("inequality_ids", [] {
    std::vector<std::string> ids;
    for (auto id : all_inequalities()) ids.emplace_back(to_string(id));
    return ids;
  });
}
