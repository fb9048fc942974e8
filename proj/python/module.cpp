// Python bindings. Integers cross the boundary as arbitrary-precision
// Python ints, rationals as fractions.Fraction.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "quadforms/clifford.hpp"
#include "quadforms/densities.hpp"
#include "quadforms/forms.hpp"
#include "quadforms/genus.hpp"
#include "quadforms/jordan.hpp"
#include "quadforms/localfield.hpp"
#include "quadforms/numbers.hpp"
#include "quadforms/theta.hpp"

namespace py = pybind11;

namespace pybind11 {
namespace detail {

template <>
struct type_caster<qf::Int> {
 public:
  PYBIND11_TYPE_CASTER(qf::Int, const_name("int"));

  bool load(handle src, bool) {
    if (!isinstance<int_>(src)) return false;
    value = qf::Int(std::string(str(src)));
    return true;
  }

  static handle cast(const qf::Int& v, return_value_policy, handle) {
    return PyLong_FromString(v.str().c_str(), nullptr, 10);
  }
};

template <>
struct type_caster<qf::Rat> {
 public:
  PYBIND11_TYPE_CASTER(qf::Rat, const_name("Fraction"));

  bool load(handle src, bool) {
    // ints and fractions.Fraction both carry numerator/denominator
    if (isinstance<float_>(src)) return false;
    if (!hasattr(src, "numerator") || !hasattr(src, "denominator")) return false;
    qf::Int n{std::string(str(src.attr("numerator")))};
    qf::Int d{std::string(str(src.attr("denominator")))};
    if (d == 0) return false;
    value = qf::Rat(n, d);
    return true;
  }

  static handle cast(const qf::Rat& v, return_value_policy, handle) {
    object n = reinterpret_steal<object>(PyLong_FromString(qf::num(v).str().c_str(), nullptr, 10));
    object d = reinterpret_steal<object>(PyLong_FromString(qf::den(v).str().c_str(), nullptr, 10));
    object fraction = module_::import("fractions").attr("Fraction");
    return fraction(n, d).release();
  }
};

}  // namespace detail
}  // namespace pybind11

namespace {

qf::IMat imat_from_rows(const std::vector<std::vector<qf::Int>>& rows) {
  int n = static_cast<int>(rows.size());
  if (n == 0) throw qf::PreconditionError("matrix must be nonempty");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n) throw qf::PreconditionError("matrix must be square");
  qf::IMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<std::vector<qf::Int>> rows_from_imat(const qf::IMat& m) {
  std::vector<std::vector<qf::Int>> rows(m.rows(), std::vector<qf::Int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

qf::RMat rmat_from_rows(const std::vector<std::vector<qf::Rat>>& rows) {
  int n = static_cast<int>(rows.size());
  if (n == 0) throw qf::PreconditionError("matrix must be nonempty");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n) throw qf::PreconditionError("matrix must be square");
  qf::RMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return m;
}

std::string place_repr(const qf::Place& v) {
  return v.infinite ? std::string("Place.infinity()") : "Place.prime(" + v.p.str() + ")";
}

}  // namespace

PYBIND11_MODULE(_quadforms, m) {
  m.doc() = "exact arithmetic for integral quadratic forms";

  py::register_exception<qf::PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<qf::UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<qf::BudgetExceededError>(m, "BudgetExceededError", PyExc_RuntimeError);
  py::register_exception<qf::StabilizationError>(m, "StabilizationError", PyExc_RuntimeError);

  py::class_<qf::Place>(m, "Place")
      .def_static("prime", &qf::Place::prime, py::arg("p"))
      .def_static("infinity", &qf::Place::infinity)
      .def_readonly("infinite", &qf::Place::infinite)
      .def_readonly("p", &qf::Place::p)
      .def("__eq__", [](const qf::Place& a, const qf::Place& b) { return a == b; })
      .def("__repr__", &place_repr);

  py::class_<qf::QuadraticForm>(m, "QuadraticForm")
      .def(py::init([](const std::vector<std::vector<qf::Int>>& hessian) {
             return qf::QuadraticForm(imat_from_rows(hessian));
           }),
           py::arg("hessian"))
      .def_property_readonly("n", &qf::QuadraticForm::n)
      .def("hessian", [](const qf::QuadraticForm& q) { return rows_from_imat(q.hessian()); })
      .def("coeff", &qf::QuadraticForm::coeff, py::arg("i"), py::arg("j"))
      .def("evaluate",
           [](const qf::QuadraticForm& q, const std::vector<qf::Rat>& x) { return q.evaluate(x); },
           py::arg("x"))
      .def("bilinear",
           [](const qf::QuadraticForm& q, const std::vector<qf::Rat>& x,
              const std::vector<qf::Rat>& y) { return q.hessian_bilinear(x, y); },
           py::arg("x"), py::arg("y"))
      .def("transform",
           [](const qf::QuadraticForm& q, const std::vector<std::vector<qf::Int>>& rows) {
             return q.transform(imat_from_rows(rows));
           },
           py::arg("matrix"))
      .def("direct_sum", &qf::QuadraticForm::direct_sum, py::arg("other"))
      .def("scale", &qf::QuadraticForm::scale, py::arg("c"))
      .def("det_hessian", &qf::QuadraticForm::det_hessian)
      .def("det_gram", &qf::QuadraticForm::det_gram)
      .def("level", &qf::QuadraticForm::level)
      .def("signature", &qf::QuadraticForm::signature)
      .def("is_nondegenerate", &qf::QuadraticForm::is_nondegenerate)
      .def("is_positive_definite", &qf::QuadraticForm::is_positive_definite)
      .def("__eq__",
           [](const qf::QuadraticForm& a, const qf::QuadraticForm& b) { return a == b; })
      .def("__repr__", [](const qf::QuadraticForm& q) {
        std::string s = "QuadraticForm([";
        for (int i = 0; i < q.n(); ++i) {
          s += i ? ", [" : "[";
          for (int j = 0; j < q.n(); ++j) s += (j ? ", " : "") + q.hessian()(i, j).str();
          s += "]";
        }
        return s + "])";
      });

  py::class_<qf::SymbolicDensity>(m, "SymbolicDensity")
      .def_readonly("coeff", &qf::SymbolicDensity::coeff)
      .def_readonly("pi_twice", &qf::SymbolicDensity::pi_twice)
      .def_readonly("sqrt_disc", &qf::SymbolicDensity::sqrt_disc)
      .def("is_rational", &qf::SymbolicDensity::is_rational)
      .def("to_double", &qf::SymbolicDensity::to_double)
      .def("__eq__",
           [](const qf::SymbolicDensity& a, const qf::SymbolicDensity& b) { return a == b; })
      .def("__repr__", [](const qf::SymbolicDensity& d) {
        return "SymbolicDensity(" + qf::num(d.coeff).str() + "/" + qf::den(d.coeff).str() +
               " * pi^(" + std::to_string(d.pi_twice) + "/2) * sqrt(" + d.sqrt_disc.str() + "))";
      });

  py::class_<qf::ModularMetadata>(m, "ModularMetadata")
      .def_readonly("weight", &qf::ModularMetadata::weight)
      .def_readonly("level", &qf::ModularMetadata::level)
      .def_readonly("character_disc", &qf::ModularMetadata::character_disc)
      .def_readonly("half_integral", &qf::ModularMetadata::half_integral);

  py::class_<qf::GenusRepresentative>(m, "GenusRepresentative")
      .def_readonly("form", &qf::GenusRepresentative::form)
      .def_readonly("aut_order", &qf::GenusRepresentative::aut_order)
      .def_readonly("has_improper_automorphism",
                    &qf::GenusRepresentative::has_improper_automorphism);

  py::class_<qf::GenusCatalog>(m, "GenusCatalog")
      .def_readonly("reps", &qf::GenusCatalog::reps)
      .def_readonly("primes_used", &qf::GenusCatalog::primes_used)
      .def_readonly("completeness_certified", &qf::GenusCatalog::completeness_certified)
      .def("mass", &qf::GenusCatalog::mass)
      .def("class_number", [](const qf::GenusCatalog& c) { return c.reps.size(); });

  py::class_<qf::SpinorNormResult>(m, "SpinorNormResult")
      .def_readonly("det", &qf::SpinorNormResult::det)
      .def_readonly("norm", &qf::SpinorNormResult::norm);

  // local invariants
  m.def("hilbert_symbol", &qf::hilbert_symbol, py::arg("a"), py::arg("b"), py::arg("place"));
  m.def("hasse_invariant", &qf::hasse_invariant, py::arg("form"), py::arg("place"));
  m.def("is_isotropic_over_Qp", &qf::is_isotropic_over_Qp, py::arg("form"), py::arg("place"));
  m.def("isometric_over_Qp", &qf::isometric_over_Qp, py::arg("a"), py::arg("b"),
        py::arg("place"));
  m.def("isometric_over_Q", &qf::isometric_over_Q, py::arg("a"), py::arg("b"));

  // densities and Eisenstein coefficients
  m.def("local_density",
        [](const qf::QuadraticForm& q, const qf::Int& m_, const qf::Int& p) {
          return qf::local_density_p(q, m_, p);
        },
        py::arg("form"), py::arg("m"), py::arg("p"));
  m.def("local_density_infty", &qf::local_density_infty, py::arg("form"), py::arg("m"));
  m.def("jacobi_r4", &qf::jacobi_r4, py::arg("m"));
  m.def("eisenstein_coefficient",
        [](const qf::QuadraticForm& q, const qf::Int& m_) {
          return qf::eisenstein_coefficient_product(q, m_);
        },
        py::arg("form"), py::arg("m"));
  m.def("eisenstein_genus_avg", &qf::eisenstein_genus_avg, py::arg("catalog"), py::arg("m"));
  m.def("cusp_coefficients", &qf::cusp_coefficients, py::arg("form"), py::arg("catalog"),
        py::arg("max_m"));

  // theta series
  m.def("count_representations",
        [](const qf::QuadraticForm& q, const qf::Int& m_) {
          return qf::count_representations(q, m_);
        },
        py::arg("form"), py::arg("m"));
  m.def("theta_coefficients",
        [](const qf::QuadraticForm& q, long long max_m, int threads) {
          py::gil_scoped_release release;
          return qf::theta_coefficients(q, max_m, threads);
        },
        py::arg("form"), py::arg("max_m"), py::arg("threads") = 1);
  m.def("modular_metadata", &qf::modular_metadata, py::arg("form"));
  m.def("character_value", &qf::character_value, py::arg("disc"), py::arg("d"));

  // Jordan splittings: list of (exponent, rank, det unit class, extra dyadic tag)
  m.def("jordan_profile", &qf::jordan_profile, py::arg("form"), py::arg("p"));

  // neighbors and genus
  m.def("isotropic_points_mod_p",
        [](const qf::QuadraticForm& q, const qf::Int& p) {
          return qf::isotropic_points_mod_p(q, p);
        },
        py::arg("form"), py::arg("p"));
  m.def("p_neighbor",
        [](const qf::QuadraticForm& q, const std::vector<qf::Int>& x, const qf::Int& p) {
          return qf::p_neighbor(q, x, p).form;
        },
        py::arg("form"), py::arg("x"), py::arg("p"));
  m.def("all_p_neighbors",
        [](const qf::QuadraticForm& q, const qf::Int& p) {
          py::gil_scoped_release release;
          return qf::all_p_neighbors(q, p);
        },
        py::arg("form"), py::arg("p"));
  m.def("automorphism_count",
        [](const qf::QuadraticForm& q) { return qf::automorphism_count(q); },
        py::arg("form"));
  m.def("is_isometric",
        [](const qf::QuadraticForm& a, const qf::QuadraticForm& b) {
          return qf::is_isometric_Z(a, b);
        },
        py::arg("a"), py::arg("b"));
  m.def("genus_enumerate",
        [](const qf::QuadraticForm& q, const std::vector<qf::Int>& primes) {
          qf::GenusOptions opts;
          opts.primes = primes;
          py::gil_scoped_release release;
          return qf::genus_enumerate(q, opts);
        },
        py::arg("form"), py::arg("primes") = std::vector<qf::Int>{});

  // Clifford layer
  m.def("spinor_norm",
        [](const qf::QuadraticForm& q, const std::vector<std::vector<qf::Rat>>& rows) {
          return qf::spinor_norm(q, rmat_from_rows(rows));
        },
        py::arg("form"), py::arg("isometry"));
  m.def("decompose_into_reflections",
        [](const qf::QuadraticForm& q, const std::vector<std::vector<qf::Rat>>& rows) {
          return qf::decompose_into_reflections(q, rmat_from_rows(rows));
        },
        py::arg("form"), py::arg("isometry"));
  m.def("reflection", &qf::reflection, py::arg("form"), py::arg("mirror"), py::arg("x"));

  // number-theory utilities
  m.def("factorize", &qf::factorize, py::arg("n"));
  m.def("squarefree_part", &qf::squarefree_part, py::arg("r"));
  m.def("kronecker", &qf::kronecker, py::arg("a"), py::arg("n"));
  m.def("is_probable_prime", &qf::is_probable_prime, py::arg("n"));
}
