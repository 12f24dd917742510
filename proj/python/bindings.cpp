// Python module exposing the main operations: systems and their samples,
// exact pairings, scaling bases, the wavelet solve, and the signal split.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "chfif/basis.hpp"
#include "chfif/grid.hpp"
#include "chfif/inner_product.hpp"
#include "chfif/piecewise.hpp"
#include "chfif/serialize.hpp"
#include "chfif/system.hpp"
#include "chfif/transform.hpp"
#include "chfif/wavelet.hpp"

namespace py = pybind11;

namespace {

using namespace chfif;

struct PySystem {
    SystemPtr sys;
};

struct PyBasis {
    ScalingBasis basis;
};

struct PyWavelets {
    WaveletSolution sol;
};

struct PyCoefficients {
    SignalCoefficients coeffs;
};

std::vector<std::vector<double>> matrix_rows(const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> rows;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<double> row;
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "coalescence fractal interpolation, orthogonal bases, wavelets, "
              "and signal transforms";
    m.attr("__version__") = library_version;

    py::class_<PySystem>(m, "System")
        .def(py::init([](const std::vector<double>& knots, const std::vector<double>& alpha,
                         const std::vector<double>& beta, const std::vector<double>& gamma,
                         const std::vector<double>& y, const std::vector<double>& z) {
                 return PySystem{make_system(Knots(knots), HiddenParams{alpha, beta, gamma},
                                             DataPoints{y, z})};
             }),
             py::arg("knots"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
             py::arg("y"), py::arg("z"))
        .def_property_readonly("knots",
                               [](const PySystem& s) { return s.sys->knots().points(); })
        .def("evaluate",
             [](const PySystem& s, double x, int depth) { return evaluate_at(*s.sys, x, depth); },
             py::arg("x"), py::arg("depth") = 12,
             "attractor values (f1, f2) near x at the given resolution")
        .def("sample",
             [](const PySystem& s, int depth) {
                 const GridSamples g = refine(*s.sys, depth);
                 return py::make_tuple(g.xs, g.f1, g.f2);
             },
             py::arg("depth") = 6, "grid refinement samples as (xs, f1, f2)")
        .def("to_json", [](const PySystem& s) { return system_to_json(*s.sys).dump(2); })
        .def_static("from_json", [](const std::string& text) {
            return PySystem{system_from_json(Json::parse(text))};
        });

    m.def("inner",
          [](const PySystem& a, const PySystem& b) {
              const InnerProductTable t = cross_inner(*a.sys, *b.sys);
              py::dict d;
              d["ip11"] = t.ip11;
              d["ip12"] = t.ip12;
              d["ip21"] = t.ip21;
              d["ip22"] = t.ip22;
              return d;
          },
          py::arg("a"), py::arg("b"),
          "exact pairings between the components of two systems");

    py::class_<PyBasis>(m, "Basis")
        .def_property_readonly("n", [](const PyBasis& b) { return b.basis.n; })
        .def_property_readonly("count", [](const PyBasis& b) { return b.basis.count(); })
        .def("gram",
             [](const PyBasis& b) {
                 const int count = b.basis.count();
                 PairingCache cache;
                 Eigen::MatrixXd g(count, count);
                 for (int i = 0; i < count; ++i)
                     for (int j = i; j < count; ++j) {
                         const double v =
                             inner(b.basis.phi1[static_cast<std::size_t>(i)],
                                   b.basis.phi1[static_cast<std::size_t>(j)], cache);
                         g(i, j) = v;
                         g(j, i) = v;
                     }
                 return matrix_rows(g);
             },
             "pairings of the orthonormal generators at shift zero")
        .def("phi",
             [](const PyBasis& b, int i, const std::vector<double>& xs, int depth) {
                 if (i < 0 || i >= b.basis.count())
                     throw std::out_of_range("basis function index out of range");
                 return b.basis.phi1[static_cast<std::size_t>(i)].sample(xs, depth);
             },
             py::arg("i"), py::arg("xs"), py::arg("depth") = 12,
             "first component of generator i at the given points")
        .def("to_json", [](const PyBasis& b) { return basis_to_json(b.basis).dump(2); })
        .def_static("from_json", [](const std::string& text) {
            return PyBasis{basis_from_json(Json::parse(text))};
        });

    m.def("build_basis",
          [](const std::string& preset) {
              const Json pc = preset_config(preset);
              return PyBasis{build_basis(pc.at("n").get<int>(), params_from_json(pc))};
          },
          py::arg("preset") = "reference", "orthonormal scaling basis from a named preset");
    m.def("build_basis_from",
          [](const std::vector<double>& alpha, const std::vector<double>& beta,
             const std::vector<double>& gamma) {
              return PyBasis{build_basis(static_cast<int>(alpha.size()),
                                         HiddenParams{alpha, beta, gamma})};
          },
          py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
          "orthonormal scaling basis from explicit vertical parameters");

    py::class_<PyWavelets>(m, "Wavelets")
        .def_property_readonly("a", [](const PyWavelets& w) { return matrix_rows(w.sol.a); })
        .def_property_readonly("b", [](const PyWavelets& w) { return matrix_rows(w.sol.b); })
        .def_property_readonly("residual",
                               [](const PyWavelets& w) { return w.sol.residual; })
        .def_property_readonly("converged",
                               [](const PyWavelets& w) { return w.sol.converged; })
        .def_property_readonly("iterations",
                               [](const PyWavelets& w) { return w.sol.iterations; })
        .def("to_json", [](const PyWavelets& w) { return wavelets_to_json(w.sol).dump(2); })
        .def_static("from_json", [](const std::string& text) {
            return PyWavelets{wavelets_from_json(Json::parse(text))};
        });

    m.def("solve_wavelets",
          [](const PyBasis& basis, const std::string& seed, double tolerance) {
              WaveletSolveOptions options;
              options.tolerance = tolerance;
              return PyWavelets{solve_wavelets(basis.basis, seed, options)};
          },
          py::arg("basis"), py::arg("seed") = "reference", py::arg("tolerance") = 1e-9,
          "solve the detail-space orthogonality conditions");
    m.def("sample_psi",
          [](const PyWavelets& w, const PyBasis& basis, int i, const std::vector<double>& xs,
             int depth) {
              return assemble_psi(w.sol, basis.basis, i).first.sample(xs, depth);
          },
          py::arg("wavelets"), py::arg("basis"), py::arg("i"), py::arg("xs"),
          py::arg("depth") = 12, "detail generator i (1-based) at the given points");

    py::class_<PyCoefficients>(m, "Coefficients")
        .def_property_readonly("level",
                               [](const PyCoefficients& c) { return c.coeffs.level; })
        .def("to_json",
             [](const PyCoefficients& c) { return coefficients_to_json(c.coeffs).dump(2); })
        .def_static("from_json", [](const std::string& text) {
            return PyCoefficients{coefficients_from_json(Json::parse(text))};
        });

    m.def("project",
          [](const std::vector<double>& xs, const std::vector<double>& values,
             const PyBasis& basis, int level, int depth) {
              if (xs.size() != values.size())
                  throw std::invalid_argument("xs and values must have the same length");
              std::vector<std::pair<double, double>> samples;
              samples.reserve(xs.size());
              for (std::size_t i = 0; i < xs.size(); ++i)
                  samples.emplace_back(xs[i], values[i]);
              ProjectionResult r = project(samples, basis.basis, level, depth);
              return py::make_tuple(PyCoefficients{std::move(r.coeffs)}, r.warnings);
          },
          py::arg("xs"), py::arg("values"), py::arg("basis"), py::arg("level") = 0,
          py::arg("depth") = 12,
          "least-squares coefficients of a sampled signal, with warnings");
    m.def("decompose",
          [](const PyCoefficients& fine, const PyBasis& basis, const PyWavelets& wavelets) {
              const FilterBank bank = build_filters(basis.basis, wavelets.sol);
              auto [coarse, detail] = decompose(fine.coeffs, bank);
              return py::make_tuple(PyCoefficients{std::move(coarse)},
                                    PyCoefficients{std::move(detail)});
          },
          py::arg("fine"), py::arg("basis"), py::arg("wavelets"),
          "one-level split into (coarse, detail)");
    m.def("reconstruct",
          [](const PyCoefficients& coarse, const PyCoefficients& detail, const PyBasis& basis,
             const PyWavelets& wavelets) {
              const FilterBank bank = build_filters(basis.basis, wavelets.sol);
              return PyCoefficients{reconstruct(coarse.coeffs, detail.coeffs, bank)};
          },
          py::arg("coarse"), py::arg("detail"), py::arg("basis"), py::arg("wavelets"),
          "merge one split level back to the finer grid");
    m.def("synthesize",
          [](const PyCoefficients& coeffs, const PyBasis& basis, const std::vector<double>& xs,
             const PyWavelets* wavelets, int depth) {
              return synthesize(coeffs.coeffs, basis.basis,
                                wavelets ? &wavelets->sol : nullptr, xs, depth);
          },
          py::arg("coeffs"), py::arg("basis"), py::arg("xs"),
          py::arg("wavelets") = static_cast<const PyWavelets*>(nullptr),
          py::arg("depth") = 12, "render coefficients back to point values");
    m.def("coefficient_energy",
          [](const PyCoefficients& c) { return coefficient_energy(c.coeffs); });

    m.def("preset_config",
          [](const std::string& name) { return preset_config(name).dump(2); },
          py::arg("name") = "reference", "stored parameter preset as a JSON string");
    m.def("eval_expression", &eval_expression, py::arg("text"),
          "evaluate an exact arithmetic expression like 'sqrt7-3'");
}
