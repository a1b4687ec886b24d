#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "emfield/config.hpp"
#include "emfield/ladder.hpp"
#include "emfield/sampler.hpp"
#include "emfield/suites.hpp"

namespace py = pybind11;
using namespace emfield;

namespace {

struct PyGrid {
  GridPtr ptr;
};

AntisymTensor2 tensor_from_array(const py::array_t<std::complex<double>>& arr) {
  if (arr.ndim() != 2 || arr.shape(0) != 4 || arr.shape(1) != 4) {
    throw py::value_error("amplitude must be a 4x4 complex array");
  }
  std::array<std::array<Complex, 4>, 4> m{};
  auto view = arr.unchecked<2>();
  double scale = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = view(i, j);
      scale = std::max(scale, std::abs(view(i, j)));
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                   m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) >
          1e-12 * std::max(scale, 1e-300))
        throw py::value_error("amplitude must be antisymmetric");
  return AntisymTensor2::antisymmetrize(m);
}

py::array_t<std::complex<double>> tensor_to_array(const AntisymTensor2& t) {
  py::array_t<std::complex<double>> out({4, 4});
  auto view = out.mutable_unchecked<2>();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) view(i, j) = t(i, j);
  return out;
}

FourVector vector_from_seq(const std::vector<double>& v) {
  if (v.size() != 4) throw py::value_error("expected 4 components");
  return FourVector{{v[0], v[1], v[2], v[3]}};
}

Mat4 mat4_from_array(const py::array_t<double>& arr) {
  if (arr.ndim() != 2 || arr.shape(0) != 4 || arr.shape(1) != 4) {
    throw py::value_error("expected a 4x4 real matrix");
  }
  Mat4 l;
  auto view = arr.unchecked<2>();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) l(i, j) = view(i, j);
  return l;
}

OpKind op_kind(const std::string& kind) {
  if (kind == "create" || kind == "a+" || kind == "adag") return OpKind::create;
  if (kind == "annihilate" || kind == "a") return OpKind::annihilate;
  throw py::value_error("operator kind must be 'create' or 'annihilate'");
}

FieldKind field_kind(const std::string& kind) {
  if (kind == "phi") return FieldKind::phi;
  if (kind == "chi") return FieldKind::chi;
  if (kind == "xi") return FieldKind::xi;
  throw py::value_error("field kind must be 'phi', 'chi', or 'xi'");
}

OperatorWord word_from_list(const std::vector<std::pair<std::string, int>>& ops) {
  OperatorWord word;
  for (const auto& [kind, label] : ops) word.push_back({op_kind(kind), label});
  return word;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "light-cone quadrature, test-function maps, and the ladder-operator "
            "vacuum for the quantized electromagnetic field and its random-field "
            "presentation";

  py::class_<PyGrid>(m, "Grid")
      .def_property_readonly("size", [](const PyGrid& g) { return g.ptr->size(); })
      .def("kvec",
           [](const PyGrid& g, int i) {
             const auto& k = g.ptr->kvec(i);
             return py::make_tuple(k[0], k[1], k[2]);
           })
      .def("omega", [](const PyGrid& g, int i) { return g.ptr->omega(i); })
      .def("weight", [](const PyGrid& g, int i) { return g.ptr->weight(i); })
      .def("parity_partner",
           [](const PyGrid& g, int i) { return g.ptr->parity_partner(i); });

  m.def(
      "build_grid",
      [](int radial_nodes, double k_min, double k_max, int angular_scheme) {
        return PyGrid{LightconeGrid::build(
            GridSpec{radial_nodes, k_min, k_max, parse_angular_scheme(angular_scheme)})};
      },
      py::arg("radial_nodes") = 8, py::arg("k_min") = 0.05, py::arg("k_max") = 6.0,
      py::arg("angular_scheme") = 26);

  py::class_<AnalyticTestFunction>(m, "AnalyticTestFunction")
      .def("evaluate", [](const AnalyticTestFunction& f, const std::vector<double>& k) {
        return tensor_to_array(f.evaluate(vector_from_seq(k)));
      });

  m.def(
      "gaussian_packet",
      [](const py::array_t<std::complex<double>>& amplitude,
         const std::vector<double>& center, double sigma, bool real_symmetrized) {
        return gaussian_packet({tensor_from_array(amplitude), vector_from_seq(center),
                                sigma, real_symmetrized});
      },
      py::arg("amplitude"), py::arg("center"), py::arg("sigma"),
      py::arg("real_symmetrized") = false);

  m.def("lorentz_transform",
        [](const AnalyticTestFunction& f, const py::array_t<double>& l) {
          return lorentz_transform(f, mat4_from_array(l));
        });
  m.def("boost_z", [](double rapidity) {
    const Mat4 l = boost_z(rapidity);
    py::array_t<double> out({4, 4});
    auto view = out.mutable_unchecked<2>();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) view(i, j) = l(i, j);
    return out;
  });

  py::class_<OnShellTestFunction>(m, "TestFunction")
      .def_property_readonly("size", &OnShellTestFunction::size)
      .def("plus", [](const OnShellTestFunction& f, int i) {
        return tensor_to_array(f.plus(i));
      })
      .def("minus", [](const OnShellTestFunction& f, int i) {
        return tensor_to_array(f.minus(i));
      })
      .def("max_abs", &OnShellTestFunction::max_abs);

  m.def("sample_on_grid", [](const AnalyticTestFunction& f, const PyGrid& grid) {
    return sample_on_grid(f, grid.ptr);
  });
  m.def("star_conjugate", &star_conjugate);
  m.def("bullet_map", &bullet_map);
  m.def("box_map", &box_map);
  m.def("add", [](const OnShellTestFunction& f, const OnShellTestFunction& g) {
    return add(f, g);
  });
  m.def("scale", [](const OnShellTestFunction& f, Complex s) { return scale(f, s); });
  m.def("is_real_function", &is_real_function, py::arg("f"), py::arg("tol") = 1e-12);

  m.def(
      "inner_product",
      [](const OnShellTestFunction& f, const OnShellTestFunction& g, double hbar) {
        return inner_product(f, g, PhysicalConstants{hbar});
      },
      py::arg("f"), py::arg("g"), py::arg("hbar") = 1.0);

  py::class_<GramContext>(m, "Vacuum")
      .def(py::init([](const PyGrid& grid, double hbar) {
             return GramContext(grid.ptr, PhysicalConstants{hbar});
           }),
           py::arg("grid"), py::arg("hbar") = 1.0)
      .def("add", &GramContext::add)
      .def("name", &GramContext::name)
      .def("inner", &GramContext::inner)
      .def("star_label", &GramContext::star_label)
      .def("bullet_label", &GramContext::bullet_label)
      .def("box_label", &GramContext::box_label)
      .def("gram_matrix", [](const GramContext& ctx) { return ctx.matrix(); })
      .def("vev",
           [](GramContext& ctx, const std::vector<std::pair<std::string, int>>& ops) {
             return vacuum_expectation(word_from_list(ops), ctx);
           })
      .def("field_vev",
           [](GramContext& ctx, const std::vector<std::pair<std::string, int>>& syms) {
             std::vector<FieldSymbol> symbols;
             for (const auto& [kind, label] : syms)
               symbols.push_back({field_kind(kind), label});
             return field_vev(symbols, ctx);
           })
      .def(
          "commutator_vev",
          [](GramContext& ctx, const std::string& kind, int f, int g) {
            const auto out = commutator_vev(field_kind(kind), f, g, {}, {}, ctx);
            return py::make_tuple(out.value, out.scale);
          },
          py::arg("kind"), py::arg("f"), py::arg("g"))
      .def("covariance", [](GramContext& ctx, const std::vector<int>& labels) {
        return covariance_matrix(labels, ctx);
      });

  m.def(
      "draw_samples",
      [](const Eigen::MatrixXd& c, int n, std::uint64_t seed, int jobs) {
        return draw_samples(c, n, seed, jobs).values;
      },
      py::arg("covariance"), py::arg("n"), py::arg("seed"), py::arg("jobs") = 1);

  m.def(
      "run_verification",
      [](const std::vector<std::string>& suites, const std::string& config_json) {
        const RunConfig config =
            config_json.empty() ? default_config() : parse_config_json(config_json);
        return report_to_json(run_suites(config, suites));
      },
      py::arg("suites"), py::arg("config_json") = std::string());

  m.def("default_config_json",
        []() { return config_to_json(default_config()); });

  m.attr("__version__") = EMFIELD_VERSION;
}
