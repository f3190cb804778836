#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "squarepeg/constructions.hpp"
#include "squarepeg/curve.hpp"
#include "squarepeg/io_json.hpp"
#include "squarepeg/solver.hpp"
#include "squarepeg/svg.hpp"

namespace py = pybind11;
using namespace squarepeg;

namespace {

Curve curve_from_json_str(const std::string& spec_json) {
  return Curve(spec_from_json(nlohmann::json::parse(spec_json)));
}

SolveConfig config_from_str(const std::string& config_json) {
  if (config_json.empty()) return SolveConfig{};
  return config_from_json(nlohmann::json::parse(config_json));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "native core: curve constructions and inscribed-square enumeration";

  py::class_<Curve>(m, "Curve")
      .def(py::init(&curve_from_json_str), py::arg("spec_json"))
      .def("eval",
           [](const Curve& c, double t) {
             const Point p = c.eval(t);
             return py::make_tuple(p.x, p.y);
           },
           py::arg("t"))
      .def("deriv",
           [](const Curve& c, double t, int order) {
             const Vec2 d = c.deriv(t, order);
             return py::make_tuple(d.x, d.y);
           },
           py::arg("t"), py::arg("order") = 1)
      .def("signed_curvature", &Curve::signed_curvature, py::arg("t"))
      .def("length", &Curve::length)
      .def("segment_count", &Curve::segment_count)
      .def("is_convex",
           [](const Curve& c, int samples) {
             const Curve::Convexity conv = c.is_convex(samples);
             return py::make_tuple(conv.convex, conv.min_curvature);
           },
           py::arg("samples") = 100000)
      .def("closest_point",
           [](const Curve& c, double x, double y) {
             const Curve::ClosestPoint cp = c.closest_point({x, y});
             return py::make_tuple(cp.t, cp.distance);
           },
           py::arg("x"), py::arg("y"))
      .def("spec_json", [](const Curve& c) { return spec_to_json(c.spec()).dump(); });

  m.def("unit_circle", [] { return spec_to_json(unit_circle_spec()).dump(); });
  m.def("nonsmooth_two_square",
        [] { return spec_to_json(build_nonsmooth_two_square()).dump(); });
  m.def(
      "smooth_two_square",
      [](double c, double a) { return spec_to_json(build_smooth_two_square(c, a)).dump(); },
      py::arg("c"), py::arg("a") = 0.02);
  m.def(
      "n_square",
      [](int n, std::optional<double> c, double a) {
        ConstructionParams params = default_n_square_params(n, c, a);
        return spec_to_json(build_n_square(params)).dump();
      },
      py::arg("n"), py::arg("c") = std::nullopt, py::arg("a") = 0.02);

  m.def(
      "find_squares",
      [](const std::string& spec_json, const std::string& config_json) {
        const Curve curve = curve_from_json_str(spec_json);
        return report_to_json(enumerate_squares(curve, config_from_str(config_json)))
            .dump();
      },
      py::arg("spec_json"), py::arg("config_json") = std::string{});
  m.def(
      "oracle_squares",
      [](const std::string& spec_json, int resolution, const std::string& config_json) {
        const Curve curve = curve_from_json_str(spec_json);
        nlohmann::json j = nlohmann::json::array();
        for (const Square& sq :
             oracle_enumerate(curve, resolution, config_from_str(config_json)))
          j.push_back(square_to_json(sq));
        return j.dump();
      },
      py::arg("spec_json"), py::arg("resolution") = 512,
      py::arg("config_json") = std::string{});

  m.def(
      "critical_c",
      [](double low, double high, double a) {
        return critical_to_json(critical_c(low, high, a)).dump();
      },
      py::arg("low") = 1.0, py::arg("high") = 1.4, py::arg("a") = 0.02);
  m.def("locus", &locus, py::arg("x"));
  m.def("graph_height", &graph_height, py::arg("x"), py::arg("c"), py::arg("a") = 0.02);
  m.def("max_convex_c", &max_convex_c, py::arg("u"), py::arg("v"), py::arg("a") = 0.02);

  m.def(
      "render_svg",
      [](const std::string& spec_json, const std::string& report_json, bool locus_overlay) {
        const CurveSpec spec = spec_from_json(nlohmann::json::parse(spec_json));
        const Curve curve(spec);
        std::vector<Square> squares;
        if (!report_json.empty())
          squares = report_from_json(nlohmann::json::parse(report_json)).squares;
        RenderOptions options;
        options.locus_overlay = locus_overlay;
        if (locus_overlay && spec.metadata.contains("c") && spec.metadata["c"].is_number())
          options.locus_c = spec.metadata["c"].get<double>();
        return render_svg(curve, squares, options);
      },
      py::arg("spec_json"), py::arg("report_json") = std::string{},
      py::arg("locus") = false);
}
