#include "trajnyq/bessel.hpp"
#include "trajnyq/geometry.hpp"
#include "trajnyq/io.hpp"
#include "trajnyq/pipeline.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using trajnyq::io::json;

namespace {

trajnyq::ConvexBody body(const std::string& text) { return trajnyq::io::body_from_json(json::parse(text)); }

trajnyq::Vec vec(const std::vector<double>& v) {
  return Eigen::Map<const trajnyq::Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

py::dict run(const std::string& action, const std::string& config, std::optional<std::uint64_t> seed,
             std::optional<double> tolerance) {
  trajnyq::PipelineResult r;
  {
    py::gil_scoped_release release;
    r = trajnyq::execute(action, json::parse(config), seed, tolerance);
  }
  py::dict out;
  out["result"] = r.result.dump();
  out["artifacts"] = r.artifacts;
  out["exit_code"] = static_cast<int>(r.exit_code);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compiled core of trajnyq";

  static py::exception<trajnyq::Error> error(m, "TrajnyqError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const trajnyq::Error& e) {
      py::set_error(error, e.what());
    } catch (const json::exception& e) {
      py::set_error(error, (std::string("ConfigError: ") + e.what()).c_str());
    }
  });

  m.def("run", &run, py::arg("action"), py::arg("config"), py::arg("seed") = py::none(),
        py::arg("tolerance") = py::none(),
        "Run a pipeline action on a JSON config string; returns result JSON, artifacts and exit code.");
  m.def(
      "support", [](const std::string& b, const std::vector<double>& u) { return trajnyq::support(body(b), trajnyq::Direction(vec(u))); },
      py::arg("body"), py::arg("direction"));
  m.def(
      "width",
      [](const std::string& b) {
        const auto w = trajnyq::width_direction(body(b));
        const trajnyq::Vec& u = w.direction.vec();
        return py::make_tuple(w.width, std::vector<double>(u.data(), u.data() + u.size()));
      },
      py::arg("body"), "Width of the body and a direction attaining it.");
  m.def("bessel_j", &trajnyq::bessel_j, py::arg("n"), py::arg("x"));
}
