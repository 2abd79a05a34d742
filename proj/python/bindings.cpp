#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tsosc/classify.hpp"
#include "tsosc/config.hpp"
#include "tsosc/error.hpp"
#include "tsosc/monomials.hpp"
#include "tsosc/report.hpp"
#include "tsosc/simulate.hpp"

namespace py = pybind11;
using namespace tsosc;

namespace {

// Reports cross the boundary as JSON text; the Python package decodes them.
std::string text(const Json& doc) { return doc.dump(); }

GridFn on_points(const std::vector<double>& points, const std::vector<double>& values) {
  if (points.size() != values.size()) fail(Errc::InvalidArgument, "python", "points and values differ in length");
  if (points.empty()) fail(Errc::InvalidArgument, "python", "no samples");
  const auto last = static_cast<std::int64_t>(points.size()) - 1;
  return GridFn(GridWindow(TimeScale::explicit_points(points), 0, last), values);
}

}  // namespace

PYBIND11_MODULE(_tsosc, m) {
  m.doc() = "Time-scale oscillation criteria (native core)";

  // the module attribute keeps the type alive
  static PyObject* error_type = PyErr_NewException("tsosc._tsosc.TsoscError", PyExc_RuntimeError, nullptr);
  m.attr("TsoscError") = py::reinterpret_borrow<py::object>(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      inst.attr("where") = e.where();
      inst.attr("position") = e.position() ? py::cast(*e.position()) : py::none();
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  py::class_<TimeScale>(m, "TimeScale")
      .def_static("uniform", &TimeScale::uniform, py::arg("h"), py::arg("anchor") = 0.0,
                  py::arg("approximates_real") = false)
      .def_static("geometric", &TimeScale::geometric, py::arg("q"), py::arg("anchor") = 1.0)
      .def_static("explicit", &TimeScale::explicit_points, py::arg("points"))
      .def("point", &TimeScale::point)
      .def("index_of", &TimeScale::index_of)
      .def("describe", &TimeScale::describe)
      .def("__repr__", &TimeScale::describe);

  m.def("h_poly", &h_poly, py::arg("scale"), py::arg("k"), py::arg("t"), py::arg("s"));
  m.def("g_poly", &g_poly, py::arg("scale"), py::arg("k"), py::arg("t"), py::arg("s"));
  m.def("q_gamma", &q_gamma, py::arg("q"), py::arg("n"));

  m.def(
      "kiguradze_profile",
      [](const std::vector<double>& points, const std::vector<double>& values, int n, double strict_tol) {
        return text(to_json(kiguradze_profile(on_points(points, values), n, strict_tol)));
      },
      py::arg("points"), py::arg("values"), py::arg("n"), py::arg("strict_tol") = 1e-12);
  m.def(
      "verify_philos",
      [](const std::vector<double>& points, const std::vector<double>& values, int n) {
        const auto f = on_points(points, values);
        const auto profile = kiguradze_profile(f, n);
        return text({{"profile", to_json(profile)}, {"philos", to_json(verify_philos(f, n, profile))}});
      },
      py::arg("points"), py::arg("values"), py::arg("n"));

  m.def(
      "threshold_closed_form",
      [](const std::string& example, const std::map<std::string, double>& params) {
        return text(to_json(threshold_closed_form(example, params)));
      },
      py::arg("example"), py::arg("params") = std::map<std::string, double>{});
  m.def(
      "reproduce_example",
      [](const std::string& example, const std::map<std::string, double>& params, std::size_t horizon,
         std::size_t window, double gamma, bool fine) {
        ReproduceOptions o;
        o.horizon = horizon;
        o.criterion_points = window;
        o.gamma = gamma;
        o.simulate_continuous = fine;
        return text(to_json(reproduce_example(example, params, o)));
      },
      py::arg("example"), py::arg("params") = std::map<std::string, double>{}, py::arg("horizon") = 0,
      py::arg("window") = 0, py::arg("gamma") = kDefaultGamma, py::arg("fine") = false);

  m.def("render_config", [](const std::string& config) { return render_config(parse_config(config)); },
        py::arg("config"));
  m.def(
      "simulate",
      [](const std::string& config, std::size_t horizon) {
        const auto cfg = parse_config(config);
        auto init = constant_history(cfg.spec, cfg.history.front());
        if (cfg.history.size() > 1) init.phi = GridFn(init.phi.window(), cfg.history);
        const auto tr = step_ivp(cfg.spec, init, horizon ? horizon : cfg.horizon);
        const auto table = solution_table(tr);
        Json cols = Json::object();
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
          Json col = Json::array();
          for (const auto& row : table.rows) col.push_back(row[c]);
          cols[table.columns[c]] = col;
        }
        return text({{"trace", cols}, {"sign_changes", tr.sign_changes}, {"trend", std::string(to_string(tr.trend))}});
      },
      py::arg("config"), py::arg("horizon") = 0);
}
