#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "decmatch/oracle.hpp"
#include "decmatch/run.hpp"

namespace py = pybind11;
using namespace decmatch;

namespace {

// Rationals cross the boundary as "p/q" strings; the Python side wraps them in
// fractions.Fraction.
Rational rat(const std::string& s) { return parse_rational(s); }

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

EngineConfig engine_config(std::uint32_t inv_eps, const std::string& alpha, const std::string& rho,
                           const std::string& theta, std::uint64_t seed) {
  EngineConfig cfg;
  cfg.eps = Epsilon(inv_eps);
  cfg.alpha = rat(alpha);
  cfg.rho = rat(rho);
  cfg.theta = rat(theta);
  cfg.seed = seed;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_decmatch, m) {
  m.doc() = "Decremental approximate maximum-weight matching";

  py::class_<Multigraph>(m, "Graph")
      .def(py::init<std::size_t, Weight>(), py::arg("n"), py::arg("max_weight"))
      .def("add_edge", &Multigraph::add_edge, py::arg("u"), py::arg("v"), py::arg("w"))
      .def("delete_edge", &Multigraph::delete_edge)
      .def("alive", &Multigraph::alive)
      .def_property_readonly("n", &Multigraph::vertex_count)
      .def_property_readonly("max_weight", &Multigraph::max_weight)
      .def_property_readonly("alive_count", &Multigraph::alive_count)
      .def("alive_edges", &Multigraph::alive_edges)
      .def("edge", [](const Multigraph& g, EdgeId e) {
        const Edge& ed = g.edge(e);
        return py::make_tuple(ed.u, ed.v, ed.w);
      })
      .def("to_text", [](const Multigraph& g) {
        std::ostringstream out;
        write_graph(out, g);
        return out.str();
      })
      .def_static("from_text", [](const std::string& text) {
        std::istringstream in(text);
        return read_graph(in);
      });

  m.def("generate", [](const std::string& family, std::size_t n, std::size_t edges, Weight w,
                       std::uint64_t seed) {
    auto inst = generate({parse_family(family), n, edges, w, seed});
    return py::make_tuple(inst.graph, inst.deletions);
  }, py::arg("family"), py::arg("n"), py::arg("m"), py::arg("max_weight"), py::arg("seed"));

  m.def("exact_mwm", [](const Multigraph& g) {
    auto r = exact_mwm(g);
    return py::make_tuple(r.weight, r.edges);
  });

  m.def("static_match", [](const Multigraph& g, std::uint32_t inv_eps) {
    auto cert = static_weighted_match(g, Epsilon(inv_eps));
    auto report = verify_certificate(g, cert, Epsilon(inv_eps));
    return py::make_tuple(cert.weight, cert.matching, to_string(cert.f), report.ok());
  }, py::arg("graph"), py::arg("inv_eps") = 5);

  m.def("frac_solve", [](const Multigraph& g, const std::string& kappa, std::uint32_t inv_eps) {
    auto res = weighted_frac_match(g, CapacityFn(g, rat(kappa)), Epsilon(inv_eps));
    py::dict x;
    for (const auto& [e, v] : res.x.entries()) x[py::int_(e)] = to_string(v);
    return py::make_tuple(to_string(res.value), x, res.iterations);
  }, py::arg("graph"), py::arg("kappa") = "1", py::arg("inv_eps") = 5);

  py::class_<DecrementalEngine>(m, "Engine")
      .def(py::init([](const Multigraph& g, const std::string& mu, std::uint32_t inv_eps,
                       const std::string& alpha, const std::string& rho, const std::string& theta,
                       std::uint64_t seed) {
             return std::make_unique<DecrementalEngine>(g, rat(mu),
                                                        engine_config(inv_eps, alpha, rho, theta, seed));
           }),
           py::arg("graph"), py::arg("mu"), py::arg("inv_eps") = 5, py::arg("alpha") = "8",
           py::arg("rho") = "8", py::arg("theta") = "1/8", py::arg("seed") = 1)
      .def("delete_edge", [](DecrementalEngine& eng, EdgeId e) {
        return eng.delete_edge(e) == EngineStatus::Ok;
      })
      .def_property_readonly("ok", [](const DecrementalEngine& eng) {
        return eng.status() == EngineStatus::Ok;
      })
      .def_property_readonly("matching", &DecrementalEngine::matching)
      .def_property_readonly("matching_weight", &DecrementalEngine::matching_weight)
      .def_property_readonly("phases", [](const DecrementalEngine& eng) {
        return eng.instrumentation().phases;
      })
      .def("events", [](const DecrementalEngine& eng) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& ev : eng.events()) a.push_back(to_json(ev));
        return json_to_py(a);
      });

  py::class_<Orchestrator>(m, "Orchestrator")
      .def(py::init([](const Multigraph& g, std::uint32_t inv_eps, const std::string& alpha,
                       const std::string& rho, const std::string& theta, std::size_t lambda,
                       std::uint64_t seed) {
             OrchestratorConfig cfg;
             cfg.engine = engine_config(inv_eps, alpha, rho, theta, seed);
             cfg.lambda = lambda;
             return std::make_unique<Orchestrator>(g, cfg);
           }),
           py::arg("graph"), py::arg("inv_eps") = 5, py::arg("alpha") = "8", py::arg("rho") = "8",
           py::arg("theta") = "1/8", py::arg("lambda_") = 16, py::arg("seed") = 1)
      .def("delete_edge", &Orchestrator::delete_edge)
      .def_property_readonly("matching", &Orchestrator::matching)
      .def_property_readonly("matching_weight", &Orchestrator::matching_weight)
      .def_property_readonly("mode", [](const Orchestrator& o) { return mode_name(o.mode()); })
      .def_property_readonly("restarts", [](const Orchestrator& o) { return o.stats().restarts; });

  m.def("run", [](const std::string& mode, const Multigraph& g, std::vector<EdgeId> deletions,
                  std::uint32_t inv_eps, const std::string& alpha, const std::string& rho,
                  const std::string& theta, std::size_t lambda, std::uint64_t seed, bool oracle) {
    RunConfig cfg;
    cfg.mode = parse_mode(mode);
    cfg.graph = g;
    cfg.deletions = std::move(deletions);
    cfg.eps = Epsilon(inv_eps);
    cfg.alpha = rat(alpha);
    cfg.rho = rat(rho);
    cfg.theta = rat(theta);
    cfg.lambda = lambda;
    cfg.seed = seed;
    cfg.oracle = oracle;
    return json_to_py(run(cfg).report);
  }, py::arg("mode"), py::arg("graph"), py::arg("deletions") = std::vector<EdgeId>{},
     py::arg("inv_eps") = 5, py::arg("alpha") = "8", py::arg("rho") = "8", py::arg("theta") = "1/8",
     py::arg("lambda_") = 16, py::arg("seed") = 1, py::arg("oracle") = true);

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
}
