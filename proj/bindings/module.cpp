#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "liftspectra/decompose.hpp"
#include "liftspectra/mc.hpp"
#include "liftspectra/verify.hpp"

namespace py = pybind11;
using namespace liftspectra;

PYBIND11_MODULE(_liftspectra, m) {
    m.doc() = "Random n-lifts of regular graphs: spectra, bilinear decompositions, "
              "Monte Carlo campaigns, inequality checks";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<Edge>(m, "Edge")
        .def(py::init<std::uint32_t, std::uint32_t>())
        .def_readonly("u", &Edge::u)
        .def_readonly("v", &Edge::v)
        .def("is_loop", &Edge::is_loop)
        .def("__repr__", [](const Edge& e) {
            return "Edge(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")";
        });

    py::class_<BaseGraph>(m, "BaseGraph")
        .def(py::init([](std::uint32_t m, std::uint32_t d,
                         const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
                 std::vector<Edge> es;
                 es.reserve(edges.size());
                 for (const auto& [u, v] : edges) es.push_back({u, v});
                 return BaseGraph(m, d, std::move(es));
             }),
             py::arg("m"), py::arg("d"), py::arg("edges"))
        .def_property_readonly("m", &BaseGraph::vertex_count)
        .def_property_readonly("d", &BaseGraph::degree)
        .def_property_readonly("edges",
                               [](const BaseGraph& g) {
                                   std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
                                   for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
                                   return out;
                               })
        .def("is_connected", &BaseGraph::is_connected)
        .def("is_simple", &BaseGraph::is_simple)
        .def("is_bipartite", &BaseGraph::is_bipartite);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("regular", &ValidationReport::regular)
        .def_readonly("degree", &ValidationReport::degree)
        .def_readonly("connected", &ValidationReport::connected)
        .def_readonly("simple", &ValidationReport::simple)
        .def_readonly("bipartite", &ValidationReport::bipartite);

    m.def("validate", &validate);
    m.def("catalog", &catalog, py::arg("spec"));
    m.def("parse_edge_list", &parse_edge_list);
    m.def("serialize_edge_list", &serialize_edge_list);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("values", &Spectrum::values)
        .def_readonly("declared_degree", &Spectrum::declared_degree);

    m.def("base_spectrum", &base_spectrum);
    m.def("lambda_of", &lambda_of);
    m.def("universal_cover_radius", &universal_cover_radius);

    py::class_<LiftedGraph>(m, "LiftedGraph")
        .def_property_readonly("base", &LiftedGraph::base)
        .def_property_readonly("n", &LiftedGraph::n)
        .def_property_readonly("order", &LiftedGraph::order)
        .def_property_readonly("degree", &LiftedGraph::degree)
        .def_property_readonly("seed", &LiftedGraph::seed)
        .def_property_readonly("permutations", &LiftedGraph::permutations)
        .def("adjacency_apply",
             [](const LiftedGraph& h, const std::vector<double>& x) {
                 return h.adjacency_apply(x);
             })
        .def("is_connected", &LiftedGraph::is_connected);

    m.def("random_lift", &LiftedGraph::random, py::arg("base"), py::arg("n"), py::arg("seed"));
    m.def("identity_lift", &LiftedGraph::identity, py::arg("base"), py::arg("n"));
    m.def("verify_cover", &verify_cover);
    m.def("lift_to_json", &lift_to_json);
    m.def("lift_from_json", &lift_from_json);
    m.def("dense_adjacency", &dense_adjacency,
          "Flat row-major adjacency matrix of a desk-scale lift");
    m.def("dense_lift_spectrum", &dense_lift_spectrum);

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("dense_cap", &SolverOptions::dense_cap)
        .def_readwrite("lanczos_k", &SolverOptions::lanczos_k)
        .def_readwrite("lanczos_tol", &SolverOptions::lanczos_tol);

    py::class_<LambdaReport>(m, "LambdaReport")
        .def_readonly("lambda1", &LambdaReport::lambda1)
        .def_readonly("lambda_new", &LambdaReport::lambda_new)
        .def_readonly("method", &LambdaReport::method)
        .def_readonly("residual", &LambdaReport::residual)
        .def_readonly("ramanujan", &LambdaReport::ramanujan)
        .def_readonly("threshold", &LambdaReport::threshold);

    m.def("lambda_new", &lambda_new, py::arg("lift"), py::arg("opts") = SolverOptions{});
    m.def("is_ramanujan", &is_ramanujan);

    py::class_<HeavyLightSplit>(m, "HeavyLightSplit")
        .def_readonly("r_heavy", &HeavyLightSplit::r_heavy)
        .def_readonly("r_light", &HeavyLightSplit::r_light)
        .def_readonly("threshold", &HeavyLightSplit::threshold)
        .def_readonly("heavy_count", &HeavyLightSplit::heavy_count)
        .def_readonly("light_count", &HeavyLightSplit::light_count);

    m.def("heavy_light_split",
          [](const LiftedGraph& h, double lam, const std::vector<double>& x,
             const std::vector<double>& y) { return heavy_light_split(h, lam, x, y); });
    m.def("lattice_round",
          [](const std::vector<double>& x, std::uint32_t d) { return lattice_round(x, d); });
    m.def("expected_bilinear",
          [](const BaseGraph& g, std::uint32_t n, const std::vector<double>& x,
             const std::vector<double>& y) { return expected_bilinear(g, n, x, y); });
    m.def("solve_zlogz", &solve_zlogz);
    m.def("w_star", &w_star, py::arg("e_st"), py::arg("i"), py::arg("j"), py::arg("alpha_i"),
          py::arg("beta_j"), py::arg("n"));
    m.def("light_variance_quantity",
          [](const BaseGraph& g, std::uint32_t n, double lam, const std::vector<double>& x,
             const std::vector<double>& y) { return light_variance_quantity(g, n, lam, x, y); });

    py::class_<InequalityReport>(m, "InequalityReport")
        .def_readonly("name", &InequalityReport::name)
        .def_readonly("lhs", &InequalityReport::lhs)
        .def_readonly("rhs", &InequalityReport::rhs)
        .def_readonly("margin", &InequalityReport::margin)
        .def_readonly("applicable", &InequalityReport::applicable)
        .def("violated", &InequalityReport::violated);

    m.def("check_mixing",
          [](const BaseGraph& g, const std::vector<std::uint32_t>& a,
             const std::vector<std::uint32_t>& b) { return check_mixing(g, a, b); });
    m.def("check_cut_bound",
          [](const LiftedGraph& h, double lam, const std::vector<std::uint32_t>& a,
             const std::vector<std::uint32_t>& b) { return check_cut_bound(h, lam, a, b); });
    m.def("check_small_cut",
          [](const LiftedGraph& h, const std::vector<std::uint32_t>& a,
             const std::vector<std::uint32_t>& b) { return check_small_cut(h, a, b); });

    py::class_<CheegerResult>(m, "CheegerResult")
        .def_readonly("h", &CheegerResult::h)
        .def_readonly("argmin", &CheegerResult::argmin);

    m.def("cheeger_bruteforce", &cheeger_bruteforce);

    py::class_<TrialResult>(m, "TrialResult")
        .def_readonly("trial", &TrialResult::trial)
        .def_readonly("seed", &TrialResult::seed)
        .def_readonly("lambda_new", &TrialResult::lambda_new)
        .def_readonly("ramanujan", &TrialResult::ramanujan)
        .def_readonly("method", &TrialResult::method);

    py::class_<TrialBatch>(m, "TrialBatch")
        .def_readonly("base_name", &TrialBatch::base_name)
        .def_readonly("m", &TrialBatch::m)
        .def_readonly("d", &TrialBatch::d)
        .def_readonly("n", &TrialBatch::n)
        .def_readonly("trial_count", &TrialBatch::trial_count)
        .def_readonly("master_seed", &TrialBatch::master_seed)
        .def_readonly("trials", &TrialBatch::trials)
        .def_readonly("samples", &TrialBatch::samples);

    m.def("run_trials", &run_trials, py::arg("base"), py::arg("base_name"), py::arg("n"),
          py::arg("trials"), py::arg("master_seed"), py::arg("jobs") = 1,
          py::arg("opts") = SolverOptions{});

    py::class_<Ecdf>(m, "Ecdf")
        .def_readonly("points", &Ecdf::points)
        .def_readonly("steps", &Ecdf::steps)
        .def("at", &Ecdf::at);

    m.def("ecdf", [](const TrialBatch& b) { return ecdf(b); });
    m.def("quantiles", [](const TrialBatch& b, const std::vector<double>& qs) {
        return quantiles(b, qs);
    });

    py::class_<RamanujanEstimate>(m, "RamanujanEstimate")
        .def_readonly("fraction", &RamanujanEstimate::fraction)
        .def_readonly("wilson_lo", &RamanujanEstimate::wilson_lo)
        .def_readonly("wilson_hi", &RamanujanEstimate::wilson_hi);

    m.def("ramanujan_probability", &ramanujan_probability);
    m.def("ks_distance", &ks_distance);
    m.def("save_batch", &save_batch);
    m.def("load_batch", &load_batch);
    m.def("batch_to_csv", &batch_to_csv);
}
