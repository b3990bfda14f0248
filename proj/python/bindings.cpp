#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dail/analysis.hpp"
#include "dail/experiments.hpp"
#include "dail/latin.hpp"
#include "dail/oracle.hpp"
#include "dail/sim.hpp"

namespace py = pybind11;
using namespace dail;

namespace {

std::vector<std::vector<int>> square_rows(const LatinSquare& s) {
    std::vector<std::vector<int>> rows(s.order(), std::vector<int>(s.order()));
    for (int i = 0; i < s.order(); ++i)
        for (int j = 0; j < s.order(); ++j) rows[i][j] = s.at(i, j);
    return rows;
}

LatinSquare square_from_rows(const std::vector<std::vector<int>>& rows) {
    int q = static_cast<int>(rows.size());
    std::vector<int> grid;
    grid.reserve(static_cast<std::size_t>(q) * q);
    for (const auto& row : rows) {
        if (row.size() != rows.size())
            throw std::invalid_argument("square rows must be q x q");
        grid.insert(grid.end(), row.begin(), row.end());
    }
    return LatinSquare(q, std::move(grid));
}

}  // namespace

PYBIND11_MODULE(_dail, m) {
    m.doc() = "Latin-rectangle channel/time-slot hopping for coexisting "
              "TDMA WBANs: constructions, collision model, simulator";

    py::class_<LatinSquare>(m, "LatinSquare")
        .def(py::init(&square_from_rows))
        .def_property_readonly("order", &LatinSquare::order)
        .def("rows", &square_rows)
        .def("at", &LatinSquare::at);

    py::class_<OrthogonalFamily>(m, "OrthogonalFamily")
        .def_property_readonly("order", &OrthogonalFamily::order)
        .def("__len__", &OrthogonalFamily::size)
        .def("square", &OrthogonalFamily::square,
             py::return_value_policy::reference_internal);

    py::class_<LatinRectangle>(m, "LatinRectangle")
        .def_property_readonly("rows", &LatinRectangle::rows)
        .def_property_readonly("cols", &LatinRectangle::cols)
        .def_property_readonly("alphabet_size", &LatinRectangle::alphabet_size)
        .def("at", &LatinRectangle::at)
        .def("__eq__", [](const LatinRectangle& a, const LatinRectangle& b) {
            return a == b;
        });

    py::class_<TransmissionPattern>(m, "TransmissionPattern")
        .def_readonly("symbol", &TransmissionPattern::symbol)
        .def_property_readonly("hops", [](const TransmissionPattern& p) {
            std::vector<std::pair<int, int>> hops;
            for (const Hop& h : p.hops) hops.emplace_back(h.channel, h.slot);
            return hops;
        });

    m.def("generate_mols", &generate_mols, py::arg("q"));
    m.def("are_orthogonal", &are_orthogonal);
    m.def("cut_rectangle", &cut_rectangle, py::arg("square"), py::arg("channels"),
          py::arg("slots"), py::arg("source_index") = -1);
    m.def("pattern_of", &pattern_of);
    m.def("overlap_count", &overlap_count);
    m.def("rectangle_to_text", [](const LatinRectangle& r) {
        std::ostringstream out;
        write_rectangle(out, r);
        return out.str();
    });
    m.def("rectangle_from_text", [](const std::string& text) {
        std::istringstream in(text);
        return read_rectangle(in);
    });

    py::class_<AnalyticalParams>(m, "AnalyticalParams")
        .def(py::init([](int Q, int M, int K, double omega, int m) {
                 AnalyticalParams p{Q, M, K, omega, m};
                 p.validate();
                 return p;
             }),
             py::arg("Q"), py::arg("M"), py::arg("K"), py::arg("omega"),
             py::arg("m"))
        .def_readonly("Q", &AnalyticalParams::Q)
        .def_readonly("M", &AnalyticalParams::M)
        .def_readonly("K", &AnalyticalParams::K)
        .def_readonly("omega", &AnalyticalParams::omega)
        .def_readonly("m", &AnalyticalParams::m)
        .def_property_readonly("Z", &AnalyticalParams::Z);

    py::enum_<LambdaVariant>(m, "LambdaVariant")
        .value("CONSISTENT", LambdaVariant::kConsistent)
        .value("STRICT", LambdaVariant::kStrict)
        .value("NORMALIZED", LambdaVariant::kNormalized);

    py::class_<LambdaResult>(m, "LambdaResult")
        .def_readonly("value", &LambdaResult::lambda)
        .def_readonly("clamped", &LambdaResult::clamped)
        .def_readonly("model_inconsistent", &LambdaResult::model_inconsistent)
        .def_readonly("raw", &LambdaResult::raw);

    m.def("collision_bounds", &collision_bounds, py::arg("Q"), py::arg("K"));
    m.def("pr_active", &pr_active, py::arg("x"), py::arg("params"),
          py::arg("variant") = LambdaVariant::kConsistent);
    m.def("pr_same_rectangle", &pr_same_rectangle, py::arg("y"), py::arg("x"),
          py::arg("params"), py::arg("variant") = LambdaVariant::kConsistent);
    m.def("pr_collision_given", &pr_collision_given);
    m.def("success_probability", &success_probability, py::arg("params"),
          py::arg("variant") = LambdaVariant::kConsistent);
    m.def("exact_lambda", &oracle::exact_lambda);
    m.def(
        "monte_carlo_lambda",
        [](const AnalyticalParams& p, long long trials, std::uint64_t seed) {
            oracle::OracleConfig cfg{trials, seed, p};
            auto r = oracle::monte_carlo_lambda(cfg);
            return std::make_pair(r.estimate, r.std_error);
        },
        py::arg("params"), py::arg("trials") = 1'000'000, py::arg("seed") = 1);
    m.def(
        "theorem_check",
        [](int q, int rows, int cols) {
            auto report =
                oracle::exhaustive_theorem_check(generate_mols(q), rows, cols);
            std::vector<std::string> violations;
            for (const auto& v : report.violations)
                violations.push_back(v.describe());
            return std::make_pair(report.pairs_checked, violations);
        },
        py::arg("q"), py::arg("rows"), py::arg("cols"));

    m.def(
        "simulate",
        [](int n_wbans, int sensors_per_wban, int channels, double omega,
           int superframes, std::uint64_t seed, const std::string& scheme,
           const std::string& assignment, double area_side,
           double interference_radius) {
            sim::NetworkConfig cfg;
            cfg.n_wbans = n_wbans;
            cfg.sensors_per_wban = sensors_per_wban;
            cfg.channels = channels;
            cfg.omega = omega;
            cfg.superframes = superframes;
            cfg.seed = seed;
            cfg.area_side = area_side;
            cfg.interference_radius = interference_radius;
            cfg.assignment = assignment == "coordinated"
                                 ? sim::AssignmentMode::kCoordinatedDistinct
                                 : sim::AssignmentMode::kIidRandom;
            auto rep = dail::exp::run_single(
                cfg, scheme == "SMS" ? sim::Scheme::kSms : sim::Scheme::kDail);
            py::dict out;
            out["mcp"] = rep.mcp;
            out["pc"] = rep.pc;
            out["total_tx"] = rep.total_tx;
            out["total_collisions"] = rep.total_collisions;
            return out;
        },
        py::arg("n_wbans"), py::arg("sensors_per_wban") = 12,
        py::arg("channels") = 16, py::arg("omega") = 0.5,
        py::arg("superframes") = 100, py::arg("seed") = 1,
        py::arg("scheme") = "DAIL", py::arg("assignment") = "random",
        py::arg("area_side") = 5.0, py::arg("interference_radius") = 3.0);
}
