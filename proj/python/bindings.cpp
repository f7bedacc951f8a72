#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "riskfold/errors.hpp"
#include "riskfold/fit.hpp"
#include "riskfold/oracle.hpp"
#include "riskfold/pipeline.hpp"
#include "riskfold/risk.hpp"
#include "riskfold/search.hpp"
#include "riskfold/swap.hpp"

namespace py = pybind11;
using namespace riskfold;

namespace {

Graph graph_from_pairs(int m, const std::vector<std::pair<int, int>>& edges) {
    return Graph::from_edges(m, edges);
}

std::vector<std::vector<int>> sets_to_lists(const std::vector<VertexSet>& sets) {
    std::vector<std::vector<int>> out;
    for (VertexSet s : sets) out.push_back(set_to_vector(s));
    return out;
}

Cell to_cell(const std::vector<int>& values) {
    Cell cell;
    for (int v : values) {
        if (v < 0 || v > 0xFFFF) throw DomainError("cell coordinate out of range");
        cell.push_back(static_cast<std::uint16_t>(v));
    }
    return cell;
}

std::vector<int> from_cell(const Cell& cell) {
    return std::vector<int>(cell.begin(), cell.end());
}

VertexSet to_set(const std::vector<int>& vars) { return set_from_vector(vars); }

}  // namespace

PYBIND11_MODULE(_riskfold, m) {
    m.doc() = "decomposable-model disclosure risk evaluation and swapping";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConflictError>(m, "ConflictError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<Schema>(m, "Schema")
        .def_property_readonly("variable_count", &Schema::variable_count)
        .def_property_readonly("population_size", &Schema::population_size)
        .def("cardinality", &Schema::cardinality, py::arg("variable"))
        .def("name", [](const Schema& s, int v) { return s.variable(v).name; }, py::arg("variable"))
        .def("__repr__", [](const Schema& s) {
            return "<Schema of " + std::to_string(s.variable_count()) + " variables, N=" +
                   std::to_string(s.population_size()) + ">";
        });

    py::class_<SparseTable>(m, "Table")
        .def_property_readonly("schema", &SparseTable::schema)
        .def_property_readonly("record_count", &SparseTable::record_count)
        .def_property_readonly("distinct_cell_count", &SparseTable::distinct_cell_count)
        .def("record", [](const SparseTable& t, std::int64_t row) { return from_cell(t.record(row)); },
             py::arg("row"))
        .def("count_for", [](const SparseTable& t, const std::vector<int>& cell) {
                 return t.count_for(to_cell(cell));
             },
             py::arg("cell"))
        .def("size_indices", [](const SparseTable& t) {
                 const auto sizes = t.size_indices();
                 return std::map<std::int64_t, std::int64_t>(sizes.begin(), sizes.end());
             })
        .def("sample_unique_count", [](const SparseTable& t) { return t.sample_uniques().size(); })
        .def("to_csv", [](const SparseTable& t) {
                 std::ostringstream out;
                 write_csv(out, t);
                 return out.str();
             })
        .def("__len__", &SparseTable::record_count)
        .def("__repr__", [](const SparseTable& t) {
            return "<Table of " + std::to_string(t.record_count()) + " records, " +
                   std::to_string(t.distinct_cell_count()) + " occupied cells>";
        });

    py::class_<FittedModel>(m, "Model")
        .def_property_readonly("aic", [](const FittedModel& f) { return f.aic; })
        .def_property_readonly("aic_half", &FittedModel::aic_half)
        .def_property_readonly("loglik", [](const FittedModel& f) { return f.loglik; })
        .def_property_readonly("df", [](const FittedModel& f) { return f.df_reported; })
        .def_property_readonly("df_raw", [](const FittedModel& f) { return f.df_raw; })
        .def_property_readonly("edges", [](const FittedModel& f) { return f.graph.edges(); })
        .def_property_readonly("cliques",
                               [](const FittedModel& f) { return sets_to_lists(f.decomposition.cliques); })
        .def_property_readonly("separators",
                               [](const FittedModel& f) {
                                   std::vector<std::pair<std::vector<int>, int>> out;
                                   for (const auto& [s, count] : f.decomposition.separators)
                                       out.emplace_back(set_to_vector(s), count);
                                   return out;
                               })
        .def("mle_cell", [](const FittedModel& f, const std::vector<int>& cell) {
                 return mle_cell(f, to_cell(cell));
             },
             py::arg("cell"))
        .def("__repr__", [](const FittedModel& f) {
            return "<Model aic=" + std::to_string(f.aic) + " df=" + std::to_string(f.df_reported) +
                   ">";
        });

    py::class_<RiskEntry>(m, "RiskEntry")
        .def_readonly("record", &RiskEntry::record)
        .def_property_readonly("cell", [](const RiskEntry& e) { return from_cell(e.cell); })
        .def_readonly("p_hat", &RiskEntry::p_hat)
        .def_readonly("pop_unique", &RiskEntry::pop_unique);

    py::class_<RiskReport>(m, "RiskReport")
        .def_readonly("entries", &RiskReport::entries)
        .def_readonly("estimate_total", &RiskReport::estimate_total)
        .def_property_readonly("bands",
                               [](const RiskReport& r) {
                                   return std::vector<std::int64_t>(r.band_histogram.begin(),
                                                                    r.band_histogram.end());
                               })
        .def_readonly("above_bands", &RiskReport::above_bands)
        .def_readonly("below_bands", &RiskReport::below_bands)
        .def_readonly("sample_size", &RiskReport::sample_size)
        .def_readonly("population", &RiskReport::population)
        .def("__repr__", [](const RiskReport& r) {
            return "<RiskReport uniques=" + std::to_string(r.entries.size()) +
                   " estimate=" + std::to_string(r.estimate_total) + ">";
        });

    py::class_<SwapPlan>(m, "SwapPlan")
        .def_readonly("record_i", &SwapPlan::record_i)
        .def_readonly("record_j", &SwapPlan::record_j)
        .def_property_readonly("clique_a",
                               [](const SwapPlan& p) { return set_to_vector(p.triple.clique_a); })
        .def_property_readonly("clique_b",
                               [](const SwapPlan& p) { return set_to_vector(p.triple.clique_b); })
        .def_property_readonly("separator",
                               [](const SwapPlan& p) { return set_to_vector(p.triple.separator); })
        .def_property_readonly("exchanged", [](const SwapPlan& p) { return set_to_vector(p.side_a); });

    py::class_<SwapOutcome>(m, "SwapOutcome")
        .def_readonly("record", &SwapOutcome::record)
        .def_readonly("p_hat", &SwapOutcome::p_hat)
        .def_readonly("post_p_hat", &SwapOutcome::post_p_hat)
        .def_readonly("swapped", &SwapOutcome::swapped)
        .def_readonly("partner", &SwapOutcome::partner);

    py::class_<ProtectResult>(m, "ProtectResult")
        .def_readonly("table", &ProtectResult::table)
        .def_readonly("log", &ProtectResult::log)
        .def_readonly("swapped", &ProtectResult::swapped)
        .def_readonly("unswappable", &ProtectResult::unswappable);

    m.def("load_schema", &load_schema_file, py::arg("path"));
    m.def("load_table",
          [](const std::string& schema_path, const std::string& data_path, bool header,
             bool infer_codes, std::int64_t population) {
              PipelineConfig cfg;
              cfg.schema_path = schema_path;
              cfg.data_path = data_path;
              cfg.skip_header = header;
              cfg.infer_codes = infer_codes;
              cfg.population = population;
              return load_table(cfg);
          },
          py::arg("schema_path"), py::arg("data_path"), py::arg("header") = false,
          py::arg("infer_codes") = false, py::arg("population") = -1);

    m.def("is_chordal",
          [](int vertex_count, const std::vector<std::pair<int, int>>& edges) {
              return is_chordal(graph_from_pairs(vertex_count, edges));
          },
          py::arg("vertex_count"), py::arg("edges"));
    m.def("decompose",
          [](int vertex_count, const std::vector<std::pair<int, int>>& edges) {
              const auto dec = decompose(graph_from_pairs(vertex_count, edges));
              std::vector<std::pair<std::vector<int>, int>> seps;
              for (const auto& [s, count] : dec.separators)
                  seps.emplace_back(set_to_vector(s), count);
              return py::make_tuple(sets_to_lists(dec.cliques), seps);
          },
          py::arg("vertex_count"), py::arg("edges"),
          "maximal cliques and (separator, multiplicity) pairs of a chordal graph");

    m.def("fit",
          [](const SparseTable& table, const std::vector<std::pair<int, int>>& edges) {
              return fit(table, graph_from_pairs(table.schema().variable_count(), edges));
          },
          py::arg("table"), py::arg("edges"));

    m.def("multi_start",
          [](const SparseTable& table, int restarts, std::uint64_t seed, double coin_prob,
             int threads) {
              auto result = multi_start(table, restarts, seed, coin_prob, threads);
              std::vector<py::tuple> out;
              for (const SearchResult& found : result.models)
                  out.push_back(py::make_tuple(found.model, found.times_chosen));
              return out;
          },
          py::arg("table"), py::arg("restarts"), py::arg("seed") = 1, py::arg("coin_prob") = 0.5,
          py::arg("threads") = 1, "deduplicated local optima as (model, times_chosen), AIC ascending");

    m.def("pop_unique_prob", &pop_unique_prob, py::arg("p_hat"), py::arg("population"),
          py::arg("sample"));
    m.def("estimate_population_uniques", &estimate_population_uniques, py::arg("table"),
          py::arg("model"));

    m.def("find_partner",
          [](const SparseTable& table, const FittedModel& model, std::int64_t record)
              -> std::optional<SwapPlan> { return find_partner(table, model, record); },
          py::arg("table"), py::arg("model"), py::arg("record"));
    m.def("apply_swap", &apply_swap, py::arg("table"), py::arg("plan"));
    m.def("protect", &protect, py::arg("table"), py::arg("model"), py::arg("report"),
          py::arg("threshold"), py::arg("max_records") = -1);

    m.def("count_chordal", &count_chordal, py::arg("m"), py::arg("threads") = 1);
    m.def("synth_table",
          [](const std::vector<std::vector<int>>& cliques, const std::vector<int>& cards,
             std::int64_t n, std::uint64_t seed, std::int64_t population) {
              std::vector<VertexSet> sets;
              for (const auto& c : cliques) sets.push_back(to_set(c));
              return synth_table(sets, cards, n, seed, population);
          },
          py::arg("cliques"), py::arg("cardinalities"), py::arg("n"), py::arg("seed") = 1,
          py::arg("population") = -1);

    m.def("run_pipeline",
          [](const std::string& schema_path, const std::string& data_path,
             const std::string& out_dir, int restarts, std::uint64_t seed, double risk_threshold,
             std::int64_t max_records, double coin_prob, int top, int threads, bool header,
             bool infer_codes, std::int64_t population) {
              PipelineConfig cfg;
              cfg.schema_path = schema_path;
              cfg.data_path = data_path;
              cfg.out_dir = out_dir;
              cfg.restarts = restarts;
              cfg.seed = seed;
              cfg.risk_threshold = risk_threshold;
              cfg.max_swap_records = max_records;
              cfg.coin_prob = coin_prob;
              cfg.top = top;
              cfg.threads = threads;
              cfg.skip_header = header;
              cfg.infer_codes = infer_codes;
              cfg.population = population;
              run_pipeline(cfg);
          },
          py::arg("schema_path"), py::arg("data_path"), py::arg("out_dir"),
          py::arg("restarts") = 20, py::arg("seed") = 1, py::arg("risk_threshold") = 1e-7,
          py::arg("max_records") = -1, py::arg("coin_prob") = 0.5, py::arg("top") = 3,
          py::arg("threads") = 1, py::arg("header") = false, py::arg("infer_codes") = false,
          py::arg("population") = -1);
}
