#include "riskfold/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "riskfold/errors.hpp"
#include "riskfold/report.hpp"
#include "riskfold/risk.hpp"
#include "riskfold/swap.hpp"

namespace riskfold {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kRiskyShown = 50;  // text-report cap; the JSON has everything

// Re-throws the current exception with the stage name prefixed, preserving
// the type so the CLI's exit-code mapping still sees it.
template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    auto tag = [name](const std::exception& e) { return std::string(name) + ": " + e.what(); };
    try {
        return fn();
    } catch (const UsageError& e) {
        throw UsageError(tag(e));
    } catch (const ConflictError& e) {
        throw ConflictError(tag(e));
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(tag(e));
    } catch (const DomainError& e) {
        throw DomainError(tag(e));
    } catch (const ContractError& e) {
        throw ContractError(tag(e));
    } catch (const std::exception& e) {
        throw DomainError(tag(e));
    }
}

// Collects written files so a failed emission can remove its partial output.
class Emitter {
public:
    explicit Emitter(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw DomainError("cannot create output directory " + dir_.string());
    }

    void write(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw DomainError("cannot open " + path.string() + " for writing");
        out << content;
        out.close();
        if (!out) throw DomainError("failed while writing " + path.string());
        written_.push_back(path);
    }

    void discard() {
        std::error_code ec;
        for (const fs::path& path : written_) fs::remove(path, ec);
        written_.clear();
    }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

struct SearchArtifacts {
    MultiStartResult found;
    std::vector<const SearchResult*> kept;
    std::vector<RiskReport> risks;
    SearchMeta meta;
};

SearchArtifacts search_and_score(const SparseTable& table, const PipelineConfig& cfg) {
    SearchArtifacts art;
    art.found = stage("search", [&] {
        return multi_start(table, cfg.restarts, cfg.seed, cfg.coin_prob, cfg.threads);
    });
    const std::size_t keep =
        std::min<std::size_t>(art.found.models.size(), cfg.top > 0 ? static_cast<std::size_t>(cfg.top) : 1);
    for (std::size_t k = 0; k < keep; ++k) art.kept.push_back(&art.found.models[k]);
    stage("risk", [&] {
        for (const SearchResult* found : art.kept)
            art.risks.push_back(estimate_population_uniques(table, found->model));
        return 0;
    });
    art.meta = {cfg.seed, cfg.restarts, cfg.coin_prob, art.found.restarts_used};
    return art;
}

std::vector<SearchResult> kept_values(const SearchArtifacts& art) {
    std::vector<SearchResult> models;
    for (const SearchResult* found : art.kept) models.push_back(*found);
    return models;
}

void emit_model_report(Emitter& emitter, const SearchArtifacts& art, const Schema& schema,
                       const ModelFile& mf) {
    const auto models = kept_values(art);
    emitter.write("model_report.txt", model_report_text(models, art.risks, schema, art.meta));
    emitter.write("model_report.json", model_report_json(models, art.risks, schema, art.meta));
    emitter.write("model.json", model_file_json(mf));
}

void emit_risk_report(Emitter& emitter, const RiskReport& report, double threshold) {
    emitter.write("risk_report.txt", risk_report_text(report, threshold, kRiskyShown));
    emitter.write("risk_report.json", risk_report_json(report, threshold));
}

void emit_swap_report(Emitter& emitter, const ProtectResult& prot, const PipelineConfig& cfg,
                      double before, double after) {
    emitter.write("swap_log.txt", swap_report_text(prot, cfg.risk_threshold,
                                                   cfg.max_swap_records, before, after));
    emitter.write("swap_log.json", swap_report_json(prot, cfg.risk_threshold,
                                                    cfg.max_swap_records, before, after));
    std::ostringstream csv;
    write_csv(csv, prot.table);
    emitter.write("swapped.csv", csv.str());
}

FittedModel refit_model_file(const SparseTable& table, const ModelFile& mf) {
    if (mf.graph.vertex_count() != table.schema().variable_count())
        throw DomainError("model file has " + std::to_string(mf.graph.vertex_count()) +
                          " variables but the schema has " +
                          std::to_string(table.schema().variable_count()));
    return fit(table, mf.graph);
}

}  // namespace

std::string model_file_json(const ModelFile& mf) {
    nlohmann::ordered_json doc;
    doc["vertex_count"] = mf.graph.vertex_count();
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (auto [u, v] : mf.graph.edges()) edges.push_back({u, v});
    doc["edges"] = edges;
    doc["aic"] = mf.aic;
    doc["search"] = {{"seed", mf.seed}, {"restarts", mf.restarts}, {"coin_prob", mf.coin_prob}};
    return doc.dump(2) + "\n";
}

ModelFile load_model_file(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        ModelFile mf;
        const int m = doc.at("vertex_count").get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& edge : doc.at("edges"))
            edges.emplace_back(edge.at(0).get<int>(), edge.at(1).get<int>());
        mf.graph = Graph::from_edges(m, edges);
        mf.aic = doc.value("aic", 0.0);
        if (doc.contains("search")) {
            const auto& search = doc["search"];
            mf.seed = search.value("seed", std::uint64_t{0});
            mf.restarts = search.value("restarts", 0);
            mf.coin_prob = search.value("coin_prob", 0.5);
        }
        return mf;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("model file is malformed: ") + e.what());
    }
}

ModelFile load_model_file_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read model file " + path + " (run the fit stage first?)");
    return load_model_file(in);
}

SparseTable load_table(const PipelineConfig& cfg) {
    return stage("ingest", [&] {
        Schema schema = load_schema_file(cfg.schema_path);
        if (cfg.population > 0) schema.set_population_size(cfg.population);
        if (cfg.infer_codes) {
            std::ifstream pass(cfg.data_path);
            if (!pass) throw DomainError("cannot read data file " + cfg.data_path);
            schema = infer_code_dicts(pass, schema, cfg.skip_header);
        }
        std::ifstream data(cfg.data_path);
        if (!data) throw DomainError("cannot read data file " + cfg.data_path);
        return ingest_csv(data, schema, cfg.skip_header);
    });
}

void run_pipeline(const PipelineConfig& cfg) {
    const SparseTable table = load_table(cfg);
    const SearchArtifacts art = search_and_score(table, cfg);

    const FittedModel& best = art.kept.front()->model;
    const RiskReport& risk = art.risks.front();
    const ProtectResult prot = stage("swap", [&] {
        return protect(table, best, risk, cfg.risk_threshold, cfg.max_swap_records);
    });
    const RiskReport after = stage("swap", [&] {
        return estimate_population_uniques(prot.table, best);
    });

    const ModelFile mf{best.graph, cfg.seed, cfg.restarts, cfg.coin_prob, best.aic};
    Emitter emitter(cfg.out_dir);
    try {
        stage("emit", [&] {
            emit_model_report(emitter, art, table.schema(), mf);
            emit_risk_report(emitter, risk, cfg.risk_threshold);
            emit_swap_report(emitter, prot, cfg, risk.estimate_total, after.estimate_total);
            return 0;
        });
    } catch (...) {
        emitter.discard();
        throw;
    }
}

void run_fit(const PipelineConfig& cfg) {
    const SparseTable table = load_table(cfg);
    const SearchArtifacts art = search_and_score(table, cfg);
    const FittedModel& best = art.kept.front()->model;
    const ModelFile mf{best.graph, cfg.seed, cfg.restarts, cfg.coin_prob, best.aic};
    Emitter emitter(cfg.out_dir);
    try {
        stage("emit", [&] {
            emit_model_report(emitter, art, table.schema(), mf);
            return 0;
        });
    } catch (...) {
        emitter.discard();
        throw;
    }
}

void run_risk(const PipelineConfig& cfg, const std::string& model_path) {
    const SparseTable table = load_table(cfg);
    const ModelFile mf = load_model_file_path(model_path);
    const FittedModel model = stage("fit", [&] { return refit_model_file(table, mf); });
    const RiskReport report =
        stage("risk", [&] { return estimate_population_uniques(table, model); });
    Emitter emitter(cfg.out_dir);
    try {
        stage("emit", [&] {
            emit_risk_report(emitter, report, cfg.risk_threshold);
            return 0;
        });
    } catch (...) {
        emitter.discard();
        throw;
    }
}

void run_swap(const PipelineConfig& cfg, const std::string& model_path) {
    const SparseTable table = load_table(cfg);
    const ModelFile mf = load_model_file_path(model_path);
    const FittedModel model = stage("fit", [&] { return refit_model_file(table, mf); });
    const RiskReport report =
        stage("risk", [&] { return estimate_population_uniques(table, model); });
    const ProtectResult prot = stage("swap", [&] {
        return protect(table, model, report, cfg.risk_threshold, cfg.max_swap_records);
    });
    const RiskReport after =
        stage("swap", [&] { return estimate_population_uniques(prot.table, model); });
    Emitter emitter(cfg.out_dir);
    try {
        stage("emit", [&] {
            emit_swap_report(emitter, prot, cfg, report.estimate_total, after.estimate_total);
            return 0;
        });
    } catch (...) {
        emitter.discard();
        throw;
    }
}

}  // namespace riskfold
