#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "riskfold/search.hpp"
#include "riskfold/sparse_table.hpp"

namespace riskfold {

struct PipelineConfig {
    std::string schema_path;
    std::string data_path;
    std::string out_dir = ".";
    std::int64_t population = -1;  // > 0 overrides the schema's value
    int restarts = 20;
    std::uint64_t seed = 1;
    double risk_threshold = 1e-7;
    std::int64_t max_swap_records = -1;  // < 0: no cap
    double coin_prob = 0.5;
    int top = 3;      // models kept in the report
    int threads = 1;
    bool skip_header = false;
    bool infer_codes = false;
};

// Persisted chosen model: enough to re-fit on the data without re-searching.
struct ModelFile {
    Graph graph;
    std::uint64_t seed = 0;
    int restarts = 0;
    double coin_prob = 0.5;
    double aic = 0.0;
};

std::string model_file_json(const ModelFile& mf);
ModelFile load_model_file(std::istream& in);
ModelFile load_model_file_path(const std::string& path);

// Ingest stage: schema (with optional code inference and population override)
// plus the CSV records.
SparseTable load_table(const PipelineConfig& config);

// Full pipeline: ingest, model search, risk evaluation, swapping, emission of
// model/risk/swap reports and the swapped CSV into out_dir. Throws on any
// stage failure with the stage name prefixed; partially written outputs are
// removed.
void run_pipeline(const PipelineConfig& config);

// Single stages for the subcommands. run_fit searches and writes the model
// report and model file; the others re-fit a persisted model on the data.
void run_fit(const PipelineConfig& config);
void run_risk(const PipelineConfig& config, const std::string& model_path);
void run_swap(const PipelineConfig& config, const std::string& model_path);

}  // namespace riskfold
