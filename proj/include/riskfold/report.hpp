#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riskfold/risk.hpp"
#include "riskfold/search.hpp"
#include "riskfold/swap.hpp"

namespace riskfold {

// Search provenance echoed into every model report.
struct SearchMeta {
    std::uint64_t seed = 0;
    int restarts = 0;
    double coin_prob = 0.5;
    int restarts_used = 0;
};

// Vertex sets rendered 1-based, "{1,2,6}", to match the variable numbering a
// reader sees in the schema legend.
std::string set_text(VertexSet s);

// Chosen-models table, one column per kept model, with each model's risk
// evaluation underneath (estimate, band histogram). `models` and `risks` are
// parallel, already truncated to the wanted top-T.
std::string model_report_text(const std::vector<SearchResult>& models,
                              const std::vector<RiskReport>& risks, const Schema& schema,
                              const SearchMeta& meta);
std::string model_report_json(const std::vector<SearchResult>& models,
                              const std::vector<RiskReport>& risks, const Schema& schema,
                              const SearchMeta& meta);

// Risk report for the selected model: totals, band table, riskiest records.
// `top` caps the per-record listing in the text form only.
std::string risk_report_text(const RiskReport& report, double threshold, std::size_t top);
std::string risk_report_json(const RiskReport& report, double threshold);

// Swap log plus the before/after population-unique estimates.
std::string swap_report_text(const ProtectResult& result, double threshold,
                             std::int64_t max_records, double estimate_before,
                             double estimate_after);
std::string swap_report_json(const ProtectResult& result, double threshold,
                             std::int64_t max_records, double estimate_before,
                             double estimate_after);

}  // namespace riskfold
