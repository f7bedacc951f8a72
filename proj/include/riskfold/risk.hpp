#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "riskfold/fit.hpp"
#include "riskfold/sparse_table.hpp"

namespace riskfold {

// Probability that none of the remaining N - n individuals falls into a cell
// with estimated probability p_hat: (1 - p_hat)^(N - n), evaluated as
// exp((N - n) * log1p(-p_hat)).
double pop_unique_prob(double p_hat, std::int64_t population, std::int64_t sample);

struct RiskEntry {
    std::int64_t record = 0;  // row of the sample-unique record
    Cell cell;
    double p_hat = 0.0;
    double pop_unique = 0.0;
};

// Decade bands for p̂, from (1e-3, 1e-2] down to (1e-10, 1e-9].
inline constexpr int kRiskBandCount = 8;
inline constexpr double kRiskBandTop = 1e-2;
inline constexpr double kRiskBandBottom = 1e-10;

struct RiskReport {
    std::vector<RiskEntry> entries;  // one per sample unique, record order
    double estimate_total = 0.0;     // Σ pop_unique over sample uniques
    std::array<std::int64_t, kRiskBandCount> band_histogram{};
    std::int64_t above_bands = 0;  // p̂ > 1e-2
    std::int64_t below_bands = 0;  // p̂ <= 1e-10
    std::int64_t sample_size = 0;
    std::int64_t population = 0;
};

// Per-record risk of every sample unique under the fitted model, plus the
// population-unique count estimate and the banded histogram of p̂.
RiskReport estimate_population_uniques(const SparseTable& table, const FittedModel& model);

// Entries with p̂ <= threshold, ascending by p̂, ties by record index.
std::vector<RiskEntry> risky_records(const RiskReport& report, double threshold);

}  // namespace riskfold
