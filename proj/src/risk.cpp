#include "riskfold/risk.hpp"

#include <algorithm>
#include <cmath>

#include "riskfold/errors.hpp"

namespace riskfold {

double pop_unique_prob(double p_hat, std::int64_t population, std::int64_t sample) {
    if (!(p_hat >= 0.0) || !(p_hat <= 1.0))
        throw DomainError("cell probability must lie in [0, 1], got " + std::to_string(p_hat));
    if (sample < 0 || population < sample)
        throw DomainError("population size must be at least the sample size");
    const auto remaining = population - sample;
    if (remaining == 0) return 1.0;  // nobody left to collide with
    if (p_hat >= 1.0) return 0.0;
    return std::exp(static_cast<double>(remaining) * std::log1p(-p_hat));
}

RiskReport estimate_population_uniques(const SparseTable& table, const FittedModel& model) {
    RiskReport report;
    report.sample_size = table.record_count();
    report.population = table.schema().population_size();

    const auto& cells = table.distinct_cells();
    const auto& counts = table.cell_counts();
    const auto& rows = table.first_rows();
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (counts[k] != 1) continue;
        RiskEntry entry;
        entry.record = rows[k];
        entry.cell = cells[k];
        entry.p_hat = mle_cell(model, cells[k]);
        // An observed cell has every clique marginal >= 1, so p̂ > 0 always.
        if (!(entry.p_hat > 0.0))
            throw ContractError("sample unique scored a zero cell probability");
        entry.pop_unique = pop_unique_prob(entry.p_hat, report.population, report.sample_size);
        report.estimate_total += entry.pop_unique;

        if (entry.p_hat > kRiskBandTop) {
            ++report.above_bands;
        } else if (entry.p_hat <= kRiskBandBottom) {
            ++report.below_bands;
        } else {
            // Band b covers (10^-(b+3), 10^-(b+2)].
            int band = static_cast<int>(std::floor(-std::log10(entry.p_hat))) - 2;
            if (band < 0) band = 0;
            if (band >= kRiskBandCount) band = kRiskBandCount - 1;
            // Guard against log10 landing on the wrong side of a decade edge.
            while (band > 0 && entry.p_hat > std::pow(10.0, -(band + 2))) --band;
            while (band + 1 < kRiskBandCount && entry.p_hat <= std::pow(10.0, -(band + 3))) ++band;
            ++report.band_histogram[static_cast<std::size_t>(band)];
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

std::vector<RiskEntry> risky_records(const RiskReport& report, double threshold) {
    if (!(threshold > 0.0))
        throw DomainError("risk threshold must be positive");
    std::vector<RiskEntry> out;
    for (const auto& entry : report.entries)
        if (entry.p_hat <= threshold) out.push_back(entry);
    std::sort(out.begin(), out.end(), [](const RiskEntry& a, const RiskEntry& b) {
        if (a.p_hat != b.p_hat) return a.p_hat < b.p_hat;
        return a.record < b.record;
    });
    return out;
}

}  // namespace riskfold
