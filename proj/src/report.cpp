#include "riskfold/report.hpp"

#include <cstdarg>
#include <cstdio>
#include <vector>

#include <json.hpp>

namespace riskfold {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(const char* pattern, ...) {
    va_list args;
    va_start(args, pattern);
    va_list copy;
    va_copy(copy, args);
    const int needed = std::vsnprintf(nullptr, 0, pattern, copy);
    va_end(copy);
    std::vector<char> buf(static_cast<std::size_t>(needed) + 1);
    std::vsnprintf(buf.data(), buf.size(), pattern, args);
    va_end(args);
    return std::string(buf.data(), static_cast<std::size_t>(needed));
}

std::string pad_left(const std::string& s, int width) {
    return fmt("%*s", width, s.c_str());
}

std::string band_label(int band) {
    return fmt("10^-%d to 10^-%d", band + 2, band + 3);
}

std::string cliques_text(const std::vector<VertexSet>& sets) {
    std::string out;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        if (k) out += ",";
        out += set_text(sets[k]);
    }
    return out;
}

constexpr int kLabelWidth = -36;  // left aligned
constexpr int kColWidth = 14;

std::string legend(const Schema& schema) {
    std::string out = "variables:";
    for (int v = 0; v < schema.variable_count(); ++v)
        out += fmt(" %d=%s(%d)", v + 1, schema.variable(v).name.c_str(), schema.cardinality(v));
    return out + "\n";
}

ordered_json set_json(VertexSet s) {
    ordered_json arr = ordered_json::array();
    for (int v : set_to_vector(s)) arr.push_back(v);
    return arr;
}

ordered_json bands_json(const RiskReport& risk) {
    ordered_json bands;
    bands["above"] = risk.above_bands;
    ordered_json decades = ordered_json::array();
    for (std::int64_t c : risk.band_histogram) decades.push_back(c);
    bands["decades"] = decades;
    bands["below"] = risk.below_bands;
    return bands;
}

ordered_json risk_summary_json(const RiskReport& risk) {
    ordered_json out;
    out["sample_uniques"] = risk.entries.size();
    out["estimated_population_uniques"] = risk.estimate_total;
    out["bands"] = bands_json(risk);
    return out;
}

ordered_json triple_json(const SwapTriple& t) {
    ordered_json out;
    out["clique_a"] = set_json(t.clique_a);
    out["clique_b"] = set_json(t.clique_b);
    out["separator"] = set_json(t.separator);
    return out;
}

}  // namespace

std::string set_text(VertexSet s) {
    std::string out = "{";
    bool first = true;
    for (int v : set_to_vector(s)) {
        if (!first) out += ",";
        out += std::to_string(v + 1);
        first = false;
    }
    return out + "}";
}

std::string model_report_text(const std::vector<SearchResult>& models,
                              const std::vector<RiskReport>& risks, const Schema& schema,
                              const SearchMeta& meta) {
    std::string out = "chosen models\n=============\n";
    out += fmt("restarts: %d (seed %llu, coin %.2f); distinct local optima kept: %zu\n",
               meta.restarts, static_cast<unsigned long long>(meta.seed), meta.coin_prob,
               models.size());
    out += legend(schema);
    out += "\n";
    if (models.empty()) return out + "no models\n";

    auto row = [&](const char* label, auto value_of) {
        std::string line = fmt("%*s", kLabelWidth, label);
        for (std::size_t k = 0; k < models.size(); ++k)
            line += pad_left(value_of(k), kColWidth);
        return line + "\n";
    };

    std::string head = fmt("%*s", kLabelWidth, "");
    for (std::size_t k = 0; k < models.size(); ++k)
        head += pad_left(fmt("model %zu", k + 1), kColWidth);
    out += head + "\n";
    out += row("number of times chosen",
               [&](std::size_t k) { return fmt("%d", models[k].times_chosen); });
    out += row("AIC/2", [&](std::size_t k) { return fmt("%.2f", models[k].model.aic_half()); });
    out += row("log likelihood", [&](std::size_t k) { return fmt("%.2f", models[k].model.loglik); });
    out += row("degrees of freedom", [&](std::size_t k) {
        return fmt("%lld", static_cast<long long>(models[k].model.df_reported));
    });
    out += row("estimated # of population uniques",
               [&](std::size_t k) { return fmt("%.3f", risks[k].estimate_total); });
    out += row("sample uniques",
               [&](std::size_t k) { return fmt("%zu", risks[k].entries.size()); });
    out += "\n";

    for (std::size_t k = 0; k < models.size(); ++k) {
        const auto& dec = models[k].model.decomposition;
        out += fmt("model %zu: cliques    %s\n", k + 1, cliques_text(dec.cliques).c_str());
        out += fmt("         separators %s\n", cliques_text(dec.seq_separators).c_str());
    }
    out += "\n";

    out += fmt("%*s", kLabelWidth, "cell probability estimates");
    for (std::size_t k = 0; k < models.size(); ++k) out += pad_left("frequencies", kColWidth);
    out += "\n";
    bool any_above = false, any_below = false;
    for (const RiskReport& risk : risks) {
        any_above = any_above || risk.above_bands > 0;
        any_below = any_below || risk.below_bands > 0;
    }
    if (any_above)
        out += row("> 10^-2", [&](std::size_t k) {
            return fmt("%lld", static_cast<long long>(risks[k].above_bands));
        });
    for (int band = 0; band < kRiskBandCount; ++band)
        out += row(band_label(band).c_str(), [&](std::size_t k) {
            return fmt("%lld", static_cast<long long>(risks[k].band_histogram[static_cast<std::size_t>(band)]));
        });
    if (any_below)
        out += row("<= 10^-10", [&](std::size_t k) {
            return fmt("%lld", static_cast<long long>(risks[k].below_bands));
        });
    return out;
}

std::string model_report_json(const std::vector<SearchResult>& models,
                              const std::vector<RiskReport>& risks, const Schema& schema,
                              const SearchMeta& meta) {
    ordered_json doc;
    doc["search"] = {{"seed", meta.seed},
                     {"restarts", meta.restarts},
                     {"coin_prob", meta.coin_prob},
                     {"restarts_used", meta.restarts_used},
                     {"distinct_models", models.size()}};
    ordered_json vars = ordered_json::array();
    for (int v = 0; v < schema.variable_count(); ++v)
        vars.push_back({{"index", v},
                        {"name", schema.variable(v).name},
                        {"cardinality", schema.cardinality(v)}});
    doc["variables"] = vars;

    ordered_json list = ordered_json::array();
    for (std::size_t k = 0; k < models.size(); ++k) {
        const SearchResult& found = models[k];
        ordered_json entry;
        entry["rank"] = k + 1;
        entry["times_chosen"] = found.times_chosen;
        entry["first_restart"] = found.first_restart;
        entry["aic"] = found.model.aic;
        entry["aic_half"] = found.model.aic_half();
        entry["log_likelihood"] = found.model.loglik;
        entry["df"] = found.model.df_reported;
        entry["df_raw"] = found.model.df_raw;
        ordered_json edges = ordered_json::array();
        for (auto [u, v] : found.model.graph.edges()) edges.push_back({u, v});
        entry["edges"] = edges;
        ordered_json cliques = ordered_json::array();
        for (VertexSet c : found.model.decomposition.cliques) cliques.push_back(set_json(c));
        entry["cliques"] = cliques;
        ordered_json seps = ordered_json::array();
        for (const auto& [s, count] : found.model.decomposition.separators)
            seps.push_back({{"vars", set_json(s)}, {"multiplicity", count}});
        entry["separators"] = seps;
        ordered_json steps = ordered_json::array();
        for (const SearchStep& step : found.trace)
            steps.push_back({{"edge", {step.edge.first, step.edge.second}}, {"aic", step.aic}});
        entry["trace"] = {{"start_aic", found.start_aic}, {"steps", steps}};
        entry["risk"] = risk_summary_json(risks[k]);
        list.push_back(entry);
    }
    doc["models"] = list;
    return doc.dump(2) + "\n";
}

std::string risk_report_text(const RiskReport& report, double threshold, std::size_t top) {
    std::string out = "identification risk\n===================\n";
    out += fmt("sample size: %lld    population: %lld\n",
               static_cast<long long>(report.sample_size),
               static_cast<long long>(report.population));
    out += fmt("sample uniques: %zu\n", report.entries.size());
    out += fmt("estimated # of population uniques: %.3f\n\n", report.estimate_total);

    out += fmt("%*s%s\n", kLabelWidth, "cell probability estimates", "frequencies");
    auto band_row = [&](const std::string& label, std::int64_t count) {
        return fmt("%*s", kLabelWidth, label.c_str()) +
               pad_left(fmt("%lld", static_cast<long long>(count)), 11) + "\n";
    };
    if (report.above_bands > 0) out += band_row("> 10^-2", report.above_bands);
    for (int band = 0; band < kRiskBandCount; ++band)
        out += band_row(band_label(band), report.band_histogram[static_cast<std::size_t>(band)]);
    if (report.below_bands > 0) out += band_row("<= 10^-10", report.below_bands);
    out += "\n";

    const auto risky = risky_records(report, threshold);
    out += fmt("records with cell probability <= %.1e: %zu\n", threshold, risky.size());
    const std::size_t shown = risky.size() < top ? risky.size() : top;
    if (shown < risky.size()) out += fmt("(first %zu shown)\n", shown);
    if (shown > 0)
        out += fmt("%10s %14s %18s\n", "record", "p_hat", "pop_unique_prob");
    for (std::size_t k = 0; k < shown; ++k)
        out += fmt("%10lld %14.6e %18.9f\n", static_cast<long long>(risky[k].record),
                   risky[k].p_hat, risky[k].pop_unique);
    return out;
}

std::string risk_report_json(const RiskReport& report, double threshold) {
    ordered_json doc;
    doc["sample_size"] = report.sample_size;
    doc["population"] = report.population;
    doc["threshold"] = threshold;
    doc["sample_uniques"] = report.entries.size();
    doc["estimated_population_uniques"] = report.estimate_total;
    doc["bands"] = bands_json(report);
    ordered_json entries = ordered_json::array();
    for (const RiskEntry& entry : report.entries) {
        ordered_json cell = ordered_json::array();
        for (std::uint16_t v : entry.cell) cell.push_back(v);
        entries.push_back({{"record", entry.record},
                           {"cell", cell},
                           {"p_hat", entry.p_hat},
                           {"pop_unique_prob", entry.pop_unique}});
    }
    doc["entries"] = entries;
    ordered_json risky = ordered_json::array();
    for (const RiskEntry& entry : risky_records(report, threshold)) risky.push_back(entry.record);
    doc["risky_records"] = risky;
    return doc.dump(2) + "\n";
}

std::string swap_report_text(const ProtectResult& result, double threshold,
                             std::int64_t max_records, double estimate_before,
                             double estimate_after) {
    std::string out = "disclosure control\n==================\n";
    out += fmt("threshold: %.1e    record cap: ", threshold);
    out += max_records < 0 ? "none" : fmt("%lld", static_cast<long long>(max_records));
    out += fmt("\nattempted: %zu    swapped: %lld    unswappable: %lld\n", result.log.size(),
               static_cast<long long>(result.swapped),
               static_cast<long long>(result.unswappable));
    out += fmt("estimated # of population uniques: %.3f before, %.3f after\n\n", estimate_before,
               estimate_after);
    for (const SwapOutcome& o : result.log) {
        if (o.swapped) {
            out += fmt("record %lld (p_hat %.3e): swapped with %lld; C=%s C'=%s S=%s; exchanged %s; new p_hat %.3e\n",
                       static_cast<long long>(o.record), o.p_hat,
                       static_cast<long long>(o.partner), set_text(o.triple.clique_a).c_str(),
                       set_text(o.triple.clique_b).c_str(), set_text(o.triple.separator).c_str(),
                       set_text(o.side_a).c_str(), o.post_p_hat);
        } else {
            out += fmt("record %lld (p_hat %.3e): no partner found; the check is sufficient, "
                       "not necessary, so a swap may still exist outside it\n",
                       static_cast<long long>(o.record), o.p_hat);
        }
    }
    if (!result.log.empty()) out += "\nall clique marginals preserved\n";
    return out;
}

std::string swap_report_json(const ProtectResult& result, double threshold,
                             std::int64_t max_records, double estimate_before,
                             double estimate_after) {
    ordered_json doc;
    doc["threshold"] = threshold;
    doc["max_records"] = max_records;
    doc["attempted"] = result.log.size();
    doc["swapped"] = result.swapped;
    doc["unswappable"] = result.unswappable;
    doc["estimated_population_uniques"] = {{"before", estimate_before},
                                           {"after", estimate_after}};
    ordered_json log = ordered_json::array();
    for (const SwapOutcome& o : result.log) {
        ordered_json entry;
        entry["record"] = o.record;
        entry["p_hat"] = o.p_hat;
        entry["swapped"] = o.swapped;
        if (o.swapped) {
            entry["partner"] = o.partner;
            entry["triple"] = triple_json(o.triple);
            entry["exchanged"] = set_json(o.side_a);
        }
        entry["post_p_hat"] = o.post_p_hat;
        log.push_back(entry);
    }
    doc["log"] = log;
    return doc.dump(2) + "\n";
}

}  // namespace riskfold
