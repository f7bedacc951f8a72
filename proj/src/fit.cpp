#include "riskfold/fit.hpp"

#include <cmath>
#include <limits>

#include "riskfold/errors.hpp"

namespace riskfold {

MarginalCache::MarginalCache(const SparseTable& table) : table_(table) {}

MarginalCache::Entry& MarginalCache::get(VertexSet subset) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(subset);
    if (it != entries_.end()) return it->second;

    Entry entry;
    if (subset == 0) {
        entry.marginal = nullptr;
        entry.loglik_term = 0.0;
    } else {
        auto marg = std::make_shared<MarginalTable>(table_.marginalize(set_to_vector(subset)));
        entry.loglik_term = marg->loglik_term();
        entry.marginal = std::move(marg);
    }
    return entries_.emplace(subset, std::move(entry)).first->second;
}

std::shared_ptr<const MarginalTable> MarginalCache::marginal(VertexSet subset) {
    return get(subset).marginal;
}

double MarginalCache::loglik_term(VertexSet subset) { return get(subset).loglik_term; }

std::int64_t MarginalCache::index_space(VertexSet subset) const {
    std::int64_t space = 1;
    for (int v : set_to_vector(subset)) {
        std::int64_t card = table_.schema().cardinality(v);
        if (space > std::numeric_limits<std::int64_t>::max() / card)
            throw DomainError("df: index space of subset overflows 64 bits");
        space *= card;
    }
    return space;
}

namespace {

std::int64_t subset_space(const Schema& schema, VertexSet subset) {
    std::int64_t space = 1;
    for (int v : set_to_vector(subset)) {
        std::int64_t card = schema.cardinality(v);
        if (space > std::numeric_limits<std::int64_t>::max() / card)
            throw DomainError("df: index space of subset overflows 64 bits");
        space *= card;
    }
    return space;
}

}  // namespace

DegreesOfFreedom df(const CliqueDecomposition& dec, const Schema& schema) {
    std::int64_t raw = 0;
    for (VertexSet c : dec.cliques) raw += subset_space(schema, c);
    for (const auto& [s, nu] : dec.separators) raw -= nu * subset_space(schema, s);
    return DegreesOfFreedom{raw, raw - 1};
}

FittedModel fit(MarginalCache& cache, const Graph& g) {
    const SparseTable& table = cache.table();
    if (g.vertex_count() != table.schema().variable_count())
        throw ContractError("fit: graph order does not match schema");

    FittedModel model;
    model.graph = g;
    model.decomposition = decompose(g);  // throws ContractError if not chordal
    model.sample_size = table.record_count();

    double loglik = 0.0;
    for (VertexSet c : model.decomposition.cliques) {
        model.clique_marginals.push_back(cache.marginal(c));
        loglik += cache.loglik_term(c);
    }
    for (const auto& [s, nu] : model.decomposition.separators) {
        model.separator_marginals.push_back(cache.marginal(s));
        loglik -= nu * cache.loglik_term(s);
    }
    model.loglik = loglik;

    DegreesOfFreedom d = df(model.decomposition, table.schema());
    model.df_raw = d.raw;
    model.df_reported = d.reported;
    model.aic = -2.0 * model.loglik + 2.0 * static_cast<double>(model.df_reported);
    return model;
}

FittedModel fit(const SparseTable& table, const Graph& g) {
    MarginalCache cache(table);
    return fit(cache, g);
}

double aic_of(MarginalCache& cache, const CliqueDecomposition& dec) {
    double loglik = 0.0;
    std::int64_t raw = 0;
    for (VertexSet c : dec.cliques) {
        loglik += cache.loglik_term(c);
        raw += cache.index_space(c);
    }
    for (const auto& [s, nu] : dec.separators) {
        loglik -= nu * cache.loglik_term(s);
        raw -= nu * cache.index_space(s);
    }
    return -2.0 * loglik + 2.0 * static_cast<double>(raw - 1);
}

double mle_cell(const FittedModel& model, const Cell& cell) {
    double log_p = 0.0;
    const double n = static_cast<double>(model.sample_size);
    for (const auto& marg : model.clique_marginals) {
        std::int64_t c = marg->count_for(marg->pack(cell));
        if (c == 0) return 0.0;
        log_p += std::log(static_cast<double>(c) / n);
    }
    std::size_t k = 0;
    for (const auto& [s, nu] : model.decomposition.separators) {
        const auto& marg = model.separator_marginals[k++];
        if (!marg) continue;  // empty separator: r = 1
        std::int64_t c = marg->count_for(marg->pack(cell));
        // a separator sits inside a clique, so its marginal is positive here
        log_p -= nu * std::log(static_cast<double>(c) / n);
    }
    double p = std::exp(log_p);
    return p > 1.0 ? 1.0 : p;
}

double loglik_from_marginals(const FittedModel& model) {
    double sum = 0.0;
    for (const auto& marg : model.clique_marginals) sum += marg->loglik_term();
    std::size_t k = 0;
    for (const auto& [s, nu] : model.decomposition.separators) {
        const auto& marg = model.separator_marginals[k++];
        if (!marg) continue;
        sum -= nu * marg->loglik_term();
    }
    return sum;
}

double loglik_per_record(const FittedModel& model, const SparseTable& table) {
    double sum = 0.0;
    for (std::size_t k = 0; k < table.distinct_cell_count(); ++k) {
        double p = mle_cell(model, table.distinct_cells()[k]);
        sum += static_cast<double>(table.cell_counts()[k]) * std::log(p);
    }
    return sum;
}

}  // namespace riskfold
