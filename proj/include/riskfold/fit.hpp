#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "riskfold/graph.hpp"
#include "riskfold/sparse_table.hpp"

namespace riskfold {

// Per-subset statistics shared across model evaluations. A subset's marginal
// table, log-likelihood term, and index-space size depend only on the data,
// so the hill climb reuses them heavily across candidate graphs. Thread-safe.
class MarginalCache {
public:
    explicit MarginalCache(const SparseTable& table);

    const SparseTable& table() const { return table_; }
    std::shared_ptr<const MarginalTable> marginal(VertexSet subset);
    // Σ_{i_a} n(i_a) log r(i_a) for the subset (0 for the empty set).
    double loglik_term(VertexSet subset);
    // Π_{δ∈a} I_δ, 1 for the empty set. Throws DomainError past int64.
    std::int64_t index_space(VertexSet subset) const;

private:
    struct Entry {
        std::shared_ptr<const MarginalTable> marginal;
        double loglik_term = 0.0;
    };
    Entry& get(VertexSet subset);

    const SparseTable& table_;
    std::unordered_map<VertexSet, Entry> entries_;
    std::mutex mutex_;
};

struct FittedModel {
    Graph graph;
    CliqueDecomposition decomposition;
    // parallel to decomposition.cliques
    std::vector<std::shared_ptr<const MarginalTable>> clique_marginals;
    // parallel to decomposition.separators (empty separator has no table)
    std::vector<std::shared_ptr<const MarginalTable>> separator_marginals;
    double loglik = 0.0;
    std::int64_t df_raw = 0;
    std::int64_t df_reported = 0;
    double aic = 0.0;
    std::int64_t sample_size = 0;

    double aic_half() const { return aic / 2.0; }
};

// Fits the decomposable model of a chordal graph: clique/separator marginals,
// closed-form log likelihood, degrees of freedom, AIC.
FittedModel fit(const SparseTable& table, const Graph& g);
FittedModel fit(MarginalCache& cache, const Graph& g);

// Closed-form MLE cell probability Π_C r(i_C) / Π_S r(i_S)^ν(S), evaluated in
// log space from the marginal maps; 0 when any clique marginal is unobserved.
double mle_cell(const FittedModel& model, const Cell& cell);

// Degrees of freedom Σ_C Π I_δ − Σ_S ν(S) Π I_δ, and the reported value one
// less (the sum-to-one constraint).
struct DegreesOfFreedom {
    std::int64_t raw = 0;
    std::int64_t reported = 0;
};
DegreesOfFreedom df(const CliqueDecomposition& dec, const Schema& schema);

// Marginal-route log likelihood: Σ_C Σ n(i_C) log r(i_C) − Σ_S ν Σ n(i_S) log r(i_S).
double loglik_from_marginals(const FittedModel& model);

// Record-route log likelihood Σ_{occupied i} n(i) log p̂(i); the independent
// cross-check of the marginal route.
double loglik_per_record(const FittedModel& model, const SparseTable& table);

// AIC of a candidate graph without materializing the fitted model.
double aic_of(MarginalCache& cache, const CliqueDecomposition& dec);

}  // namespace riskfold
