#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "riskfold/fit.hpp"
#include "riskfold/risk.hpp"
#include "riskfold/sparse_table.hpp"

namespace riskfold {

// Two maximal cliques of the model whose intersection is one of its
// separators. Every such triple licenses a family of marginal-preserving
// record exchanges.
struct SwapTriple {
    VertexSet clique_a = 0;   // C
    VertexSet clique_b = 0;   // C'
    VertexSet separator = 0;  // S = C ∩ C'

    bool operator==(const SwapTriple&) const = default;
};

// One unordered clique pair per triple, pairs in decomposition order.
std::vector<SwapTriple> enumerate_triples(const CliqueDecomposition& dec);

// A concrete exchange: records i and j trade coordinates on side_a, the union
// of the components of G∖S that meet C∖S. Both records agree on S, so every
// clique's marginal contribution is permuted, never changed.
struct SwapPlan {
    std::int64_t record_i = 0;
    std::int64_t record_j = 0;
    SwapTriple triple;
    VertexSet side_a = 0;
    Cell before_i, before_j;
    Cell after_i, after_j;
};

// First (j, triple) in record-major order whose cells satisfy the
// swappability condition against record i: equal on S, different on C,
// different on C'. Absent when no pair qualifies.
std::optional<SwapPlan> find_partner(const SparseTable& table, const FittedModel& model,
                                     std::int64_t record, const std::vector<SwapTriple>& triples);
std::optional<SwapPlan> find_partner(const SparseTable& table, const FittedModel& model,
                                     std::int64_t record);

// New table with the plan's exchange applied. Exchanging is its own inverse:
// a table already holding the plan's after-cells is swapped back. Any other
// mismatch with the plan means the table moved underneath it → ConflictError.
SparseTable apply_swap(const SparseTable& table, const SwapPlan& plan);

struct SwapOutcome {
    std::int64_t record = 0;
    double p_hat = 0.0;       // estimated cell probability that made it risky
    double post_p_hat = 0.0;  // p̂ of the record's cell after the attempt
    bool swapped = false;
    // set when swapped
    std::int64_t partner = -1;
    SwapTriple triple;
    VertexSet side_a = 0;
};

struct ProtectResult {
    SparseTable table;
    std::vector<SwapOutcome> log;
    std::int64_t swapped = 0;
    std::int64_t unswappable = 0;
};

// Walks the risky records (ascending p̂, capped at max_records unless that is
// negative), swapping each against the current table where a partner exists.
// Verifies afterwards that every clique marginal of the model still matches
// the input table exactly.
ProtectResult protect(const SparseTable& table, const FittedModel& model,
                      const RiskReport& report, double threshold, std::int64_t max_records = -1);

// Order-independent equality of two marginal maps over the same subset.
bool same_marginal(const MarginalTable& a, const MarginalTable& b);

}  // namespace riskfold
