#pragma once

#include <cstdint>
#include <vector>

#include "riskfold/graph.hpp"
#include "riskfold/sparse_table.hpp"

namespace riskfold {

// Brute-force references: a densified table for scaling-based fits, exhaustive
// chordal-graph counting, and a synthetic-data generator. None of these scale;
// they exist to check the fast paths against something independent.

// Full count array over the index space, variable m-1 varying fastest.
// Capped at 1e6 cells.
class DenseTable {
public:
    explicit DenseTable(std::vector<std::int64_t> cardinalities);
    static DenseTable from_sparse(const SparseTable& table);

    int variable_count() const { return static_cast<int>(cards_.size()); }
    const std::vector<std::int64_t>& cardinalities() const { return cards_; }
    std::int64_t cell_count() const { return static_cast<std::int64_t>(counts_.size()); }
    std::int64_t total() const { return total_; }

    std::int64_t offset_of(const Cell& cell) const;
    Cell cell_at(std::int64_t offset) const;
    std::int64_t count_at(std::int64_t offset) const { return counts_[static_cast<std::size_t>(offset)]; }
    void add(const Cell& cell, std::int64_t count = 1);

private:
    std::vector<std::int64_t> cards_;
    std::vector<std::int64_t> strides_;
    std::vector<std::int64_t> counts_;
    std::int64_t total_ = 0;
};

// Iterative proportional scaling of a probability array to the table's clique
// marginals, from a uniform start, until every fitted marginal matches the
// data marginal within tol. Indexed like the dense table.
std::vector<double> ipf_fit(const DenseTable& dense, const std::vector<VertexSet>& cliques,
                            double tol = 1e-10, int max_sweeps = 10000);

// Number of labeled chordal graphs on m vertices, by testing all
// 2^(m(m-1)/2) labeled graphs. m is capped at 7.
std::int64_t count_chordal(int m, int threads = 1);

// n records drawn i.i.d. from a randomly parameterized distribution that is
// Markov with respect to the graph the cliques induce. The schema's
// population size is `population` when nonnegative, else max(n, 1).
SparseTable synth_table(const std::vector<VertexSet>& cliques, const std::vector<int>& cardinalities,
                        std::int64_t n, std::uint64_t seed, std::int64_t population = -1);

}  // namespace riskfold
