#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <unordered_map>
#include <vector>

#include "riskfold/schema.hpp"

namespace riskfold {

// One record's category indices, one entry per variable.
using Cell = std::vector<std::uint16_t>;

struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (std::uint16_t v : c) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// Marginal counts over a variable subset. Cells are packed mixed-radix into
// uint64 keys; entries keep first-occurrence order so every pass over the
// table is reproducible, including floating-point reductions built on top.
class MarginalTable {
public:
    MarginalTable(std::vector<int> subset, std::vector<std::int64_t> radix_cards);

    const std::vector<int>& subset() const { return subset_; }
    std::int64_t total() const { return total_; }
    std::size_t size() const { return keys_.size(); }
    const std::vector<std::uint64_t>& keys() const { return keys_; }
    const std::vector<std::int64_t>& counts() const { return counts_; }

    void add(std::uint64_t key, std::int64_t count);
    // Count for a packed key, 0 when the marginal cell is unobserved.
    std::int64_t count_for(std::uint64_t key) const;

    // Packs the subset coordinates of a full cell into this table's key space.
    std::uint64_t pack(const Cell& full_cell) const;
    // Inverse of pack, restricted to the subset (same order as subset()).
    std::vector<int> unpack(std::uint64_t key) const;

    // Sum over entries of n(i_a) * log(n(i_a) / total), the per-subset
    // log-likelihood contribution. Fixed summation order.
    double loglik_term() const;

private:
    std::vector<int> subset_;              // sorted variable ids
    std::vector<std::int64_t> radix_;      // cardinality per subset position
    std::vector<std::uint64_t> keys_;      // first-occurrence order
    std::vector<std::int64_t> counts_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    std::int64_t total_ = 0;
};

// frequency-of-frequencies: size k -> number of occupied cells with count k
using SizeIndexTable = std::map<std::int64_t, std::int64_t>;

// Sparse multiway contingency table plus the record list it was built from.
// Immutable after construction; reads are safe from any number of threads.
class SparseTable {
public:
    SparseTable(Schema schema, std::vector<Cell> records);

    const Schema& schema() const { return schema_; }
    std::int64_t record_count() const { return static_cast<std::int64_t>(records_.size()); }
    const std::vector<Cell>& records() const { return records_; }
    const Cell& record(std::int64_t row) const { return records_.at(static_cast<std::size_t>(row)); }

    // Occupied cells in first-occurrence order with their counts and the row
    // where each first appeared.
    std::size_t distinct_cell_count() const { return cells_.size(); }
    const std::vector<Cell>& distinct_cells() const { return cells_; }
    const std::vector<std::int64_t>& cell_counts() const { return counts_; }
    const std::vector<std::int64_t>& first_rows() const { return first_rows_; }

    std::int64_t count_for(const Cell& cell) const;  // 0 for unoccupied

    MarginalTable marginalize(const std::vector<int>& subset) const;
    SizeIndexTable size_indices() const;
    // Cells with count exactly 1, in first-occurrence record order.
    std::vector<Cell> sample_uniques() const;

private:
    Schema schema_;
    std::vector<Cell> records_;
    std::vector<Cell> cells_;
    std::vector<std::int64_t> counts_;
    std::vector<std::int64_t> first_rows_;
    std::unordered_map<Cell, std::size_t, CellHash> cell_index_;
};

// Parses CSV microdata (one record per line, comma-separated raw codes, no
// header unless skip_header). Codes resolve through the schema dictionaries,
// falling back to in-range integers.
SparseTable ingest_csv(std::istream& in, const Schema& schema, bool skip_header = false);

// First-pass code inference: for every variable without a dictionary whose raw
// codes are not already dense 0-based integers, builds one from the distinct
// codes seen in the data (numeric sort when all codes parse as integers,
// lexicographic otherwise).
Schema infer_code_dicts(std::istream& in, const Schema& schema, bool skip_header = false);

// Row-for-row CSV emission using the schema's raw code labels.
void write_csv(std::ostream& out, const SparseTable& table);

}  // namespace riskfold
