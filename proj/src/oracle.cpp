#include "riskfold/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "riskfold/errors.hpp"
#include "riskfold/parallel.hpp"
#include "riskfold/rand.hpp"

namespace riskfold {

namespace {
constexpr std::int64_t kDenseCellCap = 1'000'000;
}

DenseTable::DenseTable(std::vector<std::int64_t> cardinalities) : cards_(std::move(cardinalities)) {
    if (cards_.empty()) throw DomainError("dense table needs at least one variable");
    std::int64_t cells = 1;
    for (std::int64_t card : cards_) {
        if (card < 1) throw DomainError("dense table cardinalities must be positive");
        if (cells > kDenseCellCap / card)
            throw DomainError("index space too large to densify (cap " +
                              std::to_string(kDenseCellCap) + " cells)");
        cells *= card;
    }
    strides_.assign(cards_.size(), 1);
    for (std::size_t v = cards_.size() - 1; v-- > 0;)
        strides_[v] = strides_[v + 1] * cards_[v + 1];
    counts_.assign(static_cast<std::size_t>(cells), 0);
}

DenseTable DenseTable::from_sparse(const SparseTable& table) {
    std::vector<std::int64_t> cards;
    for (const Variable& var : table.schema().variables()) cards.push_back(var.cardinality);
    DenseTable dense(std::move(cards));
    const auto& cells = table.distinct_cells();
    const auto& counts = table.cell_counts();
    for (std::size_t k = 0; k < cells.size(); ++k) dense.add(cells[k], counts[k]);
    return dense;
}

std::int64_t DenseTable::offset_of(const Cell& cell) const {
    if (cell.size() != cards_.size()) throw ContractError("cell arity mismatch");
    std::int64_t offset = 0;
    for (std::size_t v = 0; v < cards_.size(); ++v) {
        if (cell[v] >= cards_[v]) throw ContractError("cell coordinate out of range");
        offset += strides_[v] * cell[v];
    }
    return offset;
}

Cell DenseTable::cell_at(std::int64_t offset) const {
    Cell cell(cards_.size());
    for (std::size_t v = 0; v < cards_.size(); ++v) {
        cell[v] = static_cast<std::uint16_t>((offset / strides_[v]) % cards_[v]);
    }
    return cell;
}

void DenseTable::add(const Cell& cell, std::int64_t count) {
    counts_[static_cast<std::size_t>(offset_of(cell))] += count;
    total_ += count;
}

std::vector<double> ipf_fit(const DenseTable& dense, const std::vector<VertexSet>& cliques,
                            double tol, int max_sweeps) {
    const auto cells = static_cast<std::size_t>(dense.cell_count());
    const int m = dense.variable_count();
    if (dense.total() < 1) throw DomainError("cannot fit an empty table");
    if (cliques.empty()) throw DomainError("need at least one clique");
    for (VertexSet c : cliques) {
        if (set_size(c) == 0) throw DomainError("cliques must be nonempty");
        if (m < 64 && (c >> m) != 0)
            throw DomainError("clique names a variable outside the table");
    }

    // Per clique: group index of every cell (mixed radix over the clique's
    // variables) and the data's target marginal, as probabilities.
    struct Block {
        std::vector<std::int64_t> group_of;
        std::vector<double> target;
    };
    std::vector<Block> blocks;
    for (VertexSet c : cliques) {
        Block block;
        const auto vars = set_to_vector(c);
        std::int64_t groups = 1;
        for (int v : vars) groups *= dense.cardinalities()[static_cast<std::size_t>(v)];
        block.group_of.resize(cells);
        block.target.assign(static_cast<std::size_t>(groups), 0.0);
        for (std::size_t k = 0; k < cells; ++k) {
            const Cell cell = dense.cell_at(static_cast<std::int64_t>(k));
            std::int64_t g = 0;
            for (int v : vars)
                g = g * dense.cardinalities()[static_cast<std::size_t>(v)] +
                    cell[static_cast<std::size_t>(v)];
            block.group_of[k] = g;
            block.target[static_cast<std::size_t>(g)] +=
                static_cast<double>(dense.count_at(static_cast<std::int64_t>(k)));
        }
        for (double& t : block.target) t /= static_cast<double>(dense.total());
        blocks.push_back(std::move(block));
    }

    std::vector<double> p(cells, 1.0 / static_cast<double>(cells));
    std::vector<double> fitted;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0.0;
        for (const Block& block : blocks) {
            fitted.assign(block.target.size(), 0.0);
            for (std::size_t k = 0; k < cells; ++k)
                fitted[static_cast<std::size_t>(block.group_of[k])] += p[k];
            for (std::size_t g = 0; g < fitted.size(); ++g)
                worst = std::max(worst, std::abs(fitted[g] - block.target[g]));
            for (std::size_t k = 0; k < cells; ++k) {
                const auto g = static_cast<std::size_t>(block.group_of[k]);
                if (block.target[g] == 0.0)
                    p[k] = 0.0;
                else if (fitted[g] > 0.0)
                    p[k] *= block.target[g] / fitted[g];
            }
        }
        if (worst < tol) return p;
    }
    throw ConvergenceError("proportional scaling did not reach tolerance " + std::to_string(tol) +
                           " within " + std::to_string(max_sweeps) + " sweeps");
}

std::int64_t count_chordal(int m, int threads) {
    if (m < 1 || m > 7)
        throw UsageError("count-chordal supports 1 to 7 variables, got " + std::to_string(m));
    const int edge_slots = m * (m - 1) / 2;
    const std::uint64_t graphs = std::uint64_t{1} << edge_slots;

    std::vector<std::pair<int, int>> slot;
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v) slot.emplace_back(u, v);

    const std::size_t chunks = threads > 1 ? static_cast<std::size_t>(threads) * 8 : 1;
    std::vector<std::int64_t> per_chunk(chunks, 0);
    parallel_for(chunks, threads, [&](std::size_t chunk) {
        const std::uint64_t lo = graphs * chunk / chunks;
        const std::uint64_t hi = graphs * (chunk + 1) / chunks;
        std::int64_t found = 0;
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            Graph g(m);
            for (int e = 0; e < edge_slots; ++e)
                if ((mask >> e) & 1u) g.add_edge(slot[static_cast<std::size_t>(e)].first,
                                                 slot[static_cast<std::size_t>(e)].second);
            if (mcs(g).is_chordal) ++found;
        }
        per_chunk[chunk] = found;
    });

    std::int64_t total = 0;
    for (std::int64_t c : per_chunk) total += c;
    return total;
}

SparseTable synth_table(const std::vector<VertexSet>& cliques, const std::vector<int>& cardinalities,
                        std::int64_t n, std::uint64_t seed, std::int64_t population) {
    const int m = static_cast<int>(cardinalities.size());
    if (m < 1 || m > 64) throw DomainError("synthetic schema needs 1 to 64 variables");
    for (int card : cardinalities)
        if (card < 1 || card > 0xFFFF) throw DomainError("cardinalities must be in [1, 65535]");
    if (n < 0) throw DomainError("record count must be nonnegative");

    Graph g(m);
    for (VertexSet c : cliques) {
        if (m < 64 && (c >> m) != 0) throw DomainError("clique names a variable outside the schema");
        const auto vars = set_to_vector(c);
        for (std::size_t a = 0; a < vars.size(); ++a)
            for (std::size_t b = a + 1; b < vars.size(); ++b) g.add_edge(vars[a], vars[b]);
    }
    if (!is_chordal(g)) throw DomainError("cliques do not induce a decomposable model");
    const CliqueDecomposition dec = decompose(g);

    // One conditional block per clique of a perfect sequence: a probability
    // vector over the clique's new variables for every separator setting.
    struct Block {
        std::vector<int> sep_vars, new_vars;
        std::int64_t new_space = 1;
        std::vector<double> probs;  // sep-major, new-minor
    };
    std::mt19937_64 rng(seed);
    std::vector<Block> blocks;
    for (std::size_t j = 0; j < dec.cliques.size(); ++j) {
        const VertexSet sep = j == 0 ? 0 : dec.seq_separators[j - 1];
        Block block;
        block.sep_vars = set_to_vector(sep);
        block.new_vars = set_to_vector(dec.cliques[j] & ~sep);
        std::int64_t sep_space = 1;
        for (int v : block.sep_vars) sep_space *= cardinalities[static_cast<std::size_t>(v)];
        for (int v : block.new_vars) block.new_space *= cardinalities[static_cast<std::size_t>(v)];
        if (sep_space > kDenseCellCap / block.new_space)
            throw DomainError("clique index space too large for synthesis");
        block.probs.resize(static_cast<std::size_t>(sep_space * block.new_space));
        for (std::int64_t s = 0; s < sep_space; ++s) {
            double sum = 0.0;
            const auto base = static_cast<std::size_t>(s * block.new_space);
            for (std::int64_t k = 0; k < block.new_space; ++k) {
                // bounded away from zero so every cell stays reachable
                const double w = 0.05 + uniform_unit(rng);
                block.probs[base + static_cast<std::size_t>(k)] = w;
                sum += w;
            }
            for (std::int64_t k = 0; k < block.new_space; ++k)
                block.probs[base + static_cast<std::size_t>(k)] /= sum;
        }
        blocks.push_back(std::move(block));
    }

    std::vector<Cell> records;
    records.reserve(static_cast<std::size_t>(n));
    Cell draw(static_cast<std::size_t>(m));
    for (std::int64_t r = 0; r < n; ++r) {
        for (const Block& block : blocks) {
            std::int64_t s = 0;
            for (int v : block.sep_vars)
                s = s * cardinalities[static_cast<std::size_t>(v)] + draw[static_cast<std::size_t>(v)];
            const auto base = static_cast<std::size_t>(s * block.new_space);
            const double u = uniform_unit(rng);
            double acc = 0.0;
            std::int64_t pick = block.new_space - 1;
            for (std::int64_t k = 0; k < block.new_space; ++k) {
                acc += block.probs[base + static_cast<std::size_t>(k)];
                if (u < acc) {
                    pick = k;
                    break;
                }
            }
            for (std::size_t v = block.new_vars.size(); v-- > 0;) {
                const auto var = static_cast<std::size_t>(block.new_vars[v]);
                draw[var] = static_cast<std::uint16_t>(pick % cardinalities[var]);
                pick /= cardinalities[var];
            }
        }
        records.push_back(draw);
    }

    std::vector<Variable> vars;
    for (int v = 0; v < m; ++v)
        vars.push_back({"v" + std::to_string(v), cardinalities[static_cast<std::size_t>(v)], {}});
    const std::int64_t pop = population >= 0 ? population : std::max<std::int64_t>(n, 1);
    return SparseTable(Schema(std::move(vars), pop), std::move(records));
}

}  // namespace riskfold
