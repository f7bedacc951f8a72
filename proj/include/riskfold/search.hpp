#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "riskfold/fit.hpp"
#include "riskfold/graph.hpp"
#include "riskfold/sparse_table.hpp"

namespace riskfold {

// One accepted hill-climb move: the edge toggled and the AIC reached.
struct SearchStep {
    std::pair<int, int> edge;
    double aic = 0.0;
};

struct SearchResult {
    FittedModel model;
    double start_aic = 0.0;
    std::vector<SearchStep> trace;  // AIC strictly decreases along the trace
    int times_chosen = 1;           // filled by multi_start deduplication
    int first_restart = 0;
    // every scan proposes all m(m-1)/2 toggles; kept for the completeness check
    std::int64_t candidates_proposed = 0;
};

struct MultiStartResult {
    std::vector<SearchResult> models;  // deduplicated, AIC ascending
    int restarts_used = 0;
};

// Grows a random chordal graph one vertex at a time: a coin decides between a
// fresh singleton clique and attaching the vertex to a uniformly chosen
// nonempty subset of a uniformly chosen existing clique. coin_prob is the
// probability of the singleton branch.
Graph random_chordal_graph(int m, std::mt19937_64& rng, double coin_prob = 0.5);
CliqueDecomposition random_chordal(int m, std::uint64_t seed, double coin_prob = 0.5);

// Single-edge-toggle descent on AIC: scans all edges of the complete graph in
// lexicographic order, keeps the best strict improvement among chordal
// candidates, moves, and repeats until no toggle improves. Candidates may be
// evaluated on several threads; the comparison is a fixed-order reduction, so
// the chosen move never depends on the thread count.
SearchResult hill_climb(MarginalCache& cache, const Graph& start, int threads = 1);
SearchResult hill_climb(const SparseTable& table, const Graph& start, int threads = 1);

// Runs hill_climb from `restarts` random chordal seeds, deduplicates the local
// optima by edge set, and reports each with its times-chosen count, sorted by
// AIC ascending.
MultiStartResult multi_start(const SparseTable& table, int restarts, std::uint64_t seed,
                             double coin_prob = 0.5, int threads = 1);
MultiStartResult multi_start(MarginalCache& cache, int restarts, std::uint64_t seed,
                             double coin_prob = 0.5, int threads = 1);

}  // namespace riskfold
