#include "riskfold/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riskfold/errors.hpp"
#include "riskfold/parallel.hpp"
#include "riskfold/rand.hpp"

namespace riskfold {

namespace {

// Uniform nonempty subset of `from`.
VertexSet random_nonempty_subset(std::mt19937_64& rng, VertexSet from) {
    const int k = set_size(from);
    const std::vector<int> members = set_to_vector(from);
    VertexSet subset;
    do {
        std::uint64_t bits = rng();
        subset = 0;
        for (int b = 0; b < k; ++b) {
            if ((bits >> b) & 1u) subset |= set_of(members[static_cast<std::size_t>(b)]);
        }
    } while (subset == 0);
    return subset;
}

}  // namespace

Graph random_chordal_graph(int m, std::mt19937_64& rng, double coin_prob) {
    if (m < 1) throw UsageError("random_chordal: m must be positive");
    if (coin_prob < 0.0 || coin_prob > 1.0)
        throw UsageError("random_chordal: coin probability outside [0, 1]");

    std::vector<VertexSet> cliques;
    for (int j = 0; j < m; ++j) {
        if (cliques.empty() || uniform_unit(rng) < coin_prob) {
            cliques.push_back(set_of(j));
            continue;
        }
        std::size_t pick = static_cast<std::size_t>(uniform_below(rng, cliques.size()));
        VertexSet chosen = cliques[pick];
        VertexSet subset = random_nonempty_subset(rng, chosen);
        if (subset == chosen) {
            cliques[pick] |= set_of(j);
        } else {
            cliques.push_back(subset | set_of(j));
        }
    }

    Graph g(m);
    for (VertexSet c : cliques) {
        std::vector<int> vs = set_to_vector(c);
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b) g.add_edge(vs[a], vs[b]);
    }
    return g;
}

CliqueDecomposition random_chordal(int m, std::uint64_t seed, double coin_prob) {
    std::mt19937_64 rng(seed);
    return decompose(random_chordal_graph(m, rng, coin_prob));
}

SearchResult hill_climb(MarginalCache& cache, const Graph& start, int threads) {
    const int m = start.vertex_count();
    if (m != cache.table().schema().variable_count())
        throw ContractError("hill_climb: graph order does not match schema");
    if (!is_chordal(start)) throw ContractError("hill_climb: start graph is not chordal");

    std::vector<std::pair<int, int>> all_edges = Graph::complete(m).edges();

    SearchResult res;
    Graph current = start;
    res.start_aic = aic_of(cache, decompose(current));
    double current_aic = res.start_aic;

    bool improved = true;
    while (improved) {
        improved = false;
        std::vector<double> candidate_aic(all_edges.size(),
                                          std::numeric_limits<double>::infinity());
        parallel_for(all_edges.size(), threads, [&](std::size_t e) {
            auto [u, v] = all_edges[e];
            Graph candidate = current.with_toggled(u, v);
            McsResult order = mcs(candidate);
            if (!order.is_chordal) return;
            candidate_aic[e] = aic_of(cache, decompose(candidate));
        });
        res.candidates_proposed += static_cast<std::int64_t>(all_edges.size());

        // fixed-order reduction: first edge wins ties via strict <
        std::size_t best = all_edges.size();
        double best_aic = current_aic;
        for (std::size_t e = 0; e < all_edges.size(); ++e) {
            if (candidate_aic[e] < best_aic) {
                best_aic = candidate_aic[e];
                best = e;
            }
        }
        if (best < all_edges.size()) {
            current = current.with_toggled(all_edges[best].first, all_edges[best].second);
            current_aic = best_aic;
            res.trace.push_back(SearchStep{all_edges[best], best_aic});
            improved = true;
        }
    }

    res.model = fit(cache, current);
    return res;
}

SearchResult hill_climb(const SparseTable& table, const Graph& start, int threads) {
    MarginalCache cache(table);
    return hill_climb(cache, start, threads);
}

MultiStartResult multi_start(MarginalCache& cache, int restarts, std::uint64_t seed,
                             double coin_prob, int threads) {
    if (restarts < 1) throw UsageError("multi_start: restarts must be >= 1");
    const int m = cache.table().schema().variable_count();

    // all start graphs come from one master stream so the restart set is a
    // pure function of (seed, restarts)
    std::mt19937_64 master(seed);
    std::vector<Graph> starts;
    starts.reserve(static_cast<std::size_t>(restarts));
    for (int k = 0; k < restarts; ++k) {
        std::mt19937_64 rng(master());
        starts.push_back(random_chordal_graph(m, rng, coin_prob));
    }

    std::vector<SearchResult> per_restart(static_cast<std::size_t>(restarts));
    parallel_for(static_cast<std::size_t>(restarts), threads, [&](std::size_t k) {
        per_restart[k] = hill_climb(cache, starts[k], 1);
        per_restart[k].first_restart = static_cast<int>(k);
    });

    MultiStartResult out;
    out.restarts_used = restarts;
    for (auto& result : per_restart) {
        bool merged = false;
        for (auto& kept : out.models) {
            if (kept.model.graph == result.model.graph) {
                ++kept.times_chosen;
                merged = true;
                break;
            }
        }
        if (!merged) {
            result.times_chosen = 1;
            out.models.push_back(std::move(result));
        }
    }
    std::stable_sort(out.models.begin(), out.models.end(),
                     [](const SearchResult& a, const SearchResult& b) {
                         if (a.model.aic != b.model.aic) return a.model.aic < b.model.aic;
                         return a.first_restart < b.first_restart;
                     });
    return out;
}

MultiStartResult multi_start(const SparseTable& table, int restarts, std::uint64_t seed,
                             double coin_prob, int threads) {
    MarginalCache cache(table);
    return multi_start(cache, restarts, seed, coin_prob, threads);
}

}  // namespace riskfold
