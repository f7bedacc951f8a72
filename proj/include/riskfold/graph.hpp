#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace riskfold {

// Vertex subsets are 64-bit masks; graphs are capped at 64 vertices.
using VertexSet = std::uint64_t;

inline int set_size(VertexSet s) { return std::popcount(s); }
inline bool set_contains(VertexSet s, int v) { return (s >> v) & 1u; }
inline VertexSet set_of(int v) { return VertexSet{1} << v; }

std::vector<int> set_to_vector(VertexSet s);
VertexSet set_from_vector(const std::vector<int>& vs);

// Undirected simple graph on vertices 0..m-1, immutable value type.
class Graph {
public:
    Graph() = default;
    explicit Graph(int vertex_count);
    static Graph complete(int vertex_count);
    static Graph from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return m_; }
    bool has_edge(int u, int v) const;
    VertexSet neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int edge_count() const;
    // Edges in lexicographic (u, v) order with u < v.
    std::vector<std::pair<int, int>> edges() const;

    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    // Copy of this graph with edge {u, v} added if absent, removed if present.
    Graph with_toggled(int u, int v) const;

    bool operator==(const Graph& other) const = default;

private:
    void check_pair(int u, int v) const;

    int m_ = 0;
    std::vector<VertexSet> adj_;
};

// Maximum cardinality search: visit order plus the chordality verdict
// (the reverse of `order` is a perfect elimination ordering iff chordal).
struct McsResult {
    std::vector<int> order;    // order[i] = i-th visited vertex
    std::vector<int> weights;  // previously-visited neighbor count at selection
    bool is_chordal = false;
};

// Ties between equal-weight vertices go to the lowest vertex id, or to the
// lowest rank under `tie_order` (a permutation of 0..m-1) when provided.
McsResult mcs(const Graph& g, const std::vector<int>& tie_order = {});

inline bool is_chordal(const Graph& g) { return mcs(g).is_chordal; }

// Maximal cliques in a perfect-sequence order plus the separators that
// sequence induces. The empty separator shows up for disconnected graphs and
// carries its multiplicity like any other.
struct CliqueDecomposition {
    std::vector<VertexSet> cliques;         // perfect sequence C_1, C_2, ...
    std::vector<VertexSet> seq_separators;  // S_j = C_j ∩ (C_1 ∪ … ∪ C_{j-1}), j >= 2
    // distinct separators with multiplicities, in first occurrence order
    std::vector<std::pair<VertexSet, int>> separators;
    int component_count = 0;

    int multiplicity(VertexSet s) const;
    bool is_separator(VertexSet s) const;
};

// Requires a chordal graph (throws ContractError otherwise).
CliqueDecomposition decompose(const Graph& g, const std::vector<int>& tie_order = {});

// Connected components of the subgraph induced on vertices \ banned,
// ordered by smallest member vertex.
std::vector<VertexSet> components_without(const Graph& g, VertexSet banned);

// Edge-list text format: vertex-count header line, then "u v" per line.
std::string graph_to_edge_list(const Graph& g);
Graph graph_from_edge_list(std::istream& in);

}  // namespace riskfold
