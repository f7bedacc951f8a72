#include "riskfold/graph.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "riskfold/errors.hpp"

namespace riskfold {

std::vector<int> set_to_vector(VertexSet s) {
    std::vector<int> out;
    while (s) {
        int v = std::countr_zero(s);
        out.push_back(v);
        s &= s - 1;
    }
    return out;
}

VertexSet set_from_vector(const std::vector<int>& vs) {
    VertexSet s = 0;
    for (int v : vs) s |= set_of(v);
    return s;
}

Graph::Graph(int vertex_count) : m_(vertex_count), adj_(static_cast<std::size_t>(vertex_count), 0) {
    if (vertex_count < 1) throw UsageError("graph: vertex count must be positive");
    if (vertex_count > 64) throw UsageError("graph: at most 64 vertices supported");
}

Graph Graph::complete(int vertex_count) {
    Graph g(vertex_count);
    for (int u = 0; u < vertex_count; ++u)
        for (int v = u + 1; v < vertex_count; ++v) g.add_edge(u, v);
    return g;
}

Graph Graph::from_edges(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
    Graph g(vertex_count);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::check_pair(int u, int v) const {
    if (u < 0 || u >= m_ || v < 0 || v >= m_)
        throw UsageError("graph: vertex out of range");
    if (u == v) throw UsageError("graph: self-loops not allowed");
}

bool Graph::has_edge(int u, int v) const {
    check_pair(u, v);
    return set_contains(adj_[static_cast<std::size_t>(u)], v);
}

int Graph::edge_count() const {
    int total = 0;
    for (VertexSet nbrs : adj_) total += set_size(nbrs);
    return total / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < m_; ++u) {
        VertexSet at_most_u = (u == 63) ? ~VertexSet{0} : (VertexSet{1} << (u + 1)) - 1;
        for (int v : set_to_vector(adj_[static_cast<std::size_t>(u)] & ~at_most_u))
            out.emplace_back(u, v);
    }
    return out;
}

void Graph::add_edge(int u, int v) {
    check_pair(u, v);
    adj_[static_cast<std::size_t>(u)] |= set_of(v);
    adj_[static_cast<std::size_t>(v)] |= set_of(u);
}

void Graph::remove_edge(int u, int v) {
    check_pair(u, v);
    adj_[static_cast<std::size_t>(u)] &= ~set_of(v);
    adj_[static_cast<std::size_t>(v)] &= ~set_of(u);
}

Graph Graph::with_toggled(int u, int v) const {
    Graph g = *this;
    g.check_pair(u, v);
    g.adj_[static_cast<std::size_t>(u)] ^= set_of(v);
    g.adj_[static_cast<std::size_t>(v)] ^= set_of(u);
    return g;
}

McsResult mcs(const Graph& g, const std::vector<int>& tie_order) {
    const int m = g.vertex_count();
    std::vector<int> rank(static_cast<std::size_t>(m));
    if (tie_order.empty()) {
        for (int v = 0; v < m; ++v) rank[static_cast<std::size_t>(v)] = v;
    } else {
        if (static_cast<int>(tie_order.size()) != m)
            throw UsageError("mcs: tie_order must be a permutation of all vertices");
        VertexSet seen = 0;
        for (int r = 0; r < m; ++r) {
            const int v = tie_order[static_cast<std::size_t>(r)];
            if (v < 0 || v >= m || (seen & set_of(v)))
                throw UsageError("mcs: tie_order must be a permutation of all vertices");
            seen |= set_of(v);
            rank[static_cast<std::size_t>(v)] = r;
        }
    }

    McsResult res;
    res.order.reserve(static_cast<std::size_t>(m));
    res.weights.reserve(static_cast<std::size_t>(m));
    std::vector<int> weight(static_cast<std::size_t>(m), 0);
    VertexSet visited = 0;
    std::vector<VertexSet> earlier_nbrs(static_cast<std::size_t>(m), 0);
    std::vector<int> position(static_cast<std::size_t>(m), -1);

    for (int step = 0; step < m; ++step) {
        int best = -1;
        for (int v = 0; v < m; ++v) {
            if (set_contains(visited, v)) continue;
            if (best < 0 || weight[static_cast<std::size_t>(v)] > weight[static_cast<std::size_t>(best)] ||
                (weight[static_cast<std::size_t>(v)] == weight[static_cast<std::size_t>(best)] &&
                 rank[static_cast<std::size_t>(v)] < rank[static_cast<std::size_t>(best)]))
                best = v;
        }
        earlier_nbrs[static_cast<std::size_t>(best)] = g.neighbors(best) & visited;
        position[static_cast<std::size_t>(best)] = step;
        res.order.push_back(best);
        res.weights.push_back(weight[static_cast<std::size_t>(best)]);
        visited |= set_of(best);
        for (int v : set_to_vector(g.neighbors(best) & ~visited))
            ++weight[static_cast<std::size_t>(v)];
    }

    // Chordality: every vertex's earlier neighborhood minus its latest-visited
    // member ("parent") must be adjacent to that parent.
    res.is_chordal = true;
    for (int v = 0; v < m && res.is_chordal; ++v) {
        VertexSet earlier = earlier_nbrs[static_cast<std::size_t>(v)];
        if (!earlier) continue;
        int parent = -1;
        for (int u : set_to_vector(earlier)) {
            if (parent < 0 || position[static_cast<std::size_t>(u)] > position[static_cast<std::size_t>(parent)])
                parent = u;
        }
        VertexSet rest = earlier & ~set_of(parent);
        if ((rest & ~g.neighbors(parent)) != 0) res.is_chordal = false;
    }
    return res;
}

int CliqueDecomposition::multiplicity(VertexSet s) const {
    for (const auto& [sep, nu] : separators)
        if (sep == s) return nu;
    return 0;
}

bool CliqueDecomposition::is_separator(VertexSet s) const { return multiplicity(s) > 0; }

CliqueDecomposition decompose(const Graph& g, const std::vector<int>& tie_order) {
    McsResult m = mcs(g, tie_order);
    if (!m.is_chordal) throw ContractError("decompose: graph is not chordal");

    const int n = g.vertex_count();
    CliqueDecomposition dec;
    VertexSet visited = 0;

    // Cliques close when the MCS weight fails to grow; each new clique's
    // intersection with everything before it is the earlier neighborhood of
    // its first vertex.
    for (int i = 0; i < n; ++i) {
        int v = m.order[static_cast<std::size_t>(i)];
        VertexSet earlier = g.neighbors(v) & visited;
        if (i == 0) {
            dec.cliques.push_back(set_of(v) | earlier);
            dec.component_count = 1;
        } else if (m.weights[static_cast<std::size_t>(i)] <= m.weights[static_cast<std::size_t>(i - 1)]) {
            dec.cliques.push_back(set_of(v) | earlier);
            dec.seq_separators.push_back(earlier);
            if (earlier == 0) ++dec.component_count;
        } else {
            dec.cliques.back() |= set_of(v);
        }
        visited |= set_of(v);
    }

    for (VertexSet s : dec.seq_separators) {
        bool found = false;
        for (auto& [sep, nu] : dec.separators) {
            if (sep == s) {
                ++nu;
                found = true;
                break;
            }
        }
        if (!found) dec.separators.emplace_back(s, 1);
    }
    return dec;
}

std::vector<VertexSet> components_without(const Graph& g, VertexSet banned) {
    const int m = g.vertex_count();
    std::vector<VertexSet> components;
    VertexSet remaining = (m == 64 ? ~VertexSet{0} : (VertexSet{1} << m) - 1) & ~banned;
    VertexSet seen = 0;
    for (int v = 0; v < m; ++v) {
        if (!set_contains(remaining, v) || set_contains(seen, v)) continue;
        VertexSet comp = set_of(v);
        VertexSet frontier = comp;
        while (frontier) {
            VertexSet next = 0;
            for (int u : set_to_vector(frontier)) next |= g.neighbors(u);
            next &= remaining & ~comp;
            comp |= next;
            frontier = next;
        }
        components.push_back(comp);
        seen |= comp;
    }
    return components;
}

std::string graph_to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

Graph graph_from_edge_list(std::istream& in) {
    int m = 0;
    if (!(in >> m)) throw DomainError("graph: missing vertex-count header");
    Graph g(m);
    int u = 0, v = 0;
    while (in >> u >> v) {
        if (u < 0 || u >= m || v < 0 || v >= m || u == v)
            throw DomainError("graph: bad edge " + std::to_string(u) + " " + std::to_string(v));
        g.add_edge(u, v);
    }
    return g;
}

}  // namespace riskfold
