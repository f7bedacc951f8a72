#include "riskfold/swap.hpp"

#include <bit>
#include <string>
#include <utility>

#include "riskfold/errors.hpp"

namespace riskfold {

namespace {

bool agree_on(const Cell& a, const Cell& b, VertexSet vars) {
    for (VertexSet rest = vars; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if (a[static_cast<std::size_t>(v)] != b[static_cast<std::size_t>(v)]) return false;
    }
    return true;
}

VertexSet side_for(const Graph& g, VertexSet clique, VertexSet separator) {
    VertexSet side = 0;
    const VertexSet seed = clique & ~separator;
    for (VertexSet comp : components_without(g, separator))
        if (comp & seed) side |= comp;
    return side;
}

Cell exchanged(const Cell& keep, const Cell& take, VertexSet vars) {
    Cell out = keep;
    for (VertexSet rest = vars; rest; rest &= rest - 1) {
        const auto v = static_cast<std::size_t>(std::countr_zero(rest));
        out[v] = take[v];
    }
    return out;
}

}  // namespace

std::vector<SwapTriple> enumerate_triples(const CliqueDecomposition& dec) {
    std::vector<SwapTriple> triples;
    const auto& cliques = dec.cliques;
    for (std::size_t a = 0; a < cliques.size(); ++a) {
        for (std::size_t b = a + 1; b < cliques.size(); ++b) {
            const VertexSet meet = cliques[a] & cliques[b];
            if (dec.is_separator(meet))
                triples.push_back({cliques[a], cliques[b], meet});
        }
    }
    return triples;
}

std::optional<SwapPlan> find_partner(const SparseTable& table, const FittedModel& model,
                                     std::int64_t record, const std::vector<SwapTriple>& triples) {
    const auto n = table.record_count();
    if (record < 0 || record >= n)
        throw ContractError("record index " + std::to_string(record) + " out of range");
    const Cell& mine = table.record(record);

    for (std::int64_t j = 0; j < n; ++j) {
        if (j == record) continue;
        const Cell& other = table.record(j);
        for (const SwapTriple& t : triples) {
            if (!agree_on(mine, other, t.separator)) continue;
            if (agree_on(mine, other, t.clique_a)) continue;
            if (agree_on(mine, other, t.clique_b)) continue;

            SwapPlan plan;
            plan.record_i = record;
            plan.record_j = j;
            plan.triple = t;
            plan.side_a = side_for(model.graph, t.clique_a, t.separator);
            plan.before_i = mine;
            plan.before_j = other;
            plan.after_i = exchanged(mine, other, plan.side_a);
            plan.after_j = exchanged(other, mine, plan.side_a);
            return plan;
        }
    }
    return std::nullopt;
}

std::optional<SwapPlan> find_partner(const SparseTable& table, const FittedModel& model,
                                     std::int64_t record) {
    return find_partner(table, model, record, enumerate_triples(model.decomposition));
}

SparseTable apply_swap(const SparseTable& table, const SwapPlan& plan) {
    const auto n = table.record_count();
    if (plan.record_i < 0 || plan.record_i >= n || plan.record_j < 0 || plan.record_j >= n ||
        plan.record_i == plan.record_j)
        throw ContractError("swap plan names invalid record indices");

    const Cell& ri = table.record(plan.record_i);
    const Cell& rj = table.record(plan.record_j);
    const bool fresh = ri == plan.before_i && rj == plan.before_j;
    const bool undo = ri == plan.after_i && rj == plan.after_j;
    if (!fresh && !undo)
        throw ConflictError("records " + std::to_string(plan.record_i) + " and " +
                            std::to_string(plan.record_j) +
                            " no longer match the swap plan; the table changed since it was made");

    std::vector<Cell> records = table.records();
    const auto i = static_cast<std::size_t>(plan.record_i);
    const auto j = static_cast<std::size_t>(plan.record_j);
    Cell new_i = exchanged(records[i], records[j], plan.side_a);
    Cell new_j = exchanged(records[j], records[i], plan.side_a);
    records[i] = std::move(new_i);
    records[j] = std::move(new_j);
    return SparseTable(table.schema(), std::move(records));
}

bool same_marginal(const MarginalTable& a, const MarginalTable& b) {
    if (a.subset() != b.subset()) return false;
    if (a.total() != b.total() || a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.keys().size(); ++k)
        if (b.count_for(a.keys()[k]) != a.counts()[k]) return false;
    return true;
}

ProtectResult protect(const SparseTable& table, const FittedModel& model,
                      const RiskReport& report, double threshold, std::int64_t max_records) {
    auto targets = risky_records(report, threshold);
    if (max_records >= 0 && std::cmp_greater(targets.size(), max_records))
        targets.resize(static_cast<std::size_t>(max_records));

    const auto triples = enumerate_triples(model.decomposition);

    ProtectResult result{table, {}, 0, 0};
    for (const RiskEntry& target : targets) {
        SwapOutcome outcome;
        outcome.record = target.record;
        outcome.p_hat = target.p_hat;
        auto plan = find_partner(result.table, model, target.record, triples);
        if (plan) {
            result.table = apply_swap(result.table, *plan);
            outcome.swapped = true;
            outcome.partner = plan->record_j;
            outcome.triple = plan->triple;
            outcome.side_a = plan->side_a;
            ++result.swapped;
        } else {
            ++result.unswappable;
        }
        outcome.post_p_hat = mle_cell(model, result.table.record(target.record));
        result.log.push_back(outcome);
    }

    for (VertexSet clique : model.decomposition.cliques) {
        const auto vars = set_to_vector(clique);
        if (!same_marginal(table.marginalize(vars), result.table.marginalize(vars)))
            throw ContractError("swap sequence failed to preserve a clique marginal");
    }
    return result;
}

}  // namespace riskfold
