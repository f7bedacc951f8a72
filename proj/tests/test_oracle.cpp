#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "riskfold/errors.hpp"
#include "riskfold/fit.hpp"
#include "riskfold/graph.hpp"
#include "riskfold/oracle.hpp"
#include "riskfold/sparse_table.hpp"

using namespace riskfold;

namespace {

Schema make_schema(const std::vector<int>& cards, std::int64_t population) {
    std::vector<Variable> vars;
    for (std::size_t v = 0; v < cards.size(); ++v)
        vars.push_back({"v" + std::to_string(v), cards[v], {}});
    return Schema(std::move(vars), population);
}

VertexSet vs(std::initializer_list<int> vals) {
    VertexSet s = 0;
    for (int v : vals) s |= set_of(v);
    return s;
}

// Empirical mutual information (nats) between two columns of a table.
double empirical_mi(const SparseTable& t, int a, int b) {
    MarginalTable ma = t.marginalize({a});
    MarginalTable mb = t.marginalize({b});
    MarginalTable mab = t.marginalize({a, b});
    const double n = static_cast<double>(t.record_count());
    double mi = 0.0;
    for (std::size_t k = 0; k < mab.size(); ++k) {
        double pab = static_cast<double>(mab.counts()[k]) / n;
        auto idx = mab.unpack(mab.keys()[k]);
        double pa = static_cast<double>(ma.count_for(static_cast<std::uint64_t>(idx[0]))) / n;
        double pb = static_cast<double>(mb.count_for(static_cast<std::uint64_t>(idx[1]))) / n;
        mi += pab * std::log(pab / (pa * pb));
    }
    return mi;
}

}  // namespace

TEST_CASE("dense table round trips offsets, counts, and sparse imports") {
    DenseTable d({3, 2, 4});
    CHECK(d.variable_count() == 3);
    CHECK(d.cell_count() == 24);
    CHECK(d.total() == 0);

    // the last variable varies fastest
    CHECK(d.offset_of(Cell{0, 0, 0}) == 0);
    CHECK(d.offset_of(Cell{0, 0, 1}) == 1);
    CHECK(d.offset_of(Cell{0, 1, 0}) == 4);
    CHECK(d.offset_of(Cell{1, 0, 0}) == 8);
    CHECK(d.offset_of(Cell{2, 1, 3}) == 23);
    for (std::int64_t off = 0; off < d.cell_count(); ++off)
        CHECK(d.offset_of(d.cell_at(off)) == off);

    d.add(Cell{1, 0, 2});
    d.add(Cell{1, 0, 2}, 4);
    CHECK(d.count_at(d.offset_of(Cell{1, 0, 2})) == 5);
    CHECK(d.total() == 5);

    Schema s = make_schema({2, 2}, 100);
    SparseTable t(s, {Cell{0, 1}, Cell{0, 1}, Cell{1, 0}});
    DenseTable imported = DenseTable::from_sparse(t);
    CHECK(imported.total() == 3);
    CHECK(imported.count_at(imported.offset_of(Cell{0, 1})) == 2);
    CHECK(imported.count_at(imported.offset_of(Cell{1, 1})) == 0);
}

TEST_CASE("dense table rejects what it cannot hold") {
    CHECK_THROWS_AS(DenseTable({}), DomainError);
    CHECK_THROWS_AS(DenseTable({3, 0}), DomainError);
    CHECK_THROWS_AS(DenseTable({101, 101, 101}), DomainError);  // 1,030,301 cells
    DenseTable d({2, 2});
    CHECK_THROWS_AS(d.offset_of(Cell{0}), ContractError);
    CHECK_THROWS_AS(d.add(Cell{0, 2}), ContractError);
}

TEST_CASE("proportional scaling reproduces the textbook fixed points") {
    Schema s = make_schema({2, 3}, 100);
    SparseTable t(s, {Cell{0, 0}, Cell{0, 0}, Cell{0, 1}, Cell{1, 2}, Cell{1, 1}, Cell{1, 1}});
    DenseTable dense = DenseTable::from_sparse(t);

    SUBCASE("saturated clique returns the empirical distribution") {
        auto p = ipf_fit(dense, {vs({0, 1})});
        CHECK(p[static_cast<std::size_t>(dense.offset_of(Cell{0, 0}))] ==
              doctest::Approx(2.0 / 6.0).epsilon(1e-10));
        CHECK(p[static_cast<std::size_t>(dense.offset_of(Cell{1, 2}))] ==
              doctest::Approx(1.0 / 6.0).epsilon(1e-10));
        CHECK(p[static_cast<std::size_t>(dense.offset_of(Cell{1, 0}))] == 0.0);
    }
    SUBCASE("independence cliques give the product of the margins") {
        auto p = ipf_fit(dense, {vs({0}), vs({1})});
        // margins: v0 = (3,3)/6, v1 = (2,3,1)/6
        CHECK(p[static_cast<std::size_t>(dense.offset_of(Cell{0, 0}))] ==
              doctest::Approx(0.5 * 2.0 / 6.0).epsilon(1e-9));
        CHECK(p[static_cast<std::size_t>(dense.offset_of(Cell{1, 1}))] ==
              doctest::Approx(0.5 * 3.0 / 6.0).epsilon(1e-9));
        double sum = 0.0;
        for (double x : p) sum += x;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("fitted marginals match the data within the tolerance") {
        auto p = ipf_fit(dense, {vs({0}), vs({1})}, 1e-10);
        double margin0 = 0.0;
        for (std::int64_t off = 0; off < dense.cell_count(); ++off)
            if (dense.cell_at(off)[0] == 0) margin0 += p[static_cast<std::size_t>(off)];
        CHECK(std::abs(margin0 - 0.5) <= 1e-9);
    }
}

TEST_CASE("proportional scaling matches the closed form on a chain model") {
    Schema s = make_schema({3, 2, 3}, 1000);
    std::vector<Cell> records;
    // deliberately lumpy data
    for (int k = 0; k < 7; ++k) records.push_back(Cell{0, 0, 0});
    for (int k = 0; k < 3; ++k) records.push_back(Cell{1, 0, 2});
    for (int k = 0; k < 5; ++k) records.push_back(Cell{2, 1, 1});
    records.push_back(Cell{0, 1, 1});
    records.push_back(Cell{2, 0, 0});
    SparseTable t(s, std::move(records));
    Graph chain = Graph::from_edges(3, {{0, 1}, {1, 2}});
    FittedModel model = fit(t, chain);

    DenseTable dense = DenseTable::from_sparse(t);
    auto p = ipf_fit(dense, model.decomposition.cliques);
    for (std::int64_t off = 0; off < dense.cell_count(); ++off) {
        CAPTURE(off);
        REQUIRE(std::abs(mle_cell(model, dense.cell_at(off)) -
                         p[static_cast<std::size_t>(off)]) <= 1e-9);
    }
}

TEST_CASE("proportional scaling input validation and iteration cap") {
    Schema s = make_schema({2, 2}, 100);
    SparseTable t(s, {Cell{0, 0}, Cell{1, 1}});
    DenseTable dense = DenseTable::from_sparse(t);
    CHECK_THROWS_AS(ipf_fit(dense, {}), DomainError);
    CHECK_THROWS_AS(ipf_fit(dense, {VertexSet{0}}), DomainError);
    CHECK_THROWS_AS(ipf_fit(dense, {vs({0, 2})}), DomainError);
    CHECK_THROWS_AS(ipf_fit(dense, {vs({0, 1})}, 1e-10, 0), ConvergenceError);

    DenseTable empty({2, 2});
    CHECK_THROWS_AS(ipf_fit(empty, {vs({0})}), DomainError);
}

TEST_CASE("chordal graph counts match the published sequence") {
    CHECK(count_chordal(1) == 1);
    CHECK(count_chordal(2) == 2);
    CHECK(count_chordal(3) == 8);
    CHECK(count_chordal(4) == 61);
    CHECK(count_chordal(5) == 822);
    CHECK(count_chordal(6) == 18154);
    CHECK_THROWS_AS(count_chordal(0), UsageError);
    CHECK_THROWS_AS(count_chordal(8), UsageError);
}

TEST_CASE("chordal count is thread-count independent") {
    CHECK(count_chordal(5, 1) == count_chordal(5, 4));
    CHECK(count_chordal(6, 3) == 18154);
}

TEST_CASE("synthesis is seed-deterministic and schema-faithful") {
    std::vector<VertexSet> cliques = {vs({0, 1}), vs({1, 2})};
    SparseTable a = synth_table(cliques, {4, 3, 5}, 500, 11, 90000);
    SparseTable b = synth_table(cliques, {4, 3, 5}, 500, 11, 90000);
    CHECK(a.records() == b.records());
    CHECK(a.record_count() == 500);
    CHECK(a.schema().population_size() == 90000);
    CHECK(a.schema().variable_count() == 3);
    CHECK(a.schema().variable(0).name == "v0");
    for (const Cell& cell : a.records()) {
        CHECK(cell[0] < 4);
        CHECK(cell[1] < 3);
        CHECK(cell[2] < 5);
    }

    SparseTable c = synth_table(cliques, {4, 3, 5}, 500, 12, 90000);
    CHECK(c.records() != a.records());

    SUBCASE("population defaults to max(n, 1)") {
        CHECK(synth_table(cliques, {2, 2, 2}, 40, 1).schema().population_size() == 40);
        CHECK(synth_table(cliques, {2, 2, 2}, 0, 1).record_count() == 0);
        CHECK(synth_table(cliques, {2, 2, 2}, 0, 1).schema().population_size() == 1);
    }
}

TEST_CASE("synthesis rejects impossible requests") {
    CHECK_THROWS_AS(synth_table({vs({0, 3})}, {2, 2}, 10, 1), DomainError);
    CHECK_THROWS_AS(synth_table({vs({0})}, {}, 10, 1), DomainError);
    CHECK_THROWS_AS(synth_table({vs({0})}, {2, 2}, -1, 1), DomainError);
    // union of cliques is the four-cycle: not decomposable
    CHECK_THROWS_AS(
        synth_table({vs({0, 1}), vs({1, 2}), vs({2, 3}), vs({0, 3})}, {2, 2, 2, 2}, 10, 1),
        DomainError);
}

TEST_CASE("synthetic draws respect the requested dependence structure") {
    SUBCASE("disconnected cliques produce near-independent columns") {
        SparseTable t = synth_table({vs({0}), vs({1})}, {3, 3}, 20000, 5);
        CHECK(empirical_mi(t, 0, 1) < 0.01);  // bias ~ 1e-4 nats at this n
    }
    SUBCASE("chain cliques leave the ends independent given the middle") {
        SparseTable t = synth_table({vs({0, 1}), vs({1, 2})}, {3, 4, 3}, 20000, 6);
        // conditional mutual information of (0, 2) given 1, in nats
        MarginalTable mb = t.marginalize({1});
        const double n = static_cast<double>(t.record_count());
        double cmi = 0.0;
        for (std::size_t kb = 0; kb < mb.size(); ++kb) {
            std::uint16_t bval = static_cast<std::uint16_t>(mb.unpack(mb.keys()[kb])[0]);
            std::vector<Cell> slice;
            for (const Cell& cell : t.records())
                if (cell[1] == bval) slice.push_back(Cell{cell[0], cell[2]});
            Schema s2 = make_schema({3, 3}, 1000000);
            SparseTable cond(s2, std::move(slice));
            cmi += (static_cast<double>(mb.counts()[kb]) / n) * empirical_mi(cond, 0, 1);
        }
        CHECK(cmi < 0.02);
    }
}
