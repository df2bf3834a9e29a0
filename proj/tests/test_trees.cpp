#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "vertexring/trees.hpp"

using namespace vertexring;

namespace {

RootedTree T(const std::string& s) { return RootedTree::parse(s); }

std::vector<RootedTree> all_up_to(int n) {
    std::vector<RootedTree> out;
    for (int k = 1; k <= n; ++k)
        for (auto& t : enumerate_trees(k)) out.push_back(t);
    return out;
}

// Sequences of trees whose leaf counts sum to at most `budget`, of length len.
void sequences(const std::vector<RootedTree>& pool, int len, int budget, std::vector<RootedTree>& cur,
               std::vector<std::vector<RootedTree>>& out) {
    if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    const int remaining = len - static_cast<int>(cur.size()) - 1;
    for (const auto& t : pool) {
        if (t.num_leaves() + remaining > budget) continue;
        cur.push_back(t);
        sequences(pool, len, budget - t.num_leaves(), cur, out);
        cur.pop_back();
    }
}

} // namespace

TEST_CASE("parse and render") {
    CHECK(T("((1,2),3)").render() == "((1,2),3)");
    CHECK(T("(3,(2,1))").render() == "((1,2),3)");
    CHECK(T(" ( 1 , 2 , 3 ) ").render() == "(1,2,3)");
    CHECK(T("1").is_leaf());
    CHECK(T("((1))").render() == "((1))");
    CHECK(T("((1,2),3)").num_leaves() == 3);
    CHECK_THROWS_AS(T("(1,2"), std::invalid_argument);
    CHECK_THROWS_AS(T("(1,3)"), std::invalid_argument);
    CHECK_THROWS_AS(T("(1,1)"), std::invalid_argument);
    CHECK_THROWS_AS(T("()"), std::invalid_argument);
    CHECK(T("(1,(2,3))") == RootedTree::node({RootedTree::leaf(1), RootedTree::node({RootedTree::leaf(2), RootedTree::leaf(3)})}));
}

TEST_CASE("graft examples") {
    const RootedTree c2 = RootedTree::corolla(2);
    CHECK(graft(c2, {c2, RootedTree::leaf(1)}).render() == "((1,2),3)");
    CHECK(graft(c2, {RootedTree::leaf(1), c2}).render() == "(1,(2,3))");
    const RootedTree p = T("((1,3),(2,4))");
    CHECK(graft(p, std::vector<RootedTree>(4, RootedTree::leaf(1))) == p);
    CHECK(graft(RootedTree::leaf(1), {p}) == p);
    CHECK_THROWS_AS(graft(c2, {c2}), std::invalid_argument);
}

TEST_CASE("collapse examples and errors") {
    const RootedTree cat = T("((1,2),3)");
    CHECK(cat.internal_edges() == std::vector<std::vector<int>>{{1, 2}});
    CHECK(collapse(cat, {1, 2}).render() == "(1,2,3)");
    CHECK_THROWS_AS(collapse(cat, {1}), std::invalid_argument);
    CHECK_THROWS_AS(collapse(cat, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(collapse(cat, {1, 3}), std::invalid_argument);
    CHECK(collapse(T("(((1,2),3),4)"), {1, 2, 3}).render() == "((1,2),3,4)");
}

TEST_CASE("enumeration counts match the recurrence") {
    const auto expected = oracle::reduced_tree_counts(6);
    for (int n = 1; n <= 6; ++n) {
        const auto trees = enumerate_trees(n);
        CHECK(static_cast<long long>(trees.size()) == expected[n]);
        std::set<std::string> distinct;
        for (const auto& t : trees) {
            distinct.insert(t.render());
            CHECK(T(t.render()) == t);
            CHECK(t.num_leaves() == n);
        }
        CHECK(distinct.size() == trees.size());
    }
    CHECK(expected[5] == 236);
}

TEST_CASE("grafting is associative for all trees up to five leaves") {
    const auto pool = all_up_to(5);
    int checked = 0;
    for (const auto& p : pool) {
        std::vector<RootedTree> cur;
        std::vector<std::vector<RootedTree>> qss;
        sequences(pool, p.num_leaves(), 5, cur, qss);
        for (const auto& qs : qss) {
            const RootedTree pq = graft(p, qs);
            std::vector<std::vector<RootedTree>> rss;
            sequences(pool, pq.num_leaves(), 5, cur, rss);
            for (const auto& rs : rss) {
                // split rs by the leaves of each q
                std::vector<RootedTree> inner;
                std::size_t pos = 0;
                for (const auto& q : qs) {
                    std::vector<RootedTree> part(rs.begin() + pos, rs.begin() + pos + q.num_leaves());
                    inner.push_back(graft(q, part));
                    pos += q.num_leaves();
                }
                CHECK(graft(pq, rs) == graft(p, inner));
                ++checked;
            }
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("collapses commute and always reach the corolla") {
    for (int n = 2; n <= 5; ++n)
        for (const auto& t : enumerate_trees(n)) {
            const auto edges = t.internal_edges();
            for (std::size_t i = 0; i < edges.size(); ++i)
                for (std::size_t j = i + 1; j < edges.size(); ++j)
                    CHECK(collapse(collapse(t, edges[i]), edges[j]) == collapse(collapse(t, edges[j]), edges[i]));
            // greedy, always the last edge
            RootedTree cur = t;
            while (!cur.internal_edges().empty()) cur = collapse(cur, cur.internal_edges().back());
            CHECK(cur == RootedTree::corolla(n));
            cur = t;
            while (!cur.internal_edges().empty()) cur = collapse(cur, cur.internal_edges().front());
            CHECK(cur == RootedTree::corolla(n));
        }
}

TEST_CASE("shapes of small trees") {
    CHECK(shape_of(RootedTree::corolla(3)).is_rational());
    CHECK(shape_of(RootedTree::corolla(3)).render() == "rational");
    CHECK(shape_of(RootedTree::leaf(1)).is_rational());
    CHECK(shape_of(T("((1,2),3)")).render() == "|x1-x2|<<|x1-x3|");
    CHECK(shape_of(T("((1,3),2)")).render() == "|x1-x3|<<|x1-x2|");
    CHECK(shape_of(T("(1,(2,3))")).render() == "|x2-x3|<<|x2-x1|");
    const ExpansionShape deep = shape_of(T("(((1,2),3),4)"));
    CHECK(deep.clusters.size() == 2);
    // collapsing never adds clusters
    for (const auto& t : enumerate_trees(4))
        for (const auto& e : t.internal_edges())
            CHECK(shape_of(collapse(t, e)).clusters.size() + 1 == shape_of(t).clusters.size());
}

TEST_CASE("shape coherence for every 3-leaf tree at cutoff 4") {
    const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(SpacetimeSpec{});
    for (const auto& t : enumerate_trees(3)) {
        const AxiomReport r = check_shape_coherence(alg, t, 4);
        CHECK_MESSAGE(r.holds, t.render());
        CHECK(r.region == shape_of(t).render());
    }
    CHECK_THROWS(check_shape_coherence(FreeFieldAlgebra::standard(SpacetimeSpec::minkowski(2)), T("((1,2),3)"), 3));
}

TEST_CASE("tree suite") {
    const SuiteReport r = run_tree_suite(FreeFieldAlgebra::standard(SpacetimeSpec{}), 4);
    CHECK(r.holds());
    CHECK(r.checks > 3000);
}
