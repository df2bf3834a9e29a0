#include "vertexring/trees.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <stdexcept>

namespace vertexring {

RootedTree RootedTree::leaf(int label) {
    if (label < 1) throw std::invalid_argument("leaf labels start at 1");
    RootedTree t;
    t.label_ = label;
    return t;
}

RootedTree RootedTree::node(std::vector<RootedTree> children) {
    if (children.empty()) throw std::invalid_argument("an internal node needs a child");
    RootedTree t;
    t.children_ = std::move(children);
    t.canonicalize();
    return t;
}

RootedTree RootedTree::corolla(int n) {
    if (n < 1) throw std::invalid_argument("a tree needs at least one leaf");
    if (n == 1) return leaf(1);
    std::vector<RootedTree> kids;
    for (int i = 1; i <= n; ++i) kids.push_back(leaf(i));
    return node(std::move(kids));
}

namespace {

struct TreeParser {
    const std::string& text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("tree syntax at position " + std::to_string(pos) + ": " + what);
    }
    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    RootedTree parse_tree() {
        skip();
        if (pos >= text.size()) fail("unexpected end");
        if (text[pos] == '(') {
            ++pos;
            std::vector<RootedTree> kids;
            kids.push_back(parse_tree());
            skip();
            while (pos < text.size() && text[pos] == ',') {
                ++pos;
                kids.push_back(parse_tree());
                skip();
            }
            if (pos >= text.size() || text[pos] != ')') fail("expected ',' or ')'");
            ++pos;
            return RootedTree::node(std::move(kids));
        }
        if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected a leaf label or '('");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1000000) fail("leaf label too large");
            ++pos;
        }
        if (v < 1) fail("leaf labels start at 1");
        return RootedTree::leaf(static_cast<int>(v));
    }
};

} // namespace

RootedTree RootedTree::parse(const std::string& text) {
    TreeParser p{text};
    RootedTree t = p.parse_tree();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing characters");
    t.check_labels();
    return t;
}

void RootedTree::check_labels() const {
    const std::vector<int> c = cluster();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != static_cast<int>(i) + 1)
            throw std::invalid_argument("leaf labels must be 1.." + std::to_string(c.size()) + ", each used once");
}

void RootedTree::canonicalize() {
    std::sort(children_.begin(), children_.end(),
              [](const RootedTree& a, const RootedTree& b) { return a.min_label() < b.min_label(); });
}

int RootedTree::num_leaves() const {
    if (is_leaf()) return 1;
    int n = 0;
    for (const auto& c : children_) n += c.num_leaves();
    return n;
}

int RootedTree::min_label() const {
    return is_leaf() ? label_ : children_.front().min_label();
}

std::vector<int> RootedTree::cluster() const {
    std::vector<int> out;
    std::function<void(const RootedTree&)> walk = [&](const RootedTree& t) {
        if (t.is_leaf()) out.push_back(t.label_);
        for (const auto& c : t.children_) walk(c);
    };
    walk(*this);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> RootedTree::internal_edges() const {
    std::vector<std::vector<int>> out;
    std::function<void(const RootedTree&)> walk = [&](const RootedTree& t) {
        for (const auto& c : t.children_) {
            if (c.is_leaf()) continue;
            out.push_back(c.cluster());
            walk(c);
        }
    };
    walk(*this);
    return out;
}

std::string RootedTree::render() const {
    if (is_leaf()) return std::to_string(label_);
    std::string out = "(";
    for (std::size_t i = 0; i < children_.size(); ++i) out += (i ? "," : "") + children_[i].render();
    return out + ")";
}

namespace {

RootedTree shifted(const RootedTree& t, int offset) {
    if (t.is_leaf()) return RootedTree::leaf(t.label() + offset);
    std::vector<RootedTree> kids;
    for (const auto& c : t.children()) kids.push_back(shifted(c, offset));
    return RootedTree::node(std::move(kids));
}

} // namespace

RootedTree graft(const RootedTree& p, const std::vector<RootedTree>& subtrees) {
    const int n = p.num_leaves();
    if (static_cast<int>(subtrees.size()) != n)
        throw std::invalid_argument("graft needs one subtree per leaf: " + std::to_string(n) + " leaves, " +
                                    std::to_string(subtrees.size()) + " subtrees");
    std::vector<int> offset(n, 0);
    for (int i = 1; i < n; ++i) offset[i] = offset[i - 1] + subtrees[i - 1].num_leaves();
    std::function<RootedTree(const RootedTree&)> build = [&](const RootedTree& t) {
        if (t.is_leaf()) return shifted(subtrees[t.label() - 1], offset[t.label() - 1]);
        std::vector<RootedTree> kids;
        for (const auto& c : t.children()) kids.push_back(build(c));
        return RootedTree::node(std::move(kids));
    };
    return build(p);
}

namespace {

// Rebuilds t with the child at `target` spliced into its parent.
RootedTree splice(const RootedTree& t, const std::function<bool(const RootedTree&)>& target, bool& found) {
    if (t.is_leaf()) return t;
    std::vector<RootedTree> kids;
    for (const auto& c : t.children()) {
        if (!found && !c.is_leaf() && target(c)) {
            found = true;
            for (const auto& g : c.children()) kids.push_back(g);
        } else {
            kids.push_back(splice(c, target, found));
        }
    }
    return RootedTree::node(std::move(kids));
}

} // namespace

RootedTree collapse(const RootedTree& p, const std::vector<int>& cluster) {
    std::vector<int> want = cluster;
    std::sort(want.begin(), want.end());
    if (want.size() == 1) throw std::invalid_argument("leaf edges cannot be collapsed");
    if (want == p.cluster()) throw std::invalid_argument("the root has no edge above it");
    bool found = false;
    RootedTree out = splice(p, [&](const RootedTree& c) { return c.cluster() == want; }, found);
    if (!found) throw std::invalid_argument("no internal edge above that cluster");
    return out;
}

RootedTree collapse_path(const RootedTree& p, const std::vector<int>& path) {
    if (path.empty()) throw std::invalid_argument("the root has no edge above it");
    const RootedTree* t = &p;
    for (int i : path) {
        if (t->is_leaf() || i < 0 || i >= static_cast<int>(t->children().size()))
            throw std::invalid_argument("path leaves the tree");
        t = &t->children()[i];
    }
    if (t->is_leaf()) throw std::invalid_argument("leaf edges cannot be collapsed");
    return collapse(p, t->cluster());
}

namespace {

void set_partitions(const std::vector<int>& items, std::vector<std::vector<int>>& blocks,
                    std::size_t next, const std::function<void()>& emit) {
    if (next == items.size()) {
        emit();
        return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        blocks[b].push_back(items[next]);
        set_partitions(items, blocks, next + 1, emit);
        blocks[b].pop_back();
    }
    blocks.push_back({items[next]});
    set_partitions(items, blocks, next + 1, emit);
    blocks.pop_back();
}

std::vector<RootedTree> trees_on(const std::vector<int>& labels) {
    if (labels.size() == 1) return {RootedTree::leaf(labels[0])};
    std::vector<RootedTree> out;
    std::vector<std::vector<int>> blocks;
    set_partitions(labels, blocks, 0, [&] {
        if (blocks.size() < 2) return;
        std::vector<std::vector<RootedTree>> options;
        for (const auto& b : blocks) options.push_back(trees_on(b));
        std::vector<std::size_t> idx(options.size(), 0);
        while (true) {
            std::vector<RootedTree> kids;
            for (std::size_t i = 0; i < options.size(); ++i) kids.push_back(options[i][idx[i]]);
            out.push_back(RootedTree::node(std::move(kids)));
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    });
    return out;
}

} // namespace

std::vector<RootedTree> enumerate_trees(int n) {
    if (n < 1) throw std::invalid_argument("a tree needs at least one leaf");
    std::vector<int> labels;
    for (int i = 1; i <= n; ++i) labels.push_back(i);
    std::vector<RootedTree> out = trees_on(labels);
    std::sort(out.begin(), out.end(),
              [](const RootedTree& a, const RootedTree& b) { return a.render() < b.render(); });
    return out;
}

ExpansionShape shape_of(const RootedTree& p) {
    ExpansionShape s;
    s.num_points = p.num_leaves();
    std::function<void(const RootedTree&)> walk = [&](const RootedTree& t) {
        const std::vector<int> parent = t.cluster();
        for (const auto& c : t.children()) {
            if (c.is_leaf()) continue;
            s.clusters.push_back({c.cluster(), parent});
            walk(c);
        }
    };
    walk(p);
    return s;
}

std::string ExpansionShape::render() const {
    if (is_rational()) return "rational";
    std::string out;
    for (const auto& c : clusters) {
        const int r = c.leaves.front();
        int o = 0;
        for (int l : c.parent_leaves)
            if (!std::binary_search(c.leaves.begin(), c.leaves.end(), l)) {
                o = l;
                break;
            }
        if (!out.empty()) out += "; ";
        for (std::size_t i = 1; i < c.leaves.size(); ++i)
            out += (i > 1 ? "," : "") + std::string("|x") + std::to_string(r) + "-x" + std::to_string(c.leaves[i]) + "|";
        out += "<<|x" + std::to_string(r) + "-x" + std::to_string(o) + "|";
    }
    return out;
}

AxiomReport check_shape_coherence(const FreeFieldAlgebra& alg, const RootedTree& p, int cutoff) {
    if (alg.dim() != 1) throw UnsupportedExpansionError("shape coherence needs region expansion, which is only defined for d = 1");
    if (p.num_leaves() != 3) throw std::invalid_argument("shape coherence is checked on 3-leaf trees");
    const SpacePtr& space = alg.space();
    const FieldElement phi = FieldElement::phi(1);
    const StateSeries sphi = StateSeries::from_element(space, phi);
    const std::vector<std::string> names{"x1", "x2"};

    AxiomReport rep;
    rep.axiom = "shape";
    rep.states = {p.render()};
    rep.cutoff = cutoff;
    rep.region = shape_of(p).render();

    // x1 = point 0, x2 = point 1, leaf 3 at the origin.
    const StateSeries composite = alg.vertex_op(phi, 0, alg.vertex_op(phi, 1, sphi));
    const std::string shape = p.render();
    if (shape == "(1,2,3)") {
        const StateSeries swapped = alg.vertex_op(phi, 1, alg.vertex_op(phi, 0, sphi));
        const Comparison c = compare_states(composite, swapped, cutoff);
        AxiomReport r = report_from("shape", rep.states, cutoff, c, rep.region);
        return r;
    }

    std::vector<int> weights;
    LinearSubstitution sub;
    sub.names = names;
    RegionOrder region;
    // inner variable index in the (x1, x2) pair, and whether the inner
    // coefficients u_k act as operators (cluster {1,2}) or as states.
    int inner = 0;
    bool inner_is_operator = false;
    if (shape == "((1,2),3)") {
        // x1 = z + x2 with z the first variable.
        sub.images = {{1, 1}, {0, 1}};
        region.ordering = {1, 0};
        inner = 0;
        inner_is_operator = true;
    } else if (shape == "((1,3),2)") {
        sub.images = {{1, 0}, {0, 1}};
        region.ordering = {1, 0};
        inner = 0;
    } else if (shape == "(1,(2,3))") {
        sub.images = {{1, 0}, {0, 1}};
        region.ordering = {0, 1};
        inner = 1;
    } else {
        throw std::invalid_argument("unknown 3-leaf tree " + shape);
    }
    weights = region.weights(2);
    const int outer = 1 - inner;

    // Iterated side: first the inner pair, sum_k t^k u_k, then the outer step
    // on each u_k.
    const std::map<int, FieldElement> u = point_coefficients(alg.vertex_op(phi, 0, sphi), cutoff);
    SeriesMap lhs;
    for (const auto& [k, uk] : u) {
        const StateSeries step = inner_is_operator ? alg.vertex_op(uk, 0, sphi) : alg.vertex_op(phi, 0, uk);
        const StateSeries m = materialize(step, cutoff - k);
        for (const auto& [mon, f] : m.terms()) {
            Polynomial terms(2);
            const LaurentSeries one_var = expand(f, RegionOrder{{0}}, 1);
            for (const auto& [e, coef] : one_var.terms().terms()) {
                Exponents ex(2, 0);
                ex[inner] = k;
                ex[outer] = e[0];
                terms.add_term(ex, coef);
            }
            auto it = lhs.try_emplace(mon, LaurentSeries(weights, names, cutoff, cutoff)).first;
            it->second += LaurentSeries::from_terms(weights, names, std::move(terms), cutoff, cutoff);
        }
    }

    // Rational side expanded in the tree's region.
    SeriesMap rhs;
    const StateSeries r = materialize(composite, cutoff);
    for (const auto& [mon, f] : r.terms())
        rhs.emplace(mon, expand(f, sub, region, cutoff));

    rep.window = cutoff;
    compare_series_maps(rep, lhs, rhs, LaurentSeries(weights, names, cutoff, cutoff));
    return rep;
}

SuiteReport run_tree_suite(const FreeFieldAlgebra& alg, int cutoff, int max_leaves) {
    SuiteReport suite;
    suite.axiom = "trees";
    suite.cutoff = cutoff;
    suite.degree = max_leaves;
    suite.region = "tree shapes";
    auto fail = [&](const std::string& condition, const std::string& what) {
        ++suite.failures;
        if (suite.failed.size() < 5) {
            AxiomReport r;
            r.axiom = "trees";
            r.states = {what};
            r.cutoff = cutoff;
            r.holds = false;
            r.detail = condition;
            r.monomial = "none";
            r.discrepancy = what;
            suite.failed.push_back(std::move(r));
        }
    };

    std::vector<std::vector<RootedTree>> by_size(max_leaves + 1);
    for (int n = 1; n <= max_leaves; ++n) by_size[n] = enumerate_trees(n);

    // All lists of trees with the given number of entries and total leaves.
    std::function<void(int, int, std::vector<RootedTree>&, const std::function<void(const std::vector<RootedTree>&)>&)>
        lists = [&](int count, int total, std::vector<RootedTree>& acc,
                    const std::function<void(const std::vector<RootedTree>&)>& emit) {
            if (count == 0) {
                if (total == 0) emit(acc);
                return;
            }
            for (int n = 1; n <= total - (count - 1); ++n)
                for (const auto& t : by_size[n]) {
                    acc.push_back(t);
                    lists(count - 1, total - n, acc, emit);
                    acc.pop_back();
                }
        };

    // graft(graft(p, qs), rs) = graft(p, [graft(q_i, rs_i)]) with at most
    // max_leaves leaves in the result.
    for (int n = 1; n <= max_leaves; ++n)
        for (const auto& p : by_size[n])
            for (int m = n; m <= max_leaves; ++m) {
                std::vector<RootedTree> qs_acc;
                lists(n, m, qs_acc, [&](const std::vector<RootedTree>& qs) {
                    const RootedTree pq = graft(p, qs);
                    for (int k = m; k <= max_leaves; ++k) {
                        std::vector<RootedTree> rs_acc;
                        lists(m, k, rs_acc, [&](const std::vector<RootedTree>& rs) {
                            ++suite.checks;
                            std::vector<RootedTree> inner;
                            std::size_t at = 0;
                            for (const auto& q : qs) {
                                const std::size_t w = q.num_leaves();
                                inner.push_back(graft(q, std::vector<RootedTree>(rs.begin() + at, rs.begin() + at + w)));
                                at += w;
                            }
                            const RootedTree left = graft(pq, rs);
                            const RootedTree right = graft(p, inner);
                            if (!(left == right)) fail("graft associativity", left.render() + " vs " + right.render());
                        });
                    }
                });
            }

    // Collapses commute, and every maximal sequence ends at the corolla.
    for (int n = 1; n <= max_leaves; ++n)
        for (const auto& t : by_size[n]) {
            const auto edges = t.internal_edges();
            for (std::size_t i = 0; i < edges.size(); ++i)
                for (std::size_t j = i + 1; j < edges.size(); ++j) {
                    ++suite.checks;
                    const RootedTree a = collapse(collapse(t, edges[i]), edges[j]);
                    const RootedTree b = collapse(collapse(t, edges[j]), edges[i]);
                    if (!(a == b)) fail("collapse commutation", t.render());
                }
            std::function<void(const RootedTree&)> down = [&](const RootedTree& s) {
                const auto es = s.internal_edges();
                if (es.empty()) {
                    ++suite.checks;
                    if (!(s == RootedTree::corolla(n))) fail("maximal collapse", t.render() + " -> " + s.render());
                    return;
                }
                for (const auto& e : es) down(collapse(s, e));
            };
            down(t);
        }

    if (alg.dim() == 1) {
        for (const auto& t : enumerate_trees(3)) {
            ++suite.checks;
            AxiomReport r = check_shape_coherence(alg, t, cutoff);
            if (!r.holds) {
                ++suite.failures;
                if (suite.failed.size() < 5) suite.failed.push_back(std::move(r));
            }
        }
    } else {
        suite.region = "tree shapes (shape coherence needs d = 1, skipped)";
    }
    return suite;
}

} // namespace vertexring
