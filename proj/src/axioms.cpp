#include "vertexring/axioms.hpp"

#include <map>
#include <random>
#include <stdexcept>

#include "vertexring/laurent.hpp"
#include "vertexring/modes.hpp"
#include "vertexring/trees.hpp"

namespace vertexring {

namespace {

std::string window_text(int w) {
    return is_infinite(w) ? "exact" : std::to_string(w);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

void require_one_dimension(const FreeFieldAlgebra& alg, const std::string& what) {
    if (alg.dim() != 1) throw UnsupportedExpansionError(what + " needs region expansion, which is only defined for d = 1");
}

} // namespace

std::string AxiomReport::render() const {
    std::string out;
    out += "axiom=" + axiom + "\n";
    out += "states=" + join(states, "; ") + "\n";
    out += "cutoff=" + std::to_string(cutoff) + "\n";
    out += "region=" + region + "\n";
    out += std::string("verdict=") + (holds ? "holds" : "fails") + "\n";
    if (holds) {
        out += std::string("certified=") + (exact ? "exact" : "window " + window_text(window)) + "\n";
    } else {
        if (!detail.empty()) out += "condition=" + detail + "\n";
        out += "monomial=" + monomial + "\n";
        out += "monomial_degree=" + std::to_string(monomial_degree) + "\n";
        out += "discrepancy=" + discrepancy + "\n";
        out += "discrepancy_degree=" + std::to_string(discrepancy_degree) + "\n";
    }
    return out;
}

AxiomReport report_from(const std::string& axiom, std::vector<std::string> states, int cutoff, const Comparison& c,
                        std::string region) {
    AxiomReport r;
    r.axiom = axiom;
    r.states = std::move(states);
    r.cutoff = cutoff;
    r.region = std::move(region);
    r.holds = c.holds;
    r.exact = c.exact;
    r.window = c.window;
    r.monomial = c.monomial;
    r.monomial_degree = c.monomial_degree;
    r.discrepancy = c.discrepancy;
    r.discrepancy_degree = c.discrepancy_degree;
    return r;
}

AxiomReport check_identity(const FreeFieldAlgebra& alg, const FieldElement& b, int cutoff) {
    const StateSeries s = StateSeries::from_element(alg.space(), b);
    const StateSeries lhs = alg.vertex_op(FieldElement::one(alg.dim()), 0, s);
    return report_from("identity", {b.render()}, cutoff, compare_states(lhs, s.embedded(1), cutoff));
}

AxiomReport check_commutativity(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b,
                                const FieldElement& c, int cutoff) {
    const StateSeries sc = StateSeries::from_element(alg.space(), c);
    const StateSeries lhs = alg.vertex_op(a, 0, alg.vertex_op(b, 1, sc));
    const StateSeries rhs = alg.vertex_op(b, 1, alg.vertex_op(a, 0, sc));
    return report_from("commutativity", {a.render(), b.render(), c.render()}, cutoff, compare_states(lhs, rhs, cutoff));
}

namespace {

// Laurent coefficients of a one-point function (exact in one variable).
Polynomial single_point_terms(const SingularFunction& f) {
    return expand(f, RegionOrder{{0}}, 1).terms();
}

} // namespace

std::map<int, FieldElement> point_coefficients(const StateSeries& s, int cutoff) {
    std::map<int, FieldElement> u;
    const StateSeries m = materialize(s, cutoff);
    for (const auto& [mon, f] : m.terms()) {
        const Polynomial terms = single_point_terms(f);
        for (const auto& [e, coef] : terms.terms()) {
            if (e[0] >= cutoff) continue;
            u.try_emplace(e[0], FieldElement(static_cast<int>(s.space()->dim()))).first->second.add_term(mon, coef);
        }
    }
    return u;
}

void compare_series_maps(AxiomReport& rep, const SeriesMap& lhs, const SeriesMap& rhs, const LaurentSeries& zero) {
    SeriesMap diffs = lhs;
    for (const auto& [mon, s] : rhs) {
        auto it = diffs.find(mon);
        if (it == diffs.end()) diffs.emplace(mon, zero - s);
        else it->second -= s;
    }
    const FieldMonomial* first = nullptr;
    for (const auto& [mon, s] : diffs)
        if (!s.is_zero() && (!first || discrepancy_before(mon, *first))) first = &mon;
    rep.holds = first == nullptr;
    if (first) {
        const LaurentSeries& s = diffs.at(*first);
        rep.monomial = first->empty() ? "1" : render_monomial(*first);
        rep.monomial_degree = degree(*first);
        rep.discrepancy = s.render();
        rep.discrepancy_degree = s.valuation();
    }
}

AxiomReport check_associativity(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b,
                                const FieldElement& c, int cutoff) {
    require_one_dimension(alg, "associativity");
    const std::string region = "|y|>>|x|";
    const std::vector<int> weights{1, 0};
    const std::vector<std::string> names{"x", "y"};
    const SpacePtr& space = alg.space();
    const StateSeries sb = StateSeries::from_element(space, b);
    const StateSeries sc = StateSeries::from_element(space, c);

    // Left: Y(a,x)b = sum_k x^k u_k, then sum_k x^k Y(u_k, y) c.
    const std::map<int, FieldElement> u = point_coefficients(alg.vertex_op(a, 0, sb), cutoff);
    SeriesMap lhs;
    for (const auto& [k, uk] : u) {
        const StateSeries g = materialize(alg.vertex_op(uk, 0, sc), cutoff - k);
        for (const auto& [mon, f] : g.terms()) {
            Polynomial p(2);
            const Polynomial terms = single_point_terms(f);
            for (const auto& [e, coef] : terms.terms()) p.add_term({k, e[0]}, coef);
            LaurentSeries piece = LaurentSeries::from_terms(weights, names, std::move(p), cutoff, cutoff);
            auto it = lhs.try_emplace(mon, LaurentSeries(weights, names, cutoff, cutoff)).first;
            it->second += piece;
        }
    }

    // Right: Y(a,z)Y(b,y)c with z = x + y, expanded with |y| outermost.
    const StateSeries r = materialize(alg.vertex_op(a, 0, alg.vertex_op(b, 1, sc)), cutoff);
    LinearSubstitution sub;
    sub.images = {{1, 1}, {0, 1}};
    sub.names = names;
    SeriesMap rhs;
    for (const auto& [mon, f] : r.terms()) rhs.emplace(mon, expand(f, sub, RegionOrder{{1, 0}}, cutoff));

    AxiomReport rep;
    rep.axiom = "associativity";
    rep.states = {a.render(), b.render(), c.render()};
    rep.cutoff = cutoff;
    rep.region = region;
    rep.window = cutoff;
    compare_series_maps(rep, lhs, rhs, LaurentSeries(weights, names, cutoff, cutoff));
    return rep;
}

AxiomReport check_skew(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b, int cutoff) {
    require_one_dimension(alg, "skew symmetry");
    const StateSeries lhs = materialize(alg.vertex_op(a, 0, b), cutoff);
    const StateSeries swapped = materialize(alg.vertex_op(b, 0, a), cutoff);
    const StateSeries rhs = translate_series(reflect(swapped), 0, cutoff);
    return report_from("skew", {a.render(), b.render()}, cutoff, compare_states(lhs, rhs, cutoff));
}

AxiomReport check_bilinear_invariance(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b,
                                      int cutoff) {
    const SpacePtr& space = alg.space();
    const StateSeries one = StateSeries::from_element(space, FieldElement::one(alg.dim()));
    auto m = [&](const FieldElement& p, const FieldElement& q) { return alg.vertex_op(p, 0, alg.vertex_op(q, 1, one)); };
    const StateSeries base = m(a, b);
    const std::vector<std::string> states{a.render(), b.render()};
    Comparison last;
    last.exact = true;
    for (int u = 0; u < alg.dim(); ++u) {
        const StateSeries dx = diff_point(base, 0, u);
        const StateSeries dy = diff_point(base, 1, u);
        const std::string tag = " u=" + std::to_string(u);
        const std::pair<std::string, Comparison> conds[] = {
            {"(i)" + tag, compare_states(m(apply_D(u, a), b), dx, cutoff)},
            {"(ii)" + tag, compare_states(m(a, apply_D(u, b)), dy, cutoff)},
            {"(iii)" + tag, compare_states(apply_D(u, base), dx + dy, cutoff)},
        };
        for (const auto& [name, c] : conds) {
            if (!c.holds) {
                AxiomReport r = report_from("invariance", states, cutoff, c);
                r.detail = name;
                return r;
            }
            if (!c.exact) last = c;
        }
    }
    return report_from("invariance", states, cutoff, last);
}

AxiomReport check_commutator_relation(const FreeFieldAlgebra& alg, const FieldElement& s) {
    const SpacePtr& space = alg.space();
    const MultiIndex zero(alg.dim(), 0);
    const StateSeries st = StateSeries::from_element(space, s);
    const StateSeries delta_s = st.embedded(2).times(alg.propagator().delta().pullback_difference(2, 0, 1));
    const StateSeries minus_plus =
        alg.annihilate(zero, 0, alg.create(zero, 1, st)) - alg.create(zero, 1, alg.annihilate(zero, 0, st));
    Comparison c = compare_states(minus_plus, delta_s, 0);
    if (!c.holds) {
        AxiomReport r = report_from("commutator", {s.render()}, 0, c);
        r.detail = "[phi^-(x),phi^+(y)]";
        return r;
    }
    const StateSeries plus_minus =
        alg.create(zero, 0, alg.annihilate(zero, 1, st)) - alg.annihilate(zero, 1, alg.create(zero, 0, st));
    c = compare_states(plus_minus, -delta_s, 0);
    AxiomReport r = report_from("commutator", {s.render()}, 0, c);
    if (!c.holds) r.detail = "[phi^+(x),phi^-(y)]";
    return r;
}

AxiomReport check_field_commutativity(const FreeFieldAlgebra& alg, const FieldElement& s) {
    const StateSeries st = StateSeries::from_element(alg.space(), s, 2);
    const StateSeries xy = alg.phi(0, alg.phi(1, st));
    const StateSeries yx = alg.phi(1, alg.phi(0, st));
    return report_from("field-commutativity", {s.render()}, 0, compare_states(xy, yx, 0));
}

std::string SuiteReport::render() const {
    std::string out;
    out += "suite=" + axiom + "\n";
    out += "degree=" + std::to_string(degree) + "\n";
    out += "cutoff=" + std::to_string(cutoff) + "\n";
    out += "region=" + region + "\n";
    out += "checks=" + std::to_string(checks) + "\n";
    out += "failures=" + std::to_string(failures) + "\n";
    out += std::string("verdict=") + (holds() ? "holds" : "fails") + "\n";
    for (const auto& f : failed) out += "\n" + f.render();
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"identity",  "commutativity",       "associativity",
                                                "skew",      "invariance",          "order1",
                                                "double-integral", "trees",         "commutator",
                                                "field-commutativity"};
    return names;
}

SuiteReport run_suite(const FreeFieldAlgebra& alg, const std::string& axiom, int degree, int cutoff, int samples,
                      std::uint64_t seed) {
    if (axiom == "trees") return run_tree_suite(alg, cutoff);
    int arity = 0;
    if (axiom == "identity" || axiom == "commutator" || axiom == "field-commutativity") arity = 1;
    else if (axiom == "skew" || axiom == "invariance" || axiom == "order1" || axiom == "double-integral") arity = 2;
    else if (axiom == "commutativity" || axiom == "associativity") arity = 3;
    else throw std::invalid_argument("unknown axiom: " + axiom);
    if (axiom == "associativity") require_one_dimension(alg, "associativity");
    if (axiom == "skew") require_one_dimension(alg, "skew symmetry");
    if (axiom == "order1" || axiom == "double-integral") require_one_dimension(alg, "the residue identities");

    SuiteReport suite;
    suite.axiom = axiom;
    suite.degree = degree;
    suite.cutoff = cutoff;
    const std::vector<FieldElement> basis = graded_basis_elements(alg.dim(), degree);
    const std::vector<FieldElement> extra =
        arity == 2 && (axiom == "order1" || axiom == "double-integral") ? graded_basis_elements(alg.dim(), degree + 1)
                                                                        : std::vector<FieldElement>{};
    auto run = [&](const std::vector<const FieldElement*>& t) {
        if (axiom == "identity") return check_identity(alg, *t[0], cutoff);
        if (axiom == "commutator") return check_commutator_relation(alg, *t[0]);
        if (axiom == "field-commutativity") return check_field_commutativity(alg, *t[0]);
        if (axiom == "skew") return check_skew(alg, *t[0], *t[1], cutoff);
        if (axiom == "invariance") return check_bilinear_invariance(alg, *t[0], *t[1], cutoff);
        if (axiom == "order1") return check_order1(alg, *t[0], *t[1], extra, cutoff);
        if (axiom == "double-integral") return check_double_integral(alg, *t[0], *t[1], extra, cutoff);
        if (axiom == "commutativity") return check_commutativity(alg, *t[0], *t[1], *t[2], cutoff);
        return check_associativity(alg, *t[0], *t[1], *t[2], cutoff);
    };
    auto record = [&](AxiomReport r) {
        ++suite.checks;
        suite.region = r.region;
        if (!r.holds) {
            ++suite.failures;
            if (suite.failed.size() < 5) suite.failed.push_back(std::move(r));
        }
    };
    const std::size_t n = basis.size();
    std::vector<const FieldElement*> tuple(arity);
    if (samples > 0) {
        std::mt19937_64 rng(seed);
        for (int s = 0; s < samples; ++s) {
            for (auto& p : tuple) p = &basis[rng() % n];
            record(run(tuple));
        }
    } else {
        std::vector<std::size_t> idx(arity, 0);
        while (true) {
            for (int i = 0; i < arity; ++i) tuple[i] = &basis[idx[i]];
            record(run(tuple));
            int i = arity - 1;
            while (i >= 0 && ++idx[i] == n) idx[i--] = 0;
            if (i < 0) break;
        }
    }
    return suite;
}

} // namespace vertexring
