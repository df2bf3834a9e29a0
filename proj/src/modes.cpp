#include "vertexring/modes.hpp"

#include "vertexring/laurent.hpp"

namespace vertexring {

namespace {

void require_one_dimension(const FreeFieldAlgebra& alg) {
    if (alg.dim() != 1) throw UnsupportedExpansionError("modes are only defined for d = 1");
}

const char* kRegion = "|x| outermost";

} // namespace

FieldElement mode(const FreeFieldAlgebra& alg, const FieldElement& a, int n, const FieldElement& s, int cutoff) {
    require_one_dimension(alg);
    if (cutoff <= -1 - n) throw WindowError("cutoff does not certify the x^" + std::to_string(-1 - n) + " coefficient");
    const SpacePtr& space = alg.space();
    const StateSeries ys = materialize(alg.vertex_op(a, 0, s), cutoff);
    const SingularFunction xn = SingularFunction::factor_power(space, 1, Factor::point(0), n);
    FieldElement out(alg.dim());
    for (const auto& [mon, f] : ys.terms()) {
        const SingularFunction g = f * xn;
        Rational value;
        if (g.is_exact() || g.window() >= 1) {
            const LaurentSeries res = residue(expand(g, RegionOrder{{0}}, 1), 0);
            value = res.terms().coefficient({});
        } else {
            value = residue_outer(g, 0).polynomial_coefficient({});
        }
        out.add_term(mon, value);
    }
    return out;
}

StateSeries mode_series(const FreeFieldAlgebra& alg, const FieldElement& a, int n, const StateSeries& s, int cutoff) {
    require_one_dimension(alg);
    const SpacePtr& space = alg.space();
    const int x = s.num_points();
    const StateSeries expanded = materialize(alg.vertex_op(a, x, s), cutoff, x);
    const SingularFunction xn = SingularFunction::factor_power(space, x + 1, Factor::point(x), n);
    StateSeries out(space, x, saturating_add(expanded.window(), n + 1));
    for (const auto& [mon, f] : expanded.terms()) {
        for (const auto& g : mon)
            if (g.anchor == x) throw std::logic_error("unexpanded anchor at the integration point");
        out.add_term(mon, residue_outer(f * xn, x));
    }
    return out;
}

AxiomReport check_order1(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b,
                         const std::vector<FieldElement>& samples, int cutoff) {
    require_one_dimension(alg);
    const FieldElement ab = mode(alg, a, 0, b, cutoff);
    AxiomReport last;
    last.axiom = "order1";
    last.states = {a.render(), b.render()};
    last.cutoff = cutoff;
    last.region = kRegion;
    for (const auto& c : samples) {
        const StateSeries sc = StateSeries::from_element(alg.space(), c);
        const StateSeries outer = mode_series(alg, a, 0, alg.vertex_op(b, 0, sc), cutoff);
        const StateSeries inner = alg.vertex_op(b, 0, mode(alg, a, 0, c, cutoff));
        const StateSeries rhs = alg.vertex_op(ab, 0, sc);
        const Comparison cmp = compare_states(outer - inner, rhs, cutoff);
        AxiomReport r = report_from("order1", {a.render(), b.render(), c.render()}, cutoff, cmp, kRegion);
        if (!r.holds) return r;
        last.window = std::min(last.window, r.window);
    }
    return last;
}

AxiomReport check_double_integral(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b,
                                  const std::vector<FieldElement>& samples, int cutoff) {
    require_one_dimension(alg);
    const FieldElement ab = mode(alg, a, 0, b, cutoff);
    AxiomReport last;
    last.axiom = "double-integral";
    last.states = {a.render(), b.render()};
    last.cutoff = cutoff;
    last.region = kRegion;
    last.exact = true;
    for (const auto& c : samples) {
        const FieldElement lhs =
            mode(alg, a, 0, mode(alg, b, 0, c, cutoff), cutoff) - mode(alg, b, 0, mode(alg, a, 0, c, cutoff), cutoff);
        const FieldElement rhs = mode(alg, ab, 0, c, cutoff);
        const FieldElement diff = lhs - rhs;
        if (!diff.is_zero()) {
            AxiomReport r = last;
            r.states.push_back(c.render());
            r.holds = false;
            r.exact = false;
            FieldMonomial first;
            bool have = false;
            for (const auto& [mon, v] : diff.terms())
                if (!have || discrepancy_before(mon, first)) {
                    first = mon;
                    have = true;
                }
            r.monomial = first.empty() ? "1" : render_monomial(first);
            r.monomial_degree = degree(first);
            r.discrepancy = to_string(diff.coefficient(first));
            r.discrepancy_degree = 0;
            return r;
        }
    }
    return last;
}

} // namespace vertexring
