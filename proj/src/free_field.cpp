#include "vertexring/free_field.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace vertexring {

bool is_even_function(const SingularFunction& f) {
    return f.equals(f.reflected());
}

Propagator Propagator::checked(SingularFunction delta) {
    if (delta.num_points() != 1) throw std::invalid_argument("a propagator is a function of one point");
    if (!delta.is_exact()) throw std::invalid_argument("a propagator must be exact");
    for (const auto& [den, num] : delta.parts())
        for (const auto& [fac, e] : den)
            if (fac.is_pair()) throw std::invalid_argument("a propagator may only use per-point factors");
    if (!is_even_function(delta)) throw std::invalid_argument("propagator is not even: Delta(x) != Delta(-x)");
    return Propagator(std::move(delta), true);
}

Propagator Propagator::unchecked(SingularFunction delta) {
    if (delta.num_points() != 1) throw std::invalid_argument("a propagator is a function of one point");
    for (const auto& [den, num] : delta.parts())
        for (const auto& [fac, e] : den)
            if (fac.is_pair()) throw std::invalid_argument("a propagator may only use per-point factors");
    const bool even = is_even_function(delta);
    return Propagator(std::move(delta), even);
}

Propagator Propagator::standard(SpacePtr space) {
    const int power = space->dim() == 1 ? -2 : -1;
    return checked(SingularFunction::factor_power(space, 1, Factor::point(0), power));
}

FreeFieldAlgebra::FreeFieldAlgebra(SpacePtr space, Propagator propagator, SignConvention sign)
    : space_(std::move(space)), propagator_(std::move(propagator)), sign_(sign) {
    if (!same_space(space_, propagator_.delta().space()))
        throw SpecMismatchError("propagator lives in a different space");
    const int d = space_->dim();
    table_order_ = d == 1 ? 12 : (d == 2 ? 8 : 6);
    derivatives_.emplace(MultiIndex(d, 0), propagator_.delta());
    for (int n = 1; n <= table_order_; ++n) {
        for (const auto& gamma : multi_indices_of_order(d, n)) {
            int u = 0;
            while (gamma[u] == 0) ++u;
            MultiIndex prev = gamma;
            --prev[u];
            derivatives_.emplace(gamma, derivatives_.at(prev).derivative(0, u));
        }
    }
}

FreeFieldAlgebra FreeFieldAlgebra::standard(const SpacetimeSpec& spacetime) {
    SpacePtr space = make_space(spacetime);
    return FreeFieldAlgebra(space, Propagator::standard(space));
}

SingularFunction FreeFieldAlgebra::delta_derivative(const MultiIndex& gamma) const {
    if (static_cast<int>(gamma.size()) != dim()) throw SpecMismatchError("multi-index dimension mismatch");
    auto it = derivatives_.find(gamma);
    if (it != derivatives_.end()) return it->second;
    // Beyond the table: differentiate the largest tabulated ancestor.
    MultiIndex base = gamma;
    int excess = order(gamma) - table_order_;
    for (int u = dim() - 1; u >= 0 && excess > 0; --u) {
        const int take = std::min(base[u], excess);
        base[u] -= take;
        excess -= take;
    }
    SingularFunction f = derivatives_.at(base);
    for (int u = 0; u < dim(); ++u)
        for (int k = base[u]; k < gamma[u]; ++k) f = f.derivative(0, u);
    return f;
}

SingularFunction FreeFieldAlgebra::contraction(const MultiIndex& alpha, int point, const Generator& g,
                                               int num_points) const {
    if (g.anchor == point) throw std::invalid_argument("annihilation at the generator's own anchor point");
    SingularFunction f = delta_derivative(alpha + g.alpha);
    SingularFunction r = f.pullback_difference(num_points, point, g.anchor == kOrigin ? -1 : g.anchor);
    if (sign_ == SignConvention::alternating && (order(g.alpha) & 1)) r = -r;
    return r;
}

StateSeries FreeFieldAlgebra::annihilate(const MultiIndex& alpha, int point, const StateSeries& s) const {
    if (!s.is_zero() && !is_infinite(s.window())) throw std::invalid_argument("annihilation needs an exact state");
    if (!same_space(space_, s.space())) throw SpecMismatchError("state lives in a different space");
    const int m = std::max(s.num_points(), point + 1);
    StateSeries r(space_, m);
    for (const auto& [mon, c] : s.terms()) {
        const SingularFunction coef = c.embedded(m);
        for (std::size_t i = 0; i < mon.size(); ++i) {
            if (i > 0 && mon[i] == mon[i - 1]) continue;
            std::size_t mult = 1;
            while (i + mult < mon.size() && mon[i + mult] == mon[i]) ++mult;
            FieldMonomial rest = mon;
            rest.erase(rest.begin() + static_cast<long>(i));
            r.add_term(rest, coef * contraction(alpha, point, mon[i], m) * Rational(static_cast<long>(mult)));
        }
    }
    return r;
}

StateSeries FreeFieldAlgebra::create(const MultiIndex& alpha, int point, const StateSeries& s) const {
    const int m = std::max(s.num_points(), point + 1);
    return s.embedded(m).times_monomial({Generator{alpha, point}});
}

StateSeries FreeFieldAlgebra::phi_plus(int point, const StateSeries& s, int cutoff) const {
    return materialize(create(MultiIndex(dim(), 0), point, s), cutoff, point);
}

StateSeries FreeFieldAlgebra::phi_minus(int point, const StateSeries& s, int cutoff) const {
    return materialize(annihilate(MultiIndex(dim(), 0), point, s), cutoff, point);
}

StateSeries FreeFieldAlgebra::phi_apply(int point, const StateSeries& s, int cutoff) const {
    return materialize(phi(point, s), cutoff, point);
}

StateSeries FreeFieldAlgebra::phi(int point, const StateSeries& s) const {
    const MultiIndex zero(dim(), 0);
    return create(zero, point, s) + annihilate(zero, point, s);
}

StateSeries FreeFieldAlgebra::vertex_op(const FieldElement& v, int point, const StateSeries& s) const {
    if (v.dim() != dim()) throw SpecMismatchError("field element dimension does not match the algebra");
    if (!s.is_zero() && !is_infinite(s.window())) throw std::invalid_argument("vertex operators need an exact state");
    const int m = std::max(s.num_points(), point + 1);
    const StateSeries base = s.embedded(m);
    StateSeries result(space_, m);
    for (const auto& [mon, coef] : v.terms()) {
        if (!is_plain(mon)) throw std::invalid_argument("vertex operators of anchored states are not defined");
        std::vector<std::pair<MultiIndex, int>> gens;
        for (const auto& g : mon) {
            if (!gens.empty() && gens.back().first == g.alpha)
                ++gens.back().second;
            else
                gens.emplace_back(g.alpha, 1);
        }
        // Choose how many copies of each factor annihilate; the rest create.
        std::function<void(std::size_t, const StateSeries&, Rational, FieldMonomial)> rec =
            [&](std::size_t j, const StateSeries& state, Rational weight, FieldMonomial created) {
                if (state.is_zero()) return;
                if (j == gens.size()) {
                    StateSeries term = state.times_monomial(make_monomial(std::move(created)));
                    term *= weight;
                    result += term;
                    return;
                }
                const auto& [alpha, mu] = gens[j];
                StateSeries cur = state;
                for (int k = 0; k <= mu; ++k) {
                    FieldMonomial c = created;
                    for (int i = 0; i < mu - k; ++i) c.push_back(Generator{alpha, point});
                    rec(j + 1, cur, weight * binomial(Rational(mu), k), std::move(c));
                    if (k < mu) cur = annihilate(alpha, point, cur);
                    if (cur.is_zero()) break;
                }
            };
        rec(0, base, coef, {});
    }
    return result;
}

StateSeries FreeFieldAlgebra::vertex_op(const FieldElement& v, int point, const FieldElement& s) const {
    return vertex_op(v, point, StateSeries::from_element(space_, s));
}

StateSeries FreeFieldAlgebra::product_at_points(int k) const {
    if (k < 0) throw std::invalid_argument("number of insertions must be non-negative");
    StateSeries s = StateSeries::from_element(space_, FieldElement::one(dim()), k);
    for (int i = k - 1; i >= 0; --i) s = phi(i, s);
    return s;
}

SingularFunction FreeFieldAlgebra::correlator(int k) const {
    const StateSeries s = product_at_points(k);
    return s.coefficient({});
}

SingularFunction wick_oracle(const Propagator& propagator, int k) {
    if (k < 0) throw std::invalid_argument("number of insertions must be non-negative");
    const SingularFunction& delta = propagator.delta();
    SingularFunction total(delta.space(), k);
    if (k % 2 == 1) return total;
    std::vector<bool> used(k, false);
    std::function<void(SingularFunction)> rec = [&](SingularFunction acc) {
        int i = 0;
        while (i < k && used[i]) ++i;
        if (i == k) {
            total += acc;
            return;
        }
        used[i] = true;
        for (int j = i + 1; j < k; ++j) {
            if (used[j]) continue;
            used[j] = true;
            rec(acc * delta.pullback_difference(k, i, j));
            used[j] = false;
        }
        used[i] = false;
    };
    rec(SingularFunction::constant(delta.space(), k, 1));
    return total;
}

StateSeries materialize(const StateSeries& s, int cutoff, std::optional<int> point) {
    const int window = std::min(s.window(), cutoff);
    const int m = s.num_points();
    const int d = s.dim();
    StateSeries r(s.space(), m, window);
    for (const auto& [mon, f] : s.terms()) {
        FieldMonomial fixed;
        std::vector<Generator> expand;
        for (const auto& g : mon) {
            if (g.anchor != kOrigin && (!point || g.anchor == *point))
                expand.push_back(g);
            else
                fixed.push_back(g);
        }
        if (expand.empty()) {
            r.add_term(mon, f);
            continue;
        }
        const int budget = is_infinite(window) ? kInfinite : window - f.valuation();
        if (is_infinite(budget)) throw std::invalid_argument("materializing anchors needs a finite cutoff");
        if (budget <= 0) continue;
        struct Partial {
            FieldMonomial gens;
            Exponents e;
            Rational c;
            int used;
        };
        std::vector<Partial> partials{{{}, Exponents(static_cast<std::size_t>(m) * d, 0), 1, 0}};
        for (const auto& g : expand) {
            std::vector<Partial> next;
            for (const auto& p : partials) {
                for (const auto& beta : multi_indices_below(d, budget - p.used)) {
                    Partial q = p;
                    q.gens.push_back(Generator{g.alpha + beta, kOrigin});
                    for (int u = 0; u < d; ++u) q.e[g.anchor * d + u] += beta[u];
                    q.c /= index_factorial(beta);
                    q.used += order(beta);
                    next.push_back(std::move(q));
                }
            }
            partials = std::move(next);
        }
        for (auto& p : partials) {
            FieldMonomial full = multiply(make_monomial(fixed), make_monomial(std::move(p.gens)));
            r.add_term(full, f.times_monomial(p.e, p.c));
        }
    }
    return r;
}

StateSeries diff_point(const StateSeries& s, int point, int coord) {
    if (point < 0 || point >= s.num_points()) throw std::out_of_range("point index out of range");
    const MultiIndex e = unit_index(s.dim(), coord);
    StateSeries r(s.space(), s.num_points(), saturating_add(s.window(), -1));
    for (const auto& [mon, c] : s.terms()) {
        r.add_term(mon, c.derivative(point, coord));
        for (std::size_t i = 0; i < mon.size(); ++i) {
            if (mon[i].anchor != point) continue;
            if (i > 0 && mon[i] == mon[i - 1]) continue;
            std::size_t mult = 1;
            while (i + mult < mon.size() && mon[i + mult] == mon[i]) ++mult;
            FieldMonomial n = mon;
            n[i].alpha = n[i].alpha + e;
            r.add_term(make_monomial(std::move(n)), c * Rational(static_cast<long>(mult)));
        }
    }
    return r;
}

StateSeries reflect(const StateSeries& s) {
    if (!s.is_plain()) throw std::invalid_argument("reflection of anchored generators is not supported");
    StateSeries r(s.space(), s.num_points(), s.window());
    for (const auto& [mon, c] : s.terms()) r.add_term(mon, c.reflected());
    return r;
}

Comparison compare_states(const StateSeries& a, const StateSeries& b, int cutoff) {
    Comparison out;
    auto nonvanishing = [](const StateSeries& s) {
        std::vector<const FieldMonomial*> out;
        for (const auto& [mon, c] : s.terms())
            if (!c.vanishes()) out.push_back(&mon);
        return out;
    };
    StateSeries diff = a - b;
    out.window = std::min({a.window(), b.window(), cutoff});
    if (nonvanishing(diff).empty()) {
        out.window = std::min(a.window(), b.window());
        out.exact = is_infinite(out.window);
        if (!out.exact) out.window = std::min(out.window, cutoff);
        return out;
    }
    if (!diff.is_plain()) diff = materialize(diff, out.window);
    diff = diff.with_window(out.window);
    const auto bad = nonvanishing(diff);
    if (bad.empty()) return out;
    const FieldMonomial* first = nullptr;
    for (const auto* mon : bad)
        if (!first || discrepancy_before(*mon, *first)) first = mon;
    const SingularFunction& c = diff.terms().at(*first);
    std::vector<std::string> names;
    for (int p = 0; p < diff.num_points(); ++p) names.push_back(diff.space()->point_name(p));
    out.holds = false;
    out.monomial = first->empty() ? "1" : render_monomial(*first, &names);
    out.monomial_degree = degree(*first);
    out.discrepancy = c.render();
    out.discrepancy_degree = c.valuation();
    out.discrepancy_value = c;
    return out;
}

} // namespace vertexring
