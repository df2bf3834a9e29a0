#include "vertexring/state_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace vertexring {

StateSeries::StateSeries(SpacePtr space, int num_points, int window)
    : space_(std::move(space)), num_points_(num_points), window_(window) {
    if (!space_) throw std::invalid_argument("state series needs a space");
}

StateSeries StateSeries::from_element(SpacePtr space, const FieldElement& v, int num_points) {
    if (v.dim() != space->dim()) throw SpecMismatchError("field element dimension does not match the space");
    StateSeries s(space, num_points);
    for (const auto& [m, c] : v.terms()) s.add_term(m, SingularFunction::constant(space, num_points, c));
    return s;
}

StateSeries StateSeries::from_monomial(SpacePtr space, int num_points, FieldMonomial m, SingularFunction coefficient) {
    StateSeries s(std::move(space), num_points);
    s.add_term(make_monomial(std::move(m)), coefficient);
    return s;
}

bool StateSeries::is_plain() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return vertexring::is_plain(t.first); });
}

SingularFunction StateSeries::coefficient(const FieldMonomial& m) const {
    auto it = terms_.find(m);
    if (it == terms_.end()) return SingularFunction(space_, num_points_).with_window(window_);
    return it->second;
}

void StateSeries::add_term(const FieldMonomial& m, const SingularFunction& c) {
    if (c.num_points() > num_points_) throw SpecMismatchError("coefficient has more points than the series");
    if (c.is_zero()) return;
    SingularFunction value = c.num_points() == num_points_ ? c : c.embedded(num_points_);
    if (!is_infinite(window_)) value = value.with_window(window_);
    if (value.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, std::move(value));
        return;
    }
    it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
}

void StateSeries::check_compatible(const StateSeries& other) const {
    if (!same_space(space_, other.space_)) throw SpecMismatchError("state series live in different spaces");
}

StateSeries& StateSeries::operator+=(const StateSeries& other) {
    check_compatible(other);
    if (other.num_points_ > num_points_) *this = embedded(other.num_points_);
    if (other.window_ < window_) *this = with_window(other.window_);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

StateSeries& StateSeries::operator-=(const StateSeries& other) {
    return *this += -other;
}

StateSeries& StateSeries::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, f] : terms_) f *= c;
    return *this;
}

StateSeries StateSeries::operator-() const {
    StateSeries r = *this;
    for (auto& [m, f] : r.terms_) f = -f;
    return r;
}

StateSeries StateSeries::times(const StateSeries& other) const {
    check_compatible(other);
    const int m = std::max(num_points_, other.num_points_);
    int val_a = kInfinite, val_b = kInfinite;
    for (const auto& [mon, f] : terms_) val_a = std::min(val_a, f.valuation());
    for (const auto& [mon, f] : other.terms_) val_b = std::min(val_b, f.valuation());
    const int window = std::min(saturating_add(window_, val_b), saturating_add(other.window_, val_a));
    StateSeries r(space_, m, window);
    for (const auto& [ma, fa] : terms_) {
        const SingularFunction a = fa.embedded(m);
        for (const auto& [mb, fb] : other.terms_) r.add_term(multiply(ma, mb), a * fb.embedded(m));
    }
    return r;
}

StateSeries StateSeries::times(const SingularFunction& f) const {
    const int m = std::max(num_points_, f.num_points());
    int val = kInfinite;
    for (const auto& [mon, c] : terms_) val = std::min(val, c.valuation());
    const int window = std::min(saturating_add(window_, f.valuation()), saturating_add(f.window(), val));
    StateSeries r(space_, m, window);
    const SingularFunction g = f.embedded(m);
    for (const auto& [mon, c] : terms_) r.add_term(mon, c.embedded(m) * g);
    return r;
}

StateSeries StateSeries::times_monomial(const FieldMonomial& mon) const {
    StateSeries r(space_, num_points_, window_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(multiply(m, mon), c);
    return r;
}

StateSeries StateSeries::embedded(int num_points) const {
    if (num_points == num_points_) return *this;
    StateSeries r(space_, num_points, window_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.embedded(num_points));
    return r;
}

StateSeries StateSeries::with_window(int window) const {
    StateSeries r(space_, num_points_, std::min(window_, window));
    for (const auto& [m, c] : terms_) r.add_term(m, c);
    return r;
}

FieldElement StateSeries::to_field_element() const {
    if (window_ <= 0) throw WindowError("window too small to certify constant coefficients");
    FieldElement v(dim());
    for (const auto& [m, c] : terms_) {
        if (!vertexring::is_plain(m)) throw std::invalid_argument("anchored generators are not field elements");
        if (c.window() <= 0) throw WindowError("window too small to certify constant coefficients");
        if (!c.is_polynomial() || c.polynomial().max_degree() > 0)
            throw std::invalid_argument("coefficient is not a constant");
        v.add_term(m, c.polynomial_coefficient(Exponents(c.num_vars(), 0)));
    }
    return v;
}

namespace {

std::vector<const StateSeries::Terms::value_type*> ordered(const StateSeries::Terms& terms) {
    std::vector<const StateSeries::Terms::value_type*> out;
    for (const auto& t : terms) out.push_back(&t);
    std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return monomial_before(a->first, b->first); });
    return out;
}

std::vector<std::string> point_names(const SingularSpace& space, int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(space.point_name(i));
    return names;
}

bool has_top_level_sum(const std::string& s) {
    int depth = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        else if (ch == ')') --depth;
        else if (ch == ' ' && depth == 0) return true;
    }
    return false;
}

} // namespace

std::string StateSeries::render() const {
    if (terms_.empty()) return "0";
    const auto names = point_names(*space_, num_points_);
    std::string out;
    for (const auto* t : ordered(terms_)) {
        std::string coef = t->second.render();
        const std::string mon = render_monomial(t->first, &names);
        std::string body;
        if (mon.empty()) {
            body = coef;
        } else if (coef == "1") {
            body = mon;
        } else if (coef == "-1") {
            body = "-" + mon;
        } else if (has_top_level_sum(coef)) {
            body = "(" + coef + ")*" + mon;
        } else {
            body = coef + "*" + mon;
        }
        if (out.empty()) {
            out = body;
        } else if (body[0] == '-') {
            out += " - " + body.substr(1);
        } else {
            out += " + " + body;
        }
    }
    return out;
}

std::string StateSeries::render_structured() const {
    const auto names = point_names(*space_, num_points_);
    std::string out;
    for (const auto* t : ordered(terms_)) {
        const std::string mon = t->first.empty() ? "1" : render_monomial(t->first, &names);
        out += "monomial=" + mon + " coefficient=" + t->second.render() + "\n";
    }
    out += "window=" + (is_infinite(window_) ? std::string("exact") : std::to_string(window_)) + "\n";
    return out;
}

StateSeries apply_D(int coord, const StateSeries& s) {
    const MultiIndex e = unit_index(s.dim(), coord);
    StateSeries r(s.space(), s.num_points(), s.window());
    for (const auto& [m, c] : s.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i > 0 && m[i] == m[i - 1]) continue;
            std::size_t mult = 1;
            while (i + mult < m.size() && m[i + mult] == m[i]) ++mult;
            FieldMonomial n = m;
            n[i].alpha = n[i].alpha + e;
            r.add_term(make_monomial(std::move(n)), c * Rational(static_cast<long>(mult)));
        }
    }
    return r;
}

StateSeries translate_series(const StateSeries& s, int point, int cutoff) {
    if (point < 0) throw std::out_of_range("translation point must be a point index");
    const int m = std::max(s.num_points(), point + 1);
    const int window = std::min(s.window(), cutoff);
    StateSeries layer = s.embedded(m);
    int val = kInfinite;
    for (const auto& [mon, c] : layer.terms()) val = std::min(val, c.valuation());
    StateSeries result(s.space(), m, window);
    result += layer;
    if (is_infinite(val)) return result.with_window(window);
    const int d = s.dim();
    std::vector<SingularFunction> coords;
    for (int u = 0; u < d; ++u) coords.push_back(SingularFunction::coordinate(s.space(), m, point, u));
    // (x.D)^k / k! applied iteratively; layer k has valuation >= val + k.
    for (int k = 1; val + k < window; ++k) {
        StateSeries next(s.space(), m, kInfinite);
        for (int u = 0; u < d; ++u) next += apply_D(u, layer).times(coords[u]);
        next *= Rational(1, k);
        layer = next.with_window(window);
        if (layer.is_zero()) break;
        result += layer;
    }
    return result.with_window(window);
}

StateSeries translate(SpacePtr space, const FieldElement& v, int point, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
    StateSeries s = StateSeries::from_element(space, v, point + 1);
    return translate_series(s, point, cutoff);
}

StateSeries holo_vertex(SpacePtr space, const FieldElement& a, const FieldElement& b, int cutoff) {
    StateSeries ta = translate(space, a, 0, cutoff);
    return ta.times(StateSeries::from_element(space, b, 1));
}

FieldElement RecoveredRing::product(const FieldElement& a, const FieldElement& b) const {
    StateSeries s = vertex(a, b);
    if (s.window() <= 0) throw WindowError("cutoff too small to evaluate at the origin");
    FieldElement r(a.dim());
    for (const auto& [m, c] : s.terms()) {
        if (c.window() <= 0) throw WindowError("cutoff too small to evaluate at the origin");
        r.add_term(m, c.polynomial_coefficient(Exponents(c.num_vars(), 0)));
    }
    return r;
}

FieldElement RecoveredRing::derivation(int coord, const FieldElement& a) const {
    StateSeries s = vertex(a, FieldElement::one(a.dim()));
    if (s.window() <= 1) throw WindowError("cutoff too small to read the linear coefficient");
    Exponents e(a.dim(), 0);
    e.at(coord) = 1;
    FieldElement r(a.dim());
    for (const auto& [m, c] : s.terms()) r.add_term(m, c.polynomial_coefficient(e));
    return r;
}

RecoveredRing recover_ring(const HolomorphicVertexAlgebra& holo) {
    return RecoveredRing{holo};
}

} // namespace vertexring
