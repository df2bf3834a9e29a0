#include "vertexring/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace vertexring {

void RegionOrder::validate(int num_vars) const {
    if (static_cast<int>(ordering.size()) != num_vars) throw std::invalid_argument("region ordering has the wrong length");
    std::vector<int> sorted = ordering;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < num_vars; ++i)
        if (sorted[i] != i) throw std::invalid_argument("region ordering is not a permutation");
}

std::vector<int> RegionOrder::weights(int num_vars) const {
    validate(num_vars);
    std::vector<int> w(num_vars);
    for (int r = 0; r < num_vars; ++r) w[ordering[r]] = r;
    return w;
}

std::string RegionOrder::render(const std::vector<std::string>& names) const {
    std::string out;
    for (std::size_t r = 0; r < ordering.size(); ++r) {
        if (r) out += ">>";
        out += "|" + names.at(ordering[r]) + "|";
    }
    return out;
}

LaurentSeries::LaurentSeries(std::vector<int> weights, std::vector<std::string> names, int total_window, int weight_window)
    : weights_(std::move(weights)), names_(std::move(names)), terms_(weights_.size()),
      total_window_(total_window), weight_window_(weight_window) {
    if (names_.size() != weights_.size()) throw std::invalid_argument("one name per Laurent variable");
}

LaurentSeries LaurentSeries::from_terms(std::vector<int> weights, std::vector<std::string> names, Polynomial terms,
                                        int total_window, int weight_window) {
    LaurentSeries s(std::move(weights), std::move(names), total_window, weight_window);
    if (terms.num_vars() != s.num_vars()) throw SpecMismatchError("Laurent terms have the wrong variable count");
    s.terms_ = std::move(terms);
    s.prune();
    return s;
}

int LaurentSeries::weight_of(const Exponents& e) const {
    int w = 0;
    for (std::size_t v = 0; v < e.size(); ++v) w += weights_[v] * e[v];
    return w;
}

bool LaurentSeries::certifies(const Exponents& e) const {
    return total_degree(e) < total_window_ && weight_of(e) < weight_window_;
}

int LaurentSeries::valuation() const {
    return terms_.min_degree();
}

int LaurentSeries::min_weight() const {
    int w = kInfinite;
    for (const auto& [e, c] : terms_.terms()) w = std::min(w, weight_of(e));
    return w;
}

void LaurentSeries::prune() {
    if (is_infinite(total_window_) && is_infinite(weight_window_)) return;
    Polynomial kept(num_vars());
    for (const auto& [e, c] : terms_.terms())
        if (certifies(e)) kept.add_term(e, c);
    terms_ = std::move(kept);
}

void LaurentSeries::check_compatible(const LaurentSeries& other) const {
    if (weights_ != other.weights_) throw SpecMismatchError("Laurent series use different regions");
}

bool LaurentSeries::equals(const LaurentSeries& other) const {
    return (*this - other).is_zero();
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& other) {
    check_compatible(other);
    total_window_ = std::min(total_window_, other.total_window_);
    weight_window_ = std::min(weight_window_, other.weight_window_);
    terms_ += other.terms_;
    prune();
    return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& other) {
    check_compatible(other);
    total_window_ = std::min(total_window_, other.total_window_);
    weight_window_ = std::min(weight_window_, other.weight_window_);
    terms_ -= other.terms_;
    prune();
    return *this;
}

LaurentSeries& LaurentSeries::operator*=(const Rational& c) {
    terms_ *= c;
    return *this;
}

LaurentSeries LaurentSeries::times(const LaurentSeries& other) const {
    check_compatible(other);
    LaurentSeries r(weights_, names_, kInfinite, kInfinite);
    r.total_window_ = std::min(saturating_add(total_window_, other.valuation()),
                               saturating_add(other.total_window_, valuation()));
    r.weight_window_ = std::min(saturating_add(weight_window_, other.min_weight()),
                                saturating_add(other.weight_window_, min_weight()));
    const std::size_t n = num_vars();
    Exponents e(n);
    for (const auto& [ea, ca] : terms_.terms()) {
        const int da = total_degree(ea);
        const int wa = weight_of(ea);
        for (const auto& [eb, cb] : other.terms_.terms()) {
            if (!is_infinite(r.total_window_) && da + total_degree(eb) >= r.total_window_) continue;
            if (!is_infinite(r.weight_window_) && wa + weight_of(eb) >= r.weight_window_) continue;
            for (std::size_t v = 0; v < n; ++v) e[v] = ea[v] + eb[v];
            r.terms_.add_term(e, ca * cb);
        }
    }
    return r;
}

LaurentSeries LaurentSeries::derivative(std::size_t var) const {
    LaurentSeries r(weights_, names_, saturating_add(total_window_, -1), saturating_add(weight_window_, -weights_.at(var)));
    for (const auto& [e, c] : terms_.terms()) {
        if (e[var] == 0) continue;
        Exponents f = e;
        f[var] -= 1;
        r.terms_.add_term(f, c * e[var]);
    }
    r.prune();
    return r;
}

LaurentSeries LaurentSeries::coefficient(std::size_t var, int exponent) const {
    const int w = weights_.at(var);
    if (!(exponent < total_window_) || !(static_cast<long long>(exponent) * w < weight_window_))
        throw WindowError("window too small to certify the requested coefficient");
    std::vector<int> weights;
    std::vector<std::string> names;
    std::vector<int> map(num_vars(), -1);
    for (std::size_t v = 0; v < num_vars(); ++v) {
        if (v == var) continue;
        map[v] = static_cast<int>(weights.size());
        weights.push_back(weights_[v]);
        names.push_back(names_[v]);
    }
    LaurentSeries r(std::move(weights), std::move(names), saturating_add(total_window_, -exponent),
                    saturating_add(weight_window_, -exponent * w));
    Polynomial picked(num_vars());
    for (const auto& [e, c] : terms_.terms()) {
        if (e[var] != exponent) continue;
        Exponents f = e;
        f[var] = 0;
        picked.add_term(f, c);
    }
    r.terms_ = picked.remapped(map, r.num_vars());
    r.prune();
    return r;
}

LaurentSeries LaurentSeries::with_windows(int total_window, int weight_window) const {
    LaurentSeries r = *this;
    r.total_window_ = std::min(total_window_, total_window);
    r.weight_window_ = std::min(weight_window_, weight_window);
    r.prune();
    return r;
}

std::string LaurentSeries::render() const {
    // Total degree descending, then expansion order (weight ascending).
    auto terms = terms_.ordered_terms();
    std::stable_sort(terms.begin(), terms.end(), [this](const auto& a, const auto& b) {
        const int da = total_degree(a.first), db = total_degree(b.first);
        if (da != db) return da > db;
        return weight_of(a.first) < weight_of(b.first);
    });
    std::vector<std::pair<Rational, std::string>> parts;
    for (const auto& [e, c] : terms) parts.emplace_back(c, render_monomial(e, [this](std::size_t v) { return names_[v]; }));
    return join_signed_terms(parts);
}

LinearSubstitution LinearSubstitution::identity(const SingularSpace& space, int num_points) {
    LinearSubstitution s;
    for (int i = 0; i < num_points; ++i) {
        std::vector<Rational> row(num_points, 0);
        row[i] = 1;
        s.images.push_back(std::move(row));
        s.names.push_back(space.point_name(i));
    }
    return s;
}

LaurentSeries expand(const SingularFunction& f, const RegionOrder& region, int cutoff) {
    return expand(f, LinearSubstitution::identity(*f.space(), f.num_points()), region, cutoff);
}

namespace {

// c^-k * t_o^-k * (1 + r)^-k with r = sum_{v != o} (c_v / c) t_v / t_o; each
// term of r has weight >= 1.
LaurentSeries expand_inverse_power(const std::vector<Rational>& form, int k, const std::vector<int>& weights,
                                   const std::vector<std::string>& names, int weight_budget) {
    const std::size_t n = weights.size();
    int outer = -1;
    for (std::size_t v = 0; v < n; ++v)
        if (sgn(form[v]) != 0 && (outer < 0 || weights[v] < weights[outer])) outer = static_cast<int>(v);
    if (outer < 0) throw std::invalid_argument("linear form vanishes identically");
    const Rational lead = form[outer];

    Polynomial ratio(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (static_cast<int>(v) == outer || sgn(form[v]) == 0) continue;
        Exponents e(n, 0);
        e[v] = 1;
        e[outer] = -1;
        ratio.add_term(e, form[v] / lead);
    }
    // Relative weights: the j-th power of the ratio has weight >= j.
    const int base_weight = -k * weights[outer];
    const int rel_budget = weight_budget - base_weight;

    Polynomial sum(n);
    Polynomial power = Polynomial::constant(n, 1);
    Rational lead_pow = 1;
    for (int i = 0; i < k; ++i) lead_pow /= lead;
    auto weight_of = [&](const Exponents& e) {
        int w = 0;
        for (std::size_t v = 0; v < n; ++v) w += weights[v] * e[v];
        return w;
    };
    for (int j = 0; j < rel_budget; ++j) {
        sum += power * binomial(Rational(-k), j);
        if (ratio.is_zero()) break;
        Polynomial next(n);
        for (const auto& [ea, ca] : power.terms())
            for (const auto& [eb, cb] : ratio.terms()) {
                Exponents e(n);
                for (std::size_t v = 0; v < n; ++v) e[v] = ea[v] + eb[v];
                if (weight_of(e) - 0 >= rel_budget) continue;
                next.add_term(e, ca * cb);
            }
        power = std::move(next);
        if (power.is_zero()) break;
    }
    Exponents shift(n, 0);
    shift[outer] = -k;
    Polynomial body = sum.shifted(shift) * lead_pow;
    return LaurentSeries::from_terms(weights, names, std::move(body), kInfinite, weight_budget);
}

} // namespace

namespace {

LaurentSeries expand_fraction(const Polynomial& numerator_poly, const SingularFunction::Denominator& den,
                              int den_degree, int total_window, const std::vector<Polynomial>& images,
                              const LinearSubstitution& sub, const std::vector<int>& weights, int cutoff) {
    const int n = sub.num_vars();
    Polynomial num = numerator_poly.substitute(images);
    LaurentSeries numerator = LaurentSeries::from_terms(weights, sub.names, std::move(num),
                                                        saturating_add(total_window, den_degree), kInfinite);

    struct Piece {
        std::vector<Rational> form;
        int power;
        int min_weight;
    };
    std::vector<Piece> pieces;
    for (const auto& [fac, e] : den) {
        std::vector<Rational> form = sub.images[fac.first];
        if (fac.is_pair())
            for (int v = 0; v < n; ++v) form[v] -= sub.images[fac.second][v];
        int outer = -1;
        for (int v = 0; v < n; ++v)
            if (sgn(form[v]) != 0 && (outer < 0 || weights[v] < weights[outer])) outer = v;
        if (outer < 0) throw std::invalid_argument("substitution makes a denominator factor vanish");
        pieces.push_back({std::move(form), e, -e * weights[outer]});
    }
    const int num_min_weight = numerator.is_zero() ? 0 : numerator.min_weight();
    int total_min = num_min_weight;
    for (const auto& p : pieces) total_min += p.min_weight;

    LaurentSeries result = numerator.with_windows(kInfinite, saturating_add(cutoff, -(total_min - num_min_weight)));
    for (const auto& p : pieces) {
        const int budget = cutoff - (total_min - p.min_weight);
        result = result * expand_inverse_power(p.form, p.power, weights, sub.names, budget);
    }
    return result.with_windows(total_window, cutoff);
}

} // namespace

LaurentSeries expand(const SingularFunction& f, const LinearSubstitution& sub, const RegionOrder& region, int cutoff) {
    const SingularSpace& space = *f.space();
    if (space.dim() != 1) throw UnsupportedExpansionError("region expansion is only defined in one dimension");
    if (static_cast<int>(sub.images.size()) != f.num_points()) throw SpecMismatchError("substitution must cover every point");
    if (!f.is_exact() && cutoff > f.window()) throw WindowError("expansion cutoff exceeds the function's window");
    const int n = sub.num_vars();
    const std::vector<int> weights = region.weights(n);

    std::vector<Polynomial> images;
    for (const auto& row : sub.images) {
        if (static_cast<int>(row.size()) != n) throw SpecMismatchError("substitution row has the wrong length");
        Polynomial p(n);
        for (int v = 0; v < n; ++v) {
            Exponents e(n, 0);
            e[v] = 1;
            p.add_term(e, row[v]);
        }
        images.push_back(std::move(p));
    }
    LaurentSeries result(weights, sub.names, f.window(), cutoff);
    for (const auto& [den, num] : f.parts())
        result += expand_fraction(num, den, f.denominator_degree(den), f.window(), images, sub, weights, cutoff);
    return result;
}

LaurentSeries residue(const LaurentSeries& s, std::size_t var) {
    return s.coefficient(var, -1);
}

SingularFunction residue_outer(const SingularFunction& f, int point) {
    const SingularSpace& space = *f.space();
    if (space.dim() != 1) throw UnsupportedExpansionError("closed-form residues are only defined in one dimension");
    const int m = f.num_points();
    if (point < 0 || point >= m) throw std::out_of_range("residue point out of range");
    const std::size_t nv = static_cast<std::size_t>(m);
    const std::size_t x = static_cast<std::size_t>(point);
    std::vector<int> map(m);
    for (int p = 0; p < m; ++p) map[p] = p < point ? p : (p == point ? -1 : p - 1);
    const int window = saturating_add(f.window(), 1);

    SingularFunction out(f.space(), m - 1);
    out = out.with_window(window);
    for (const auto& [den, part] : f.parts()) {
        Polynomial polar = Polynomial::constant(nv, 1);
        bool negate = false;
        SingularFunction::Denominator rest;
        for (const auto& [fac, e] : den) {
            if (!fac.involves(point)) {
                rest[Factor(fac.is_pair() ? Factor::pair(map[fac.first], map[fac.second]) : Factor::point(map[fac.first]))] = e;
                continue;
            }
            Polynomial lin = Polynomial::variable(nv, x);
            if (fac.is_pair()) {
                const int other = fac.first == point ? fac.second : fac.first;
                lin -= Polynomial::variable(nv, static_cast<std::size_t>(other));
                if (fac.second == point && (e & 1)) negate = !negate;
            }
            polar = polar * lin.pow(e);
        }
        const int n = polar.degree_in(x);
        if (n <= 0) continue;
        Polynomial numerator(nv);
        auto [q, r] = part.divmod_monic(polar, x);
        (void)q;
        for (const auto& [e, c] : r.terms()) {
            if (e[x] != n - 1) continue;
            Exponents g = e;
            g[x] = 0;
            numerator.add_term(g, negate ? Rational(-c) : c);
        }
        if (numerator.is_zero()) continue;
        out += SingularFunction::fraction(f.space(), m - 1, numerator.remapped(map, nv - 1), std::move(rest), window);
    }
    return out;
}

SingularFunction laurent_to_function(const LaurentSeries& s, SpacePtr space) {
    if (space->dim() != 1) throw UnsupportedExpansionError("Laurent conversion is only defined in one dimension");
    const int m = static_cast<int>(s.num_vars());
    if (m > 1) throw std::invalid_argument("Laurent conversion supports at most one variable");
    int window = s.total_window();
    if (m == 1 && !is_infinite(s.weight_window())) {
        const int w = s.weights()[0];
        if (w == 0) {
            if (s.weight_window() <= 0) throw WindowError("empty certified window");
        } else {
            window = std::min(window, (s.weight_window() + w - 1) / w);
        }
    } else if (m == 0 && s.weight_window() <= 0) {
        throw WindowError("empty certified window");
    }
    if (m == 0) {
        if (window <= 0) throw WindowError("constant term not certified");
        return SingularFunction::constant(space, 0, s.terms().coefficient({}));
    }
    const int low = std::min(0, s.lower_bound(0));
    Polynomial num(1);
    for (const auto& [e, c] : s.terms().terms()) num.add_term({e[0] - low}, c);
    SingularFunction::Denominator den;
    if (low < 0) den[Factor::point(0)] = -low;
    return SingularFunction::fraction(space, 1, std::move(num), std::move(den), window);
}

} // namespace vertexring
