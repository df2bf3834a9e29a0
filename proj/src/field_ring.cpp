#include "vertexring/field_ring.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "vertexring/polynomial.hpp"

namespace vertexring {

int order(const MultiIndex& alpha) {
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

MultiIndex unit_index(int dim, int coord) {
    if (coord < 0 || coord >= dim) throw std::out_of_range("coordinate index out of range");
    MultiIndex e(dim, 0);
    e[coord] = 1;
    return e;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw SpecMismatchError("multi-index dimension mismatch");
    MultiIndex r(a.size());
    for (std::size_t u = 0; u < a.size(); ++u) r[u] = a[u] + b[u];
    return r;
}

Rational index_factorial(const MultiIndex& alpha) {
    Rational r = 1;
    for (int a : alpha) r *= factorial(a);
    return r;
}

FieldMonomial make_monomial(std::vector<Generator> factors) {
    std::sort(factors.begin(), factors.end());
    return factors;
}

FieldMonomial multiply(const FieldMonomial& a, const FieldMonomial& b) {
    FieldMonomial r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

int degree(const FieldMonomial& m) {
    int d = 0;
    for (const auto& g : m) d += g.degree();
    return d;
}

bool is_plain(const FieldMonomial& m) {
    return std::all_of(m.begin(), m.end(), [](const Generator& g) { return g.anchor == kOrigin; });
}

bool discrepancy_before(const FieldMonomial& a, const FieldMonomial& b) {
    const int da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return monomial_before(a, b);
}

bool monomial_before(const FieldMonomial& a, const FieldMonomial& b) {
    const int da = degree(a);
    const int db = degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend(),
                                        [](const Generator& x, const Generator& y) { return x > y; });
}

std::string render_generator(const Generator& g, const std::vector<std::string>* point_names) {
    std::string body;
    for (std::size_t u = 0; u < g.alpha.size(); ++u) {
        if (g.alpha[u] == 0) continue;
        body += "D" + std::to_string(u);
        if (g.alpha[u] != 1) body += "^" + std::to_string(g.alpha[u]);
        body += ' ';
    }
    std::string out = body.empty() ? "phi" : "(" + body + "phi)";
    if (g.anchor != kOrigin) {
        const std::string name = point_names && g.anchor < static_cast<int>(point_names->size())
                                     ? (*point_names)[g.anchor]
                                     : "x" + std::to_string(g.anchor + 1);
        out += "@" + name;
    }
    return out;
}

std::string render_monomial(const FieldMonomial& m, const std::vector<std::string>* point_names) {
    std::string out;
    for (auto it = m.rbegin(); it != m.rend();) {
        auto next = it;
        int power = 0;
        while (next != m.rend() && *next == *it) {
            ++next;
            ++power;
        }
        if (!out.empty()) out += '*';
        std::string g = render_generator(*it, point_names);
        if (power > 1) {
            if (it->anchor != kOrigin) g = "(" + g + ")";
            g += "^" + std::to_string(power);
        }
        out += g;
        it = next;
    }
    return out;
}

FieldElement FieldElement::one(int dim) {
    return constant(dim, 1);
}

FieldElement FieldElement::constant(int dim, const Rational& c) {
    FieldElement v(dim);
    v.add_term({}, c);
    return v;
}

FieldElement FieldElement::generator(int dim, MultiIndex alpha) {
    if (static_cast<int>(alpha.size()) != dim) throw SpecMismatchError("multi-index dimension mismatch");
    for (int a : alpha)
        if (a < 0) throw std::invalid_argument("negative derivative order");
    FieldElement v(dim);
    v.add_term({Generator{std::move(alpha), kOrigin}}, 1);
    return v;
}

FieldElement FieldElement::from_monomial(int dim, FieldMonomial m, const Rational& c) {
    if (!is_plain(m)) throw std::invalid_argument("field elements cannot carry anchored generators");
    FieldElement v(dim);
    v.add_term(make_monomial(std::move(m)), c);
    return v;
}

Rational FieldElement::coefficient(const FieldMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

int FieldElement::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, vertexring::degree(m));
    return d;
}

void FieldElement::add_term(const FieldMonomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

void FieldElement::check_dim(const FieldElement& other) const {
    if (dim_ != other.dim_) throw SpecMismatchError("field elements of different dimensions");
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
    check_dim(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) {
    check_dim(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

FieldElement& FieldElement::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check_dim(b);
    FieldElement r(a.dim_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(multiply(ma, mb), ca * cb);
    return r;
}

FieldElement FieldElement::pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative power of a field element");
    FieldElement r = one(dim_);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

std::string FieldElement::render() const {
    std::vector<const Terms::value_type*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return monomial_before(a->first, b->first); });
    std::vector<std::pair<Rational, std::string>> parts;
    for (const auto* t : order) parts.emplace_back(t->second, render_monomial(t->first));
    return join_signed_terms(parts);
}

FieldElement apply_D(int coord, const FieldElement& v) {
    const MultiIndex e = unit_index(v.dim(), coord);
    FieldElement r(v.dim());
    for (const auto& [m, c] : v.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i > 0 && m[i] == m[i - 1]) continue;
            std::size_t mult = 1;
            while (i + mult < m.size() && m[i + mult] == m[i]) ++mult;
            FieldMonomial n = m;
            n[i].alpha = n[i].alpha + e;
            r.add_term(make_monomial(std::move(n)), c * static_cast<long>(mult));
        }
    }
    return r;
}

FieldElement apply_D(const MultiIndex& alpha, const FieldElement& v) {
    FieldElement r = v;
    for (std::size_t u = 0; u < alpha.size(); ++u)
        for (int k = 0; k < alpha[u]; ++k) r = apply_D(static_cast<int>(u), r);
    return r;
}

Rational vacuum_expectation(const FieldElement& v) {
    return v.coefficient({});
}

std::vector<MultiIndex> multi_indices_of_order(int dim, int n) {
    std::vector<MultiIndex> out;
    MultiIndex cur(dim, 0);
    std::function<void(int, int)> rec = [&](int u, int left) {
        if (u == dim - 1) {
            cur[u] = left;
            out.push_back(cur);
            return;
        }
        for (int a = left; a >= 0; --a) {
            cur[u] = a;
            rec(u + 1, left - a);
        }
    };
    if (n >= 0 && dim > 0) rec(0, n);
    return out;
}

std::vector<MultiIndex> multi_indices_below(int dim, int bound) {
    std::vector<MultiIndex> out;
    for (int n = 0; n < bound; ++n) {
        auto layer = multi_indices_of_order(dim, n);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::vector<FieldMonomial> graded_basis(int dim, int max_degree) {
    std::vector<Generator> gens;
    for (int n = 0; n < max_degree; ++n)
        for (auto& a : multi_indices_of_order(dim, n)) gens.push_back(Generator{std::move(a), kOrigin});
    std::sort(gens.begin(), gens.end());
    std::vector<FieldMonomial> out;
    FieldMonomial cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
        out.push_back(cur);
        for (std::size_t i = start; i < gens.size(); ++i) {
            if (gens[i].degree() > left) continue;
            cur.push_back(gens[i]);
            rec(i, left - gens[i].degree());
            cur.pop_back();
        }
    };
    rec(0, max_degree);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return monomial_before(b, a); });
    return out;
}

std::vector<FieldElement> graded_basis_elements(int dim, int max_degree) {
    std::vector<FieldElement> out;
    for (auto& m : graded_basis(dim, max_degree)) out.push_back(FieldElement::from_monomial(dim, m));
    return out;
}

} // namespace vertexring
