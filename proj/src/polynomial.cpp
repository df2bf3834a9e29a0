#include "vertexring/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace vertexring {

Rational factorial(int n) {
    Rational r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Rational binomial(const Rational& top, int k) {
    if (k < 0) return 0;
    Rational r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (top - i);
        r /= (i + 1);
    }
    return r;
}

std::string to_string(const Rational& r) {
    return r.get_str();
}

int total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
    Polynomial p(num_vars);
    p.add_term(Exponents(num_vars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t var, const Rational& c) {
    Exponents e(num_vars, 0);
    e.at(var) = 1;
    return monomial(std::move(e), c);
}

Polynomial Polynomial::monomial(Exponents e, const Rational& c) {
    Polynomial p(e.size());
    p.add_term(e, c);
    return p;
}

Rational Polynomial::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (num_vars_ != other.num_vars_) {
        if (terms_.empty() && num_vars_ == 0) num_vars_ = other.num_vars_;
        else if (!other.terms_.empty()) throw SpecMismatchError("polynomial variable count mismatch");
    }
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    if (num_vars_ != other.num_vars_) {
        if (terms_.empty() && num_vars_ == 0) num_vars_ = other.num_vars_;
        else if (!other.terms_.empty()) throw SpecMismatchError("polynomial variable count mismatch");
    }
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

Polynomial Polynomial::times(const Polynomial& other, int bound) const {
    if (num_vars_ != other.num_vars_) throw SpecMismatchError("polynomial variable count mismatch");
    Polynomial r(num_vars_);
    if (terms_.empty() || other.terms_.empty()) return r;
    std::vector<std::pair<const Exponents*, int>> rhs;
    rhs.reserve(other.terms_.size());
    for (const auto& [e, c] : other.terms_) rhs.emplace_back(&e, total_degree(e));
    Exponents e(num_vars_);
    Rational c;
    for (const auto& [ea, ca] : terms_) {
        const int da = total_degree(ea);
        std::size_t k = 0;
        for (const auto& [eb, cb] : other.terms_) {
            const int db = rhs[k++].second;
            if (!is_infinite(bound) && da + db >= bound) continue;
            for (std::size_t v = 0; v < num_vars_; ++v) e[v] = ea[v] + eb[v];
            c = ca * cb;
            r.add_term(e, c);
        }
    }
    return r;
}

Polynomial Polynomial::pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative polynomial power");
    Polynomial result = constant(num_vars_, 1);
    Polynomial base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

Polynomial Polynomial::shifted(const Exponents& shift) const {
    Polynomial r(num_vars_);
    for (const auto& [e, c] : terms_) {
        Exponents f = e;
        for (std::size_t v = 0; v < num_vars_; ++v) f[v] += shift[v];
        r.terms_.emplace(std::move(f), c);
    }
    return r;
}

Polynomial Polynomial::truncated(int bound) const {
    if (is_infinite(bound)) return *this;
    Polynomial r(num_vars_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) < bound) r.terms_.emplace(e, c);
    return r;
}

int Polynomial::min_degree() const {
    int d = kInfinite;
    for (const auto& [e, c] : terms_) d = std::min(d, total_degree(e));
    return d;
}

int Polynomial::max_degree() const {
    int d = -kInfinite;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

int Polynomial::degree_in(std::size_t var) const {
    int d = -kInfinite;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

int Polynomial::min_exponent(std::size_t var) const {
    int d = kInfinite;
    for (const auto& [e, c] : terms_) d = std::min(d, e[var]);
    return d;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    Polynomial r(num_vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents f = e;
        f[var] -= 1;
        r.add_term(f, c * e[var]);
    }
    return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != num_vars_) throw SpecMismatchError("substitution arity mismatch");
    const std::size_t new_vars = images.empty() ? 0 : images.front().num_vars();
    // Powers are shared across terms.
    std::vector<std::vector<Polynomial>> powers(num_vars_);
    Polynomial r(new_vars);
    for (const auto& [e, c] : terms_) {
        Polynomial term = constant(new_vars, c);
        for (std::size_t v = 0; v < num_vars_; ++v) {
            if (e[v] < 0) throw std::invalid_argument("substitution into negative exponent");
            if (e[v] == 0) continue;
            auto& pv = powers[v];
            if (pv.empty()) pv.push_back(constant(new_vars, 1));
            while (static_cast<int>(pv.size()) <= e[v]) pv.push_back(pv.back() * images[v]);
            term = term * pv[e[v]];
        }
        r += term;
    }
    return r;
}

Polynomial Polynomial::remapped(const std::vector<int>& map, std::size_t new_num_vars) const {
    Polynomial r(new_num_vars);
    for (const auto& [e, c] : terms_) {
        Exponents f(new_num_vars, 0);
        for (std::size_t v = 0; v < num_vars_; ++v) {
            if (map[v] < 0) {
                if (e[v] != 0) throw std::invalid_argument("remap drops a variable in use");
                continue;
            }
            f[map[v]] += e[v];
        }
        r.add_term(f, c);
    }
    return r;
}

Polynomial Polynomial::embedded(std::size_t new_num_vars) const {
    if (new_num_vars == num_vars_) return *this;
    if (new_num_vars < num_vars_) throw std::invalid_argument("cannot embed into fewer variables");
    Polynomial r(new_num_vars);
    for (const auto& [e, c] : terms_) {
        Exponents f = e;
        f.resize(new_num_vars, 0);
        r.terms_.emplace(std::move(f), c);
    }
    return r;
}

namespace {

// Splits p by the exponent of var: degree -> polynomial with var exponent 0.
std::map<int, Polynomial> split_by(const Polynomial& p, std::size_t var) {
    std::map<int, Polynomial> out;
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        f[var] = 0;
        auto [it, inserted] = out.try_emplace(e[var], Polynomial(p.num_vars()));
        it->second.add_term(f, c);
    }
    return out;
}

} // namespace

std::pair<Polynomial, Polynomial> Polynomial::divmod_monic(const Polynomial& divisor, std::size_t var) const {
    const int n = divisor.degree_in(var);
    auto lead = split_by(divisor, var);
    const Polynomial& lc = lead.at(n);
    if (!(lc == constant(num_vars_, 1))) throw std::invalid_argument("divisor is not monic");
    Polynomial quotient(num_vars_);
    Polynomial rem = *this;
    while (!rem.is_zero()) {
        const int r = rem.degree_in(var);
        if (r < n) break;
        Polynomial top(num_vars_);
        for (const auto& [e, c] : rem.terms())
            if (e[var] == r) top.add_term(e, c);
        Exponents shift(num_vars_, 0);
        shift[var] = -n;
        Polynomial q = top.shifted(shift);
        quotient += q;
        rem -= q * divisor;
    }
    return {quotient, rem};
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor, std::size_t var) const {
    const int n = divisor.degree_in(var);
    auto lead = split_by(divisor, var);
    const Polynomial& lc = lead.at(n);
    if (lc.size() != 1 || total_degree(lc.terms().begin()->first) != 0) return std::nullopt;
    const Rational sign = lc.terms().begin()->second;
    if (sign != 1 && sign != -1) return std::nullopt;
    auto [q, r] = divmod_monic(divisor * sign, var);
    if (!r.is_zero()) return std::nullopt;
    return q * sign;
}

std::vector<std::pair<Exponents, Rational>> Polynomial::ordered_terms() const {
    std::vector<std::pair<Exponents, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_before(a.first, b.first); });
    return out;
}

bool canonical_before(const Exponents& a, const Exponents& b) {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
}

std::string render_monomial(const Exponents& e, const std::function<std::string(std::size_t)>& var_name) {
    std::string out;
    for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        if (!out.empty()) out += '*';
        out += var_name(v);
        if (e[v] != 1) out += '^' + std::to_string(e[v]);
    }
    return out;
}

std::string join_signed_terms(const std::vector<std::pair<Rational, std::string>>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [c, body] : terms) {
        const bool negative = sgn(c) < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (body.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += body;
        } else {
            out += to_string(mag) + '*' + body;
        }
    }
    return out;
}

std::string Polynomial::render(const std::function<std::string(std::size_t)>& var_name) const {
    std::vector<std::pair<Rational, std::string>> parts;
    for (const auto& [e, c] : ordered_terms()) parts.emplace_back(c, render_monomial(e, var_name));
    return join_signed_terms(parts);
}

} // namespace vertexring
