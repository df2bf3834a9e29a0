#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vertexring/rational.hpp"

namespace vertexring {

using Exponents = std::vector<int>;

int total_degree(const Exponents& e);

// Sparse multivariate polynomial with exact rational coefficients. Exponents
// may be negative, in which case the value is a Laurent polynomial; the
// singular-function numerators never use that, the Laurent series do.
class Polynomial {
public:
    using Terms = std::map<Exponents, Rational>;

    Polynomial() = default;
    explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

    static Polynomial constant(std::size_t num_vars, const Rational& c);
    static Polynomial variable(std::size_t num_vars, std::size_t var, const Rational& c = 1);
    static Polynomial monomial(Exponents e, const Rational& c);

    std::size_t num_vars() const { return num_vars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // Coefficient of x^e, zero when absent.
    Rational coefficient(const Exponents& e) const;

    void add_term(const Exponents& e, const Rational& c);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Rational& c);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return a.times(b); }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }

    // Product keeping only terms whose total degree is < bound.
    Polynomial times(const Polynomial& other, int bound = kInfinite) const;
    Polynomial pow(int n) const;

    // Multiplies by the monomial x^e (no coefficient).
    Polynomial shifted(const Exponents& e) const;

    // Drops all terms of total degree >= bound.
    Polynomial truncated(int bound) const;

    // kInfinite for the zero polynomial.
    int min_degree() const;
    int max_degree() const;
    int degree_in(std::size_t var) const;
    int min_exponent(std::size_t var) const;

    Polynomial derivative(std::size_t var) const;

    // Substitutes polynomial images for each variable; images all share one
    // (new) variable count. Negative exponents are not supported here.
    Polynomial substitute(const std::vector<Polynomial>& images) const;

    // Reindexes variables: new exponent vector has new_num_vars entries and
    // variable v lands at position map[v] (map[v] < 0 requires exponent 0).
    Polynomial remapped(const std::vector<int>& map, std::size_t new_num_vars) const;

    Polynomial embedded(std::size_t new_num_vars) const;

    // Exact division by a divisor whose leading term in `var` has coefficient
    // +-1 and no other variable. Returns nullopt when the remainder is nonzero.
    std::optional<Polynomial> divide_exact(const Polynomial& divisor, std::size_t var) const;

    // Quotient/remainder of division by a divisor monic in `var`, treating the
    // other variables as coefficients.
    std::pair<Polynomial, Polynomial> divmod_monic(const Polynomial& divisor, std::size_t var) const;

    // Terms sorted by descending total degree, then descending lexicographic
    // exponent. Every renderer in the library uses this order.
    std::vector<std::pair<Exponents, Rational>> ordered_terms() const;

    std::string render(const std::function<std::string(std::size_t)>& var_name) const;

private:
    std::size_t num_vars_ = 0;
    Terms terms_;
};

// Canonical comparison shared by all renderers: true when a prints before b.
bool canonical_before(const Exponents& a, const Exponents& b);

// "c*m" rendering helpers shared with the other renderers.
std::string render_monomial(const Exponents& e, const std::function<std::string(std::size_t)>& var_name);
std::string join_signed_terms(const std::vector<std::pair<Rational, std::string>>& terms);

} // namespace vertexring
