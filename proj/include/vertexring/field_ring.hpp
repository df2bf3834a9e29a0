#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "vertexring/rational.hpp"

namespace vertexring {

using MultiIndex = std::vector<int>;

inline constexpr int kOrigin = -1;

int order(const MultiIndex& alpha);
MultiIndex unit_index(int dim, int coord);
MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
// alpha! = prod alpha_u!
Rational index_factorial(const MultiIndex& alpha);

// D^alpha phi. An anchor >= 0 stands for the translate e^{x_anchor D} D^alpha phi
// (as a formal series in that point); anchor == kOrigin is an element of V.
struct Generator {
    MultiIndex alpha;
    int anchor = kOrigin;

    // Grading |alpha| + 1.
    int degree() const { return order(alpha) + 1; }

    friend auto operator<=>(const Generator&, const Generator&) = default;
};

// Sorted multiset of generators; empty is the unit.
using FieldMonomial = std::vector<Generator>;

FieldMonomial make_monomial(std::vector<Generator> factors);
FieldMonomial multiply(const FieldMonomial& a, const FieldMonomial& b);
int degree(const FieldMonomial& m);
bool is_plain(const FieldMonomial& m);
bool monomial_before(const FieldMonomial& a, const FieldMonomial& b);
// Order for naming the first discrepancy: lowest degree, then canonical.
bool discrepancy_before(const FieldMonomial& a, const FieldMonomial& b);
std::string render_generator(const Generator& g, const std::vector<std::string>* point_names = nullptr);
std::string render_monomial(const FieldMonomial& m, const std::vector<std::string>* point_names = nullptr);

// Element of V = k[D^alpha phi] for a fixed spacetime dimension.
class FieldElement {
public:
    using Terms = std::map<FieldMonomial, Rational>;

    FieldElement() = default;
    explicit FieldElement(int dim) : dim_(dim) {}

    static FieldElement one(int dim);
    static FieldElement constant(int dim, const Rational& c);
    static FieldElement generator(int dim, MultiIndex alpha);
    static FieldElement phi(int dim) { return generator(dim, MultiIndex(dim, 0)); }
    static FieldElement from_monomial(int dim, FieldMonomial m, const Rational& c = 1);

    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const FieldMonomial& m) const;
    // Highest grading present, -1 for zero.
    int degree() const;

    void add_term(const FieldMonomial& m, const Rational& c);

    FieldElement& operator+=(const FieldElement& other);
    FieldElement& operator-=(const FieldElement& other);
    FieldElement& operator*=(const Rational& c);
    FieldElement operator-() const;
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const Rational& c) { return a *= c; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.terms_ == b.terms_; }

    FieldElement pow(int n) const;

    std::string render() const;

private:
    void check_dim(const FieldElement& other) const;

    int dim_ = 1;
    Terms terms_;
};

// Leibniz derivation D_coord; on D^alpha phi gives D^{alpha + e_coord} phi.
FieldElement apply_D(int coord, const FieldElement& v);
FieldElement apply_D(const MultiIndex& alpha, const FieldElement& v);

// Constant-term functional.
Rational vacuum_expectation(const FieldElement& v);

// All plain monomials of grading <= max_degree, in canonical order.
std::vector<FieldMonomial> graded_basis(int dim, int max_degree);
std::vector<FieldElement> graded_basis_elements(int dim, int max_degree);

// Multi-indices of order < bound (or == order for the exact variant).
std::vector<MultiIndex> multi_indices_below(int dim, int bound);
std::vector<MultiIndex> multi_indices_of_order(int dim, int order);

} // namespace vertexring
