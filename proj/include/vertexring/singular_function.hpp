#pragma once

#include <map>
#include <string>
#include <utility>

#include "vertexring/polynomial.hpp"
#include "vertexring/spacetime.hpp"

namespace vertexring {

// A finite sum of rational forms numerator / prod(factor^exponent) in the
// coordinates of num_points spacetime points, one numerator per distinct
// denominator. Sums are not brought to a common denominator; equality does
// that by cross-multiplication.
//
// The window N says the value is known modulo functions of effective degree
// >= N, where effective degree = numerator degree - denominator degree. All
// factors are homogeneous, so this is a ring filtration; numerator terms of
// degree >= N + (degree of their denominator) are dropped.
class SingularFunction {
public:
    using Denominator = std::map<Factor, int>;
    using Parts = std::map<Denominator, Polynomial>;

    SingularFunction() = default;
    SingularFunction(SpacePtr space, int num_points);

    static SingularFunction constant(SpacePtr space, int num_points, const Rational& c);
    static SingularFunction from_polynomial(SpacePtr space, int num_points, Polynomial p, int window = kInfinite);
    static SingularFunction fraction(SpacePtr space, int num_points, Polynomial numerator, Denominator denominator,
                                     int window = kInfinite);
    static SingularFunction coordinate(SpacePtr space, int num_points, int point, int coord);
    // factor^exponent; negative exponents put the factor into the denominator.
    static SingularFunction factor_power(SpacePtr space, int num_points, const Factor& f, int exponent);

    const SpacePtr& space() const { return space_; }
    int num_points() const { return num_points_; }
    std::size_t num_vars() const;
    const Parts& parts() const { return parts_; }
    int window() const { return window_; }
    bool is_exact() const { return is_infinite(window_); }

    int denominator_degree(const Denominator& den) const;
    // Every factor that occurs in some denominator, with its largest exponent.
    Denominator common_denominator() const;
    // Single fraction over common_denominator().
    Polynomial combined_numerator() const;

    // Lower bound for the lowest effective degree present; kInfinite for zero.
    int valuation() const;
    // No stored terms. A function can vanish without this being true; use
    // vanishes() for the exact test.
    bool is_zero() const { return parts_.empty(); }
    bool vanishes() const;
    bool is_polynomial() const { return parts_.empty() || (parts_.size() == 1 && parts_.begin()->first.empty()); }
    // The numerator of a polynomial function; throws otherwise.
    Polynomial polynomial() const;
    // Coefficient of x^e in a polynomial function.
    Rational polynomial_coefficient(const Exponents& e) const;

    // Equality within the intersection of windows, by cross-multiplication.
    bool equals(const SingularFunction& other) const;

    SingularFunction& operator+=(const SingularFunction& other);
    SingularFunction& operator-=(const SingularFunction& other);
    SingularFunction& operator*=(const Rational& c);
    SingularFunction operator-() const;
    friend SingularFunction operator+(SingularFunction a, const SingularFunction& b) { return a += b; }
    friend SingularFunction operator-(SingularFunction a, const SingularFunction& b) { return a -= b; }
    friend SingularFunction operator*(SingularFunction a, const Rational& c) { return a *= c; }
    friend SingularFunction operator*(const SingularFunction& a, const SingularFunction& b) { return a.times(b); }
    SingularFunction times(const SingularFunction& other) const;

    // Multiplies by the monomial c * x^e in the coordinates.
    SingularFunction times_monomial(const Exponents& e, const Rational& c) const;

    SingularFunction with_window(int window) const;

    // Partial derivative in coordinate `coord` of point `point`.
    SingularFunction derivative(int point, int coord) const;

    SingularFunction embedded(int num_points) const;

    // f(-x) with every coordinate of every point negated.
    SingularFunction reflected() const;

    // For a one-point function g: g(x_i - x_j) among num_points points, or
    // g(x_i) when j < 0. Only per-point factors may appear in g.
    SingularFunction pullback_difference(int num_points, int i, int j) const;

    // Cancels factors that divide their numerator and merges equal
    // denominators. Only for exact functions.
    SingularFunction reduced() const;

    // Reindexes points: point p goes to map[p]; map[p] < 0 requires p unused.
    SingularFunction remapped_points(const std::vector<int>& map, int new_num_points) const;

    bool depends_on_point(int point) const;

    // Value with point set to the origin; the point must not occur in any
    // denominator. The point count is unchanged.
    SingularFunction at_origin(int point) const;

    std::string render() const;

private:
    void check_compatible(const SingularFunction& other) const;
    void add_part(const Denominator& den, Polynomial num);
    void normalize();
    Polynomial factor_power_poly(const Factor& f, int k) const;

    SpacePtr space_;
    int num_points_ = 0;
    Parts parts_;
    int window_ = kInfinite;
};

} // namespace vertexring
