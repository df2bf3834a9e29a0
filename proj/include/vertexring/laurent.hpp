#pragma once

#include <string>
#include <vector>

#include "vertexring/polynomial.hpp"
#include "vertexring/singular_function.hpp"

namespace vertexring {

// |x_{ordering[0]}| >> |x_{ordering[1]}| >> ... ; variable ordering[r] gets
// weight r in the expansion.
struct RegionOrder {
    std::vector<int> ordering;

    void validate(int num_vars) const;
    std::vector<int> weights(int num_vars) const;
    std::string render(const std::vector<std::string>& names) const;
};

// Iterated Laurent series in finitely many variables. A term is certified
// when its total degree is below total_window and its weighted degree
// (sum of weight * exponent) is below weight_window; uncertified terms are
// never stored.
class LaurentSeries {
public:
    LaurentSeries() = default;
    LaurentSeries(std::vector<int> weights, std::vector<std::string> names, int total_window, int weight_window);

    static LaurentSeries from_terms(std::vector<int> weights, std::vector<std::string> names, Polynomial terms,
                                    int total_window = kInfinite, int weight_window = kInfinite);

    std::size_t num_vars() const { return weights_.size(); }
    const Polynomial& terms() const { return terms_; }
    const std::vector<int>& weights() const { return weights_; }
    const std::vector<std::string>& names() const { return names_; }
    int total_window() const { return total_window_; }
    int weight_window() const { return weight_window_; }

    int weight_of(const Exponents& e) const;
    bool certifies(const Exponents& e) const;
    // Lowest total degree / weighted degree present (kInfinite when empty).
    int valuation() const;
    int min_weight() const;
    // Lowest exponent of var that occurs, kInfinite when empty.
    int lower_bound(std::size_t var) const { return terms_.min_exponent(var); }

    bool is_zero() const { return terms_.is_zero(); }
    bool equals(const LaurentSeries& other) const;

    LaurentSeries& operator+=(const LaurentSeries& other);
    LaurentSeries& operator-=(const LaurentSeries& other);
    LaurentSeries& operator*=(const Rational& c);
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return a.times(b); }
    LaurentSeries times(const LaurentSeries& other) const;

    LaurentSeries derivative(std::size_t var) const;

    // Coefficient of var^exponent as a series in the remaining variables.
    // Throws WindowError when that exponent is not certified.
    LaurentSeries coefficient(std::size_t var, int exponent) const;

    LaurentSeries with_windows(int total_window, int weight_window) const;

    std::string render() const;

private:
    void check_compatible(const LaurentSeries& other) const;
    void prune();

    std::vector<int> weights_;
    std::vector<std::string> names_;
    Polynomial terms_;
    int total_window_ = kInfinite;
    int weight_window_ = kInfinite;
};

// Images of the points of a d = 1 function as linear forms in new variables:
// x_i = sum_v images[i][v] * t_v.
struct LinearSubstitution {
    std::vector<std::vector<Rational>> images;
    std::vector<std::string> names;

    static LinearSubstitution identity(const SingularSpace& space, int num_points);
    int num_vars() const { return static_cast<int>(names.size()); }
};

// Iterated Laurent expansion of f in the region, certified for weighted
// degree < cutoff. Only d = 1 is supported.
LaurentSeries expand(const SingularFunction& f, const RegionOrder& region, int cutoff);
LaurentSeries expand(const SingularFunction& f, const LinearSubstitution& sub, const RegionOrder& region, int cutoff);

// Coefficient of var^-1.
LaurentSeries residue(const LaurentSeries& s, std::size_t var);

// Residue in `point` taken in the expansion where that point is outermost,
// computed in closed form by division by the monic polar part. The point is
// removed and later points shift down by one. d = 1 only.
SingularFunction residue_outer(const SingularFunction& f, int point);

// Laurent series with no singular part expressed back as a singular function
// in one-point-per-variable form (d = 1). Negative exponents become factors.
SingularFunction laurent_to_function(const LaurentSeries& s, SpacePtr space);

} // namespace vertexring
