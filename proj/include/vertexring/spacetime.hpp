#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "vertexring/polynomial.hpp"

namespace vertexring {

// Coordinates x_0..x_{dim-1} of one spacetime point and the quadratic form
// q(x) = sum_u metric_signs[u] * x_u^2.
struct SpacetimeSpec {
    int dim = 1;
    std::vector<int> metric_signs{1};

    // Signature (+,-,...,-).
    static SpacetimeSpec minkowski(int dim);
    static SpacetimeSpec with_signs(std::vector<int> signs);

    void validate() const;

    friend bool operator==(const SpacetimeSpec&, const SpacetimeSpec&) = default;
};

// Which denominator generators a singular function may use. The generator is
// the coordinate itself when dim == 1 and q when dim > 1; it is applied to a
// single point (x_i) and to differences of two points (x_i - x_j).
struct SingularitySpec {
    bool per_point = true;
    bool pairs = true;

    friend bool operator==(const SingularitySpec&, const SingularitySpec&) = default;
};

// An instantiated denominator factor: g(x_first) when second < 0, otherwise
// g(x_first - x_second) with first < second.
struct Factor {
    int first = 0;
    int second = -1;

    static Factor point(int i) { return Factor{i, -1}; }
    static Factor pair(int i, int j);

    bool is_pair() const { return second >= 0; }
    bool involves(int p) const { return first == p || second == p; }

    friend auto operator<=>(const Factor&, const Factor&) = default;
};

class SingularSpace {
public:
    SingularSpace(SpacetimeSpec spacetime, SingularitySpec singularities);

    const SpacetimeSpec& spacetime() const { return spacetime_; }
    const SingularitySpec& singularities() const { return singularities_; }
    int dim() const { return spacetime_.dim; }

    // Degree and parity of the generator g: (1, odd) for dim 1, (2, even) else.
    int generator_degree() const { return dim() == 1 ? 1 : 2; }
    bool generator_is_odd() const { return dim() == 1; }

    // g as a polynomial in the dim coordinates of a single point.
    Polynomial generator() const;

    // The factor as a polynomial in num_points * dim variables.
    Polynomial factor_polynomial(const Factor& f, int num_points) const;

    // Variable in which the factor polynomial has a +-1 leading coefficient.
    std::size_t lead_variable(const Factor& f) const;

    void check_factor(const Factor& f, int num_points) const;

    std::string coordinate_name(std::size_t var) const;
    std::string point_name(int point) const;
    std::string factor_name(const Factor& f) const;

    friend bool operator==(const SingularSpace& a, const SingularSpace& b) {
        return a.spacetime_ == b.spacetime_ && a.singularities_ == b.singularities_;
    }

private:
    SpacetimeSpec spacetime_;
    SingularitySpec singularities_;
};

using SpacePtr = std::shared_ptr<const SingularSpace>;

SpacePtr make_space(SpacetimeSpec spacetime, SingularitySpec singularities = {});

bool same_space(const SpacePtr& a, const SpacePtr& b);

} // namespace vertexring
