#pragma once

#include <map>
#include <string>

#include "vertexring/field_ring.hpp"
#include "vertexring/singular_function.hpp"

namespace vertexring {

// Element of V (x) K_m: field monomials with singular-function coefficients in
// num_points points. Monomials may contain anchored generators; the series
// is then a formal expression whose expansion is given by materialize().
//
// window: the value is known modulo V (x) (functions of effective degree
// >= window). Coefficients are truncated accordingly.
class StateSeries {
public:
    using Terms = std::map<FieldMonomial, SingularFunction>;

    StateSeries() = default;
    StateSeries(SpacePtr space, int num_points, int window = kInfinite);

    static StateSeries from_element(SpacePtr space, const FieldElement& v, int num_points = 0);
    static StateSeries from_monomial(SpacePtr space, int num_points, FieldMonomial m, SingularFunction coefficient);

    const SpacePtr& space() const { return space_; }
    int dim() const { return space_->dim(); }
    int num_points() const { return num_points_; }
    int window() const { return window_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_plain() const;

    SingularFunction coefficient(const FieldMonomial& m) const;

    // Adds c * m; c is embedded to num_points when it has fewer points.
    void add_term(const FieldMonomial& m, const SingularFunction& c);

    StateSeries& operator+=(const StateSeries& other);
    StateSeries& operator-=(const StateSeries& other);
    StateSeries& operator*=(const Rational& c);
    StateSeries operator-() const;
    friend StateSeries operator+(StateSeries a, const StateSeries& b) { return a += b; }
    friend StateSeries operator-(StateSeries a, const StateSeries& b) { return a -= b; }

    StateSeries times(const StateSeries& other) const;
    StateSeries times(const SingularFunction& f) const;
    StateSeries times_monomial(const FieldMonomial& m) const;

    StateSeries embedded(int num_points) const;
    StateSeries with_window(int window) const;

    // Field element carried by a series whose coefficients are constants
    // certified by the window. Throws WindowError otherwise.
    FieldElement to_field_element() const;

    std::string render() const;
    // One "monomial=<m> coefficient=<f>" record per line.
    std::string render_structured() const;

private:
    void check_compatible(const StateSeries& other) const;

    SpacePtr space_;
    int num_points_ = 0;
    Terms terms_;
    int window_ = kInfinite;
};

// Leibniz derivation D_coord on the field part (anchored generators too).
StateSeries apply_D(int coord, const StateSeries& s);

// sum_{|alpha| < cutoff} x^alpha D^alpha v / alpha! at `point`, materialized.
StateSeries translate(SpacePtr space, const FieldElement& v, int point, int cutoff);

// sum_i x^i D^i / i! applied to the field part of s at `point`.
StateSeries translate_series(const StateSeries& s, int point, int cutoff);

// V(a,x)b = translate(a) * b, a polynomial series in one point.
StateSeries holo_vertex(SpacePtr space, const FieldElement& a, const FieldElement& b, int cutoff);

// The holomorphic vertex structure of (V, D) at a fixed truncation.
class HolomorphicVertexAlgebra {
public:
    HolomorphicVertexAlgebra(SpacePtr space, int cutoff) : space_(std::move(space)), cutoff_(cutoff) {}

    StateSeries operator()(const FieldElement& a, const FieldElement& b) const {
        return holo_vertex(space_, a, b, cutoff_);
    }
    const SpacePtr& space() const { return space_; }
    int cutoff() const { return cutoff_; }

private:
    SpacePtr space_;
    int cutoff_;
};

// ab := V(a,0)b and D_u a := coefficient of x_u in V(a,x)1.
struct RecoveredRing {
    HolomorphicVertexAlgebra vertex;

    FieldElement product(const FieldElement& a, const FieldElement& b) const;
    FieldElement derivation(int coord, const FieldElement& a) const;
};

RecoveredRing recover_ring(const HolomorphicVertexAlgebra& holo);

} // namespace vertexring
