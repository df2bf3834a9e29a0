#pragma once

#include <map>
#include <optional>
#include <string>

#include "vertexring/field_ring.hpp"
#include "vertexring/singular_function.hpp"
#include "vertexring/state_series.hpp"

namespace vertexring {

// The two-point function Delta, a singular function of one point.
class Propagator {
public:
    // Rejects a delta that is not even or uses more than one point.
    static Propagator checked(SingularFunction delta);
    // No evenness check; used for the odd negative controls.
    static Propagator unchecked(SingularFunction delta);
    // x^-2 in one dimension, 1/q(x) otherwise.
    static Propagator standard(SpacePtr space);

    const SingularFunction& delta() const { return delta_; }
    bool is_even() const { return even_; }

private:
    Propagator(SingularFunction delta, bool even) : delta_(std::move(delta)), even_(even) {}

    SingularFunction delta_;
    bool even_ = true;
};

bool is_even_function(const SingularFunction& f);

// phi^-(x) D^alpha phi = (-1)^|alpha| d^alpha Delta(x) (alternating), or
// without the sign (unsigned, a negative control only).
enum class SignConvention { alternating, unsigned_control };

// The free-field vertex algebra on V for a given space and propagator.
//
// States are StateSeries whose monomials may hold anchored generators: the
// generator (alpha, p) is e^{x_p D} D^alpha phi. Operators built here never
// expand anchors, so their output is exact; materialize() expands them.
class FreeFieldAlgebra {
public:
    FreeFieldAlgebra(SpacePtr space, Propagator propagator, SignConvention sign = SignConvention::alternating);

    static FreeFieldAlgebra standard(const SpacetimeSpec& spacetime);

    const SpacePtr& space() const { return space_; }
    int dim() const { return space_->dim(); }
    const Propagator& propagator() const { return propagator_; }
    SignConvention sign_convention() const { return sign_; }

    // d^gamma Delta as a one-point function.
    SingularFunction delta_derivative(const MultiIndex& gamma) const;

    // phi^-_alpha(x_point) applied to the generator g, in num_points points.
    SingularFunction contraction(const MultiIndex& alpha, int point, const Generator& g, int num_points) const;

    // The derivation d^alpha phi^-(x_point), and multiplication by the
    // anchored generator (alpha, point). Both exact.
    StateSeries annihilate(const MultiIndex& alpha, int point, const StateSeries& s) const;
    StateSeries create(const MultiIndex& alpha, int point, const StateSeries& s) const;

    // phi^+, phi^- and phi = phi^+ + phi^- at a point, with the anchors at that
    // point materialized to the given cutoff.
    StateSeries phi_plus(int point, const StateSeries& s, int cutoff) const;
    StateSeries phi_minus(int point, const StateSeries& s, int cutoff) const;
    StateSeries phi_apply(int point, const StateSeries& s, int cutoff) const;
    // Exact phi(x_point) s.
    StateSeries phi(int point, const StateSeries& s) const;

    // Normal-ordered Y(v, x_point) s, exact.
    StateSeries vertex_op(const FieldElement& v, int point, const StateSeries& s) const;
    StateSeries vertex_op(const FieldElement& v, int point, const FieldElement& s) const;

    // phi(x_1)...phi(x_k) 1, applied right to left, exact.
    StateSeries product_at_points(int k) const;
    // Constant-term functional applied coefficient-wise to the product.
    SingularFunction correlator(int k) const;

private:
    SpacePtr space_;
    Propagator propagator_;
    SignConvention sign_;
    int table_order_ = 0;
    std::map<MultiIndex, SingularFunction> derivatives_;
};

// Sum over perfect matchings of products Delta(x_i - x_j), i < j.
SingularFunction wick_oracle(const Propagator& propagator, int k);

// Expands anchored generators (only those at `point` when given), keeping
// coefficient terms of effective degree < cutoff.
StateSeries materialize(const StateSeries& s, int cutoff, std::optional<int> point = std::nullopt);

// d/dx_{point,coord} of a state: coefficients by the quotient rule, anchors at
// that point by D.
StateSeries diff_point(const StateSeries& s, int point, int coord);

// x -> -x on every coordinate; anchored generators are not allowed.
StateSeries reflect(const StateSeries& s);

struct Comparison {
    bool holds = true;
    // True when the two sides agree as exact anchored expressions.
    bool exact = false;
    int window = kInfinite;
    std::string monomial;
    int monomial_degree = 0;
    std::string discrepancy;
    int discrepancy_degree = 0;
    std::optional<SingularFunction> discrepancy_value;
};

// Compares exactly when the difference vanishes in anchored form, otherwise
// after materialization at the cutoff (capped by the series windows).
Comparison compare_states(const StateSeries& a, const StateSeries& b, int cutoff);

} // namespace vertexring
