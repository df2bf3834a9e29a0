#include <doctest.h>

#include "oracles.hpp"
#include "vertexring/expr.hpp"
#include "vertexring/laurent.hpp"

using namespace vertexring;

namespace {

SpacePtr line() { return make_space(SpacetimeSpec{}); }
SpacePtr plane() { return make_space(SpacetimeSpec::minkowski(2)); }

SingularFunction inv_x(const SpacePtr& s, int k = 1) { return SingularFunction::factor_power(s, 1, Factor::point(0), -k); }
SingularFunction inv_diff(const SpacePtr& s, int k = 1) {
    return SingularFunction::factor_power(s, 2, Factor::pair(0, 1), -k);
}

LaurentSeries series(std::vector<int> weights, Polynomial p, int total, int weight) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < weights.size(); ++i) names.push_back("x" + std::to_string(i + 1));
    return LaurentSeries::from_terms(std::move(weights), names, std::move(p), total, weight);
}

// Terms of a one-variable series with exponent < bound.
Polynomial::Terms below(const Polynomial& p, int bound) {
    Polynomial::Terms out;
    for (const auto& [e, c] : p.terms())
        if (e[0] < bound) out.emplace(e, c);
    return out;
}

} // namespace

TEST_CASE("arithmetic: inverse pair, additive identity, light-cone cancellation") {
    const SpacePtr s = line();
    const SingularFunction one = inv_x(s) * SingularFunction::coordinate(s, 1, 0, 0);
    CHECK(one.equals(SingularFunction::constant(s, 1, 1)));
    CHECK(one.render() == "1");

    const SingularFunction f = inv_diff(s, 2);
    const SingularFunction g = f + SingularFunction(s, 2);
    CHECK(g.equals(f));
    CHECK(g.render() == "(x1-x2)^-2");

    const SpacePtr p = make_space(SpacetimeSpec::with_signs({1, -1}));
    const SingularFunction q = SingularFunction::from_polynomial(p, 1, p->generator());
    const SingularFunction prod = SingularFunction::factor_power(p, 1, Factor::point(0), -1) * q;
    CHECK(prod.equals(SingularFunction::constant(p, 1, 1)));
    CHECK(prod.render() == "1");
}

TEST_CASE("arithmetic: mismatched point counts or spaces are rejected") {
    const SpacePtr s = line();
    CHECK_THROWS_AS(inv_x(s) + inv_diff(s), SpecMismatchError);
    CHECK_THROWS_AS(inv_x(s) * inv_x(plane()), SpecMismatchError);
}

TEST_CASE("arithmetic agrees with exact evaluation at rational points") {
    std::mt19937_64 rng(11);
    const SpacePtr s = line();
    int evaluated = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const SingularFunction f = oracle::random_function(rng, s, 2);
        const SingularFunction g = oracle::random_function(rng, s, 2);
        const auto pt = oracle::random_point(rng, 2);
        const auto vf = oracle::eval_function(f, pt), vg = oracle::eval_function(g, pt);
        if (!vf || !vg) continue;
        ++evaluated;
        CHECK(*oracle::eval_function(f + g, pt) == *vf + *vg);
        CHECK(*oracle::eval_function(f * g, pt) == *vf * *vg);
        CHECK(*oracle::eval_function(-f, pt) == -*vf);
    }
    CHECK(evaluated > 30);
}

TEST_CASE("equality is an equivalence on differently written rational forms") {
    std::mt19937_64 rng(5);
    const SpacePtr s = line();
    const SingularFunction diff = SingularFunction::from_polynomial(
        s, 2, Polynomial::variable(2, 0) - Polynomial::variable(2, 1));
    for (int trial = 0; trial < 30; ++trial) {
        const SingularFunction f = oracle::random_function(rng, s, 2);
        const SingularFunction g = f * diff * inv_diff(s);
        const SingularFunction h = g * SingularFunction::coordinate(s, 2, 0, 0) *
                                   SingularFunction::factor_power(s, 2, Factor::point(0), -1);
        CHECK(f.equals(f));
        CHECK(f.equals(g));
        CHECK(g.equals(f));
        CHECK(g.equals(h));
        CHECK(f.equals(h));
        const SingularFunction other = f + SingularFunction::constant(s, 2, 1);
        CHECK_FALSE(other.equals(f));
    }
}

TEST_CASE("derivative: power rule, constants, quotient rule on q") {
    const SpacePtr s = line();
    const SingularFunction d = inv_x(s, 2).derivative(0, 0);
    CHECK(d.equals(inv_x(s, 3) * Rational(-2)));
    CHECK(d.render() == "-2*x1^-3");
    CHECK(SingularFunction::constant(s, 1, 5).derivative(0, 0).vanishes());

    const SpacePtr p = make_space(SpacetimeSpec::with_signs({1, -1}));
    const SingularFunction dq = SingularFunction::factor_power(p, 1, Factor::point(0), -1).derivative(0, 0);
    const SingularFunction expected =
        SingularFunction::coordinate(p, 1, 0, 0) * SingularFunction::factor_power(p, 1, Factor::point(0), -2) * Rational(-2);
    CHECK(dq.equals(expected));
    CHECK(dq.render() == "-2*x1_0*q(x1)^-2");

    CHECK_THROWS(inv_x(s).derivative(1, 0));
    CHECK_THROWS(inv_x(s).derivative(0, 1));
}

TEST_CASE("derivatives commute") {
    std::mt19937_64 rng(7);
    const SpacePtr s = line();
    for (int trial = 0; trial < 20; ++trial) {
        const SingularFunction f = oracle::random_function(rng, s, 2);
        CHECK(f.derivative(0, 0).derivative(1, 0).equals(f.derivative(1, 0).derivative(0, 0)));
    }
    const SpacePtr p = plane();
    const SingularFunction g = SingularFunction::factor_power(p, 2, Factor::pair(0, 1), -2) *
                               SingularFunction::coordinate(p, 2, 0, 1) +
                               SingularFunction::factor_power(p, 2, Factor::point(1), -1);
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v)
            CHECK(g.derivative(0, u).derivative(1, v).equals(g.derivative(1, v).derivative(0, u)));
}

TEST_CASE("expand 1/(x-y) in both regions matches the geometric series") {
    const SpacePtr s = line();
    const SingularFunction f = inv_diff(s);
    const LaurentSeries xo = expand(f, RegionOrder{{0, 1}}, 4);
    CHECK(xo.terms() == oracle::geometric_inverse_difference(true, 4));
    CHECK(xo.render() == "x1^-1 + x1^-2*x2 + x1^-3*x2^2 + x1^-4*x2^3");
    const LaurentSeries yo = expand(f, RegionOrder{{1, 0}}, 3);
    CHECK(yo.terms() == oracle::geometric_inverse_difference(false, 3));
    CHECK(yo.render() == "-x2^-1 - x1*x2^-2 - x1^2*x2^-3");
}

TEST_CASE("expand leaves polynomials alone in every region") {
    const SpacePtr s = line();
    const SingularFunction x2 = SingularFunction::coordinate(s, 1, 0, 0) * SingularFunction::coordinate(s, 1, 0, 0);
    CHECK(expand(x2, RegionOrder{{0}}, 5).render() == "x1^2");
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial p(2);
        for (int t = 0; t < 4; ++t) p.add_term({static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)}, oracle::small_rational(rng));
        const SingularFunction f = SingularFunction::from_polynomial(s, 2, p);
        const LaurentSeries a = expand(f, RegionOrder{{0, 1}}, 6), b = expand(f, RegionOrder{{1, 0}}, 6);
        CHECK(a.terms().terms() == b.terms().terms());
        CHECK(a.terms().terms() == p.terms());
    }
}

TEST_CASE("expand errors: light-cone poles and windows") {
    CHECK_THROWS_AS(expand(SingularFunction::factor_power(plane(), 1, Factor::point(0), -1), RegionOrder{{0}}, 3),
                    UnsupportedExpansionError);
    const SingularFunction w = inv_x(line()).with_window(2);
    CHECK_THROWS_AS(expand(w, RegionOrder{{0}}, 3), WindowError);
}

TEST_CASE("expand is a ring homomorphism within windows") {
    std::mt19937_64 rng(17);
    const SpacePtr s = line();
    const int cutoff = 4;
    for (int trial = 0; trial < 100; ++trial) {
        const SingularFunction f = oracle::random_function(rng, s, 2);
        const SingularFunction g = oracle::random_function(rng, s, 2);
        const RegionOrder region{trial % 2 ? std::vector<int>{0, 1} : std::vector<int>{1, 0}};
        // Enough extra weight for the product's lowest terms.
        const int extra = 8;
        const LaurentSeries ef = expand(f, region, cutoff + extra), eg = expand(g, region, cutoff + extra);
        const LaurentSeries lhs = expand(f * g, region, cutoff);
        const LaurentSeries rhs = ef * eg;
        CHECK(rhs.weight_window() >= cutoff);
        CHECK(lhs.equals(rhs.with_windows(kInfinite, cutoff)));
        CHECK((ef + eg).equals(expand(f + g, region, cutoff + extra)));
    }
}

TEST_CASE("residue: defining case and the two expansions of 1/(x-y)") {
    const SpacePtr s = line();
    CHECK(residue(expand(inv_x(s), RegionOrder{{0}}, 2), 0).terms().coefficient({}) == 1);
    const LaurentSeries xo = residue(expand(inv_diff(s), RegionOrder{{0, 1}}, 4), 0);
    const LaurentSeries yo = residue(expand(inv_diff(s), RegionOrder{{1, 0}}, 4), 0);
    CHECK(xo.render() == "1");
    CHECK(yo.is_zero());
    CHECK_THROWS_AS(residue(series({0}, Polynomial::monomial({-2}, 1), -1, kInfinite), 0), WindowError);
}

TEST_CASE("residue of a derivative vanishes") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        Polynomial p(2);
        for (int t = 0; t < 6; ++t)
            p.add_term({static_cast<int>(rng() % 7) - 4, static_cast<int>(rng() % 7) - 3}, oracle::small_rational(rng));
        const LaurentSeries s = series({0, 1}, p, 10, 10);
        CHECK(residue(s.derivative(0), 0).is_zero());
        CHECK(residue(s.derivative(1), 1).is_zero());
    }
    // and on genuine expansions
    for (int trial = 0; trial < 20; ++trial) {
        const SingularFunction f = oracle::random_function(rng, line(), 2);
        const LaurentSeries e = expand(f.derivative(0, 0), RegionOrder{{0, 1}}, 4);
        CHECK(residue(e, 0).is_zero());
    }
}

TEST_CASE("closed-form outer residue matches the Laurent route") {
    std::mt19937_64 rng(29);
    const SpacePtr s = line();
    for (int trial = 0; trial < 40; ++trial) {
        const SingularFunction f = oracle::random_function(rng, s, 2);
        // point 0 outermost
        const SingularFunction closed = residue_outer(f, 0);
        const LaurentSeries via = residue(expand(f, RegionOrder{{0, 1}}, 8), 0);
        const LaurentSeries closed_series = expand(closed, RegionOrder{{0}}, 8);
        CHECK(below(via.terms(), 8) == below(closed_series.terms(), 8));
    }
}

TEST_CASE("propagator evenness is decidable") {
    CHECK(is_even_function(inv_x(line(), 2)));
    CHECK(is_even_function(SingularFunction::factor_power(plane(), 1, Factor::point(0), -1)));
    CHECK_FALSE(is_even_function(inv_x(line(), 3)));
}

TEST_CASE("canonical text parses back to an equal function") {
    std::mt19937_64 rng(31);
    const SpacePtr s = line();
    for (int trial = 0; trial < 50; ++trial) {
        const SingularFunction f = oracle::random_function(rng, s, 3);
        const SingularFunction g = parse_singular_function(f.render(), s, 3);
        CHECK(g.equals(f));
        CHECK(g.render() == f.render());
    }
    const SpacePtr p = plane();
    const SingularFunction h = parse_singular_function("-2*x1_0*q(x1)^-2 + q(x1-x2)^-1", p, 2);
    CHECK(h.render() == "q(x1-x2)^-1 - 2*x1_0*q(x1)^-2");
    CHECK(parse_singular_function("1/(x-y)", s).equals(inv_diff(s)));
}
