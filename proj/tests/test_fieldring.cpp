#include <doctest.h>

#include "oracles.hpp"
#include "vertexring/expr.hpp"

using namespace vertexring;

namespace {

SpacePtr line() { return make_space(SpacetimeSpec{}); }

FieldElement phi1() { return FieldElement::phi(1); }
FieldElement D(int k, const FieldElement& v) {
    FieldElement r = v;
    for (int i = 0; i < k; ++i) r = oracle::naive_D(0, r);
    return r;
}

// sum_k x^k v_k as a one-point series, from the Taylor oracle.
StateSeries from_taylor(const SpacePtr& s, const std::vector<std::pair<int, FieldElement>>& t) {
    StateSeries out(s, 1);
    for (const auto& [k, v] : t) {
        const SingularFunction xk = SingularFunction::from_polynomial(s, 1, Polynomial::monomial({k}, 1));
        for (const auto& [m, c] : v.terms()) out.add_term(m, xk * c);
    }
    return out;
}

bool same(const StateSeries& a, const StateSeries& b) {
    if (a.terms().size() != b.terms().size()) return false;
    for (const auto& [m, c] : a.terms())
        if (!c.equals(b.coefficient(m))) return false;
    return true;
}

} // namespace

TEST_CASE("apply_D on generators, squares and the unit") {
    CHECK(apply_D(0, phi1()) == FieldElement::generator(1, {1}));
    CHECK(apply_D(0, phi1() * phi1()) == FieldElement::generator(1, {1}) * phi1() * Rational(2));
    CHECK(apply_D(0, phi1() * phi1()).render() == "2*(D0 phi)*phi");
    CHECK(apply_D(0, FieldElement::one(1)).is_zero());
    CHECK_THROWS(apply_D(1, phi1()));
}

TEST_CASE("apply_D agrees with the factor-by-factor Leibniz oracle") {
    std::mt19937_64 rng(41);
    for (int dim = 1; dim <= 3; ++dim)
        for (int trial = 0; trial < 40; ++trial) {
            const FieldElement v = oracle::random_element(rng, dim, 4);
            for (int u = 0; u < dim; ++u) CHECK(apply_D(u, v) == oracle::naive_D(u, v));
        }
}

TEST_CASE("derivations commute and satisfy Leibniz") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        const FieldElement u = oracle::random_element(rng, 2, 3), v = oracle::random_element(rng, 2, 3);
        CHECK(apply_D(0, apply_D(1, u)) == apply_D(1, apply_D(0, u)));
        CHECK(apply_D(0, u * v) == apply_D(0, u) * v + u * apply_D(0, v));
        CHECK(apply_D(1, u * v) == apply_D(1, u) * v + u * apply_D(1, v));
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 1 + trial % 2;
        const FieldElement a = oracle::random_element(rng, dim, 3), b = oracle::random_element(rng, dim, 3),
                           c = oracle::random_element(rng, dim, 3);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * FieldElement::one(dim) == a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("translate in one and two dimensions") {
    const SpacePtr s = line();
    const StateSeries t = translate(s, phi1(), 0, 3);
    CHECK(same(t, from_taylor(s, oracle::taylor_d1(phi1(), 3))));
    CHECK(t.render() == "1/2*x1^2*(D0^2 phi) + x1*(D0 phi) + phi");
    CHECK(translate(s, FieldElement::one(1), 0, 5).render() == "1");

    const SpacePtr p = make_space(SpacetimeSpec::minkowski(2));
    const StateSeries t2 = translate(p, FieldElement::phi(2), 0, 2);
    CHECK(t2.terms().size() == 3);
    CHECK(t2.coefficient({Generator{{1, 0}}}).equals(SingularFunction::coordinate(p, 1, 0, 0)));
    CHECK(t2.coefficient({Generator{{0, 1}}}).equals(SingularFunction::coordinate(p, 1, 0, 1)));
    CHECK(t2.coefficient({Generator{{0, 0}}}).equals(SingularFunction::constant(p, 1, 1)));
}

TEST_CASE("translate matches the Taylor oracle on random elements") {
    std::mt19937_64 rng(53);
    const SpacePtr s = line();
    for (int trial = 0; trial < 30; ++trial) {
        const FieldElement v = oracle::random_element(rng, 1, 3);
        CHECK(same(translate(s, v, 0, 5), from_taylor(s, oracle::taylor_d1(v, 5))));
    }
}

TEST_CASE("translate is multiplicative within the cutoff") {
    std::mt19937_64 rng(59);
    const SpacePtr s = line();
    const int cutoff = 5;
    for (int trial = 0; trial < 30; ++trial) {
        const FieldElement u = oracle::random_element(rng, 1, 3), v = oracle::random_element(rng, 1, 3);
        const StateSeries lhs = translate(s, u * v, 0, cutoff);
        const StateSeries rhs = translate(s, u, 0, cutoff).times(translate(s, v, 0, cutoff));
        // drop the product's terms of x-degree >= cutoff
        StateSeries cut(s, 1);
        for (const auto& [m, c] : rhs.terms()) {
            Polynomial p(1);
            const Polynomial full = c.polynomial();
            for (const auto& [e, r] : full.terms())
                if (e[0] < cutoff) p.add_term(e, r);
            cut.add_term(m, SingularFunction::from_polynomial(s, 1, p));
        }
        CHECK(same(lhs, cut));
    }
}

TEST_CASE("holomorphic vertex operator examples") {
    const SpacePtr s = line();
    CHECK(holo_vertex(s, phi1(), phi1(), 2).render() == "x1*(D0 phi)*phi + phi^2");
    const FieldElement b = phi1() * phi1() * Rational(3) + FieldElement::generator(1, {2});
    CHECK(same(holo_vertex(s, FieldElement::one(1), b, 7), StateSeries::from_element(s, b, 1)));
    CHECK(same(holo_vertex(s, phi1(), FieldElement::one(1), 3), translate(s, phi1(), 0, 3)));
}

TEST_CASE("recover_ring reproduces product and derivation") {
    const RecoveredRing r = recover_ring(HolomorphicVertexAlgebra(line(), 4));
    CHECK(r.product(phi1(), phi1()) == phi1() * phi1());
    CHECK(r.derivation(0, phi1()) == FieldElement::generator(1, {1}));
    const FieldElement b = phi1() + FieldElement::generator(1, {3});
    CHECK(r.product(FieldElement::one(1), b) == b);
}

TEST_CASE("recover_ring round trip on random elements, d = 1 and d = 2") {
    std::mt19937_64 rng(61);
    for (int dim = 1; dim <= 2; ++dim) {
        const SpacePtr s = make_space(dim == 1 ? SpacetimeSpec{} : SpacetimeSpec::minkowski(2));
        const RecoveredRing r = recover_ring(HolomorphicVertexAlgebra(s, 3));
        for (int trial = 0; trial < 50; ++trial) {
            const FieldElement a = oracle::random_element(rng, dim, 3), b = oracle::random_element(rng, dim, 3);
            CHECK(r.product(a, b) == a * b);
            for (int u = 0; u < dim; ++u) CHECK(r.derivation(u, a) == oracle::naive_D(u, a));
        }
    }
}

TEST_CASE("vacuum expectation is the constant term and kills derivatives") {
    CHECK(vacuum_expectation(FieldElement::one(1) + phi1() * phi1() * Rational(3)) == 1);
    CHECK(vacuum_expectation(phi1()) == 0);
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = 1 + trial % 3;
        const FieldElement v = oracle::random_element(rng, dim, 3) + FieldElement::constant(dim, 5);
        for (int u = 0; u < dim; ++u) CHECK(vacuum_expectation(apply_D(u, v)) == 0);
    }
}

TEST_CASE("canonical render and its literal example") {
    const FieldElement v = D(2, phi1()) * phi1() * Rational(2) + FieldElement::one(1);
    CHECK(v.render() == "2*(D0^2 phi)*phi + 1");
    CHECK(parse_field_element("2*(D0^2 phi)*phi + 1", 1) == v);
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 1 + trial % 3;
        const FieldElement w = oracle::random_element(rng, dim, 4, 6);
        CHECK(parse_field_element(w.render(), dim) == w);
    }
}

TEST_CASE("graded basis sizes") {
    CHECK(graded_basis(1, 0).size() == 1);
    CHECK(graded_basis(1, 1).size() == 2);  // 1, phi
    CHECK(graded_basis(1, 2).size() == 4);  // + phi^2, D phi
    CHECK(graded_basis(1, 3).size() == 7);  // + phi^3, (D phi) phi, D^2 phi
    CHECK(graded_basis(2, 2).size() == 5);  // 1, phi, phi^2, D0 phi, D1 phi
    for (int k = 0; k <= 4; ++k)
        for (const auto& m : graded_basis(2, k)) CHECK(degree(m) <= k);
}
