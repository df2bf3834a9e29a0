#include <doctest.h>

#include "oracles.hpp"
#include "vertexring/axioms.hpp"

using namespace vertexring;

namespace {

SpacePtr line() { return make_space(SpacetimeSpec{}); }
FieldElement phi1() { return FieldElement::phi(1); }
FieldElement gen(int k) { return FieldElement::generator(1, {k}); }

StateSeries state(const FreeFieldAlgebra& alg, const FieldElement& v, int points = 0) {
    return StateSeries::from_element(alg.space(), v, points);
}

// Sum over perfect matchings of the numeric propagator values.
Rational numeric_wick(const std::vector<std::vector<Rational>>& pts, std::vector<int> left) {
    if (left.empty()) return 1;
    Rational total = 0;
    const int i = left[0];
    for (std::size_t t = 1; t < left.size(); ++t) {
        std::vector<int> rest;
        for (std::size_t s = 1; s < left.size(); ++s)
            if (s != t) rest.push_back(left[s]);
        const int j = left[t];
        Rational val;
        if (pts[i].size() == 1) {
            const Rational d = pts[i][0] - pts[j][0];
            val = 1 / (d * d);
        } else {
            Rational q = 0;
            for (std::size_t u = 0; u < pts[i].size(); ++u) {
                const Rational d = pts[i][u] - pts[j][u];
                q += (u == 0 ? 1 : -1) * d * d;
            }
            val = 1 / q;
        }
        total += val * numeric_wick(pts, rest);
    }
    return total;
}

} // namespace

TEST_CASE("phi_plus examples") {
    const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(SpacetimeSpec{});
    CHECK(alg.phi_plus(0, state(alg, FieldElement::one(1)), 3).render() == "1/2*x1^2*(D0^2 phi) + x1*(D0 phi) + phi");
    CHECK(alg.phi_plus(0, state(alg, phi1()), 2).render() == "x1*(D0 phi)*phi + phi^2");
    CHECK(alg.phi_plus(0, state(alg, FieldElement(1)), 4).is_zero());
}

TEST_CASE("phi_minus examples") {
    const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(SpacetimeSpec{});
    CHECK(alg.phi_minus(0, state(alg, phi1()), 4).render() == "x1^-2");
    CHECK(alg.phi_minus(0, state(alg, gen(1)), 4).render() == "2*x1^-3");
    CHECK(alg.phi_minus(0, state(alg, phi1() * phi1()), 4).render() == "2*x1^-2*phi");
    CHECK(alg.phi_minus(0, state(alg, FieldElement::one(1)), 4).is_zero());
}

TEST_CASE("phi_apply examples") {
    const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(SpacetimeSpec{});
    CHECK(alg.phi_apply(0, state(alg, phi1()), 2).render() == "x1*(D0 phi)*phi + phi^2 + x1^-2");
    CHECK(alg.phi_apply(0, state(alg, FieldElement::one(1)), 3).render() ==
          "1/2*x1^2*(D0^2 phi) + x1*(D0 phi) + phi");
    CHECK(alg.phi_apply(0, state(alg, FieldElement(1)), 3).is_zero());
}

TEST_CASE("product_at_points for k = 0, 1, 2") {
    const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(SpacetimeSpec{});
    CHECK(materialize(alg.product_at_points(0), 4).render() == "1");
    const StateSeries p1 = materialize(alg.product_at_points(1), 4);
    CHECK(compare_states(p1, translate(alg.space(), phi1(), 0, 4), 4).holds);
    const StateSeries p2 = materialize(alg.product_at_points(2), 2);
    CHECK(p2.render() == "(x1 + x2)*(D0 phi)*phi + phi^2 + (x1-x2)^-2");
    // translate(phi,x1) translate(phi,x2) + Delta(x1-x2)
    const StateSeries t = translate(alg.space(), phi1(), 0, 3).embedded(2).times(
        translate_series(StateSeries::from_element(alg.space(), phi1(), 2), 1, 3));
    StateSeries expected = t;
    expected.add_term({}, SingularFunction::factor_power(alg.space(), 2, Factor::pair(0, 1), -2));
    CHECK(compare_states(materialize(alg.product_at_points(2), 3), materialize(expected, 3), 3).holds);
}

TEST_CASE("correlator examples and the Wick oracle") {
    const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(SpacetimeSpec{});
    CHECK(alg.correlator(2).render() == "(x1-x2)^-2");
    CHECK(alg.correlator(3).vanishes());
    CHECK(alg.correlator(4).equals(oracle::wick_from_pairs(alg.space(), 4)));
    CHECK(wick_oracle(alg.propagator(), 2).render() == "(x1-x2)^-2");
    CHECK(wick_oracle(alg.propagator(), 5).vanishes());
    CHECK(wick_oracle(alg.propagator(), 4).parts().size() == 3);
}

TEST_CASE("correlators agree with Wick sums, symbolically and at rational points") {
    std::mt19937_64 rng(73);
    for (int dim = 1; dim <= 2; ++dim) {
        const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(dim == 1 ? SpacetimeSpec{} : SpacetimeSpec::minkowski(2));
        const int max_k = dim == 1 ? 6 : 4;
        for (int k = 0; k <= max_k; ++k) {
            const SingularFunction c = alg.correlator(k);
            CHECK(c.equals(wick_oracle(alg.propagator(), k)));
            CHECK(c.equals(oracle::wick_from_pairs(alg.space(), k)));
            if (k % 2) {
                CHECK(c.vanishes());
                continue;
            }
            std::vector<int> idx;
            for (int i = 0; i < k; ++i) idx.push_back(i);
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<std::vector<Rational>> pts;
                std::vector<Rational> flat;
                for (int i = 0; i < k; ++i) {
                    pts.push_back(oracle::random_point(rng, dim));
                    flat.insert(flat.end(), pts.back().begin(), pts.back().end());
                }
                const auto v = oracle::eval_function(c, flat);
                if (!v) continue;
                CHECK(*v == numeric_wick(pts, idx));
            }
        }
    }
}

TEST_CASE("commutator relation on the basis up to degree 6 (d = 1) and 4 (d = 2)") {
    for (int dim = 1; dim <= 2; ++dim) {
        const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(dim == 1 ? SpacetimeSpec{} : SpacetimeSpec::minkowski(2));
        for (const FieldElement& s : graded_basis_elements(dim, dim == 1 ? 6 : 4)) {
            const AxiomReport r = check_commutator_relation(alg, s);
            CHECK_MESSAGE(r.holds, s.render());
            CHECK(r.exact);
        }
    }
}

TEST_CASE("annihilators commute with annihilators, creators with creators") {
    const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(SpacetimeSpec{});
    const MultiIndex z{0};
    for (const FieldElement& s : graded_basis_elements(1, 4)) {
        const StateSeries st = state(alg, s);
        const StateSeries mm = alg.annihilate(z, 0, alg.annihilate(z, 1, st)) - alg.annihilate(z, 1, alg.annihilate(z, 0, st));
        const StateSeries pp = alg.create(z, 0, alg.create(z, 1, st)) - alg.create(z, 1, alg.create(z, 0, st));
        CHECK(compare_states(mm, StateSeries(alg.space(), 2), 0).holds);
        CHECK(compare_states(pp, StateSeries(alg.space(), 2), 0).holds);
    }
}

TEST_CASE("phi(x) and phi(y) commute exactly") {
    for (int dim = 1; dim <= 2; ++dim) {
        const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(dim == 1 ? SpacetimeSpec{} : SpacetimeSpec::minkowski(2));
        for (const FieldElement& s : graded_basis_elements(dim, 4)) {
            const AxiomReport r = check_field_commutativity(alg, s);
            CHECK(r.holds);
            CHECK(r.exact);
        }
    }
}

TEST_CASE("odd propagator breaks commutativity by 2 Delta(x-y) on the vacuum") {
    const SpacePtr s = line();
    const SingularFunction odd = SingularFunction::factor_power(s, 1, Factor::point(0), -3);
    CHECK_THROWS(Propagator::checked(odd));
    const FreeFieldAlgebra alg(s, Propagator::unchecked(odd));
    const StateSeries one = state(alg, FieldElement::one(1), 2);
    const StateSeries diff = alg.phi(0, alg.phi(1, one)) - alg.phi(1, alg.phi(0, one));
    const SingularFunction expected = SingularFunction::factor_power(s, 2, Factor::pair(0, 1), -3) * Rational(2);
    CHECK(materialize(diff, 4).coefficient({}).equals(expected));
    const AxiomReport r = check_field_commutativity(alg, FieldElement::one(1));
    CHECK_FALSE(r.holds);
    CHECK(r.discrepancy == "2*(x1-x2)^-3");
}

TEST_CASE("vertex operators: single field, creation property, unit") {
    const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(SpacetimeSpec{});
    for (const FieldElement& s : graded_basis_elements(1, 3)) {
        CHECK(compare_states(alg.vertex_op(phi1(), 0, s), alg.phi(0, state(alg, s)), 4).holds);
        CHECK(compare_states(alg.vertex_op(FieldElement::one(1), 0, s), state(alg, s, 1), 4).holds);
    }
    const FieldElement sq = phi1() * phi1();
    CHECK(compare_states(materialize(alg.vertex_op(sq, 0, FieldElement::one(1)), 5),
                         translate(alg.space(), sq, 0, 5), 5)
              .holds);
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 10; ++trial) {
        const FieldElement v = oracle::random_element(rng, 1, 4);
        CHECK(compare_states(materialize(alg.vertex_op(v, 0, FieldElement::one(1)), 5),
                             translate(alg.space(), v, 0, 5), 5)
                  .holds);
    }
}

TEST_CASE("translation covariance of vertex operators") {
    for (int dim = 1; dim <= 2; ++dim) {
        const FreeFieldAlgebra alg = FreeFieldAlgebra::standard(dim == 1 ? SpacetimeSpec{} : SpacetimeSpec::minkowski(2));
        const auto basis = graded_basis_elements(dim, dim == 1 ? 3 : 2);
        for (const FieldElement& v : basis)
            for (const FieldElement& s : basis)
                for (int u = 0; u < dim; ++u) {
                    const StateSeries lhs = alg.vertex_op(apply_D(u, v), 0, s);
                    const StateSeries rhs = diff_point(alg.vertex_op(v, 0, s), 0, u);
                    CHECK(compare_states(lhs, rhs, 5).holds);
                }
    }
}

TEST_CASE("propagators: defaults and evenness") {
    CHECK(Propagator::standard(line()).delta().render() == "x1^-2");
    const SpacePtr p = make_space(SpacetimeSpec::minkowski(2));
    CHECK(Propagator::standard(p).delta().render() == "q(x1)^-1");
    CHECK(Propagator::checked(SingularFunction::factor_power(line(), 1, Factor::point(0), -4)).is_even());
    CHECK_FALSE(Propagator::unchecked(SingularFunction::factor_power(line(), 1, Factor::point(0), -1)).is_even());
}
