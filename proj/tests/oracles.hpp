#pragma once

// Independent reference computations used by the tests. None of these go
// through the library's own expansion or contraction code.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "vertexring/field_ring.hpp"
#include "vertexring/free_field.hpp"
#include "vertexring/singular_function.hpp"

namespace oracle {

using namespace vertexring;

inline Rational eval_poly(const Polynomial& p, const std::vector<Rational>& vals) {
    Rational sum = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational t = c;
        for (std::size_t v = 0; v < e.size(); ++v) {
            Rational base = vals[v];
            int k = e[v];
            if (k < 0) {
                base = 1 / base;
                k = -k;
            }
            for (int i = 0; i < k; ++i) t *= base;
        }
        sum += t;
    }
    return sum;
}

// Value of an exact singular function at a point of (Q^d)^m; nullopt on a
// pole.
inline std::optional<Rational> eval_function(const SingularFunction& f, const std::vector<Rational>& vals) {
    Rational sum = 0;
    for (const auto& [den, num] : f.parts()) {
        Rational d = 1;
        for (const auto& [fac, e] : den) {
            const Rational v = eval_poly(f.space()->factor_polynomial(fac, f.num_points()), vals);
            if (v == 0) return std::nullopt;
            for (int i = 0; i < e; ++i) d *= v;
        }
        sum += eval_poly(num, vals) / d;
    }
    return sum;
}

inline Rational small_rational(std::mt19937_64& rng) {
    const long num = static_cast<long>(rng() % 17) - 8;
    const long den = static_cast<long>(rng() % 5) + 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(small_rational(rng));
    return v;
}

// Random exact function of m points in d = 1 with allowed denominators.
inline SingularFunction random_function(std::mt19937_64& rng, const SpacePtr& s, int m) {
    Polynomial num(static_cast<std::size_t>(m));
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        Exponents e(m, 0);
        for (int v = 0; v < m; ++v) e[v] = static_cast<int>(rng() % 3);
        num.add_term(e, small_rational(rng));
    }
    if (num.is_zero()) num.add_term(Exponents(m, 0), 1);
    SingularFunction::Denominator den;
    for (int i = 0; i < m; ++i) {
        if (rng() % 2) den[Factor::point(i)] = 1 + static_cast<int>(rng() % 2);
        for (int j = i + 1; j < m; ++j)
            if (rng() % 2) den[Factor::pair(i, j)] = 1 + static_cast<int>(rng() % 2);
    }
    return SingularFunction::fraction(s, m, num, den);
}

// Field element with up to `terms` random basis monomials of grading <= degree.
inline FieldElement random_element(std::mt19937_64& rng, int dim, int degree, int terms = 4) {
    const std::vector<FieldMonomial> basis = graded_basis(dim, degree);
    FieldElement v(dim);
    const int n = 1 + static_cast<int>(rng() % terms);
    for (int i = 0; i < n; ++i) v.add_term(basis[rng() % basis.size()], small_rational(rng));
    return v;
}

// Leibniz rule written factor by factor, without grouping multiplicities.
inline FieldElement naive_D(int coord, const FieldElement& v) {
    FieldElement out(v.dim());
    for (const auto& [m, c] : v.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::vector<Generator> factors(m.begin(), m.end());
            factors[i].alpha[coord] += 1;
            out.add_term(make_monomial(factors), c);
        }
    }
    return out;
}

// sum_{k < cutoff} x^k D^k v / k! in d = 1, as (k, D^k v / k!) pairs.
inline std::vector<std::pair<int, FieldElement>> taylor_d1(const FieldElement& v, int cutoff) {
    std::vector<std::pair<int, FieldElement>> out;
    FieldElement cur = v;
    Rational fact = 1;
    for (int k = 0; k < cutoff; ++k) {
        if (k > 0) {
            cur = naive_D(0, cur);
            fact *= k;
        }
        if (!cur.is_zero()) out.emplace_back(k, cur * (1 / fact));
    }
    return out;
}

// Coefficients of 1/(x - y): |x| >> |y| gives sum_k y^k x^{-1-k}, the other
// region -sum_k x^k y^{-1-k}. Exponents are (x, y).
inline Polynomial geometric_inverse_difference(bool x_outer, int terms) {
    Polynomial p(2);
    for (int k = 0; k < terms; ++k) {
        if (x_outer) p.add_term({-1 - k, k}, 1);
        else p.add_term({k, -1 - k}, -1);
    }
    return p;
}

// Sum over perfect matchings of prod Delta(x_i - x_j) with Delta the
// standard propagator, built directly from pair factors.
inline SingularFunction wick_from_pairs(const SpacePtr& space, int k) {
    const int power = space->dim() == 1 ? -2 : -1;
    SingularFunction total(space, k);
    if (k % 2) return total;
    std::vector<int> free;
    for (int i = 0; i < k; ++i) free.push_back(i);
    std::function<void(std::vector<int>, SingularFunction)> rec = [&](std::vector<int> left, SingularFunction acc) {
        if (left.empty()) {
            total += acc;
            return;
        }
        const int i = left[0];
        for (std::size_t t = 1; t < left.size(); ++t) {
            std::vector<int> rest;
            for (std::size_t s = 1; s < left.size(); ++s)
                if (s != t) rest.push_back(left[s]);
            rec(rest, acc * SingularFunction::factor_power(space, k, Factor::pair(i, left[t]), power));
        }
    };
    rec(free, SingularFunction::constant(space, k, 1));
    return total;
}

// a(n): reduced rooted trees with n labeled leaves, by the block containing
// leaf 1 (big Schroeder numbers of the fourth problem).
inline std::vector<long long> reduced_tree_counts(int max_n) {
    std::vector<long long> a(max_n + 1, 0), h(max_n + 1, 0), P(max_n + 1, 0);
    std::vector<std::vector<long long>> C(max_n + 1, std::vector<long long>(max_n + 1, 0));
    for (int n = 0; n <= max_n; ++n) {
        C[n][0] = 1;
        for (int k = 1; k <= n; ++k) C[n][k] = C[n - 1][k - 1] + (k <= n - 1 ? C[n - 1][k] : 0);
    }
    P[0] = 1;
    if (max_n >= 1) a[1] = P[1] = 1;
    for (int n = 2; n <= max_n; ++n) {
        for (int s = 1; s <= n - 1; ++s) h[n] += C[n - 1][s - 1] * a[s] * P[n - s];
        a[n] = h[n];
        P[n] = a[n] + h[n];
    }
    return a;
}

} // namespace oracle
