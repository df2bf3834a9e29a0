#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vertexring/free_field.hpp"
#include "vertexring/laurent.hpp"

namespace vertexring {

// Outcome of one identity check. A failure always names the first
// discrepant field monomial and the lowest degree of its coefficient.
struct AxiomReport {
    std::string axiom;
    std::vector<std::string> states;
    int cutoff = 0;
    std::string region = "none";
    bool holds = true;
    // Holds as an identity of exact (unexpanded) expressions.
    bool exact = false;
    // Effective-degree window over which the comparison was certified.
    int window = kInfinite;
    std::string monomial;
    int monomial_degree = 0;
    std::string discrepancy;
    int discrepancy_degree = 0;
    // Which sub-condition failed, when an axiom has several.
    std::string detail;

    // key=value lines.
    std::string render() const;
};

AxiomReport report_from(const std::string& axiom, std::vector<std::string> states, int cutoff,
                        const Comparison& c, std::string region = "none");

using SeriesMap = std::map<FieldMonomial, LaurentSeries>;

// Coefficients u_k of x^k, k < cutoff, of an exact one-point state Y(a,x)b
// after materialization. d = 1.
std::map<int, FieldElement> point_coefficients(const StateSeries& s, int cutoff);

// Field-monomial-wise comparison of two families of Laurent series; fills
// holds and the discrepancy fields of rep.
void compare_series_maps(AxiomReport& rep, const SeriesMap& lhs, const SeriesMap& rhs, const LaurentSeries& zero);

// 1^x b = b.
AxiomReport check_identity(const FreeFieldAlgebra& alg, const FieldElement& b, int cutoff);

// a^x b^y c = b^y a^x c, as exact rational forms.
AxiomReport check_commutativity(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b,
                                const FieldElement& c, int cutoff);

// Y(Y(a,x)b, y)c against Y(a, x+y)Y(b,y)c expanded in |y| >> |x|, both as
// iterated Laurent data with total and x-degree below the cutoff. d = 1.
AxiomReport check_associativity(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b,
                                const FieldElement& c, int cutoff);

// Y(a,x)b = e^{xD} Y(b,-x)a. d = 1.
AxiomReport check_skew(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b, int cutoff);

// For m(a,b) = Y(a,x)Y(b,y)1: m(D_u a, b) = d/dx_u m, m(a, D_u b) = d/dy_u m,
// D_u m = (d/dx_u + d/dy_u) m, for every coordinate u.
AxiomReport check_bilinear_invariance(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b,
                                      int cutoff);

// [phi^-(x), phi^+(y)] s = Delta(x-y) s and [phi^+(x), phi^-(y)] s = -Delta(x-y) s.
AxiomReport check_commutator_relation(const FreeFieldAlgebra& alg, const FieldElement& s);

// phi(x) phi(y) s = phi(y) phi(x) s.
AxiomReport check_field_commutativity(const FreeFieldAlgebra& alg, const FieldElement& s);

struct SuiteReport {
    std::string axiom;
    int degree = 0;
    int cutoff = 0;
    std::string region = "none";
    int checks = 0;
    int failures = 0;
    std::vector<AxiomReport> failed;

    bool holds() const { return failures == 0; }
    std::string render() const;
};

// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

// Runs one axiom over all states of the graded basis up to `degree`
// (pairs or triples as the axiom needs), or over `samples` random tuples
// drawn with the seed. Throws UnsupportedExpansionError for associativity,
// skew, order1 and double-integral when d > 1.
SuiteReport run_suite(const FreeFieldAlgebra& alg, const std::string& axiom, int degree, int cutoff, int samples = 0,
                      std::uint64_t seed = 0);

} // namespace vertexring
