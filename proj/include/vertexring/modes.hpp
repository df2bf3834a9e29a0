#pragma once

#include <vector>

#include "vertexring/axioms.hpp"

namespace vertexring {

// a_n s = Res_x x^n Y(a,x)s through the one-variable Laurent expansion.
// Throws WindowError when the cutoff does not certify x^{-1-n}. d = 1.
FieldElement mode(const FreeFieldAlgebra& alg, const FieldElement& a, int n, const FieldElement& s, int cutoff);

// a_n applied to an exact state in m points: x is the fresh point m, only
// its anchors are expanded, and the residue is taken with x outermost. The
// result lives in the original m points with window cutoff + n + 1.
StateSeries mode_series(const FreeFieldAlgebra& alg, const FieldElement& a, int n, const StateSeries& s, int cutoff);

// a_0 Y(b,y)c - Y(b,y) a_0 c = Y(a_0 b, y)c on each sample c.
AxiomReport check_order1(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b,
                         const std::vector<FieldElement>& samples, int cutoff);

// a_0 b_0 c - b_0 a_0 c = (a_0 b)_0 c on each sample c.
AxiomReport check_double_integral(const FreeFieldAlgebra& alg, const FieldElement& a, const FieldElement& b,
                                  const std::vector<FieldElement>& samples, int cutoff);

} // namespace vertexring
