#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vertexring/field_ring.hpp"
#include "vertexring/singular_function.hpp"

namespace vertexring {

class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t column, const std::string& what);
    // 1-based column of the offending character.
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

// Field expressions:
//   sum     := product (('+' | '-') product)*
//   product := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' N)?
//   atom    := N ('/' N)? | 'phi' | ('D'k ('^' N)?)+ atom | '(' sum ')'
struct ExprAST {
    enum class Kind { number, phi, deriv, power, product, sum, negate };

    Kind kind = Kind::number;
    Rational value;         // number, non-negative
    MultiIndex alpha;       // deriv; empty trailing zeros are dropped
    int exponent = 0;       // power
    std::vector<ExprAST> children;

    friend bool operator==(const ExprAST& a, const ExprAST& b);
};

ExprAST parse_expr(const std::string& text);
// Minimal parentheses, except derivative atoms which are always wrapped, so
// canonical FieldElement renderings print back unchanged.
std::string print_expr(const ExprAST& e);

// Throws ParseError when a D index is not below dim.
FieldElement evaluate(const ExprAST& e, int dim);
FieldElement parse_field_element(const std::string& text, int dim);

// Point index of x1, x2, ... or of an alias; throws ParseError.
int parse_point_name(const std::string& name);

// Singular-function text in the canonical rendering plus a few conveniences:
// points x1, x2, ... (x, y, z, w name the first four), coordinates x1_0 when
// d > 1, q(xi) and q(xi-xj), '/', and integer powers, negative ones only on
// allowed singular factors. num_points < 0 takes the largest point used.
SingularFunction parse_singular_function(const std::string& text, SpacePtr space, int num_points = -1);

} // namespace vertexring
