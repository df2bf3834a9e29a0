#pragma once

#include <climits>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace vertexring {

using Rational = mpq_class;

// Degrees and windows share one integer scale. kInfinite stands for an exact
// window (nothing truncated) or the valuation of an exact zero.
inline constexpr int kInfinite = INT_MAX / 4;

constexpr bool is_infinite(int d) { return d >= kInfinite / 2; }

constexpr int saturating_add(int a, int b) {
    if (is_infinite(a) || is_infinite(b)) return kInfinite;
    return a + b;
}

Rational factorial(int n);

// Generalized binomial coefficient top*(top-1)*...*(top-k+1)/k!.
Rational binomial(const Rational& top, int k);

std::string to_string(const Rational& r);

class SpecMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class WindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedExpansionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vertexring
