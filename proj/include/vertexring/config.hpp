#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vertexring/free_field.hpp"

namespace vertexring {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { text, structured };

struct RunConfig {
    int dim = 1;
    // Empty means (+,-,...,-).
    std::vector<int> signature;
    // "default", "x^-2", "1/q", or singular-function text in one point.
    std::string propagator = "default";
    int cutoff = 5;
    int degree = 2;
    std::uint64_t seed = 0;
    // 0: every tuple of the graded basis; otherwise that many random tuples.
    int samples = 0;
    OutputFormat format = OutputFormat::text;
    bool unsigned_control = false;

    // Throws ConfigError naming the offending field.
    void validate() const;

    SpacetimeSpec spacetime() const;
    // Validates first. An odd propagator is accepted (unchecked); `odd` tells.
    FreeFieldAlgebra algebra(bool* odd = nullptr) const;

    // Keys: dim, signature (array of +-1 or a string like "+-"), propagator,
    // cutoff, degree, seed, samples, format, unsigned_control. Unknown keys
    // are errors. Values present in the file override `base`.
    static RunConfig from_json_text(const std::string& text, RunConfig base);
    static RunConfig from_json_file(const std::string& path, RunConfig base);
};

// "+-", "+,-,-" or "1,-1"; throws ConfigError.
std::vector<int> parse_signature(const std::string& text);
OutputFormat parse_format(const std::string& text);

} // namespace vertexring
