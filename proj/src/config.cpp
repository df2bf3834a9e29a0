#include "vertexring/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vertexring/expr.hpp"

namespace vertexring {

namespace {

constexpr int kMaxDim = 6;
constexpr int kMaxCutoff = 40;
constexpr int kMaxDegree = 8;

} // namespace

std::vector<int> parse_signature(const std::string& text) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ',' || c == ' ') {
            ++i;
        } else if (c == '+') {
            out.push_back(1);
            ++i;
            if (i < text.size() && text[i] == '1') ++i;
        } else if (c == '-') {
            out.push_back(-1);
            ++i;
            if (i < text.size() && text[i] == '1') ++i;
        } else if (c == '1') {
            out.push_back(1);
            ++i;
        } else {
            throw ConfigError("signature: unexpected character '" + std::string(1, c) + "' in \"" + text + "\"");
        }
    }
    if (out.empty()) throw ConfigError("signature: empty");
    return out;
}

OutputFormat parse_format(const std::string& text) {
    if (text == "text") return OutputFormat::text;
    if (text == "structured") return OutputFormat::structured;
    throw ConfigError("format: expected text or structured, got \"" + text + "\"");
}

void RunConfig::validate() const {
    if (dim < 1 || dim > kMaxDim) throw ConfigError("dim: must be between 1 and " + std::to_string(kMaxDim) + ", got " + std::to_string(dim));
    if (!signature.empty()) {
        if (static_cast<int>(signature.size()) != dim)
            throw ConfigError("signature: needs " + std::to_string(dim) + " entries, got " + std::to_string(signature.size()));
        for (int s : signature)
            if (s != 1 && s != -1) throw ConfigError("signature: entries must be +1 or -1");
    }
    if (cutoff < 0 || cutoff > kMaxCutoff) throw ConfigError("cutoff: must be between 0 and " + std::to_string(kMaxCutoff));
    if (degree < 0 || degree > kMaxDegree) throw ConfigError("degree: must be between 0 and " + std::to_string(kMaxDegree));
    if (samples < 0) throw ConfigError("samples: must be non-negative");
    if (propagator.empty()) throw ConfigError("propagator: empty");
    if (propagator == "x^-2" && dim != 1) throw ConfigError("propagator: x^-2 needs dim 1");
    if (propagator == "1/q" && dim == 1) throw ConfigError("propagator: 1/q needs dim > 1");
}

SpacetimeSpec RunConfig::spacetime() const {
    validate();
    if (signature.empty()) return SpacetimeSpec::minkowski(dim);
    return SpacetimeSpec::with_signs(signature);
}

FreeFieldAlgebra RunConfig::algebra(bool* odd) const {
    const SpacetimeSpec st = spacetime();
    SpacePtr space = make_space(st);
    Propagator prop = Propagator::standard(space);
    if (propagator != "default" && propagator != "x^-2" && propagator != "1/q") {
        SingularFunction delta;
        try {
            delta = parse_singular_function(propagator, space, 1);
        } catch (const ParseError& e) {
            throw ConfigError(std::string("propagator: ") + e.what());
        }
        try {
            prop = Propagator::unchecked(delta);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("propagator: ") + e.what());
        }
    }
    if (odd) *odd = !prop.is_even();
    return FreeFieldAlgebra(space, prop, unsigned_control ? SignConvention::unsigned_control : SignConvention::alternating);
}

RunConfig RunConfig::from_json_text(const std::string& text, RunConfig base) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    RunConfig c = std::move(base);
    auto integer = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number_integer()) throw ConfigError(key + ": expected an integer");
        return v.get<long long>();
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "dim") {
            c.dim = static_cast<int>(integer(v, key));
        } else if (key == "signature") {
            if (v.is_string()) {
                c.signature = parse_signature(v.get<std::string>());
            } else if (v.is_array()) {
                c.signature.clear();
                for (const auto& s : v) c.signature.push_back(static_cast<int>(integer(s, key)));
            } else {
                throw ConfigError("signature: expected a string or an array");
            }
        } else if (key == "propagator") {
            if (!v.is_string()) throw ConfigError("propagator: expected a string");
            c.propagator = v.get<std::string>();
        } else if (key == "cutoff") {
            c.cutoff = static_cast<int>(integer(v, key));
        } else if (key == "degree") {
            c.degree = static_cast<int>(integer(v, key));
        } else if (key == "seed") {
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
                throw ConfigError("seed: expected a non-negative integer");
            c.seed = v.get<std::uint64_t>();
        } else if (key == "samples") {
            c.samples = static_cast<int>(integer(v, key));
        } else if (key == "format") {
            if (!v.is_string()) throw ConfigError("format: expected a string");
            c.format = parse_format(v.get<std::string>());
        } else if (key == "unsigned_control") {
            if (!v.is_boolean()) throw ConfigError("unsigned_control: expected true or false");
            c.unsigned_control = v.get<bool>();
        } else {
            throw ConfigError("config: unknown key \"" + key + "\"");
        }
    }
    c.validate();
    return c;
}

RunConfig RunConfig::from_json_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), std::move(base));
}

} // namespace vertexring
