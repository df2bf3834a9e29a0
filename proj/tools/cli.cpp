#include "cli.hpp"

#include <algorithm>
#include <sstream>

#include <CLI11.hpp>

#include "vertexring/axioms.hpp"
#include "vertexring/config.hpp"
#include "vertexring/expr.hpp"
#include "vertexring/laurent.hpp"
#include "vertexring/modes.hpp"

namespace vertexring {

namespace {

constexpr int kMaxProductPoints = 8;
constexpr int kMaxCorrelatorPoints = 8;

struct Flags {
    std::optional<int> dim;
    std::optional<std::string> signature;
    std::optional<std::string> propagator;
    std::optional<int> cutoff;
    std::optional<int> degree;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<std::string> format;
    std::string config;
    bool unsigned_control = false;
};

RunConfig resolve(const Flags& f) {
    RunConfig c;
    if (f.dim) c.dim = *f.dim;
    if (f.signature) c.signature = parse_signature(*f.signature);
    if (f.propagator) c.propagator = *f.propagator;
    if (f.cutoff) c.cutoff = *f.cutoff;
    if (f.degree) c.degree = *f.degree;
    if (f.seed) c.seed = *f.seed;
    if (f.samples) c.samples = *f.samples;
    if (f.format) c.format = parse_format(*f.format);
    c.unsigned_control = f.unsigned_control;
    if (!f.config.empty()) c = RunConfig::from_json_file(f.config, c);
    c.validate();
    return c;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

std::string text_suite(const SuiteReport& s) {
    std::ostringstream o;
    o << s.axiom << (s.holds() ? " holds" : " fails") << " on ";
    if (!s.holds()) o << s.failures << " of ";
    o << s.checks << " checks (";
    if (s.axiom == "trees") o << "up to " << s.degree << " leaves";
    else o << "degree " << s.degree;
    o << ", cutoff " << s.cutoff << ", region " << s.region << ")\n";
    for (const auto& r : s.failed) {
        o << "  " << join(r.states, "; ") << ":";
        if (!r.detail.empty()) o << " condition " << r.detail << ",";
        o << " monomial " << r.monomial << " (degree " << r.monomial_degree << "), discrepancy " << r.discrepancy
          << " (degree " << r.discrepancy_degree << ")\n";
    }
    if (s.failures > static_cast<int>(s.failed.size()))
        o << "  ... " << s.failures - static_cast<int>(s.failed.size()) << " more\n";
    return o.str();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact free-field vertex algebra computations and identity checks", "vertexring"};
    app.require_subcommand(1);
    app.fallthrough();
    app.footer("Exit status: 0 success, 1 an identity failed, 2 usage, config or unsupported-expansion error.");

    Flags flags;
    app.add_option("--dim", flags.dim, "Spacetime dimension d (default 1)");
    app.add_option("--signature", flags.signature, "Metric signs, e.g. +- (default +,-,...,-)");
    app.add_option("--propagator", flags.propagator,
                   "Propagator: default, x^-2, 1/q, or singular-function text in one point");
    app.add_option("--cutoff", flags.cutoff, "Truncation cutoff (default 5)");
    app.add_option("--degree", flags.degree, "Graded-basis degree for verify (default 2)");
    app.add_option("--seed", flags.seed, "Seed for random state sampling (default 0)");
    app.add_option("--samples", flags.samples, "verify: number of random state tuples, 0 for all (default 0)");
    app.add_option("--format", flags.format, "Output format: text or structured (default text)");
    app.add_option("--config", flags.config, "JSON config file; its values override flags");
    app.add_flag("--unsigned-control", flags.unsigned_control,
                 "Drop the (-1)^|alpha| sign in phi^- (negative control)");

    int points = 0;
    bool wick = false;
    std::string axiom, a_text, s_text, f_text, region_text, residue_text;
    int mode_index = 0;

    auto* product = app.add_subcommand("product", "Print phi(x1)...phi(xk)1 expanded to the cutoff");
    product->add_option("k", points, "Number of points")->required();
    auto* correlator = app.add_subcommand("correlator", "Print the k-point correlator");
    correlator->add_option("k", points, "Number of points")->required();
    correlator->add_flag("--wick", wick, "Cross-check against the sum over perfect matchings");
    auto* verify = app.add_subcommand("verify", "Run an identity suite over the graded basis");
    verify->add_option("axiom", axiom, "One of: " + join(suite_names(), ", "))->required();
    auto* mode_cmd = app.add_subcommand("mode", "Print the mode a_n s (d = 1)");
    mode_cmd->add_option("a", a_text, "Field expression a")->required();
    mode_cmd->add_option("n", mode_index, "Mode index")->required();
    mode_cmd->add_option("s", s_text, "Field expression s")->required();
    auto* expand_cmd = app.add_subcommand("expand", "Expand a singular function in a region (d = 1)");
    expand_cmd->add_option("f", f_text, "Singular-function text, e.g. 1/(x-y)")->required();
    expand_cmd->add_option("--region", region_text, "Points from outermost in, e.g. x,y (default x1,x2,...)");
    expand_cmd->add_option("--residue", residue_text, "Also print the residue in this point");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const RunConfig config = resolve(flags);
        bool odd = false;
        const FreeFieldAlgebra alg = config.algebra(&odd);
        if (odd) err << "warning: propagator is not even; results are a negative control\n";
        const bool structured = config.format == OutputFormat::structured;

        if (*product) {
            if (points < 0 || points > kMaxProductPoints)
                throw ConfigError("k: must be between 0 and " + std::to_string(kMaxProductPoints));
            const StateSeries s = materialize(alg.product_at_points(points), config.cutoff);
            if (structured) out << "points=" << points << "\n" << s.render_structured();
            else out << s.render() << "\n";
            return kExitOk;
        }
        if (*correlator) {
            if (points < 0 || points > kMaxCorrelatorPoints)
                throw ConfigError("k: must be between 0 and " + std::to_string(kMaxCorrelatorPoints));
            const SingularFunction f = alg.correlator(points);
            bool agrees = true;
            if (wick) agrees = f.equals(wick_oracle(alg.propagator(), points));
            if (structured) out << "points=" << points << "\nfunction=" << f.render() << "\nwindow=exact\n";
            else out << f.render() << "\n";
            if (wick) out << "wick=" << (agrees ? "agrees" : "disagrees") << "\n";
            return agrees ? kExitOk : kExitFailure;
        }
        if (*verify) {
            if (std::find(suite_names().begin(), suite_names().end(), axiom) == suite_names().end())
                throw ConfigError("unknown axiom '" + axiom + "'; expected one of " + join(suite_names(), ", "));
            const SuiteReport s = run_suite(alg, axiom, config.degree, config.cutoff, config.samples, config.seed);
            out << (structured ? s.render() : text_suite(s));
            return s.holds() ? kExitOk : kExitFailure;
        }
        if (*mode_cmd) {
            const FieldElement a = parse_field_element(a_text, alg.dim());
            const FieldElement s = parse_field_element(s_text, alg.dim());
            const FieldElement v = mode(alg, a, mode_index, s, config.cutoff);
            if (structured) out << "a=" << a.render() << "\nn=" << mode_index << "\ns=" << s.render() << "\nvalue=" << v.render() << "\n";
            else out << v.render() << "\n";
            return kExitOk;
        }
        if (*expand_cmd) {
            if (alg.dim() != 1) throw UnsupportedExpansionError("region expansion is only defined for d = 1");
            const SingularFunction f = parse_singular_function(f_text, alg.space());
            const int m = f.num_points();
            RegionOrder region;
            if (region_text.empty()) {
                for (int i = 0; i < m; ++i) region.ordering.push_back(i);
            } else {
                std::stringstream ss(region_text);
                std::string name;
                while (std::getline(ss, name, ',')) region.ordering.push_back(parse_point_name(name));
            }
            try {
                region.validate(m);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("region: ") + e.what());
            }
            const LaurentSeries series = expand(f, region, config.cutoff);
            std::vector<std::string> names;
            for (int i = 0; i < m; ++i) names.push_back(alg.space()->point_name(i));
            if (structured) out << "region=" << region.render(names) << "\ncutoff=" << config.cutoff << "\nseries=" << series.render() << "\n";
            else out << series.render() << "\n";
            if (!residue_text.empty()) {
                const int p = parse_point_name(residue_text);
                if (p >= m) throw ConfigError("residue: point out of range");
                const LaurentSeries r = residue(series, static_cast<std::size_t>(p));
                out << (structured ? "residue=" : "residue: ") << r.render() << "\n";
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace vertexring
