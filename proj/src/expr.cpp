#include "vertexring/expr.hpp"

#include <cctype>
#include <optional>

namespace vertexring {

ParseError::ParseError(std::size_t column, const std::string& what)
    : std::invalid_argument("parse error at column " + std::to_string(column) + ": " + what), column_(column) {}

bool operator==(const ExprAST& a, const ExprAST& b) {
    return a.kind == b.kind && a.value == b.value && a.alpha == b.alpha && a.exponent == b.exponent &&
           a.children == b.children;
}

namespace {

struct Token {
    enum class Kind { number, ident, symbol, end };
    Kind kind;
    std::string text;
    std::size_t pos;  // 0-based
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
        } else if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Kind::number, s.substr(i, j - i), i});
            i = j;
        } else if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::Kind::ident, s.substr(i, j - i), i});
            i = j;
        } else if (std::string("+-*/^()").find(static_cast<char>(c)) != std::string::npos) {
            out.push_back({Token::Kind::symbol, std::string(1, static_cast<char>(c)), i});
            ++i;
        } else {
            throw ParseError(i + 1, std::string("unexpected character '") + static_cast<char>(c) + "'");
        }
    }
    out.push_back({Token::Kind::end, "", s.size()});
    return out;
}

class Cursor {
public:
    explicit Cursor(const std::string& text) : tokens_(tokenize(text)) {}

    const Token& peek() const { return tokens_[at_]; }
    const Token& next() { return tokens_[at_++]; }
    bool accept(const std::string& sym) {
        if (peek().kind == Token::Kind::symbol && peek().text == sym) {
            ++at_;
            return true;
        }
        return false;
    }
    void expect(const std::string& sym) {
        if (!accept(sym)) fail("expected '" + sym + "'");
    }
    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        throw ParseError(t.pos + 1, what + (t.kind == Token::Kind::end ? " at end of input" : ", found '" + t.text + "'"));
    }
    int small_integer() {
        if (peek().kind != Token::Kind::number) fail("expected an integer");
        const Token& t = next();
        if (t.text.size() > 6) throw ParseError(t.pos + 1, "integer too large: " + t.text);
        return std::stoi(t.text);
    }

private:
    std::vector<Token> tokens_;
    std::size_t at_ = 0;
};

// D<k> as a token: returns k.
std::optional<int> derivative_index(const Token& t) {
    if (t.kind != Token::Kind::ident || t.text.size() < 2 || t.text[0] != 'D') return std::nullopt;
    for (std::size_t i = 1; i < t.text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) return std::nullopt;
    if (t.text.size() > 5) return std::nullopt;
    return std::stoi(t.text.substr(1));
}

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : cur_(text) {}

    ExprAST parse() {
        ExprAST e = sum();
        if (cur_.peek().kind != Token::Kind::end) cur_.fail("unexpected token");
        return e;
    }

private:
    ExprAST sum() {
        ExprAST first = product();
        if (!is_sum_op()) return first;
        ExprAST s;
        s.kind = ExprAST::Kind::sum;
        s.children.push_back(std::move(first));
        while (is_sum_op()) {
            const bool minus = cur_.next().text == "-";
            ExprAST t = product();
            if (minus) t = negate(std::move(t));
            s.children.push_back(std::move(t));
        }
        return s;
    }
    bool is_sum_op() const {
        const Token& t = cur_.peek();
        return t.kind == Token::Kind::symbol && (t.text == "+" || t.text == "-");
    }
    ExprAST product() {
        ExprAST first = unary();
        if (!(cur_.peek().kind == Token::Kind::symbol && cur_.peek().text == "*")) return first;
        ExprAST p;
        p.kind = ExprAST::Kind::product;
        p.children.push_back(std::move(first));
        while (cur_.accept("*")) p.children.push_back(unary());
        return p;
    }
    ExprAST unary() {
        if (cur_.accept("-")) return negate(unary());
        return power();
    }
    ExprAST power() {
        ExprAST base = atom();
        if (!cur_.accept("^")) return base;
        ExprAST p;
        p.kind = ExprAST::Kind::power;
        p.exponent = cur_.small_integer();
        p.children.push_back(std::move(base));
        return p;
    }
    ExprAST atom() {
        const Token& t = cur_.peek();
        if (t.kind == Token::Kind::number) {
            ExprAST n;
            n.kind = ExprAST::Kind::number;
            n.value = Rational(cur_.next().text);
            if (cur_.accept("/")) {
                if (cur_.peek().kind != Token::Kind::number) cur_.fail("expected a denominator");
                const Token& d = cur_.next();
                Rational den(d.text);
                if (den == 0) throw ParseError(d.pos + 1, "zero denominator");
                n.value /= den;
                n.value.canonicalize();
            }
            return n;
        }
        if (t.kind == Token::Kind::ident && t.text == "phi") {
            cur_.next();
            ExprAST p;
            p.kind = ExprAST::Kind::phi;
            return p;
        }
        if (derivative_index(t)) {
            ExprAST d;
            d.kind = ExprAST::Kind::deriv;
            while (auto k = derivative_index(cur_.peek())) {
                cur_.next();
                int order = 1;
                if (cur_.accept("^")) {
                    const std::size_t pos = cur_.peek().pos;
                    order = cur_.small_integer();
                    if (order < 1) throw ParseError(pos + 1, "derivative order must be positive");
                }
                if (static_cast<int>(d.alpha.size()) <= *k) d.alpha.resize(*k + 1, 0);
                d.alpha[*k] += order;
            }
            d.children.push_back(atom());
            return d;
        }
        if (cur_.accept("(")) {
            ExprAST e = sum();
            cur_.expect(")");
            return e;
        }
        if (t.kind == Token::Kind::ident) throw ParseError(t.pos + 1, "unknown symbol '" + t.text + "'");
        cur_.fail("expected a number, phi, a derivative or '('");
    }
    static ExprAST negate(ExprAST e) {
        ExprAST n;
        n.kind = ExprAST::Kind::negate;
        n.children.push_back(std::move(e));
        return n;
    }

    Cursor cur_;
};

// Binding strength used for parenthesization.
int precedence(const ExprAST& e) {
    switch (e.kind) {
    case ExprAST::Kind::sum: return 0;
    case ExprAST::Kind::product: return 1;
    case ExprAST::Kind::negate: return 2;
    case ExprAST::Kind::power: return 3;
    case ExprAST::Kind::number: return e.value.get_den() == 1 ? 4 : 3;
    default: return 4;
    }
}

std::string wrap_below(const ExprAST& e, int min_prec) {
    const std::string s = print_expr(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

} // namespace

ExprAST parse_expr(const std::string& text) {
    return ExprParser(text).parse();
}

std::string print_expr(const ExprAST& e) {
    switch (e.kind) {
    case ExprAST::Kind::number: return to_string(e.value);
    case ExprAST::Kind::phi: return "phi";
    case ExprAST::Kind::deriv: {
        std::string body;
        for (std::size_t u = 0; u < e.alpha.size(); ++u) {
            if (e.alpha[u] == 0) continue;
            body += "D" + std::to_string(u);
            if (e.alpha[u] != 1) body += "^" + std::to_string(e.alpha[u]);
            body += ' ';
        }
        return "(" + body + wrap_below(e.children[0], 4) + ")";
    }
    case ExprAST::Kind::power: return wrap_below(e.children[0], 4) + "^" + std::to_string(e.exponent);
    case ExprAST::Kind::negate: return "-" + wrap_below(e.children[0], 2);
    case ExprAST::Kind::product: {
        std::string out;
        for (std::size_t i = 0; i < e.children.size(); ++i) out += (i ? "*" : "") + wrap_below(e.children[i], 2);
        return out;
    }
    case ExprAST::Kind::sum: {
        std::string out = wrap_below(e.children[0], 1);
        for (std::size_t i = 1; i < e.children.size(); ++i) {
            const ExprAST& c = e.children[i];
            if (c.kind == ExprAST::Kind::negate) out += " - " + wrap_below(c.children[0], 1);
            else out += " + " + wrap_below(c, 1);
        }
        return out;
    }
    }
    return {};
}

FieldElement evaluate(const ExprAST& e, int dim) {
    switch (e.kind) {
    case ExprAST::Kind::number: return FieldElement::constant(dim, e.value);
    case ExprAST::Kind::phi: return FieldElement::phi(dim);
    case ExprAST::Kind::deriv: {
        if (static_cast<int>(e.alpha.size()) > dim) {
            int k = static_cast<int>(e.alpha.size()) - 1;
            throw ParseError(0, "derivative D" + std::to_string(k) + " needs dimension > " + std::to_string(k));
        }
        MultiIndex alpha = e.alpha;
        alpha.resize(dim, 0);
        return apply_D(alpha, evaluate(e.children[0], dim));
    }
    case ExprAST::Kind::power: {
        const FieldElement base = evaluate(e.children[0], dim);
        FieldElement out = FieldElement::one(dim);
        for (int i = 0; i < e.exponent; ++i) out = out * base;
        return out;
    }
    case ExprAST::Kind::negate: return -evaluate(e.children[0], dim);
    case ExprAST::Kind::product: {
        FieldElement out = FieldElement::one(dim);
        for (const auto& c : e.children) out = out * evaluate(c, dim);
        return out;
    }
    case ExprAST::Kind::sum: {
        FieldElement out(dim);
        for (const auto& c : e.children) out += evaluate(c, dim);
        return out;
    }
    }
    return FieldElement(dim);
}

FieldElement parse_field_element(const std::string& text, int dim) {
    return evaluate(parse_expr(text), dim);
}

namespace {

struct PointRef {
    int point = -1;
    int coord = -1;  // -1: the point itself (d = 1)
};

// x1, x12_0, and the aliases x, y, z, w (optionally with _u).
std::optional<PointRef> point_ref(const std::string& name) {
    PointRef r;
    std::string base = name;
    const auto us = name.find('_');
    if (us != std::string::npos) {
        const std::string c = name.substr(us + 1);
        if (c.empty() || c.size() > 3) return std::nullopt;
        for (char ch : c)
            if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
        r.coord = std::stoi(c);
        base = name.substr(0, us);
    }
    const std::string aliases = "xyzw";
    if (base.size() == 1 && aliases.find(base[0]) != std::string::npos) {
        r.point = static_cast<int>(aliases.find(base[0]));
        return r;
    }
    if (base.size() < 2 || base[0] != 'x' || base.size() > 5) return std::nullopt;
    for (std::size_t i = 1; i < base.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(base[i]))) return std::nullopt;
    r.point = std::stoi(base.substr(1)) - 1;
    if (r.point < 0) return std::nullopt;
    return r;
}

class FunctionParser {
public:
    FunctionParser(const std::string& text, SpacePtr space, int num_points)
        : cur_(text), space_(std::move(space)), m_(num_points) {}

    SingularFunction parse() {
        SingularFunction f = sum();
        if (cur_.peek().kind != Token::Kind::end) cur_.fail("unexpected token");
        return f;
    }

private:
    SingularFunction sum() {
        SingularFunction f = product();
        while (true) {
            if (cur_.accept("+")) f += product();
            else if (cur_.accept("-")) f -= product();
            else return f;
        }
    }
    SingularFunction product() {
        SingularFunction f = unary();
        while (true) {
            if (cur_.accept("*")) {
                f = f * unary();
            } else if (cur_.peek().kind == Token::Kind::symbol && cur_.peek().text == "/") {
                const std::size_t pos = cur_.next().pos;
                f = f * invert(unary(), pos);
            } else {
                return f;
            }
        }
    }
    SingularFunction unary() {
        if (cur_.accept("-")) return -unary();
        return power();
    }
    SingularFunction power() {
        const std::size_t pos = cur_.peek().pos;
        SingularFunction base = atom();
        if (!cur_.accept("^")) return base;
        bool negative = cur_.accept("-");
        int n = cur_.small_integer();
        SingularFunction b = negative ? invert(base, pos) : base;
        SingularFunction out = SingularFunction::constant(space_, m_, 1);
        for (int i = 0; i < n; ++i) out = out * b;
        return out;
    }
    SingularFunction atom() {
        const Token& t = cur_.peek();
        if (t.kind == Token::Kind::number) {
            return SingularFunction::constant(space_, m_, Rational(cur_.next().text));
        }
        if (t.kind == Token::Kind::ident && t.text == "q") {
            cur_.next();
            if (!cur_.accept("(")) {
                // bare q means q(x1)
                return SingularFunction::factor_power(space_, m_, Factor::point(0), 1).times(q_scale());
            }
            const Factor f = q_argument();
            cur_.expect(")");
            return SingularFunction::factor_power(space_, m_, f, 1).times(q_scale());
        }
        if (t.kind == Token::Kind::ident) {
            auto r = point_ref(t.text);
            if (!r) throw ParseError(t.pos + 1, "unknown symbol '" + t.text + "'");
            cur_.next();
            return variable(*r, t);
        }
        if (cur_.accept("(")) {
            SingularFunction f = sum();
            cur_.expect(")");
            return f;
        }
        cur_.fail("expected a number, a variable, q(...) or '('");
    }
    // q is written for the generator of d > 1; in d = 1 the generator is the
    // coordinate, so q(...) is rejected there.
    SingularFunction q_scale() const {
        if (space_->dim() == 1) throw ParseError(cur_.peek().pos + 1, "q(...) is only available when d > 1");
        return SingularFunction::constant(space_, m_, 1);
    }
    Factor q_argument() {
        auto point = [&]() {
            const Token& t = cur_.peek();
            auto r = t.kind == Token::Kind::ident ? point_ref(t.text) : std::nullopt;
            if (!r || r->coord >= 0) cur_.fail("q(...) takes a point or a difference of two points");
            cur_.next();
            check_point(r->point, t);
            return r->point;
        };
        const int i = point();
        if (!cur_.accept("-")) return Factor::point(i);
        const std::size_t pos = cur_.peek().pos;
        const int j = point();
        if (i == j) throw ParseError(pos + 1, "q(xi-xi) vanishes");
        return Factor::pair(i, j);
    }
    void check_point(int p, const Token& t) const {
        if (p >= m_) throw ParseError(t.pos + 1, "point " + t.text + " out of range for " + std::to_string(m_) + " point(s)");
    }
    SingularFunction variable(const PointRef& r, const Token& t) {
        check_point(r.point, t);
        const int d = space_->dim();
        int coord = r.coord;
        if (coord < 0) {
            if (d != 1) throw ParseError(t.pos + 1, "coordinates are written " + t.text + "_u when d > 1");
            coord = 0;
        }
        if (coord >= d) throw ParseError(t.pos + 1, "coordinate index out of range in '" + t.text + "'");
        return SingularFunction::coordinate(space_, m_, r.point, coord);
    }

    // 1/g for g = c * (product of allowed factors), times a monomial in the
    // point coordinates when d = 1; fractions with such numerators invert
    // likewise.
    SingularFunction invert(const SingularFunction& g, std::size_t pos) const {
        const auto& parts = g.parts();
        if (parts.size() != 1) throw ParseError(pos + 1, "can only divide by a product of allowed singular factors");
        const auto& [den, num] = *parts.begin();
        SingularFunction out = invert_polynomial(num, pos);
        for (const auto& [fac, e] : den) out = out * SingularFunction::factor_power(space_, m_, fac, e);
        return out;
    }
    SingularFunction invert_polynomial(const Polynomial& p, std::size_t pos) const {
        if (p.is_zero()) throw ParseError(pos + 1, "division by zero");
        const int d = space_->dim();
        if (p.size() == 1) {
            const auto& [e, c] = *p.terms().begin();
            SingularFunction out = SingularFunction::constant(space_, m_, 1 / c);
            for (std::size_t v = 0; v < e.size(); ++v) {
                if (e[v] == 0) continue;
                if (d != 1) throw ParseError(pos + 1, "only q(...) factors may be inverted when d > 1");
                out = out * SingularFunction::factor_power(space_, m_, Factor::point(static_cast<int>(v)), -e[v]);
            }
            return out;
        }
        // peel allowed factors off by exact division until a monomial is left
        Polynomial rest = p;
        SingularFunction out = SingularFunction::constant(space_, m_, 1);
        std::vector<Factor> candidates;
        for (int i = 0; i < m_; ++i) {
            if (d != 1) candidates.push_back(Factor::point(i));
            for (int j = i + 1; j < m_; ++j) candidates.push_back(Factor::pair(i, j));
        }
        for (const Factor& f : candidates) {
            const Polynomial fp = space_->factor_polynomial(f, m_);
            while (rest.size() > 1) {
                auto q = rest.divide_exact(fp, space_->lead_variable(f));
                if (!q) break;
                rest = *q;
                out = out * SingularFunction::factor_power(space_, m_, f, -1);
            }
        }
        if (rest.size() != 1) throw ParseError(pos + 1, "can only divide by a product of allowed singular factors");
        return out * invert_polynomial(rest, pos);
    }

    Cursor cur_;
    SpacePtr space_;
    int m_;
};

int max_point_used(const std::string& text) {
    int m = 0;
    for (const Token& t : tokenize(text))
        if (t.kind == Token::Kind::ident)
            if (auto r = point_ref(t.text)) m = std::max(m, r->point + 1);
    return m;
}

} // namespace

int parse_point_name(const std::string& name) {
    auto r = point_ref(name);
    if (!r || r->coord >= 0) throw ParseError(1, "not a point name: '" + name + "'");
    return r->point;
}

SingularFunction parse_singular_function(const std::string& text, SpacePtr space, int num_points) {
    if (num_points < 0) num_points = std::max(1, max_point_used(text));
    SingularFunction f = FunctionParser(text, std::move(space), num_points).parse();
    return f.reduced();
}

} // namespace vertexring
