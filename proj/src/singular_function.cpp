#include "vertexring/singular_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace vertexring {

namespace {

void merge_part(SingularFunction::Parts& parts, SingularFunction::Denominator den, Polynomial num) {
    if (num.is_zero()) return;
    for (auto it = den.begin(); it != den.end();) {
        if (it->second == 0) it = den.erase(it);
        else ++it;
    }
    auto it = parts.find(den);
    if (it == parts.end()) {
        parts.emplace(std::move(den), std::move(num));
        return;
    }
    it->second += num;
    if (it->second.is_zero()) parts.erase(it);
}

} // namespace

SingularFunction::SingularFunction(SpacePtr space, int num_points)
    : space_(std::move(space)), num_points_(num_points) {
    if (!space_) throw std::invalid_argument("singular function needs a space");
    if (num_points < 0) throw std::invalid_argument("negative point count");
}

std::size_t SingularFunction::num_vars() const {
    return static_cast<std::size_t>(num_points_) * (space_ ? space_->dim() : 1);
}

SingularFunction SingularFunction::constant(SpacePtr space, int num_points, const Rational& c) {
    SingularFunction f(std::move(space), num_points);
    merge_part(f.parts_, {}, Polynomial::constant(f.num_vars(), c));
    return f;
}

SingularFunction SingularFunction::from_polynomial(SpacePtr space, int num_points, Polynomial p, int window) {
    return fraction(std::move(space), num_points, std::move(p), {}, window);
}

SingularFunction SingularFunction::fraction(SpacePtr space, int num_points, Polynomial numerator,
                                            Denominator denominator, int window) {
    SingularFunction f(std::move(space), num_points);
    if (numerator.num_vars() != f.num_vars()) throw SpecMismatchError("polynomial has the wrong variable count");
    for (const auto& [fac, e] : denominator) {
        f.space_->check_factor(fac, num_points);
        if (e < 0) throw std::invalid_argument("negative denominator exponent");
    }
    f.window_ = window;
    merge_part(f.parts_, std::move(denominator), std::move(numerator));
    f.normalize();
    return f;
}

SingularFunction SingularFunction::coordinate(SpacePtr space, int num_points, int point, int coord) {
    SingularFunction f(std::move(space), num_points);
    if (point < 0 || point >= num_points || coord < 0 || coord >= f.space_->dim())
        throw std::out_of_range("coordinate index out of range");
    merge_part(f.parts_, {}, Polynomial::variable(f.num_vars(), static_cast<std::size_t>(point) * f.space_->dim() + coord));
    return f;
}

SingularFunction SingularFunction::factor_power(SpacePtr space, int num_points, const Factor& fac, int exponent) {
    SingularFunction f(std::move(space), num_points);
    f.space_->check_factor(fac, num_points);
    if (exponent >= 0)
        merge_part(f.parts_, {}, f.space_->factor_polynomial(fac, num_points).pow(exponent));
    else
        merge_part(f.parts_, {{fac, -exponent}}, Polynomial::constant(f.num_vars(), 1));
    return f;
}

int SingularFunction::denominator_degree(const Denominator& den) const {
    int d = 0;
    for (const auto& [fac, e] : den) d += e;
    return d * (space_ ? space_->generator_degree() : 1);
}

SingularFunction::Denominator SingularFunction::common_denominator() const {
    Denominator common;
    for (const auto& [den, num] : parts_)
        for (const auto& [fac, e] : den) common[fac] = std::max(common[fac], e);
    return common;
}

Polynomial SingularFunction::combined_numerator() const {
    const Denominator common = common_denominator();
    const int bound = saturating_add(window_, denominator_degree(common));
    Polynomial sum(num_vars());
    for (const auto& [den, num] : parts_) {
        Polynomial lifted = num;
        for (const auto& [fac, e] : common) {
            auto it = den.find(fac);
            const int have = it == den.end() ? 0 : it->second;
            if (e > have) lifted = lifted.times(factor_power_poly(fac, e - have), bound);
        }
        sum += lifted;
    }
    return sum.truncated(bound);
}

int SingularFunction::valuation() const {
    int v = kInfinite;
    for (const auto& [den, num] : parts_) v = std::min(v, num.min_degree() - denominator_degree(den));
    return v;
}

bool SingularFunction::vanishes() const {
    if (parts_.empty()) return true;
    if (parts_.size() == 1) return false;
    return combined_numerator().is_zero();
}

Polynomial SingularFunction::polynomial() const {
    if (!is_polynomial()) throw std::invalid_argument("function has singular factors");
    if (parts_.empty()) return Polynomial(num_vars());
    return parts_.begin()->second;
}

Rational SingularFunction::polynomial_coefficient(const Exponents& e) const {
    return polynomial().coefficient(e);
}

void SingularFunction::check_compatible(const SingularFunction& other) const {
    if (!same_space(space_, other.space_)) throw SpecMismatchError("singular functions live in different spaces");
    if (num_points_ != other.num_points_) throw SpecMismatchError("singular functions have different point counts");
}

void SingularFunction::add_part(const Denominator& den, Polynomial num) {
    merge_part(parts_, den, std::move(num));
}

void SingularFunction::normalize() {
    Parts old = std::move(parts_);
    parts_.clear();
    const bool monomial_factors = space_->dim() == 1;
    for (auto& [den_in, num_in] : old) {
        Denominator den = den_in;
        Polynomial num = std::move(num_in);
        if (monomial_factors) {
            // x_i^-k against a numerator divisible by x_i: cancel for free.
            for (auto& [fac, e] : den) {
                if (fac.is_pair() || e == 0 || num.is_zero()) continue;
                const int k = std::min(e, num.min_exponent(static_cast<std::size_t>(fac.first)));
                if (k <= 0) continue;
                Exponents shift(num.num_vars(), 0);
                shift[fac.first] = -k;
                num = num.shifted(shift);
                e -= k;
            }
        }
        for (auto it = den.begin(); it != den.end();) {
            if (it->second == 0) it = den.erase(it);
            else ++it;
        }
        if (!is_infinite(window_)) num = num.truncated(window_ + denominator_degree(den));
        merge_part(parts_, std::move(den), std::move(num));
    }
}

Polynomial SingularFunction::factor_power_poly(const Factor& f, int k) const {
    return space_->factor_polynomial(f, num_points_).pow(k);
}

bool SingularFunction::equals(const SingularFunction& other) const {
    return (*this - other).vanishes();
}

SingularFunction& SingularFunction::operator+=(const SingularFunction& other) {
    check_compatible(other);
    const int window = std::min(window_, other.window_);
    for (const auto& [den, num] : other.parts_) merge_part(parts_, den, num);
    if (window != window_) {
        window_ = window;
        normalize();
    } else if (!is_infinite(other.window_)) {
        normalize();
    }
    return *this;
}

SingularFunction& SingularFunction::operator-=(const SingularFunction& other) {
    return *this += -other;
}

SingularFunction& SingularFunction::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        parts_.clear();
        return *this;
    }
    for (auto& [den, num] : parts_) num *= c;
    return *this;
}

SingularFunction SingularFunction::operator-() const {
    SingularFunction r = *this;
    for (auto& [den, num] : r.parts_) num = -num;
    return r;
}

SingularFunction SingularFunction::times(const SingularFunction& other) const {
    check_compatible(other);
    SingularFunction r(space_, num_points_);
    r.window_ = std::min(saturating_add(window_, other.valuation()), saturating_add(other.window_, valuation()));
    for (const auto& [da, na] : parts_) {
        for (const auto& [db, nb] : other.parts_) {
            Denominator den = da;
            for (const auto& [fac, e] : db) den[fac] += e;
            const int bound = saturating_add(r.window_, denominator_degree(den));
            merge_part(r.parts_, std::move(den), na.times(nb, bound));
        }
    }
    r.normalize();
    return r;
}

SingularFunction SingularFunction::times_monomial(const Exponents& e, const Rational& c) const {
    SingularFunction r(space_, num_points_);
    if (sgn(c) == 0) return r.with_window(saturating_add(window_, total_degree(e)));
    r.window_ = saturating_add(window_, total_degree(e));
    for (const auto& [den, num] : parts_) merge_part(r.parts_, den, num.shifted(e) * c);
    r.normalize();
    return r;
}

SingularFunction SingularFunction::with_window(int window) const {
    SingularFunction r = *this;
    r.window_ = std::min(window_, window);
    r.normalize();
    return r;
}

SingularFunction SingularFunction::derivative(int point, int coord) const {
    if (point < 0 || point >= num_points_ || coord < 0 || coord >= space_->dim())
        throw std::out_of_range("derivative index out of range");
    const std::size_t var = static_cast<std::size_t>(point) * space_->dim() + coord;
    SingularFunction r(space_, num_points_);
    r.window_ = saturating_add(window_, -1);
    for (const auto& [den_in, numerator] : parts_) {
        std::vector<std::pair<Factor, int>> dep;
        for (const auto& [fac, e] : den_in)
            if (fac.involves(point)) dep.emplace_back(fac, e);
        Denominator den = den_in;
        for (const auto& [fac, e] : dep) den[fac] += 1;
        const int bound = saturating_add(r.window_, denominator_degree(den));
        std::vector<Polynomial> polys, grads;
        for (const auto& [fac, e] : dep) {
            polys.push_back(space_->factor_polynomial(fac, num_points_));
            grads.push_back(polys.back().derivative(var));
        }
        Polynomial all = Polynomial::constant(num_vars(), 1);
        for (const auto& p : polys) all = all * p;
        Polynomial num = numerator.derivative(var).times(all, bound);
        for (std::size_t k = 0; k < dep.size(); ++k) {
            if (grads[k].is_zero()) continue;
            Polynomial others = grads[k] * Rational(dep[k].second);
            for (std::size_t l = 0; l < dep.size(); ++l)
                if (l != k) others = others * polys[l];
            num -= numerator.times(others, bound);
        }
        merge_part(r.parts_, std::move(den), std::move(num));
    }
    r.normalize();
    return r;
}

SingularFunction SingularFunction::embedded(int num_points) const {
    if (num_points == num_points_) return *this;
    if (num_points < num_points_) throw std::invalid_argument("cannot embed into fewer points");
    SingularFunction r(space_, num_points);
    r.window_ = window_;
    const std::size_t n = r.num_vars();
    for (const auto& [den, num] : parts_) r.parts_.emplace(den, num.embedded(n));
    return r;
}

SingularFunction SingularFunction::reflected() const {
    SingularFunction r(space_, num_points_);
    r.window_ = window_;
    for (const auto& [den, num] : parts_) {
        int sign_power = 0;
        if (space_->generator_is_odd())
            for (const auto& [fac, e] : den) sign_power += e;
        Polynomial flipped(num.num_vars());
        for (const auto& [e, c] : num.terms()) {
            const bool odd = ((total_degree(e) + sign_power) & 1) != 0;
            flipped.add_term(e, odd ? Rational(-c) : c);
        }
        merge_part(r.parts_, den, std::move(flipped));
    }
    return r;
}

SingularFunction SingularFunction::pullback_difference(int num_points, int i, int j) const {
    if (num_points_ != 1) throw std::invalid_argument("pullback needs a one-point function");
    if (i < 0 || i >= num_points || j >= num_points || i == j) throw std::out_of_range("pullback point out of range");
    const std::size_t d = space_->dim();
    const std::size_t n = static_cast<std::size_t>(num_points) * d;
    SingularFunction r(space_, num_points);
    r.window_ = window_;
    std::vector<Polynomial> images;
    for (std::size_t u = 0; u < d; ++u) {
        Polynomial img = Polynomial::variable(n, i * d + u);
        if (j >= 0) img -= Polynomial::variable(n, j * d + u);
        images.push_back(std::move(img));
    }
    const Factor target = j < 0 ? Factor::point(i) : Factor::pair(i, j);
    for (const auto& [den_in, num] : parts_) {
        Denominator den;
        int sign_power = 0;
        for (const auto& [fac, e] : den_in) {
            if (fac.is_pair()) throw std::invalid_argument("pullback of a pair factor");
            space_->check_factor(target, num_points);
            den[target] += e;
            if (j >= 0 && i > j && space_->generator_is_odd()) sign_power += e;
        }
        Polynomial p = num.substitute(images);
        if (sign_power & 1) p = -p;
        merge_part(r.parts_, std::move(den), std::move(p));
    }
    r.normalize();
    return r;
}

SingularFunction SingularFunction::reduced() const {
    if (!is_exact() || parts_.empty()) return *this;
    SingularFunction r(space_, num_points_);
    for (const auto& [den_in, num_in] : parts_) {
        Denominator den = den_in;
        Polynomial num = num_in;
        for (auto& [fac, e] : den) {
            const Polynomial fp = space_->factor_polynomial(fac, num_points_);
            const std::size_t lead = space_->lead_variable(fac);
            while (e > 0) {
                auto q = num.divide_exact(fp, lead);
                if (!q) break;
                num = std::move(*q);
                --e;
            }
        }
        merge_part(r.parts_, std::move(den), std::move(num));
    }
    r.normalize();
    return r;
}

SingularFunction SingularFunction::remapped_points(const std::vector<int>& map, int new_num_points) const {
    const std::size_t d = space_->dim();
    std::vector<int> var_map(num_vars(), -1);
    for (int p = 0; p < num_points_; ++p)
        for (std::size_t u = 0; u < d; ++u)
            if (map[p] >= 0) var_map[p * d + u] = static_cast<int>(map[p] * d + u);
    SingularFunction r(space_, new_num_points);
    r.window_ = window_;
    const std::size_t n = static_cast<std::size_t>(new_num_points) * d;
    for (const auto& [den_in, num] : parts_) {
        Denominator den;
        int sign_power = 0;
        for (const auto& [fac, e] : den_in) {
            if (map[fac.first] < 0 || (fac.is_pair() && map[fac.second] < 0))
                throw std::invalid_argument("remap drops a point used in the denominator");
            if (!fac.is_pair()) {
                den[Factor::point(map[fac.first])] += e;
            } else {
                const int a = map[fac.first];
                const int b = map[fac.second];
                den[Factor::pair(a, b)] += e;
                if (a > b && space_->generator_is_odd()) sign_power += e;
            }
        }
        Polynomial p = num.remapped(var_map, n);
        if (sign_power & 1) p = -p;
        merge_part(r.parts_, std::move(den), std::move(p));
    }
    r.normalize();
    return r;
}

bool SingularFunction::depends_on_point(int point) const {
    const std::size_t d = space_->dim();
    for (const auto& [den, num] : parts_) {
        for (const auto& [fac, e] : den)
            if (fac.involves(point)) return true;
        for (const auto& [e, c] : num.terms())
            for (std::size_t u = 0; u < d; ++u)
                if (e[point * d + u] != 0) return true;
    }
    return false;
}

SingularFunction SingularFunction::at_origin(int point) const {
    const std::size_t d = space_->dim();
    SingularFunction r(space_, num_points_);
    r.window_ = window_;
    for (const auto& [den, num] : parts_) {
        for (const auto& [fac, e] : den)
            if (fac.involves(point)) throw std::invalid_argument("point occurs in the denominator");
        Polynomial kept(num.num_vars());
        for (const auto& [e, c] : num.terms()) {
            bool keep = true;
            for (std::size_t u = 0; u < d; ++u)
                if (e[point * d + u] != 0) keep = false;
            if (keep) kept.add_term(e, c);
        }
        merge_part(r.parts_, den, std::move(kept));
    }
    r.normalize();
    return r;
}

std::string SingularFunction::render() const {
    const SingularFunction r = reduced();
    if (r.parts_.empty()) return "0";
    auto name = [this](std::size_t v) { return space_->coordinate_name(v); };
    std::vector<const Parts::value_type*> order;
    for (const auto& p : r.parts_) order.push_back(&p);
    std::stable_sort(order.begin(), order.end(), [&](auto* a, auto* b) {
        return a->second.max_degree() - r.denominator_degree(a->first) >
               b->second.max_degree() - r.denominator_degree(b->first);
    });
    std::string out;
    for (const auto* part : order) {
        const auto& [den_map, num] = *part;
        std::string den;
        for (const auto& [fac, e] : den_map) {
            if (!den.empty()) den += '*';
            den += space_->factor_name(fac) + "^-" + std::to_string(e);
        }
        std::string piece;
        if (den.empty()) {
            piece = num.render(name);
        } else if (num.size() == 1) {
            const auto& [e, c] = *num.terms().begin();
            std::string body = render_monomial(e, name);
            body = body.empty() ? den : body + "*" + den;
            piece = join_signed_terms({{c, body}});
        } else {
            piece = "(" + num.render(name) + ")*" + den;
        }
        if (out.empty()) {
            out = piece;
        } else if (piece[0] == '-') {
            out += " - " + piece.substr(1);
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

} // namespace vertexring
