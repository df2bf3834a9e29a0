#include "vertexring/spacetime.hpp"

#include <stdexcept>

namespace vertexring {

SpacetimeSpec SpacetimeSpec::minkowski(int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
    SpacetimeSpec s;
    s.dim = dim;
    s.metric_signs.assign(dim, -1);
    s.metric_signs[0] = 1;
    return s;
}

SpacetimeSpec SpacetimeSpec::with_signs(std::vector<int> signs) {
    SpacetimeSpec s;
    s.dim = static_cast<int>(signs.size());
    s.metric_signs = std::move(signs);
    s.validate();
    return s;
}

void SpacetimeSpec::validate() const {
    if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
    if (static_cast<int>(metric_signs.size()) != dim)
        throw std::invalid_argument("metric signature length must equal the dimension");
    for (int s : metric_signs)
        if (s != 1 && s != -1) throw std::invalid_argument("metric signs must be +1 or -1");
}

Factor Factor::pair(int i, int j) {
    if (i == j) throw std::invalid_argument("pair factor needs two distinct points");
    if (i > j) std::swap(i, j);
    return Factor{i, j};
}

SingularSpace::SingularSpace(SpacetimeSpec spacetime, SingularitySpec singularities)
    : spacetime_(std::move(spacetime)), singularities_(singularities) {
    spacetime_.validate();
}

Polynomial SingularSpace::generator() const {
    const std::size_t d = dim();
    if (d == 1) return Polynomial::variable(1, 0);
    Polynomial q(d);
    for (std::size_t u = 0; u < d; ++u) {
        Exponents e(d, 0);
        e[u] = 2;
        q.add_term(e, spacetime_.metric_signs[u]);
    }
    return q;
}

Polynomial SingularSpace::factor_polynomial(const Factor& f, int num_points) const {
    const std::size_t d = dim();
    const std::size_t n = static_cast<std::size_t>(num_points) * d;
    std::vector<Polynomial> images;
    images.reserve(d);
    for (std::size_t u = 0; u < d; ++u) {
        Polynomial img = Polynomial::variable(n, f.first * d + u);
        if (f.is_pair()) img -= Polynomial::variable(n, f.second * d + u);
        images.push_back(std::move(img));
    }
    return generator().substitute(images);
}

std::size_t SingularSpace::lead_variable(const Factor& f) const {
    return static_cast<std::size_t>(f.first) * dim();
}

void SingularSpace::check_factor(const Factor& f, int num_points) const {
    if (f.first < 0 || f.first >= num_points || f.second >= num_points)
        throw std::out_of_range("factor refers to a point outside the function");
    if (f.is_pair() && !singularities_.pairs) throw SpecMismatchError("pair singularities are not allowed");
    if (!f.is_pair() && !singularities_.per_point) throw SpecMismatchError("per-point singularities are not allowed");
}

std::string SingularSpace::point_name(int point) const {
    return "x" + std::to_string(point + 1);
}

std::string SingularSpace::coordinate_name(std::size_t var) const {
    const std::size_t d = dim();
    const int point = static_cast<int>(var / d);
    if (d == 1) return point_name(point);
    return point_name(point) + "_" + std::to_string(var % d);
}

std::string SingularSpace::factor_name(const Factor& f) const {
    if (dim() == 1) {
        if (!f.is_pair()) return point_name(f.first);
        return "(" + point_name(f.first) + "-" + point_name(f.second) + ")";
    }
    if (!f.is_pair()) return "q(" + point_name(f.first) + ")";
    return "q(" + point_name(f.first) + "-" + point_name(f.second) + ")";
}

SpacePtr make_space(SpacetimeSpec spacetime, SingularitySpec singularities) {
    return std::make_shared<const SingularSpace>(std::move(spacetime), singularities);
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    return a == b || (a && b && *a == *b);
}

} // namespace vertexring
