#pragma once

#include "perspace/homology.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace perspace {

// A point of positive multiplicity. `v == nullopt` marks a point at infinity.
struct Cornerpoint {
    int degree = 0;
    Grade u;
    std::optional<Grade> v;
    std::size_t multiplicity = 0;

    bool proper() const { return v.has_value(); }

    friend bool operator==(const Cornerpoint&, const Cornerpoint&) = default;
};

// Canonical order: degree, then proper before infinity, then lexicographic.
inline bool canonical_less(const Cornerpoint& a, const Cornerpoint& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.proper() != b.proper()) return a.proper();
    if (!(a.u == b.u)) return a.u < b.u;
    if (a.proper() && !(*a.v == *b.v)) return *a.v < *b.v;
    return false;
}

// min_i (v_i - u_i); nullopt stands for +∞.
inline std::optional<Rational> persistence_of(const Cornerpoint& c) {
    if (!c.v) return std::nullopt;
    return min_gap(c.u, *c.v);
}

struct StabilizationRadius {
    Rational epsilon;
};

namespace detail {

inline std::optional<Rational> nearest_other_grid_gap(const CoordinateGrid& grid, std::size_t axis,
                                                      const Rational& c) {
    const auto& g = grid.axes[axis];
    std::optional<Rational> best;
    auto above = std::upper_bound(g.begin(), g.end(), c);
    if (above != g.end()) best = *above - c;
    auto below = std::lower_bound(g.begin(), g.end(), c);
    if (below != g.begin()) {
        Rational d = c - *std::prev(below);
        if (!best || d < *best) best = d;
    }
    return best;
}

} // namespace detail

// A quarter of the smallest positive distance from any query coordinate to a grid
// value on its axis. For e ≻ 0 with |e|_∞ <= ε every PBN term around the queried
// points sits at its limiting value.
inline StabilizationRadius stabilization_radius(const MultiFilteredComplex& complex,
                                                const std::vector<Grade>& points) {
    const auto& grid = complex.grid();
    std::optional<Rational> gap;
    for (const auto& p : points) {
        if (p.size() != complex.parameter_count())
            throw DimensionMismatch("query grade has length " + std::to_string(p.size()));
        for (std::size_t a = 0; a < p.size(); ++a) {
            auto d = detail::nearest_other_grid_gap(grid, a, p[a]);
            if (d && (!gap || *d < *gap)) gap = d;
        }
    }
    if (!gap) return {std::max(grid.delta_min, Rational(1)) / 4};
    return {*gap / 4};
}

// As above, additionally capped so that u + ε·1 ≺ v - ε·1.
inline StabilizationRadius stabilization_radius(const MultiFilteredComplex& complex, const Grade& u,
                                                const Grade& v) {
    auto r = stabilization_radius(complex, std::vector<Grade>{u, v});
    Rational cap = min_gap(u, v) / 4;
    if (cap < r.epsilon) r.epsilon = cap;
    return r;
}

// β(u+e,v-e) - β(u-e,v-e) - β(u+e,v+e) + β(u-e,v+e)
inline std::ptrdiff_t four_term_sum(const PbnEvaluator& beta, int k, const Grade& u, const Grade& v,
                                    const Grade& e) {
    if (!strictly_below(u + e, v - e)) throw PreconditionError("four-term sum needs u+e ≺ v-e");
    auto b = [&](const Grade& x, const Grade& y) { return static_cast<std::ptrdiff_t>(beta(k, x, y)); };
    return b(u + e, v - e) - b(u - e, v - e) - b(u + e, v + e) + b(u - e, v + e);
}

inline std::size_t mu_proper(const PbnEvaluator& beta, int k, const Grade& u, const Grade& v) {
    if (!strictly_below(u, v)) throw PreconditionError("mu_proper needs u ≺ v");
    auto eps = stabilization_radius(beta.complex(), u, v).epsilon;
    auto sum = four_term_sum(beta, k, u, v, Grade::constant(u.size(), eps));
    if (sum < 0) throw std::logic_error("negative multiplicity");
    return static_cast<std::size_t>(sum);
}

inline std::size_t mu_infinity(const PbnEvaluator& beta, int k, const Grade& u) {
    auto eps = stabilization_radius(beta.complex(), std::vector<Grade>{u}).epsilon;
    auto e = Grade::constant(u.size(), eps);
    auto plus = beta.at_infinity(k, u + e);
    auto minus = beta.at_infinity(k, u - e);
    if (plus < minus) throw std::logic_error("negative multiplicity at infinity");
    return plus - minus;
}

// Proper cornerpoints (with multiplicity) in the diagonal window
// {(u - s e, v + t e) : -1 <= s < 1, -1 < t <= 1}.
inline std::size_t window_count_proper(const PbnEvaluator& beta, int k, const Grade& u, const Grade& v,
                                       const Grade& e) {
    if (!strictly_positive(e)) throw PreconditionError("window direction must be ≻ 0");
    auto sum = four_term_sum(beta, k, u, v, e);
    if (sum < 0) throw std::logic_error("negative window count");
    return static_cast<std::size_t>(sum);
}

// Cornerpoints at infinity in {(u - s e, ∞) : -1 <= s < 1}.
inline std::size_t window_count_infinity(const PbnEvaluator& beta, int k, const Grade& u, const Grade& e) {
    if (!strictly_positive(e)) throw PreconditionError("window direction must be ≻ 0");
    auto plus = beta.at_infinity(k, u + e);
    auto minus = beta.at_infinity(k, u - e);
    if (plus < minus) throw std::logic_error("negative window count at infinity");
    return plus - minus;
}

// Cornerpoints on the ray family (u - s e, v + t e), s >= 0, t > 0, and (u - s e, ∞), s >= 0.
struct RaySection {
    int degree = 0;
    Grade base_u;
    Grade base_v;
    Grade direction;
    std::vector<Cornerpoint> proper;
    std::vector<Cornerpoint> at_infinity;
};

namespace detail {

// Parameters r with sign*r > 0 (or r >= 0 when allow_zero) where base + sign*r*e hits the grid.
inline std::set<Rational> ray_crossings(const CoordinateGrid& grid, const Grade& base, const Grade& e,
                                        int sign, bool allow_zero) {
    std::set<Rational> out;
    for (std::size_t a = 0; a < base.size(); ++a)
        for (const auto& g : grid.axes[a]) {
            Rational r = Rational(g - base[a]) / e[a] * sign;
            if (r > 0 || (allow_zero && r == 0)) out.insert(r);
        }
    return out;
}

} // namespace detail

inline RaySection ray_section(const PbnEvaluator& beta, int k, const Grade& u, const Grade& v, const Grade& e) {
    if (!strictly_below(u, v)) throw PreconditionError("ray_section needs u ≺ v");
    if (!strictly_positive(e)) throw PreconditionError("ray direction must be ≻ 0");
    if (k < 0) throw PreconditionError("degree must be non-negative");
    RaySection section{k, u, v, e, {}, {}};
    if (k > beta.complex().dimension()) return section;

    const auto& grid = beta.complex().grid();
    auto s_values = detail::ray_crossings(grid, u, e, -1, true);
    s_values.insert(Rational(0));
    auto t_values = detail::ray_crossings(grid, v, e, +1, false);

    for (const auto& s : s_values) {
        Grade us = u - s * e;
        for (const auto& t : t_values) {
            Grade vt = v + t * e;
            if (auto m = mu_proper(beta, k, us, vt); m > 0) section.proper.push_back({k, us, vt, m});
        }
        if (auto m = mu_infinity(beta, k, us); m > 0) section.at_infinity.push_back({k, us, std::nullopt, m});
    }
    return section;
}

inline std::size_t reconstruct_pbn(const RaySection& section) {
    std::size_t total = 0;
    for (const auto& c : section.proper) total += c.multiplicity;
    for (const auto& c : section.at_infinity) total += c.multiplicity;
    return total;
}

struct Ray {
    Grade u, v, e;
};

namespace detail {

inline std::vector<Grade> product_points(const std::vector<std::vector<Rational>>& axis_values) {
    std::vector<Grade> out;
    const std::size_t n = axis_values.size();
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::vector<Rational> coords(n);
        for (std::size_t a = 0; a < n; ++a) coords[a] = axis_values[a][idx[a]];
        out.emplace_back(std::move(coords));
        std::size_t a = 0;
        while (a < n && ++idx[a] == axis_values[a].size()) idx[a++] = 0;
        if (a == n) break;
    }
    return out;
}

} // namespace detail

// Diagonal rays through grid points and midpoints at several offsets above them,
// plus, for every pair of grid points a ≺ b, the ray based at (a, b - g/2·1) with
// g = min_i (b_i - a_i), which reaches (a, b) itself at t = g/2. The diagonal
// offsets alone only reach pairs with v - u parallel to (1,…,1).
inline std::vector<Ray> default_ray_family(const MultiFilteredComplex& complex) {
    const auto& grid = complex.grid();
    const std::size_t n = complex.parameter_count();
    if (complex.empty()) return {};

    std::vector<std::vector<Rational>> axis_values(n);
    for (std::size_t a = 0; a < n; ++a) {
        const auto& g = grid.axes[a];
        for (std::size_t j = 0; j < g.size(); ++j) {
            axis_values[a].push_back(g[j]);
            if (j + 1 < g.size()) axis_values[a].push_back((g[j] + g[j + 1]) / 2);
        }
    }
    std::set<Rational> offsets{grid.delta_min / 2, grid.delta_min, 2 * grid.delta_min,
                               grid.max_value - grid.min_value() + 1};

    std::vector<Ray> rays;
    const Grade ones = Grade::constant(n, 1);
    for (const auto& base : detail::product_points(axis_values))
        for (const auto& lambda : offsets) rays.push_back({base, base + lambda * ones, ones});

    auto grid_points = detail::product_points(grid.axes);
    for (const auto& a : grid_points)
        for (const auto& b : grid_points)
            if (strictly_below(a, b)) rays.push_back({a, b - Rational(min_gap(a, b) / 2) * ones, ones});
    return rays;
}

// Deduplicated union of ray sections, canonically ordered.
inline std::vector<Cornerpoint> sample_space(const PbnEvaluator& beta, int k,
                                             const std::optional<std::vector<Ray>>& rays = std::nullopt) {
    auto family = rays ? *rays : default_ray_family(beta.complex());
    std::map<std::pair<Grade, std::optional<Grade>>, std::size_t> found;
    for (const auto& ray : family) {
        auto section = ray_section(beta, k, ray.u, ray.v, ray.e);
        for (auto* list : {&section.proper, &section.at_infinity})
            for (auto& c : *list) found.emplace(std::make_pair(c.u, c.v), c.multiplicity);
    }
    std::vector<Cornerpoint> out;
    for (auto& [key, m] : found) out.push_back({k, key.first, key.second, m});
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

} // namespace perspace
