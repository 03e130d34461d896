#pragma once

#include "perspace/complex.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace perspace {

// Seeded generators for instances and queries. All draws go through integer
// arithmetic on a mt19937_64 stream so a seed fixes the output on every platform.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    // Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(rng_() % span);
    }

    bool coin(std::uint32_t numerator, std::uint32_t denominator) {
        return rng_() % denominator < numerator;
    }

    // Uniform on {lo + (hi-lo)·j/steps : j = 0..steps}.
    Rational rational(const Rational& lo, const Rational& hi, std::int64_t steps) {
        return lo + Rational(hi - lo) * Rational(integer(0, steps)) / Rational(steps);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

struct RandomComplexSpec {
    std::size_t vertices = 8;
    std::size_t parameters = 2;
    std::size_t grid_size = 5;         // grid values per axis: 0, step, ..., (grid_size-1)·step
    Rational grid_step = Rational(1, 2);
    int dimension = 2;                 // top simplex dimension of the clique complex
    std::size_t max_simplices = 40;
    std::uint32_t edge_percent = 50;
};

// Random clique complex, truncated to max_simplices by dropping maximal simplices,
// with one-critical grades made monotone by componentwise max over faces.
inline MultiFilteredComplex random_complex(const RandomComplexSpec& spec, std::uint64_t seed) {
    Sampler rng(seed);
    std::set<Simplex> simplices;
    for (std::size_t v = 0; v < spec.vertices; ++v) simplices.insert(Simplex{static_cast<VertexId>(v)});

    std::vector<std::vector<bool>> adjacent(spec.vertices, std::vector<bool>(spec.vertices, false));
    std::vector<Simplex> layer;
    if (spec.dimension >= 1) {
        for (std::size_t a = 0; a < spec.vertices; ++a)
            for (std::size_t b = a + 1; b < spec.vertices; ++b)
                if (rng.coin(spec.edge_percent, 100)) {
                    adjacent[a][b] = adjacent[b][a] = true;
                    layer.push_back(Simplex{static_cast<VertexId>(a), static_cast<VertexId>(b)});
                }
    }
    simplices.insert(layer.begin(), layer.end());
    for (int d = 2; d <= spec.dimension && !layer.empty(); ++d) {
        std::vector<Simplex> next;
        for (const auto& s : layer) {
            for (auto w = static_cast<std::size_t>(s.vertices().back()) + 1; w < spec.vertices; ++w) {
                bool clique = std::all_of(s.vertices().begin(), s.vertices().end(),
                                          [&](VertexId x) { return adjacent[static_cast<std::size_t>(x)][w]; });
                if (!clique) continue;
                auto verts = s.vertices();
                verts.push_back(static_cast<VertexId>(w));
                next.emplace_back(std::move(verts));
            }
        }
        simplices.insert(next.begin(), next.end());
        layer = std::move(next);
    }

    while (simplices.size() > spec.max_simplices) {
        std::vector<Simplex> maximal;
        for (const auto& s : simplices) {
            bool is_face = false;
            for (const auto& t : simplices) {
                if (t.dimension() != s.dimension() + 1) continue;
                if (std::includes(t.vertices().begin(), t.vertices().end(), s.vertices().begin(),
                                  s.vertices().end())) {
                    is_face = true;
                    break;
                }
            }
            if (!is_face) maximal.push_back(s);
        }
        simplices.erase(maximal[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(maximal.size()) - 1))]);
    }

    // std::set<Simplex> orders by dimension first, so faces are graded before cofaces.
    std::vector<Simplex> ordered(simplices.begin(), simplices.end());
    std::map<Simplex, Grade> graded;
    std::vector<Grade> grades;
    for (const auto& s : ordered) {
        std::vector<Rational> coords(spec.parameters);
        for (auto& c : coords)
            c = spec.grid_step * Rational(rng.integer(0, static_cast<std::int64_t>(spec.grid_size) - 1));
        Grade g(std::move(coords));
        if (s.dimension() > 0)
            for (std::size_t j = 0; j < s.vertices().size(); ++j) g = componentwise_max(g, graded.at(s.facet(j)));
        graded.emplace(s, g);
        grades.push_back(g);
    }
    return make_complex(spec.parameters, std::move(ordered), std::move(grades));
}

// Adds noise in [-bound, bound] to every grade coordinate, then restores
// monotonicity by taking the max over faces. The sup-norm distance stays <= bound.
inline MultiFilteredComplex perturb(const MultiFilteredComplex& f, const Rational& bound, std::uint64_t seed,
                                    std::int64_t steps = 8) {
    Sampler rng(seed);
    std::vector<std::size_t> order(f.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return f.simplex(a).dimension() < f.simplex(b).dimension();
    });
    std::vector<Grade> grades(f.size());
    for (auto i : order) {
        Grade g = f.grade(i);
        for (std::size_t a = 0; a < g.size(); ++a)
            if (bound > 0) g[a] += rng.rational(-bound, bound, steps);
        for (const auto& face : f.facets(i)) g = componentwise_max(g, grades[*face]);
        grades[i] = std::move(g);
    }
    return make_complex(f.parameter_count(), f.simplices(), std::move(grades));
}

// A coordinate near the grid: a grid value, a midpoint, or a fine random rational.
inline Rational random_coordinate(Sampler& rng, const std::vector<Rational>& axis) {
    if (axis.empty()) return rng.rational(-2, 2, 24);
    auto pick = rng.integer(0, 2);
    auto j = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(axis.size()) - 1));
    if (pick == 0) return axis[j];
    if (pick == 1 && j + 1 < axis.size()) return (axis[j] + axis[j + 1]) / 2;
    return rng.rational(axis.front() - 1, axis.back() + 1, 7 * 12);
}

inline Grade random_grade(Sampler& rng, const CoordinateGrid& grid) {
    std::vector<Rational> coords(grid.parameter_count());
    for (std::size_t a = 0; a < coords.size(); ++a) coords[a] = random_coordinate(rng, grid.axes[a]);
    return Grade(std::move(coords));
}

// Random pair u ≺ v near the grid.
inline std::pair<Grade, Grade> random_proper_pair(Sampler& rng, const CoordinateGrid& grid) {
    Grade u = random_grade(rng, grid);
    Grade v = random_grade(rng, grid);
    for (std::size_t a = 0; a < u.size(); ++a) {
        if (u[a] > v[a]) std::swap(u[a], v[a]);
        if (u[a] == v[a]) v[a] += rng.rational(Rational(1, 8), Rational(3, 2), 11);
    }
    return {u, v};
}

// Direction e ≻ 0, diagonal half of the time.
inline Grade random_direction(Sampler& rng, std::size_t n) {
    if (rng.coin(1, 2)) return Grade::constant(n, rng.rational(Rational(1, 4), 2, 7));
    std::vector<Rational> coords(n);
    for (auto& c : coords) c = rng.rational(Rational(1, 6), 2, 11);
    return Grade(std::move(coords));
}

} // namespace perspace
