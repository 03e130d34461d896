#pragma once

#include "perspace/perspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace perspace {

// Point of the extended space: proper (u, v) or at infinity (u, ∞).
struct ExtendedPoint {
    Grade u;
    std::optional<Grade> v;

    static ExtendedPoint from(const Cornerpoint& c) { return {c.u, c.v}; }
};

// nullopt stands for +∞.
using ExtendedValue = std::optional<Rational>;

// max(|u-u'|_∞, |v-v'|_∞) with ∞-∞ = 0 and v-∞ = ∞.
inline ExtendedValue ext_distance(const ExtendedPoint& p, const ExtendedPoint& q) {
    Grade::check_same_size(p.u, q.u);
    if (p.v.has_value() != q.v.has_value()) return std::nullopt;
    Rational d = sup_norm(p.u - q.u);
    if (p.v) d = std::max(d, sup_norm(*p.v - *q.v));
    return d;
}

// min_i (v_i - u_i) / 2, the max-norm distance to the diagonal.
inline ExtendedValue diagonal_distance(const ExtendedPoint& p) {
    if (!p.v) return std::nullopt;
    return Rational(min_gap(p.u, *p.v) / 2);
}

namespace detail {

// Index in g of each simplex of f; throws unless the simplex sets coincide.
inline std::vector<std::size_t> skeleton_map(const MultiFilteredComplex& f, const MultiFilteredComplex& g) {
    if (f.parameter_count() != g.parameter_count())
        throw InputError("complexes have different parameter counts");
    if (f.size() != g.size()) throw InputError("complexes have different skeletons");
    std::vector<std::size_t> map(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto j = g.index_of(f.simplex(i));
        if (!j) throw InputError("simplex " + to_string(f.simplex(i)) + " missing from second complex");
        map[i] = *j;
    }
    return map;
}

} // namespace detail

// max over simplices of |grade_f(σ) - grade_g(σ)|_∞
inline Rational sup_norm_distance(const MultiFilteredComplex& f, const MultiFilteredComplex& g) {
    auto map = detail::skeleton_map(f, g);
    Rational d = 0;
    for (std::size_t i = 0; i < f.size(); ++i) d = std::max(d, sup_norm(f.grade(i) - g.grade(map[i])));
    return d;
}

// (1-τ)·f + τ·g, simplex by simplex, in f's simplex order.
inline MultiFilteredComplex interpolate(const MultiFilteredComplex& f, const MultiFilteredComplex& g,
                                        const Rational& tau) {
    if (tau < 0 || tau > 1) throw PreconditionError("interpolation parameter must lie in [0,1]");
    auto map = detail::skeleton_map(f, g);
    std::vector<Grade> grades;
    grades.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        grades.push_back(Rational(1 - tau) * f.grade(i) + tau * g.grade(map[i]));
    return MultiFilteredComplex(f.parameter_count(), f.simplices(), std::move(grades));
}

enum class Verdict { MatchedToCornerpoint, MatchedToDiagonal, Failed };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::MatchedToCornerpoint: return "matched-to-cornerpoint";
    case Verdict::MatchedToDiagonal: return "matched-to-diagonal";
    case Verdict::Failed: return "FAILED";
    }
    return "?";
}

struct PointVerdict {
    Cornerpoint point;
    Verdict verdict = Verdict::Failed;
    std::size_t window_count = 0;  // cornerpoints of the other space seen in the window
};

// Margin below the grid resolution of the target complex.
inline Rational default_margin(const MultiFilteredComplex& g) { return g.grid().delta_min / 8; }

// For each sample of Spc(f): does Spc(g) hold a point within ε of it? Tested exactly
// through window counts of radius ε + margin along the diagonal direction.
inline std::vector<PointVerdict> directed_match_check(const std::vector<Cornerpoint>& samples,
                                                      const PbnEvaluator& g_beta, int k,
                                                      const Rational& epsilon, const Rational& margin) {
    if (epsilon < 0) throw PreconditionError("epsilon must be non-negative");
    if (margin <= 0) throw PreconditionError("margin must be positive");
    std::vector<PointVerdict> out;
    out.reserve(samples.size());
    const Rational radius = epsilon + margin;
    for (const auto& p : samples) {
        PointVerdict verdict{p, Verdict::Failed, 0};
        const Grade e = Grade::constant(p.u.size(), radius);
        if (p.proper()) {
            auto diag = *diagonal_distance(ExtendedPoint::from(p));
            if (diag <= epsilon || !strictly_below(p.u + e, *p.v - e)) {
                verdict.verdict = Verdict::MatchedToDiagonal;
            } else {
                verdict.window_count = window_count_proper(g_beta, k, p.u, *p.v, e);
                if (verdict.window_count >= 1) verdict.verdict = Verdict::MatchedToCornerpoint;
            }
        } else {
            verdict.window_count = window_count_infinity(g_beta, k, p.u, e);
            if (verdict.window_count >= 1) verdict.verdict = Verdict::MatchedToCornerpoint;
        }
        out.push_back(std::move(verdict));
    }
    return out;
}

struct StabilityReport {
    int degree = 0;
    Rational epsilon;
    std::vector<PointVerdict> direction_fg;
    std::vector<PointVerdict> direction_gf;
    bool pass = false;

    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto* dir : {&direction_fg, &direction_gf})
            for (const auto& v : *dir) n += v.verdict == Verdict::Failed;
        return n;
    }
};

struct StabilityOptions {
    std::optional<std::vector<Ray>> rays;     // default family of each complex when unset
    std::optional<Rational> margin;           // default_margin of the target when unset
    FieldPrime field;
};

inline StabilityReport stability_check(const MultiFilteredComplex& f, const MultiFilteredComplex& g, int k,
                                       const StabilityOptions& options = {}) {
    StabilityReport report;
    report.degree = k;
    report.epsilon = sup_norm_distance(f, g);
    PbnEvaluator f_beta(f, options.field), g_beta(g, options.field);
    auto f_samples = sample_space(f_beta, k, options.rays);
    auto g_samples = sample_space(g_beta, k, options.rays);
    report.direction_fg = directed_match_check(f_samples, g_beta, k, report.epsilon,
                                               options.margin.value_or(default_margin(g)));
    report.direction_gf = directed_match_check(g_samples, f_beta, k, report.epsilon,
                                               options.margin.value_or(default_margin(f)));
    report.pass = report.failures() == 0;
    return report;
}

} // namespace perspace
