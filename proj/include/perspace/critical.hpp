#pragma once

#include "perspace/perspace.hpp"

#include <optional>
#include <vector>

namespace perspace {

// Certificate that H_k(K_{u'}) -> H_k(K_{u''}) is not an isomorphism, u' ⪯ u ⪯ u''.
struct CriticalWitness {
    int degree = 0;
    Grade u;
    Grade u_prime;
    Grade u_dprime;
    std::size_t betti_prime = 0;
    std::size_t betti_dprime = 0;
    std::size_t rank = 0;
};

// Searches u' = u - ε·χ_S, u'' = u + ε·χ_T over all axis subsets S, T in
// lexicographic mask order and returns the first non-isomorphism.
inline std::optional<CriticalWitness> is_homological_critical(const PbnEvaluator& beta, int k, const Grade& u,
                                                              std::optional<Rational> epsilon = std::nullopt) {
    if (k < 0) throw PreconditionError("degree must be non-negative");
    const Rational eps = epsilon.value_or(stabilization_radius(beta.complex(), std::vector<Grade>{u}).epsilon);
    if (eps <= 0) throw PreconditionError("epsilon must be positive");
    const std::size_t n = u.size();
    if (n != beta.complex().parameter_count()) throw DimensionMismatch("grade length mismatch");
    if (n >= 16) throw PreconditionError("axis-subset search limited to n < 16");

    auto shifted = [&](std::size_t mask, const Rational& step) {
        Grade g = u;
        for (std::size_t a = 0; a < n; ++a)
            if (mask >> a & 1) g[a] += step;
        return g;
    };
    const std::size_t subsets = std::size_t{1} << n;
    for (std::size_t s = 0; s < subsets; ++s) {
        Grade lo = shifted(s, -eps);
        auto b_lo = beta.betti(k, lo);
        for (std::size_t t = 0; t < subsets; ++t) {
            Grade hi = shifted(t, eps);
            auto b_hi = beta.betti(k, hi);
            auto rank = beta(k, lo, hi);
            if (rank != b_lo || rank != b_hi) return CriticalWitness{k, u, lo, hi, b_lo, b_hi, rank};
        }
    }
    return std::nullopt;
}

struct CriticalReport {
    Cornerpoint cornerpoint;
    std::optional<CriticalWitness> u_witness;
    std::optional<CriticalWitness> v_witness;  // proper cornerpoints only
    bool pass = false;
};

class StaleCornerpoint : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Both coordinates of a cornerpoint must be homological critical values.
inline CriticalReport check_cornerpoint_critical(const PbnEvaluator& beta, const Cornerpoint& c) {
    std::size_t m = c.proper() ? mu_proper(beta, c.degree, c.u, *c.v) : mu_infinity(beta, c.degree, c.u);
    if (m == 0) throw StaleCornerpoint("multiplicity of " + to_string(c.u) + " recomputes to 0");
    CriticalReport report{c, is_homological_critical(beta, c.degree, c.u), std::nullopt, false};
    if (c.proper()) report.v_witness = is_homological_critical(beta, c.degree, *c.v);
    report.pass = report.u_witness.has_value() && (!c.proper() || report.v_witness.has_value());
    return report;
}

} // namespace perspace
