#pragma once

#include "perspace/complex.hpp"
#include "perspace/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace perspace {

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Rows: (k-1)-simplices of the selection, columns: k-simplices; both in complex order.
struct BoundaryMatrix {
    int degree = 0;
    std::vector<std::size_t> row_simplices;
    std::vector<std::size_t> col_simplices;
    FpMatrix matrix;
};

namespace detail {

inline std::vector<std::size_t> selected_of_dimension(const MultiFilteredComplex& complex,
                                                      const std::vector<bool>& mask, int k) {
    std::vector<std::size_t> out;
    if (k < 0) return out;
    for (std::size_t i = 0; i < complex.size(); ++i)
        if (mask[i] && complex.simplex(i).dimension() == k) out.push_back(i);
    return out;
}

// ∂ from `cols` (k-simplices) into `rows` ((k-1)-simplices). Assumes closure.
inline FpMatrix boundary_block(const MultiFilteredComplex& complex, const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols, FieldPrime field) {
    FpMatrix m(rows.size(), cols.size(), field);
    if (rows.empty() || cols.empty()) return m;
    std::vector<std::ptrdiff_t> row_of(complex.size(), -1);
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = static_cast<std::ptrdiff_t>(r);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& facets = complex.facets(cols[c]);
        for (std::size_t j = 0; j < facets.size(); ++j) {
            if (!facets[j] || row_of[*facets[j]] < 0)
                throw PreconditionError("selection is not closed under faces");
            m.at(static_cast<std::size_t>(row_of[*facets[j]]), c) = field.sign(j);
        }
    }
    return m;
}

inline std::size_t persistent_betti_masks(const MultiFilteredComplex& complex, const std::vector<bool>& lo,
                                          const std::vector<bool>& hi, int k, FieldPrime field) {
    if (k < 0) return 0;
    auto lo_k = selected_of_dimension(complex, lo, k);
    if (lo_k.empty()) return 0;
    auto lo_km1 = selected_of_dimension(complex, lo, k - 1);
    auto cycles = kernel_basis(boundary_block(complex, lo_km1, lo_k, field));
    if (cycles.cols() == 0) return 0;

    auto hi_k = selected_of_dimension(complex, hi, k);
    auto hi_kp1 = selected_of_dimension(complex, hi, k + 1);
    auto boundaries = boundary_block(complex, hi_k, hi_kp1, field);

    // Re-index the cycle basis onto the k-simplices of the larger selection.
    FpMatrix embedded(hi_k.size(), cycles.cols(), field);
    for (std::size_t r = 0; r < lo_k.size(); ++r) {
        auto pos = std::lower_bound(hi_k.begin(), hi_k.end(), lo_k[r]);
        if (pos == hi_k.end() || *pos != lo_k[r])
            throw PreconditionError("persistent Betti number needs nested selections");
        auto hr = static_cast<std::size_t>(pos - hi_k.begin());
        for (std::size_t c = 0; c < cycles.cols(); ++c) embedded.at(hr, c) = cycles.at(r, c);
    }
    // dim Z - dim(Z ∩ B) = rank[Z | B] - rank B
    return rank_mod_p(embedded.hconcat(boundaries)) - rank_mod_p(boundaries);
}

} // namespace detail

inline BoundaryMatrix boundary_matrix(const MultiFilteredComplex& complex, const SubcomplexSelection& sel,
                                      int k, FieldPrime field = {}) {
    if (k < 0) throw PreconditionError("degree must be non-negative");
    if (!is_face_closed(complex, sel)) throw PreconditionError("selection is not closed under faces");
    BoundaryMatrix out;
    out.degree = k;
    out.row_simplices = detail::selected_of_dimension(complex, sel.mask, k - 1);
    out.col_simplices = detail::selected_of_dimension(complex, sel.mask, k);
    out.matrix = detail::boundary_block(complex, out.row_simplices, out.col_simplices, field);
    return out;
}

inline std::size_t rank_mod_p(const BoundaryMatrix& m) { return rank_mod_p(m.matrix); }

// #k-simplices - rank ∂_k - rank ∂_{k+1}
inline std::size_t betti(const MultiFilteredComplex& complex, const SubcomplexSelection& sel, int k,
                         FieldPrime field = {}) {
    if (k < 0) return 0;
    auto dk = boundary_matrix(complex, sel, k, field);
    auto dk1 = boundary_matrix(complex, sel, k + 1, field);
    return dk.col_simplices.size() - rank_mod_p(dk.matrix) - rank_mod_p(dk1.matrix);
}

// Rank of H_k(lo) -> H_k(hi) induced by inclusion.
inline std::size_t persistent_betti(const MultiFilteredComplex& complex, const SubcomplexSelection& lo,
                                    const SubcomplexSelection& hi, int k, FieldPrime field = {}) {
    if (!lo.subset_of(hi)) throw PreconditionError("persistent Betti number needs nested selections");
    if (!is_face_closed(complex, lo) || !is_face_closed(complex, hi))
        throw PreconditionError("selection is not closed under faces");
    return detail::persistent_betti_masks(complex, lo.mask, hi.mask, k, field);
}

struct PBNValue {
    int degree = 0;
    Grade u, v;
    std::size_t value = 0;
};

// β(u,v) for u ⪯ v.
inline PBNValue pbn(const MultiFilteredComplex& complex, int k, const Grade& u, const Grade& v,
                    FieldPrime field = {}) {
    if (u.size() != complex.parameter_count() || v.size() != complex.parameter_count())
        throw DimensionMismatch("pbn grades must have length " + std::to_string(complex.parameter_count()));
    if (!weakly_below(u, v)) throw PreconditionError("pbn requires u ⪯ v, got " + to_string(u) + " and " + to_string(v));
    if (k < 0) throw PreconditionError("degree must be non-negative");
    return {k, u, v, persistent_betti(complex, sublevel(complex, u), sublevel(complex, v), k, field)};
}

// Persistent Betti numbers with memoization keyed by the per-axis grid cell of
// each argument. Sublevel sets depend only on that cell, so the cache is exact.
// Safe to share between threads.
class PbnEvaluator {
public:
    explicit PbnEvaluator(const MultiFilteredComplex& complex, FieldPrime field = {})
        : complex_(&complex), field_(field) {}
    // Holds a reference; the complex must outlive the evaluator.
    PbnEvaluator(MultiFilteredComplex&&, FieldPrime = {}) = delete;

    const MultiFilteredComplex& complex() const { return *complex_; }
    FieldPrime field() const { return field_; }

    std::size_t operator()(int k, const Grade& u, const Grade& v) const {
        if (!weakly_below(u, v))
            throw PreconditionError("pbn requires u ⪯ v, got " + to_string(u) + " and " + to_string(v));
        return lookup(k, cell_of(u), cell_of(v));
    }

    // β(u, w) for w above every grade: rank of H_k(K_u) -> H_k(K).
    std::size_t at_infinity(int k, const Grade& u) const {
        std::vector<std::size_t> top(complex_->parameter_count());
        for (std::size_t a = 0; a < top.size(); ++a) top[a] = complex_->grid().axes[a].size();
        return lookup(k, cell_of(u), top);
    }

    std::size_t betti(int k, const Grade& u) const {
        auto c = cell_of(u);
        return lookup(k, c, c);
    }

    std::size_t cache_size() const {
        std::lock_guard lock(mutex_);
        return cache_.size();
    }

private:
    std::vector<std::size_t> cell_of(const Grade& u) const {
        if (u.size() != complex_->parameter_count())
            throw DimensionMismatch("grade has length " + std::to_string(u.size()) + ", complex has " +
                                    std::to_string(complex_->parameter_count()) + " parameters");
        std::vector<std::size_t> cell(u.size());
        for (std::size_t a = 0; a < u.size(); ++a) cell[a] = complex_->grid().count_at_or_below(a, u[a]);
        return cell;
    }

    std::vector<bool> mask_of(const std::vector<std::size_t>& cell) const {
        std::vector<bool> mask(complex_->size(), true);
        for (std::size_t i = 0; i < complex_->size(); ++i)
            for (std::size_t a = 0; a < cell.size(); ++a)
                if (complex_->grid_position(i, a) >= cell[a]) {
                    mask[i] = false;
                    break;
                }
        return mask;
    }

    std::size_t lookup(int k, const std::vector<std::size_t>& lo, const std::vector<std::size_t>& hi) const {
        if (k < 0) throw PreconditionError("degree must be non-negative");
        if (k > complex_->dimension()) return 0;
        std::vector<std::size_t> key;
        key.reserve(1 + lo.size() + hi.size());
        key.push_back(static_cast<std::size_t>(k));
        key.insert(key.end(), lo.begin(), lo.end());
        key.insert(key.end(), hi.begin(), hi.end());
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        }
        auto value = detail::persistent_betti_masks(*complex_, mask_of(lo), mask_of(hi), k, field_);
        std::lock_guard lock(mutex_);
        cache_.emplace(std::move(key), value);
        return value;
    }

    const MultiFilteredComplex* complex_;
    FieldPrime field_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<std::size_t>, std::size_t> cache_;
};

// A point of a one-parameter persistence diagram; death == nullopt means essential.
struct DiagramPair {
    Rational birth;
    std::optional<Rational> death;

    friend bool operator==(const DiagramPair&, const DiagramPair&) = default;
    friend bool operator<(const DiagramPair& a, const DiagramPair& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.death.has_value() != b.death.has_value()) return a.death.has_value();
        return a.death && *a.death < *b.death;
    }
};

// Standard column reduction for n = 1. Zero-persistence pairs are dropped.
inline std::vector<DiagramPair> diagram_1d(const MultiFilteredComplex& complex, int k, FieldPrime field = {}) {
    if (complex.parameter_count() != 1) throw PreconditionError("diagram_1d needs a one-parameter complex");
    if (k < 0) throw PreconditionError("degree must be non-negative");
    if (!validate(complex).ok()) throw PreconditionError("diagram_1d needs a valid complex");

    const std::size_t m = complex.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ga = complex.grade(a)[0];
        const auto& gb = complex.grade(b)[0];
        if (ga != gb) return ga < gb;
        return complex.simplex(a).dimension() < complex.simplex(b).dimension();
    });
    std::vector<std::size_t> position(m);
    for (std::size_t p = 0; p < m; ++p) position[order[p]] = p;

    // Sparse columns: (row position, coefficient), sorted by row.
    using Column = std::vector<std::pair<std::size_t, std::uint32_t>>;
    std::vector<Column> columns(m);
    for (std::size_t p = 0; p < m; ++p) {
        const auto& facets = complex.facets(order[p]);
        for (std::size_t j = 0; j < facets.size(); ++j) columns[p].emplace_back(position[*facets[j]], field.sign(j));
        std::sort(columns[p].begin(), columns[p].end());
    }

    std::vector<std::ptrdiff_t> owner_of_low(m, -1);
    std::vector<bool> killed(m, false);
    std::vector<DiagramPair> out;
    for (std::size_t p = 0; p < m; ++p) {
        auto& col = columns[p];
        while (!col.empty()) {
            auto [low, coef] = col.back();
            auto owner = owner_of_low[low];
            if (owner < 0) break;
            const auto& other = columns[static_cast<std::size_t>(owner)];
            std::uint32_t factor = field.mul(coef, field.inv(other.back().second));
            Column merged;
            std::size_t a = 0, b = 0;
            while (a < col.size() || b < other.size()) {
                if (b == other.size() || (a < col.size() && col[a].first < other[b].first)) {
                    merged.push_back(col[a++]);
                } else if (a == col.size() || other[b].first < col[a].first) {
                    merged.emplace_back(other[b].first, field.neg(field.mul(factor, other[b].second)));
                    ++b;
                } else {
                    auto v = field.sub(col[a].second, field.mul(factor, other[b].second));
                    if (v) merged.emplace_back(col[a].first, v);
                    ++a, ++b;
                }
            }
            col = std::move(merged);
        }
        if (!col.empty()) {
            auto low = col.back().first;
            owner_of_low[low] = static_cast<std::ptrdiff_t>(p);
            killed[low] = true;
            if (complex.simplex(order[low]).dimension() == k) {
                const auto& birth = complex.grade(order[low])[0];
                const auto& death = complex.grade(order[p])[0];
                if (birth != death) out.push_back({birth, death});
            }
        }
    }
    for (std::size_t p = 0; p < m; ++p) {
        if (killed[p] || !columns[p].empty()) continue;
        if (complex.simplex(order[p]).dimension() == k) out.push_back({complex.grade(order[p])[0], std::nullopt});
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace perspace
