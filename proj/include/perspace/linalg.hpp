#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace perspace {

// Prime modulus of the coefficient field.
class FieldPrime {
public:
    constexpr FieldPrime() = default;
    explicit FieldPrime(std::uint32_t p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
    }

    constexpr std::uint32_t value() const { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t s = std::uint64_t(a) + b;
        return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + (p_ - b); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t inv(std::uint32_t a) const {
        // Fermat: a^(p-2)
        std::uint64_t result = 1, base = a % p_, e = p_ - 2;
        while (e) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(result);
    }
    // (-1)^j reduced mod p.
    std::uint32_t sign(std::size_t j) const { return j % 2 == 0 ? 1 : neg(1); }

    static bool is_prime(std::uint32_t p) {
        if (p < 2) return false;
        for (std::uint32_t d = 2; std::uint64_t(d) * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    friend bool operator==(const FieldPrime&, const FieldPrime&) = default;

private:
    std::uint32_t p_ = 2;
};

// Dense row-major matrix over F_p.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::size_t rows, std::size_t cols, FieldPrime field = {})
        : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

    static FpMatrix identity(std::size_t n, FieldPrime field = {}) {
        FpMatrix m(n, n, field);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    FieldPrime field() const { return field_; }

    std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void set(std::size_t r, std::size_t c, std::int64_t value) {
        auto p = static_cast<std::int64_t>(field_.value());
        at(r, c) = static_cast<std::uint32_t>(((value % p) + p) % p);
    }

    std::vector<std::uint32_t> column(std::size_t c) const {
        std::vector<std::uint32_t> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
        return out;
    }

    std::vector<std::uint32_t> multiply(const std::vector<std::uint32_t>& x) const {
        std::vector<std::uint32_t> y(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (at(r, c) && x[c]) y[r] = field_.add(y[r], field_.mul(at(r, c), x[c]));
        return y;
    }

    // [this | other], same row count.
    FpMatrix hconcat(const FpMatrix& other) const {
        if (other.rows_ != rows_) throw std::invalid_argument("hconcat: row count mismatch");
        FpMatrix m(rows_, cols_ + other.cols_, field_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
            for (std::size_t c = 0; c < other.cols_; ++c) m.at(r, cols_ + c) = other.at(r, c);
        }
        return m;
    }

    // Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
            std::size_t pr = row;
            while (pr < rows_ && at(pr, c) == 0) ++pr;
            if (pr == rows_) continue;
            swap_rows(pr, row);
            std::uint32_t scale = field_.inv(at(row, c));
            for (std::size_t k = c; k < cols_; ++k) at(row, k) = field_.mul(at(row, k), scale);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == row || at(r, c) == 0) continue;
                std::uint32_t f = at(r, c);
                for (std::size_t k = c; k < cols_; ++k)
                    if (at(row, k)) at(r, k) = field_.sub(at(r, k), field_.mul(f, at(row, k)));
            }
            pivots.push_back(c);
            ++row;
        }
        return pivots;
    }

private:
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    FieldPrime field_;
    std::vector<std::uint32_t> data_;
};

inline std::size_t rank_mod_p(FpMatrix m) { return m.rref().size(); }

// Columns span ker(m); count = cols - rank.
inline FpMatrix kernel_basis(const FpMatrix& m) {
    FpMatrix r = m;
    auto pivots = r.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    FpMatrix basis(m.cols(), m.cols() - pivots.size(), m.field());
    const auto field = m.field();
    std::size_t out = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        basis.at(free, out) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            basis.at(pivots[i], out) = field.neg(r.at(i, free));
        ++out;
    }
    return basis;
}

} // namespace perspace
