#pragma once

#include "perspace/rational.hpp"

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace perspace {

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A point of R^n with exact rational coordinates, ordered componentwise.
class Grade {
public:
    Grade() = default;
    explicit Grade(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    Grade(std::initializer_list<Rational> coords) : coords_(coords) {}

    static Grade constant(std::size_t n, const Rational& value) {
        return Grade(std::vector<Rational>(n, value));
    }

    std::size_t size() const { return coords_.size(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    Rational& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Rational>& coords() const { return coords_; }

    auto begin() const { return coords_.begin(); }
    auto end() const { return coords_.end(); }

    friend bool operator==(const Grade& a, const Grade& b) {
        return a.coords_ == b.coords_;
    }

    // Lexicographic; only used for canonical ordering and map keys.
    friend bool operator<(const Grade& a, const Grade& b) {
        return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(),
                                            b.coords_.begin(), b.coords_.end());
    }

    friend Grade operator+(const Grade& a, const Grade& b) {
        check_same_size(a, b);
        Grade r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r.coords_[i] += b.coords_[i];
        return r;
    }

    friend Grade operator-(const Grade& a, const Grade& b) {
        check_same_size(a, b);
        Grade r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r.coords_[i] -= b.coords_[i];
        return r;
    }

    friend Grade operator*(const Rational& s, const Grade& a) {
        Grade r = a;
        for (auto& c : r.coords_) c *= s;
        return r;
    }

    static void check_same_size(const Grade& a, const Grade& b) {
        if (a.size() != b.size())
            throw DimensionMismatch("grade length mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    }

private:
    std::vector<Rational> coords_;
};

// u ⪯ v
inline bool weakly_below(const Grade& u, const Grade& v) {
    Grade::check_same_size(u, v);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > v[i]) return false;
    return true;
}

// u ≺ v (strict on every axis)
inline bool strictly_below(const Grade& u, const Grade& v) {
    Grade::check_same_size(u, v);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!(u[i] < v[i])) return false;
    return true;
}

inline bool strictly_positive(const Grade& e) {
    return std::all_of(e.begin(), e.end(), [](const Rational& c) { return c > 0; });
}

inline Grade componentwise_max(const Grade& a, const Grade& b) {
    Grade::check_same_size(a, b);
    Grade r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (b[i] > r[i]) r[i] = b[i];
    return r;
}

inline Rational sup_norm(const Grade& g) {
    Rational m = 0;
    for (const auto& c : g) m = std::max(m, rational_abs(c));
    return m;
}

inline Rational min_gap(const Grade& u, const Grade& v) {
    Grade::check_same_size(u, v);
    Rational m = v[0] - u[0];
    for (std::size_t i = 1; i < u.size(); ++i) m = std::min(m, Rational(v[i] - u[i]));
    return m;
}

inline std::string to_string(const Grade& g) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) out << ',';
        out << to_string(g[i]);
    }
    out << ')';
    return out.str();
}

// Comma- or whitespace-separated list of rationals, e.g. "0,1/2".
inline Grade parse_grade(std::string_view text) {
    std::vector<Rational> coords;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            coords.push_back(parse_rational(token));
            token.clear();
        }
    };
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\t' || c == '(' || c == ')') flush();
        else token.push_back(c);
    }
    flush();
    if (coords.empty()) throw ParseError("empty grade '" + std::string(text) + "'");
    return Grade(std::move(coords));
}

} // namespace perspace
