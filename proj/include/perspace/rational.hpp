#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace perspace {

using Rational = mpq_class;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Accepts "-3", "0.25", "7/4", "+1.5", "-2/6". The result is canonicalized.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&](const char* why) {
        throw ParseError("invalid rational '" + std::string(text) + "': " + why);
    };
    if (text.empty()) fail("empty");

    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        pos = 1;
    }
    std::string_view body = text.substr(pos);
    if (body.empty()) fail("missing digits");

    auto all_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        std::string_view num = body.substr(0, slash);
        std::string_view den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) fail("malformed fraction");
        mpz_class d(std::string(den), 10);
        if (d == 0) fail("zero denominator");
        value = Rational(mpz_class(std::string(num), 10), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = body.substr(dot + 1);
        if (whole.empty() && frac.empty()) fail("malformed decimal");
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
            fail("malformed decimal");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        std::string digits = std::string(whole) + std::string(frac);
        value = Rational(mpz_class(digits, 10), scale);
    } else {
        if (!all_digits(body)) fail("malformed integer");
        value = Rational(mpz_class(std::string(body), 10));
    }
    value.canonicalize();
    if (negative) value = -value;
    return value;
}

// "7/4", "-3", "0".
inline std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace perspace
