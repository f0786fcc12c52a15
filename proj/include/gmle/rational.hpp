#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gmle {

// Exact coefficient arithmetic. Integer/Rational are arbitrary-precision
// and always kept in canonical form (reduced fraction, positive denominator).
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer int_pow(Integer base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer int_gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer int_lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

// Exact conversion of a binary double to a rational (doubles are dyadic).
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite input");
    Rational q(x);
    q.canonicalize();
    return q;
}

// Parses "3", "-7", "p/q", and decimal strings read verbatim: ".105409"
// becomes 105409/1000000, "-.00844503" becomes -844503/100000000.
// Scientific notation ("1.5e-3") shifts the implied power of ten.
inline Rational parse_rational(std::string_view s) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("parse_rational: cannot parse \"" + std::string(s) + "\"");
    };
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    s = s.substr(b, e - b);
    if (s.empty()) return fail();

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (num.empty() || den.empty()) return fail();
        try {
            return make_rational(Integer(num, 10), Integer(den, 10));
        } catch (const std::invalid_argument&) {
            throw;
        } catch (...) {
            return fail();
        }
    }

    bool negative = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        negative = (s[i] == '-');
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    long exponent = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot) return fail();
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == 'e' || c == 'E') {
            std::string exp_str(s.substr(i + 1));
            if (exp_str.empty()) return fail();
            size_t pos = 0;
            try {
                exponent = std::stol(exp_str, &pos);
            } catch (...) {
                return fail();
            }
            if (pos != exp_str.size()) return fail();
            break;
        } else {
            return fail();
        }
    }
    if (!seen_digit) return fail();
    Integer num(digits.empty() ? std::string("0") : digits, 10);
    if (negative) num = -num;
    long shift = exponent - frac_digits;
    if (shift >= 0) return Rational(num * int_pow(10, static_cast<unsigned long>(shift)));
    return make_rational(num, int_pow(10, static_cast<unsigned long>(-shift)));
}

// Renders as "p/q", or just "p" for integers.
inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace gmle
