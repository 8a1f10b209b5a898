#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "error.hpp"

namespace pact {

/** Exact rational number used for every value in this library.
 *
 * All comparisons and all arithmetic are exact; decimal output exists only
 * as a rendering with a declared precision, never as an internal state.
 */
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// cpp_int's string constructor follows C++ literal rules, where a leading
// zero means octal; trim to decimal digits first.
inline Integer digits_to_integer(std::string_view s) {
    size_t nz = s.find_first_not_of('0');
    if (nz == std::string_view::npos) return Integer(0);
    return Integer{std::string(s.substr(nz))};
}

} // namespace detail

inline Integer pow10(unsigned k) {
    Integer p = 1;
    while (k--) p *= 10;
    return p;
}

/// Exact integer power. Negative exponents invert; 0^negative throws.
inline Rational rational_pow(const Rational& base, long exp) {
    if (exp < 0) {
        if (base == 0) throw BadParams("rational_pow: zero base with negative exponent");
        return rational_pow(Rational(denominator(base), numerator(base)), -exp);
    }
    Rational acc = 1, b = base;
    unsigned long e = static_cast<unsigned long>(exp);
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

/** Parse "p/q", a plain integer, or a decimal literal ("1.25", "-0.5", ".5")
 * into an exact Rational. Decimals convert exactly (1.1 -> 11/10).
 * Throws ParseError on anything else, including q == 0.
 */
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw ParseError("not a rational: '" + std::string(text) + "'");
    };
    size_t b = text.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return fail();
    size_t e = text.find_last_not_of(" \t\r\n");
    std::string_view s = text.substr(b, e - b + 1);

    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) return fail();

    if (size_t slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den)) return fail();
        Integer n = detail::digits_to_integer(num), d = detail::digits_to_integer(den);
        if (d == 0) return fail();
        Rational q(n, d);
        return neg ? Rational(-q) : q;
    }
    if (size_t dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) return fail();
        if (!ip.empty() && !detail::all_digits(ip)) return fail();
        if (!fp.empty() && !detail::all_digits(fp)) return fail();
        Integer n = ip.empty() ? Integer(0) : detail::digits_to_integer(ip);
        Integer scale = pow10(static_cast<unsigned>(fp.size()));
        n *= scale;
        if (!fp.empty()) n += detail::digits_to_integer(fp);
        Rational q(n, scale);
        return neg ? Rational(-q) : q;
    }
    if (!detail::all_digits(s)) return fail();
    Rational q{detail::digits_to_integer(s)};
    return neg ? Rational(-q) : q;
}

/// Exact rendering: "p/q", or just "p" when the denominator is one.
inline std::string to_string(const Rational& q) { return q.str(); }

/** Fixed-point decimal rendering with `precision` fractional digits,
 * rounding half away from zero. Lossy by design; pair it with to_string()
 * wherever the exact value matters.
 */
inline std::string to_decimal(const Rational& q, unsigned precision = 6) {
    Integer num = numerator(q), den = denominator(q);
    bool neg = num < 0;
    if (neg) num = -num;
    Integer scale = pow10(precision);
    Integer scaled = num * scale;
    Integer quot = scaled / den;
    if ((scaled % den) * 2 >= den) ++quot;
    std::string out = (neg && quot != 0) ? "-" : "";
    out += Integer(quot / scale).str();
    if (precision > 0) {
        std::string f = Integer(quot % scale).str();
        out += "." + std::string(precision - f.size(), '0') + f;
    }
    return out;
}

} // namespace pact
