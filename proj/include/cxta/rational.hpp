#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "cxta/errors.hpp"

namespace cxta {

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator (gmpxx canonicalizes after every arithmetic operation).
using Rational = mpq_class;

/// n/d in lowest terms. (mpq_class's two-argument constructor does not reduce.)
inline Rational frac(long n, long d) {
    if (d == 0) throw Error("zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// Parses "p", "p/q" or "-p/q". Whitespace around the number is ignored.
inline Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational");

    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };

    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!valid_int(num, true) || (slash != std::string_view::npos && !valid_int(den, false)))
        throw ParseError("malformed rational '" + std::string(text) + "'");

    std::string n(num);
    if (!n.empty() && n.front() == '+') n.erase(0, 1);
    Rational r;
    r.get_num() = mpz_class(n, 10);
    r.get_den() = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den), 10);
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline long long to_ll(const mpz_class& z) {
    if (!z.fits_slong_p()) throw Error("integer does not fit in 64 bits: " + z.get_str());
    return z.get_si();
}

}  // namespace cxta
