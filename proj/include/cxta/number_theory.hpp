#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "cxta/errors.hpp"

namespace cxta {

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const auto r = a % m;
    return r < 0 ? r + m : r;
}

/// Distinct prime factors in increasing order.
inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::int64_t euler_phi(std::int64_t n) {
    if (n < 1) throw Error("euler_phi: argument must be positive");
    std::int64_t result = n;
    for (auto p : prime_factors(n)) result = result / p * (p - 1);
    return result;
}

/// Product of the distinct primes dividing n.
inline std::int64_t radical(std::int64_t n) {
    std::int64_t r = 1;
    for (auto p : prime_factors(n)) r *= p;
    return r;
}

/// Möbius function.
inline int mobius(std::int64_t n) {
    int sign = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Residues 1 <= m < L (m = 1 when L = 1) coprime to L, increasing.
inline std::vector<std::int64_t> units_mod(std::int64_t level) {
    std::vector<std::int64_t> out;
    if (level == 1) return {1};
    out.reserve(static_cast<std::size_t>(euler_phi(level)));
    for (std::int64_t m = 1; m < level; ++m)
        if (std::gcd(m, level) == 1) out.push_back(m);
    return out;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline std::int64_t next_prime(std::int64_t n) {
    auto p = n + 1;
    while (!is_prime(p)) ++p;
    return p;
}

inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    const auto g = std::gcd(a, b);
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a / g, b, &out)) throw Error("level overflow in lcm");
    return out;
}

/// Multiplicative inverse of a modulo m (gcd(a, m) must be 1).
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, new_t = 1, r = m, new_r = mod_floor(a, m);
    while (new_r != 0) {
        const auto q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw Error("inverse_mod: not invertible");
    return mod_floor(t, m);
}

}  // namespace cxta
