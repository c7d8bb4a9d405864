#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "pbwdeg/errors.hpp"

namespace pbwdeg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_prime(long long p) {
    if (p < 2)
        return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

inline void require_prime(long long p) {
    if (!is_prime(p))
        throw NotPrime(p);
}

/// Validated prime as a modulus for 32-bit residue arithmetic.
inline std::uint32_t prime_modulus(long long p) {
    require_prime(p);
    if (p >= (1LL << 31))
        throw InvalidArgument("prime " + std::to_string(p) + " is too large");
    return static_cast<std::uint32_t>(p);
}

/// Nonnegative residue of x modulo p.
inline std::uint32_t mod_p(const Integer &x, std::uint32_t p) {
    Integer r = x % p;
    if (r < 0)
        r += p;
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mod_p(long long x, std::uint32_t p) {
    long long r = x % static_cast<long long>(p);
    if (r < 0)
        r += p;
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b,
                             std::uint32_t p) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b,
                             std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b,
                             std::uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e,
                             std::uint32_t p) {
    std::uint64_t r = 1 % p, b = a % p;
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

/// Inverse of a nonzero residue modulo a prime.
inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    return pow_mod(a, p - 2, p);
}

inline Integer binomial(long long n, long long k) {
    if (k < 0 || k > n)
        return 0;
    Integer r = 1;
    for (long long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

inline Integer factorial(long long n) {
    Integer r = 1;
    for (long long i = 2; i <= n; ++i)
        r *= i;
    return r;
}

/// Binomial coefficient reduced mod p (Lucas).
inline std::uint32_t binomial_mod(long long n, long long k, std::uint32_t p) {
    if (k < 0 || k > n)
        return 0;
    std::uint32_t r = 1;
    while (n > 0 || k > 0) {
        long long ni = n % p, ki = k % p;
        if (ki > ni)
            return 0;
        r = mul_mod(r, mod_p(binomial(ni, ki), p), p);
        n /= p;
        k /= p;
    }
    return r;
}

/// Extended gcd: returns g = gcd(a,b) >= 0 with s*a + t*b = g.
inline Integer gcdext(const Integer &a, const Integer &b, Integer &s,
                      Integer &t) {
    Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Integer q = r0 / r1;
        Integer tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    s = s0;
    t = t0;
    return r0;
}

/// Floor division remainder in [0, |m|).
inline Integer floor_mod(const Integer &a, const Integer &m) {
    Integer r = a % m;
    if (r < 0)
        r += (m < 0 ? -m : m);
    return r;
}

inline Integer floor_div(const Integer &a, const Integer &m) {
    return (a - floor_mod(a, m)) / m;
}

} // namespace pbwdeg
