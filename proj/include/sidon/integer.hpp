#pragma once

// Exact integer and rational scalars plus the small number-theory helpers
// used across the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "sidon/error.hpp"

namespace sidon {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline BigInt floor_mod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(floor_mod(
        static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m), m));
}

inline bool fits_int64(const BigInt& x) {
    return x >= std::numeric_limits<std::int64_t>::min() &&
           x <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const BigInt& x) {
    require(fits_int64(x), ErrorCode::InvalidArgument, "integer does not fit in 64 bits");
    return x.convert_to<std::int64_t>();
}

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigInt ipow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

/// Largest s >= 0 with s^k <= x, for x >= 0 and k >= 1.
inline BigInt nth_root_floor(const BigInt& x, unsigned k) {
    require(x >= 0 && k >= 1, ErrorCode::InvalidArgument, "nth_root_floor needs x >= 0, k >= 1");
    if (k == 1 || x < 2) return x;
    BigInt lo = 0;
    BigInt hi = 1;
    while (ipow(hi, k) <= x) hi <<= 1;
    // invariant: lo^k <= x < hi^k
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) >> 1;
        if (ipow(mid, k) <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Prime factorization by trial division, as (prime, exponent) pairs ascending.
inline std::vector<std::pair<std::int64_t, unsigned>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, unsigned>> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

struct PrimePower {
    std::int64_t prime;
    unsigned exponent;
};

inline std::optional<PrimePower> as_prime_power(std::int64_t q) {
    if (q < 2) return std::nullopt;
    auto f = factorize(q);
    if (f.size() != 1) return std::nullopt;
    return PrimePower{f[0].first, f[0].second};
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

inline std::int64_t modular_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = floor_mod(a, m);
    while (a1 != 0) {
        std::int64_t q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    require(g == 1, ErrorCode::InvalidArgument, "element is not invertible modulo m");
    return floor_mod(x, m);
}

} // namespace sidon
