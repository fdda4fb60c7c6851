#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rgd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of a negative number");
    BigInt r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

// (x)_{(k)} = x (x-1) ... (x-k+1)
inline BigInt falling_factorial(long x, long k) {
    BigInt r = 1;
    for (long i = 0; i < k; ++i) r *= x - i;
    return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Uniform integer in [0, bound) for a positive big bound.
template <class Rng>
BigInt uniform_below(const BigInt& bound, Rng& rng) {
    if (bound <= 0) throw std::invalid_argument("uniform_below needs a positive bound");
    const std::size_t bits = boost::multiprecision::msb(bound) + 1;
    const std::size_t words = (bits + 63) / 64;
    const std::size_t top = bits - 64 * (words - 1);
    std::vector<std::uint64_t> buf(words);
    for (;;) {
        for (auto& w : buf) w = rng();
        if (top < 64) buf.back() &= (std::uint64_t{1} << top) - 1;
        BigInt x;
        // least significant word first
        boost::multiprecision::import_bits(x, buf.rbegin(), buf.rend(), 64, true);
        if (x < bound) return x;
    }
}

}  // namespace rgd
