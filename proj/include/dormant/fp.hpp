#pragma once

#include <cassert>
#include <cstdint>

namespace dormant {

// Prime-field scalars are plain uint32_t values in [0, p); the modulus is
// passed explicitly.  All moduli in this library are small odd-or-2 primes.
using fp = std::uint32_t;

inline fp addp(fp a, fp b, fp p) {
    fp s = a + b;
    return s >= p ? s - p : s;
}

inline fp subp(fp a, fp b, fp p) { return a >= b ? a - b : a + p - b; }

inline fp negp(fp a, fp p) { return a == 0 ? 0 : p - a; }

inline fp mulp(fp a, fp b, fp p) {
    return static_cast<fp>(static_cast<std::uint64_t>(a) * b % p);
}

inline fp powp(fp a, std::uint64_t e, fp p) {
    fp r = 1 % p;
    fp base = a % p;
    while (e) {
        if (e & 1) r = mulp(r, base, p);
        base = mulp(base, base, p);
        e >>= 1;
    }
    return r;
}

inline fp invp(fp a, fp p) {
    assert(a % p != 0);
    return powp(a, p - 2, p);
}

// reduce a signed integer
inline fp redp(long long a, fp p) {
    long long r = a % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<fp>(r);
}

// binomial coefficient C(n, k) mod p for n >= 0 via the base-p digit product
inline fp binomp(std::uint64_t n, std::uint64_t k, fp p) {
    fp out = 1;
    while (k) {
        std::uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        fp num = 1, den = 1;
        for (std::uint64_t i = 0; i < kd; ++i) {
            num = mulp(num, static_cast<fp>((nd - i) % p), p);
            den = mulp(den, static_cast<fp>(i + 1), p);
        }
        out = mulp(out, mulp(num, invp(den, p), p), p);
        n /= p;
        k /= p;
    }
    return out;
}

// C(n, k) mod p for arbitrary integer n (negative upper index allowed)
inline fp gbinomp(long long n, std::uint64_t k, fp p) {
    if (n >= 0) return binomp(static_cast<std::uint64_t>(n), k, p);
    fp v = binomp(static_cast<std::uint64_t>(-n) + k - 1, k, p);
    return (k & 1) ? negp(v, p) : v;
}

}  // namespace dormant
