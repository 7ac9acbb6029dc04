#pragma once

#include <gmpxx.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "dormant/errors.hpp"
#include "dormant/fp.hpp"

namespace dormant {

struct level_params {
    fp p = 2;
    unsigned m = 0;

    unsigned long pm() const {
        unsigned long v = 1;
        for (unsigned i = 0; i < m; ++i) v *= p;
        return v;
    }
    unsigned long q() const { return pm() * p; }

    bool operator<(const level_params& o) const {
        return p != o.p ? p < o.p : m < o.m;
    }
    bool operator==(const level_params& o) const { return p == o.p && m == o.m; }
};

// l = p^m * q_l + r_l with 0 <= r_l < p^m
inline std::pair<unsigned long, unsigned long> qr_decompose(unsigned long l,
                                                            const level_params& lv) {
    unsigned long pm = lv.pm();
    return {l / pm, l % pm};
}

namespace detail {

inline mpz_class factorial_z(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// reduce an exact rational mod p; the denominator must be prime to p
inline fp red_mod(const mpq_class& v, fp p, const char* where) {
    mpz_class den = v.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), p))
        throw integrality_violation(std::string(where) +
                                    ": denominator divisible by p");
    mpz_class num = v.get_num();
    unsigned long nm = mpz_fdiv_ui(num.get_mpz_t(), p);
    unsigned long dm = mpz_fdiv_ui(den.get_mpz_t(), p);
    return mulp(static_cast<fp>(nm), invp(static_cast<fp>(dm), p), p);
}

}  // namespace detail

// The three modified-binomial tables of a level, stored mod p on the range
// j = 0..2q.  brace{j,j'} is an exact integer; angle<j,j'> and the top
// coefficients are p-integral rationals (integrality can genuinely fail away
// from the p-part, e.g. <7,3> = 35/2 at (p,m) = (3,1)), so only their mod-p
// reductions are stored.
struct bracket_table {
    level_params lv;
    unsigned long q = 0, top = 0;
    std::vector<std::vector<fp>> brace_m, angle_m;       // [j][jp]
    std::vector<std::vector<std::vector<fp>>> atop_m;    // [j][jp][jpp - lo]

    fp brace(unsigned long j, unsigned long jp) const { return brace_m[j][jp]; }
    fp angle(unsigned long j, unsigned long jp) const { return angle_m[j][jp]; }

    static unsigned long atop_lo(unsigned long j, unsigned long jp) {
        return std::max(jp, j - jp);
    }
    fp atop(unsigned long j, unsigned long jp, unsigned long jpp) const {
        assert(jpp >= atop_lo(j, jp) && jpp <= j);
        return atop_m[j][jp][jpp - atop_lo(j, jp)];
    }

    // q_j! mod p with q_j = floor(j / p^m)
    fp qfact(unsigned long j) const {
        unsigned long qj = j / lv.pm();
        fp r = 1;
        for (unsigned long i = 2; i <= qj; ++i) r = mulp(r, static_cast<fp>(i % lv.p), lv.p);
        return r;
    }

    // q_j! * C(n, j) mod p for any integer n
    fp dcoef(long long n, unsigned long j) const {
        return mulp(qfact(j), gbinomp(n, j, lv.p), lv.p);
    }

    std::string canonical_text() const;
    std::string fingerprint16() const;
};

inline bracket_table build_table(const level_params& lv) {
    bracket_table T;
    T.lv = lv;
    T.q = lv.q();
    T.top = 2 * T.q;
    unsigned long pm = lv.pm();
    fp p = lv.p;
    auto qf = [&](unsigned long l) { return detail::factorial_z(l / pm); };

    T.brace_m.resize(T.top + 1);
    T.angle_m.resize(T.top + 1);
    T.atop_m.resize(T.top + 1);
    for (unsigned long j = 0; j <= T.top; ++j) {
        T.brace_m[j].resize(j + 1);
        T.angle_m[j].resize(j + 1);
        T.atop_m[j].resize(j + 1);
        for (unsigned long jp = 0; jp <= j; ++jp) {
            mpq_class b(qf(j), qf(jp) * qf(j - jp));
            b.canonicalize();
            if (b.get_den() != 1)
                throw integrality_violation("brace{" + std::to_string(j) + "," +
                                            std::to_string(jp) + "} is not an integer");
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), j, jp);
            mpq_class a = mpq_class(binom) / b;
            a.canonicalize();
            T.brace_m[j][jp] = static_cast<fp>(mpz_fdiv_ui(b.get_num().get_mpz_t(), p));
            T.angle_m[j][jp] = detail::red_mod(a, p, "angle");

            unsigned long lo = bracket_table::atop_lo(j, jp);
            T.atop_m[j][jp].resize(j - lo + 1);
            for (unsigned long jpp = lo; jpp <= j; ++jpp) {
                mpq_class t(detail::factorial_z(jpp),
                            detail::factorial_z(j - jpp) * detail::factorial_z(jpp - jp) *
                                detail::factorial_z(jpp + jp - j));
                t *= mpq_class(qf(jp) * qf(j - jp), qf(jpp));
                t.canonicalize();
                T.atop_m[j][jp][jpp - lo] = detail::red_mod(t, p, "angle_top");
            }
        }
    }
    return T;
}

inline std::string bracket_table::canonical_text() const {
    std::string out = "p " + std::to_string(lv.p) + " m " + std::to_string(lv.m) + "\n";
    for (unsigned long j = 0; j <= top; ++j)
        for (unsigned long jp = 0; jp <= j; ++jp)
            out += "B " + std::to_string(j) + " " + std::to_string(jp) + " " +
                   std::to_string(brace_m[j][jp]) + "\n";
    for (unsigned long j = 0; j <= top; ++j)
        for (unsigned long jp = 0; jp <= j; ++jp)
            out += "A " + std::to_string(j) + " " + std::to_string(jp) + " " +
                   std::to_string(angle_m[j][jp]) + "\n";
    for (unsigned long j = 0; j <= top; ++j)
        for (unsigned long jp = 0; jp <= j; ++jp)
            for (unsigned long jpp = atop_lo(j, jp); jpp <= j; ++jpp)
                out += "T " + std::to_string(j) + " " + std::to_string(jp) + " " +
                       std::to_string(jpp) + " " + std::to_string(atop(j, jp, jpp)) + "\n";
    return out;
}

inline std::string bracket_table::fingerprint16() const {
    std::string blob = canonical_text();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int mdlen = 0;
    EVP_Digest(blob.data(), blob.size(), md, &mdlen, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < 8; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

// process-wide table cache keyed by (p, m)
inline const bracket_table& tables(const level_params& lv) {
    static std::mutex mu;
    static std::map<level_params, std::unique_ptr<bracket_table>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(lv);
    if (it == cache.end())
        it = cache.emplace(lv, std::make_unique<bracket_table>(build_table(lv))).first;
    return *it->second;
}

}  // namespace dormant
