#pragma once

#include <cassert>
#include <charconv>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "dormant/errors.hpp"
#include "dormant/poly.hpp"

namespace dormant {

// Rational function over F_p in canonical form: den monic, gcd(num, den) = 1,
// and den = 1 when num = 0.  Canonical form makes operator== structural.
struct ratfunc {
    poly num, den;

    ratfunc() = default;
    explicit ratfunc(fp p) : num(p), den(poly_const(p, 1)) {}
    ratfunc(poly n, poly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    static ratfunc from_poly(poly n) {
        ratfunc r;
        r.den = poly_const(n.p, 1);
        r.num = std::move(n);
        return r;
    }

    static ratfunc constant(fp p, fp v) { return from_poly(poly_const(p, v)); }
    static ratfunc monomial(fp p, fp v, std::size_t e) {
        return from_poly(poly_monomial(p, v, e));
    }

    fp p() const { return den.p; }
    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.degree() == 0 && num.c[0] == 1 && den.degree() == 0; }

    void normalize() {
        assert(!den.is_zero());
        if (num.is_zero()) {
            den = poly_const(den.p, 1);
            return;
        }
        poly g = poly_gcd(num, den);
        if (g.degree() > 0) {
            num = exact_div(num, g);
            den = exact_div(den, g);
        }
        if (den.lead() != 1) {
            fp inv = invp(den.lead(), den.p);
            num = inv * num;
            den = inv * den;
        }
    }

    bool operator==(const ratfunc& o) const { return num == o.num && den == o.den; }
    bool operator!=(const ratfunc& o) const { return !(*this == o); }
};

inline ratfunc operator+(const ratfunc& a, const ratfunc& b) {
    return ratfunc(a.num * b.den + b.num * a.den, a.den * b.den);
}

inline ratfunc operator-(const ratfunc& a, const ratfunc& b) {
    return ratfunc(a.num * b.den - b.num * a.den, a.den * b.den);
}

inline ratfunc operator-(const ratfunc& a) {
    ratfunc r = a;
    r.num = -r.num;
    return r;
}

inline ratfunc operator*(const ratfunc& a, const ratfunc& b) {
    if (a.is_zero() || b.is_zero()) return ratfunc(a.p());
    return ratfunc(a.num * b.num, a.den * b.den);
}

inline ratfunc operator*(fp s, const ratfunc& a) {
    ratfunc r = a;
    r.num = s * r.num;
    if (r.num.is_zero()) r.den = poly_const(a.p(), 1);
    return r;
}

inline ratfunc inverse(const ratfunc& a) {
    assert(!a.is_zero());
    return ratfunc(a.den, a.num);
}

inline ratfunc operator/(const ratfunc& a, const ratfunc& b) {
    assert(!b.is_zero());
    if (a.is_zero()) return ratfunc(a.p());
    return ratfunc(a.num * b.den, a.den * b.num);
}

// t-adic valuation; a large sentinel for 0
constexpr long ord0_infinity = std::numeric_limits<long>::max() / 2;

inline long ord0(const ratfunc& a) {
    if (a.is_zero()) return ord0_infinity;
    return static_cast<long>(a.num.ord0()) - static_cast<long>(a.den.ord0());
}

// evaluation at t = 0; requires ord0 >= 0
inline fp at0(const ratfunc& a) {
    if (a.is_zero()) return 0;
    long o = ord0(a);
    if (o < 0) throw not_regular_at_zero("entry has a pole at t = 0");
    if (o > 0) return 0;
    std::size_t v = a.num.ord0();
    assert(a.den.ord0() == v);
    return mulp(a.num.c[v], invp(a.den.c[v], a.p()), a.p());
}

// substitute t -> t^k
inline ratfunc substitute_power(const ratfunc& a, std::size_t k) {
    if (a.is_zero()) return a;
    return ratfunc(stretch(a.num, k), stretch(a.den, k));
}

// ---- canonical string form ----------------------------------------------
//
//   ratfunc := poly | poly "/" poly
//   poly    := "0" | term ("+" term)*          terms in ascending exponent
//   term    := coeff | coeff "*" tpow | tpow   coeff omitted iff it is 1
//   tpow    := "t" | "t^" exp                  "t" alone means exponent 1
//
// Coefficients are canonical residues 1..p-1; the denominator is omitted
// iff it equals 1.  The printer emits exactly this form; the parser accepts
// exactly this grammar (no whitespace).

inline std::string poly_to_string(const poly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t e = 0; e < a.c.size(); ++e) {
        if (a.c[e] == 0) continue;
        if (!first) out += '+';
        first = false;
        if (e == 0) {
            out += std::to_string(a.c[e]);
        } else {
            if (a.c[e] != 1) {
                out += std::to_string(a.c[e]);
                out += '*';
            }
            out += 't';
            if (e > 1) {
                out += '^';
                out += std::to_string(e);
            }
        }
    }
    return out;
}

inline std::string to_string(const ratfunc& a) {
    std::string out = poly_to_string(a.num);
    if (a.den.degree() != 0 || a.den.c[0] != 1) {
        out += '/';
        out += poly_to_string(a.den);
    }
    return out;
}

namespace detail {

inline unsigned long parse_uint(const std::string& s, std::size_t& i) {
    std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == start) throw std::invalid_argument("expected integer in '" + s + "'");
    unsigned long v = 0;
    auto res = std::from_chars(s.data() + start, s.data() + i, v);
    if (res.ec != std::errc()) throw std::invalid_argument("bad integer in '" + s + "'");
    return v;
}

inline poly parse_poly(fp p, const std::string& s, std::size_t& i) {
    poly out(p);
    if (i < s.size() && s[i] == '0') {
        ++i;
        return out;
    }
    while (true) {
        unsigned long coeff = 1;
        bool have_coeff = false;
        if (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            coeff = parse_uint(s, i);
            have_coeff = true;
            if (i < s.size() && s[i] == '*') ++i;
        }
        unsigned long e = 0;
        if (i < s.size() && s[i] == 't') {
            ++i;
            e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                e = parse_uint(s, i);
            }
        } else if (!have_coeff) {
            throw std::invalid_argument("expected term at position " +
                                        std::to_string(i) + " in '" + s + "'");
        }
        fp cv = static_cast<fp>(coeff % p);
        if (cv) {
            if (out.c.size() <= e) out.c.resize(e + 1, 0);
            out.c[e] = addp(out.c[e], cv, p);
        }
        if (i < s.size() && s[i] == '+') {
            ++i;
            continue;
        }
        break;
    }
    out.trim();
    return out;
}

}  // namespace detail

inline ratfunc parse_ratfunc(fp p, const std::string& s) {
    std::size_t i = 0;
    poly num = detail::parse_poly(p, s, i);
    poly den = poly_const(p, 1);
    if (i < s.size() && s[i] == '/') {
        ++i;
        den = detail::parse_poly(p, s, i);
        if (den.is_zero()) throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    if (i != s.size())
        throw std::invalid_argument("trailing characters at position " +
                                    std::to_string(i) + " in '" + s + "'");
    return ratfunc(std::move(num), std::move(den));
}

}  // namespace dormant
