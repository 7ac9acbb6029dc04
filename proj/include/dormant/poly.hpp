#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "dormant/fp.hpp"

namespace dormant {

// Dense polynomial over F_p in one variable t.  Invariant: no trailing zero
// coefficients (the zero polynomial has empty c).  Every value carries its
// modulus; binary operations require matching moduli.
struct poly {
    fp p = 0;
    std::vector<fp> c;  // c[i] = coefficient of t^i

    poly() = default;
    explicit poly(fp mod) : p(mod) {}
    poly(fp mod, std::vector<fp> coeffs) : p(mod), c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    fp coeff(std::size_t e) const { return e < c.size() ? c[e] : 0; }

    fp lead() const {
        assert(!c.empty());
        return c.back();
    }

    // lowest nonzero exponent; only meaningful for nonzero polynomials
    std::size_t ord0() const {
        assert(!c.empty());
        std::size_t i = 0;
        while (c[i] == 0) ++i;
        return i;
    }

    bool operator==(const poly& o) const { return p == o.p && c == o.c; }
    bool operator!=(const poly& o) const { return !(*this == o); }
};

inline poly poly_const(fp p, fp v) {
    poly r(p);
    v %= p;
    if (v) r.c = {v};
    return r;
}

inline poly poly_monomial(fp p, fp v, std::size_t e) {
    poly r(p);
    v %= p;
    if (v) {
        r.c.assign(e + 1, 0);
        r.c[e] = v;
    }
    return r;
}

inline poly operator+(const poly& a, const poly& b) {
    assert(a.p == b.p);
    poly r(a.p);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = addp(a.coeff(i), b.coeff(i), a.p);
    r.trim();
    return r;
}

inline poly operator-(const poly& a, const poly& b) {
    assert(a.p == b.p);
    poly r(a.p);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = subp(a.coeff(i), b.coeff(i), a.p);
    r.trim();
    return r;
}

inline poly operator-(const poly& a) {
    poly r = a;
    for (auto& x : r.c) x = negp(x, a.p);
    return r;
}

inline poly operator*(const poly& a, const poly& b) {
    assert(a.p == b.p);
    poly r(a.p);
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == 0) continue;
            r.c[i + j] = addp(r.c[i + j], mulp(a.c[i], b.c[j], a.p), a.p);
        }
    }
    r.trim();
    return r;
}

inline poly operator*(fp s, const poly& a) {
    poly r(a.p);
    s %= a.p;
    if (s == 0) return r;
    r.c = a.c;
    for (auto& x : r.c) x = mulp(x, s, a.p);
    return r;
}

inline poly poly_pow(const poly& a, std::size_t e) {
    poly r = poly_const(a.p, 1);
    poly base = a;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// multiply by t^k
inline poly shift_up(const poly& a, std::size_t k) {
    if (a.is_zero() || k == 0) return a;
    poly r(a.p);
    r.c.assign(a.c.size() + k, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i + k] = a.c[i];
    return r;
}

// substitute t -> t^k
inline poly stretch(const poly& a, std::size_t k) {
    assert(k >= 1);
    if (a.is_zero() || k == 1) return a;
    poly r(a.p);
    r.c.assign((a.c.size() - 1) * k + 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i * k] = a.c[i];
    return r;
}

// euclidean division: a = q*b + r with deg r < deg b
inline void divmod(const poly& a, const poly& b, poly& q, poly& r) {
    assert(a.p == b.p && !b.is_zero());
    q = poly(a.p);
    r = a;
    int db = b.degree();
    if (r.degree() < db) return;
    q.c.assign(r.c.size() - b.c.size() + 1, 0);
    fp linv = invp(b.lead(), a.p);
    for (int k = r.degree(); k >= db; --k) {
        fp cv = r.c[k];
        if (cv == 0) continue;
        fp f = mulp(cv, linv, a.p);
        std::size_t off = static_cast<std::size_t>(k - db);
        q.c[off] = f;
        for (std::size_t i = 0; i < b.c.size(); ++i)
            r.c[off + i] = subp(r.c[off + i], mulp(f, b.c[i], a.p), a.p);
    }
    q.trim();
    r.trim();
}

inline poly exact_div(const poly& a, const poly& b) {
    poly q(a.p), r(a.p);
    divmod(a, b, q, r);
    assert(r.is_zero());
    return q;
}

inline poly make_monic(const poly& a) {
    if (a.is_zero() || a.lead() == 1) return a;
    return invp(a.lead(), a.p) * a;
}

inline poly poly_gcd(poly a, poly b) {
    while (!b.is_zero()) {
        poly q(a.p), r(a.p);
        divmod(a, b, q, r);
        a = b;
        b = r;
    }
    return make_monic(a);
}

}  // namespace dormant
