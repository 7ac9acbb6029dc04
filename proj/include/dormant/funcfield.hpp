#pragma once

#include <cassert>
#include <vector>

#include "dormant/brackets.hpp"
#include "dormant/ratfunc.hpp"

namespace dormant {

// action of the level-m operator with index j on a polynomial:
// monomial rule t^n -> q_j! C(n,j) t^(n-j), extended additively;
// the log variant keeps the exponent (multiplies by t^j afterwards)
inline poly derive_poly(const poly& f, unsigned long j, const bracket_table& T,
                        bool log) {
    poly out(f.p);
    if (f.is_zero()) return out;
    out.c.assign(f.c.size(), 0);
    for (std::size_t n = 0; n < f.c.size(); ++n) {
        if (f.c[n] == 0) continue;
        fp d = mulp(T.dcoef(static_cast<long long>(n), j), f.c[n], f.p);
        if (d == 0) continue;
        if (log)
            out.c[n] = addp(out.c[n], d, f.p);
        else if (n >= j)
            out.c[n - j] = addp(out.c[n - j], d, f.p);
        // non-log with n < j: C(n, j) = 0, unreachable
    }
    out.trim();
    return out;
}

// extended derivation on K = F_p(t): K^(p^{m+1})-linear, so for f = N/D the
// value is derive(N * D^(q-1)) / D^q with D^q in the invariant subfield
inline ratfunc derive(const ratfunc& f, unsigned long j, const bracket_table& T,
                      bool log) {
    if (j == 0) return f;
    if (f.is_zero()) return f;
    unsigned long q = T.q;
    if (f.den.degree() == 0) {
        poly d = derive_poly(f.num, j, T, false);
        ratfunc out = ratfunc::from_poly(std::move(d));
        if (log && !out.is_zero()) out.num = shift_up(out.num, j);
        return out;
    }
    poly P = f.num * poly_pow(f.den, q - 1);
    poly dP = derive_poly(P, j, T, false);
    ratfunc out(std::move(dP), poly_pow(f.den, q));
    if (log && !out.is_zero()) out = ratfunc::monomial(f.p(), 1, j) * out;
    return out;
}

// f = sum_{i < p^s} g_i(t^{p^s}) t^i; returns the components g_i as rational
// functions in the contracted variable (u := t^{p^s}, same representation)
inline std::vector<ratfunc> frobenius_split(const ratfunc& f, unsigned s, fp p) {
    unsigned long ps = 1;
    for (unsigned i = 0; i < s; ++i) ps *= p;
    std::vector<ratfunc> parts(ps, ratfunc(p));
    if (f.is_zero()) return parts;
    // D(t)^{ps} = D(t^{ps}) over F_p, so f = (N * D^{ps-1}) / D(t^{ps})
    poly P = f.num * poly_pow(f.den, ps - 1);
    std::vector<poly> nums(ps, poly(p));
    for (std::size_t e = 0; e < P.c.size(); ++e) {
        if (P.c[e] == 0) continue;
        std::size_t i = e % ps, k = e / ps;
        poly& t = nums[i];
        if (t.c.size() <= k) t.c.resize(k + 1, 0);
        t.c[k] = P.c[e];
    }
    for (unsigned long i = 0; i < ps; ++i) {
        nums[i].trim();
        parts[i] = ratfunc(std::move(nums[i]), f.den);
    }
    return parts;
}

// inverse of frobenius_split: sum_i parts[i](t^{p^s}) * t^i
inline ratfunc frobenius_recombine(const std::vector<ratfunc>& parts, unsigned s, fp p) {
    unsigned long ps = 1;
    for (unsigned i = 0; i < s; ++i) ps *= p;
    assert(parts.size() == ps);
    ratfunc out(p);
    for (unsigned long i = 0; i < ps; ++i) {
        if (parts[i].is_zero()) continue;
        ratfunc g = substitute_power(parts[i], ps);
        out = out + ratfunc::monomial(p, 1, i) * g;
    }
    return out;
}

}  // namespace dormant
