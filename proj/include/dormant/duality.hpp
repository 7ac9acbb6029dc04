#pragma once

#include <cassert>
#include <cstddef>
#include <tuple>
#include <vector>

#include "dormant/cyclic.hpp"
#include "dormant/diffmodule.hpp"

namespace dormant {

inline rmatrix nu_of(const diffmodule& M, const rvector& v) {
    if (!M.is_dormant()) throw not_dormant("nu is defined on dormant modules only");
    return nu_matrix(M, v);
}

// kernel basis of an n x q matrix, normalized so every column is polynomial,
// nonvanishing at t = 0, and the column span stays saturated at the origin
inline std::vector<rvector> saturate_kernel(const level_params& lv, const rmatrix& NU) {
    std::vector<rvector> cols = kernel_basis(NU);
    if (cols.empty()) return cols;
    std::size_t len = cols[0].size();

    auto normal = [&](rvector col) {
        poly den = poly_const(lv.p, 1);
        for (const ratfunc& x : col)
            if (!x.is_zero()) den = den * x.den;
        ratfunc d = ratfunc::from_poly(den);
        for (ratfunc& x : col) {
            x = x * d;
            assert(x.den.degree() == 0);
        }
        long v = ord0_infinity;
        for (const ratfunc& x : col)
            if (!x.is_zero()) v = std::min(v, ord0(x));
        ratfunc tv = ratfunc::monomial(lv.p, 1, static_cast<unsigned long>(v));
        for (ratfunc& x : col) x = x / tv;
        return col;
    };

    for (rvector& c : cols) c = normal(std::move(c));
    for (;;) {
        std::vector<fpvec> red(len, fpvec(cols.size(), 0));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < len; ++r) red[r][c] = at0(cols[c][r]);
        std::vector<fpvec> combos = fp_kernel(red, lv.p);
        if (combos.empty()) break;
        const fpvec& w = combos[0];
        rvector newcol(len, ratfunc(lv.p));
        for (std::size_t r = 0; r < len; ++r)
            for (std::size_t c = 0; c < cols.size(); ++c)
                newcol[r] = newcol[r] + ratfunc::constant(lv.p, w[c]) * cols[c][r];
        ratfunc tt = ratfunc::monomial(lv.p, 1, 1);
        for (ratfunc& x : newcol) {
            assert(x.is_zero() || ord0(x) >= 1);
            x = x / tt;
        }
        std::size_t idx = 0;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (w[c] != 0) idx = c;
        cols[idx] = normal(std::move(newcol));
    }
    return cols;
}

// submodule structure on a nabla-invariant column span, plus the q x k
// coordinate matrix of the chosen basis
inline std::pair<diffmodule, rmatrix> restrict_to_kernel(const diffmodule& P,
                                                         const std::vector<rvector>& cols) {
    const level_params& lv = P.lv;
    std::size_t k = cols.size();
    rmatrix Kb = from_columns(cols, lv.p);
    std::vector<rmatrix> mats;
    for (unsigned long j = 0; j <= lv.q(); ++j) {
        rmatrix X(k, k, lv.p);
        for (std::size_t c = 0; c < k; ++c) {
            auto x = solve(Kb, P.apply(j, cols[c]));
            if (!x) throw relation_failure("kernel span is not operator-invariant");
            for (std::size_t r = 0; r < k; ++r) X.at(r, c) = (*x)[r];
        }
        mats.push_back(std::move(X));
    }
    return {make_module(lv, P.log, std::move(mats), false), Kb};
}

struct pinned_dual {
    diffmodule M;
    rvector v;
    rmatrix Kb;
};

inline pinned_dual dualize_pinned(const diffmodule& M, const rvector& v) {
    const level_params& lv = M.lv;
    std::size_t n = M.n;
    unsigned long q = lv.q();
    if (!(0 < n && n < q))
        throw rank_out_of_range("pinned dual needs 0 < rank < p^(m+1), got rank " +
                                std::to_string(n));
    diffmodule P = p_module(lv, M.log);
    rmatrix NU = nu_of(M, v);
    if (rank_of(NU) != n) throw relation_failure("pinning vector is not generating");
    std::vector<rvector> cols = saturate_kernel(lv, NU);
    assert(cols.size() == q - n);
    auto [Ker, Kb] = restrict_to_kernel(P, cols);
    diffmodule Mdual = dual(Ker);
    rvector vdual(q - n, ratfunc(lv.p));
    for (std::size_t c = 0; c < q - n; ++c) vdual[c] = Kb.at(q - 1, c);
    return {std::move(Mdual), std::move(vdual), std::move(Kb)};
}

struct double_dual_result {
    rmatrix Xi;
    diffmodule M1;
    rvector v1;
    diffmodule M2;
    rvector v2;
};

inline double_dual_result double_dual_witness(const diffmodule& M, const rvector& v) {
    const level_params& lv = M.lv;
    std::size_t n = M.n;
    unsigned long q = lv.q();
    pinned_dual d1 = dualize_pinned(M, v);
    pinned_dual d2 = dualize_pinned(d1.M, d1.v);
    assert(d2.M.n == n);
    diffmodule P = p_module(lv, M.log);
    diffmodule Pd = dual(P);
    rvector e_last(q, ratfunc(lv.p));
    e_last[q - 1] = ratfunc::constant(lv.p, 1);
    rmatrix theta(q, q, lv.p);
    for (unsigned long l = 0; l < q; ++l) {
        rvector img = Pd.apply(l, e_last);
        for (std::size_t r = 0; r < q; ++r) theta.at(r, l) = img[r];
    }
    rmatrix NUT = transpose(nu_of(M, v));
    rmatrix TK = theta * d2.Kb;
    rmatrix Psi(n, n, lv.p);
    for (std::size_t c = 0; c < n; ++c) {
        auto x = solve(NUT, column(TK, c));
        if (!x) throw relation_failure("pairing image escapes the dual span");
        for (std::size_t r = 0; r < n; ++r) Psi.at(r, c) = (*x)[r];
    }
    rmatrix Xi = transpose(Psi);
    assert(morphism_ok(M, d2.M, Xi));
    assert(matvec(Xi, v) == d2.v);
    inverse_of(Xi);
    return {std::move(Xi), std::move(d1.M), std::move(d1.v), std::move(d2.M), std::move(d2.v)};
}

}  // namespace dormant
