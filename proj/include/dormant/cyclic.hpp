#pragma once

#include <cassert>
#include <string>
#include <vector>

#include "dormant/diffmodule.hpp"

namespace dormant {

inline std::vector<rvector> wronskian_cols(const diffmodule& M, const rvector& v) {
    std::vector<rvector> cols;
    for (unsigned long j = 0; j < M.lv.q(); ++j) cols.push_back(M.apply(j, v));
    return cols;
}

// largest l such that v, nabla_<1>v, ..., nabla_<l-1>v are K-independent
// (independent prefix length)
inline std::size_t wronskian_rank(const diffmodule& M, const rvector& v) {
    std::vector<rvector> cols = wronskian_cols(M, v);
    std::size_t best = 0;
    for (std::size_t cand = 1; cand <= cols.size(); ++cand) {
        std::vector<rvector> pre(cols.begin(), cols.begin() + cand);
        if (rank_of(from_columns(pre, M.lv.p)) < cand) break;
        best = cand;
    }
    return best;
}

inline rmatrix nu_matrix(const diffmodule& M, const rvector& v) {
    return from_columns(wronskian_cols(M, v), M.lv.p);
}

// search for a vector whose operator images form a basis; the iterative
// correction v <- v + lambda * z * u strictly grows the independent prefix
inline rvector find_cyclic(const diffmodule& M) {
    const level_params& lv = M.lv;
    const bracket_table& T = M.table();
    std::size_t n = M.n;
    unsigned long q = lv.q();
    if (n > q) {
        if (M.is_dormant())
            throw no_cyclic_vector("rank " + std::to_string(n) + " exceeds " +
                                   std::to_string(q) + " on a dormant module");
        throw std::invalid_argument("find_cyclic requires rank <= p^(m+1)");
    }
    assert(!M.log && n >= 1);

    auto basis_vec = [&](std::size_t s) {
        rvector u(n, ratfunc(lv.p));
        u[s] = ratfunc::constant(lv.p, 1);
        return u;
    };

    rvector v = basis_vec(0);
    for (std::size_t outer = 0; outer <= n; ++outer) {
        std::vector<rvector> vs;
        for (std::size_t j = 0; j < n; ++j) vs.push_back(M.apply(j, v));
        // first dependence index l
        std::size_t l = n;
        for (std::size_t cand = 1; cand <= n; ++cand) {
            std::vector<rvector> pre(vs.begin(), vs.begin() + cand);
            if (rank_of(from_columns(pre, lv.p)) < cand) {
                l = cand - 1;
                break;
            }
        }
        if (l == n) return v;

        std::vector<rvector> pre(vs.begin(), vs.begin() + l);
        rmatrix Wl = from_columns(pre, lv.p);
        auto a = solve(Wl, vs[l]);
        assert(a && "dependence coordinates must exist");

        // first standard basis vector outside the span
        std::size_t u_idx = n;
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<rvector> ext = pre;
            ext.push_back(basis_vec(s));
            if (rank_of(from_columns(ext, lv.p)) == l + 1) {
                u_idx = s;
                break;
            }
        }
        assert(u_idx < n);
        rvector u = basis_vec(u_idx);

        // complete v_0..v_{l-1}, u to a basis with greedy standard vectors
        std::vector<rvector> cols = pre;
        cols.push_back(u);
        for (std::size_t s = 0; s < n && cols.size() < n; ++s) {
            std::vector<rvector> ext = cols;
            ext.push_back(basis_vec(s));
            if (rank_of(from_columns(ext, lv.p)) == ext.size()) cols = std::move(ext);
        }
        rmatrix B = from_columns(cols, lv.p);

        // u-coordinate of nabla_<j>(u) in that basis, j = 0..l
        std::vector<ratfunc> beta;
        for (std::size_t j = 0; j <= l; ++j) {
            auto x = solve(B, M.apply(j, u));
            assert(x);
            beta.push_back((*x)[l]);
        }

        std::vector<ratfunc> cs;
        for (std::size_t i = 0; i < l; ++i) {
            ratfunc ci = T.brace(l, l - i) * beta[l - i];
            for (std::size_t r = i; r < l; ++r)
                ci = ci - T.brace(r, r - i) * ((*a)[r] * beta[r - i]);
            cs.push_back(ci);
        }

        auto L = [&](const ratfunc& z) {
            ratfunc out = derive(z, l, T, false);
            for (std::size_t i = 0; i < l; ++i)
                out = out + cs[i] * derive(z, i, T, false);
            return out;
        };

        // a monomial t^i with L(t^i) != 0 exists for i < n
        ratfunc z(lv.p);
        bool found_z = false;
        for (std::size_t i = 0; i < n; ++i) {
            ratfunc zi = ratfunc::monomial(lv.p, 1, i);
            if (!L(zi).is_zero()) {
                z = zi;
                found_z = true;
                break;
            }
        }
        if (!found_z) throw algorithm_stall("no monomial t^i with L(t^i) != 0");

        // candidates from the invariant subfield: 1..p-1, then c + t^{q*e}
        std::vector<ratfunc> lams;
        for (fp c = 1; c < lv.p; ++c) lams.push_back(ratfunc::constant(lv.p, c));
        for (unsigned long e = 1; lams.size() < l + 2; ++e)
            for (fp c = 0; c < lv.p && lams.size() < l + 2; ++c)
                lams.push_back(ratfunc::constant(lv.p, c) +
                               ratfunc::monomial(lv.p, 1, q * e));

        bool advanced = false;
        for (std::size_t ci = 0; ci < l + 2 && ci < lams.size(); ++ci) {
            rvector cand = v;
            ratfunc w = lams[ci] * z;
            cand[u_idx] = cand[u_idx] + w;
            if (wronskian_rank(M, cand) >= l + 1) {
                v = std::move(cand);
                advanced = true;
                break;
            }
        }
        if (!advanced)
            throw algorithm_stall("all " + std::to_string(l + 2) +
                                  " lambda candidates failed at prefix " +
                                  std::to_string(l));
    }
    throw algorithm_stall("prefix did not reach full rank in n iterations");
}

}  // namespace dormant
