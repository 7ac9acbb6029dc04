#pragma once

#include <algorithm>
#include <cassert>
#include <set>
#include <string>
#include <vector>

#include "dormant/diffmodule.hpp"

namespace dormant {

// fibers B_{p^l} = A_{p^l}(0) for l = 0..m
inline std::vector<fpmat> fiber_matrices(const diffmodule& M) {
    std::vector<fpmat> out;
    unsigned long pl = 1;
    for (unsigned l = 0; l <= M.lv.m; ++l) {
        fpmat B(M.n, fpvec(M.n, 0));
        for (std::size_t r = 0; r < M.n; ++r)
            for (std::size_t c = 0; c < M.n; ++c) B[r][c] = at0(M.A[pl].at(r, c));
        out.push_back(std::move(B));
        pl *= M.lv.p;
    }
    return out;
}

using exponent_t = std::vector<unsigned long>;  // sorted multiset of residues mod q

// multiset of d in [0, q) read off the joint eigenvalues of the fibers:
// each joint eigenvalue family (mu_0..mu_m) contributes d = -sum mu_l p^l mod q
// with the multiplicity of its joint eigenspace
inline exponent_t exponent(const diffmodule& M) {
    fp p = M.lv.p;
    std::vector<fpmat> B = fiber_matrices(M);
    for (std::size_t l1 = 0; l1 < B.size(); ++l1)
        for (std::size_t l2 = l1 + 1; l2 < B.size(); ++l2)
            if (fp_mul(B[l1], B[l2], p) != fp_mul(B[l2], B[l1], p))
                throw not_diagonalizable("fiber matrices do not commute");

    struct subspace {
        std::vector<fpvec> basis;  // rows, coordinates in the ambient space
        std::vector<fp> mus;
    };
    std::vector<subspace> spaces;
    {
        subspace all;
        for (std::size_t i = 0; i < M.n; ++i) {
            fpvec e(M.n, 0);
            e[i] = 1;
            all.basis.push_back(std::move(e));
        }
        spaces.push_back(std::move(all));
    }
    for (unsigned l = 0; l <= M.lv.m; ++l) {
        std::vector<subspace> next;
        for (auto& sp : spaces) {
            std::size_t k = sp.basis.size();
            // restriction C of B_l: solve basis^T * C = B_l * basis^T columnwise
            fpmat bt(M.n, fpvec(k, 0));
            for (std::size_t r = 0; r < M.n; ++r)
                for (std::size_t i = 0; i < k; ++i) bt[r][i] = sp.basis[i][r];
            fpmat bb = fp_mul(B[l], bt, p);
            fpmat C(k, fpvec(k, 0));
            for (std::size_t i = 0; i < k; ++i) {
                fpvec rhs(M.n);
                for (std::size_t r = 0; r < M.n; ++r) rhs[r] = bb[r][i];
                auto x = fp_solve(bt, rhs, p);
                if (!x) throw not_diagonalizable("subspace not invariant under fiber");
                for (std::size_t r = 0; r < k; ++r) C[r][i] = (*x)[r];
            }
            std::size_t total = 0;
            for (fp mu = 0; mu < p; ++mu) {
                fpmat Cm = C;
                for (std::size_t r = 0; r < k; ++r) Cm[r][r] = subp(Cm[r][r], mu, p);
                auto kb = fp_kernel(Cm, p);
                if (kb.empty()) continue;
                subspace child;
                child.mus = sp.mus;
                child.mus.push_back(mu);
                for (const auto& v : kb) {
                    fpvec w(M.n, 0);
                    for (std::size_t i = 0; i < k; ++i) {
                        if (v[i] == 0) continue;
                        for (std::size_t r = 0; r < M.n; ++r)
                            w[r] = addp(w[r], mulp(v[i], sp.basis[i][r], p), p);
                    }
                    child.basis.push_back(std::move(w));
                }
                total += child.basis.size();
                next.push_back(std::move(child));
            }
            if (total != k)
                throw not_diagonalizable("fiber matrix not diagonalizable over F_p");
        }
        spaces = std::move(next);
    }
    exponent_t out;
    unsigned long q = M.lv.q();
    for (const auto& sp : spaces) {
        unsigned long s = 0, pl = 1;
        for (fp mu : sp.mus) {
            s = (s + static_cast<unsigned long>(mu) * pl) % q;
            pl *= p;
        }
        unsigned long d = (q - s) % q;
        for (std::size_t i = 0; i < sp.basis.size(); ++i) out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline unsigned long residue_length(const diffmodule& M) {
    exponent_t e = exponent(M);
    unsigned long s = 0;
    for (auto d : e) s += d;
    return s;
}

// graded piece l has length p^l * sum of the l-th base-p digits
inline std::vector<unsigned long> residue_graded_lengths(const diffmodule& M) {
    exponent_t e = exponent(M);
    std::vector<unsigned long> out;
    unsigned long pl = 1;
    for (unsigned l = 0; l <= M.lv.m; ++l) {
        unsigned long s = 0;
        for (auto d : e) s += (d / pl) % M.lv.p;
        out.push_back(pl * s);
        pl *= M.lv.p;
    }
    return out;
}

inline bool is_cyclic_by_exponent(const diffmodule& M) {
    exponent_t e = exponent(M);
    std::set<unsigned long> s(e.begin(), e.end());
    return s.size() == e.size();
}

inline bool has_nonlog_origin(const diffmodule& M) {
    exponent_t e = exponent(M);
    bool flag = std::all_of(e.begin(), e.end(), [](unsigned long d) { return d == 0; });
    // cross-check against entrywise divisibility t^j | A_j
    bool div = true;
    for (unsigned long j = 0; j <= M.lv.q() && div; ++j)
        for (const auto& x : M.A[j].e)
            if (!x.is_zero() && ord0(x) < static_cast<long>(j)) {
                div = false;
                break;
            }
    assert(flag == div && "zero exponent must coincide with divisibility");
    return flag;
}

inline unsigned long classify_rank1(const diffmodule& M) {
    assert(M.n == 1 && M.log);
    return exponent(M)[0];
}

// for a rank-2 exponent {d1, d2}: the class of (d1 - d2)/2 in (Z/p^N)/{a, -a}
inline unsigned long radius_from_exponent_pair(const exponent_t& e, fp p, unsigned N) {
    if (p == 2) throw even_characteristic("radius undefined at p = 2");
    assert(e.size() == 2);
    unsigned long pn = 1;
    for (unsigned i = 0; i < N; ++i) pn *= p;
    unsigned long d1 = e[0] % pn, d2 = e[1] % pn;
    unsigned long diff = (d1 + pn - d2) % pn;
    unsigned long half = (diff * ((pn + 1) / 2)) % pn;  // inverse of 2 mod p^N
    return std::min(half, (pn - half) % pn);
}

// complement-negate law: {-d : d in [0,q) \ delta}
inline exponent_t exponent_duality(const exponent_t& delta, const level_params& lv) {
    unsigned long q = lv.q();
    std::set<unsigned long> dset(delta.begin(), delta.end());
    assert(dset.size() == delta.size() && "duality needs a multiplicity-free exponent");
    exponent_t out;
    for (unsigned long d = 0; d < q; ++d)
        if (!dset.count(d)) out.push_back((q - d) % q);
    std::sort(out.begin(), out.end());
    return out;
}

inline exponent_t exponent_pullback(const exponent_t& delta, unsigned long lam, fp p,
                                    unsigned N) {
    unsigned long pn = 1;
    for (unsigned i = 0; i < N; ++i) pn *= p;
    exponent_t out;
    for (auto d : delta) out.push_back((d % pn) * (lam % pn) % pn);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dormant
