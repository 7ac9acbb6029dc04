#pragma once

#include <cassert>
#include <optional>
#include <utility>
#include <vector>

#include "dormant/diffmodule.hpp"
#include "dormant/funcfield.hpp"

namespace dormant {

// horizontal sections of nabla_<1> as a module one level down, over u = t^p;
// the returned basis matrix C has the section vectors as columns, in original
// coordinates
inline std::pair<std::optional<diffmodule>, rmatrix> descend_once(const diffmodule& M) {
    const level_params& lv = M.lv;
    assert(!M.log);
    fp p = lv.p;
    std::size_t n = M.n;
    const bracket_table& T = M.table();

    rmatrix big(p * n, p * n, p);
    for (fp i = 0; i < p; ++i) {
        for (std::size_t s = 0; s < n; ++s) {
            rvector img(n, ratfunc(p));
            ratfunc ti = ratfunc::monomial(p, 1, i);
            for (std::size_t r = 0; r < n; ++r) img[r] = ti * M.A[1].at(r, s);
            fp d1 = T.dcoef(i, 1);
            if (d1 != 0 && i >= 1)
                img[s] = img[s] + ratfunc::monomial(p, d1, i - 1);
            for (std::size_t r = 0; r < n; ++r) {
                std::vector<ratfunc> parts = frobenius_split(img[r], 1, p);
                for (fp ii = 0; ii < p; ++ii)
                    big.at(ii * n + r, i * n + s) = parts[ii];
            }
        }
    }
    std::vector<rvector> ker = kernel_basis(big);
    if (ker.size() != n)
        throw descent_rank_deficient("horizontal-section space has dimension " +
                                     std::to_string(ker.size()) + ", expected " +
                                     std::to_string(n));

    rmatrix C(n, n, p);
    for (std::size_t c = 0; c < n; ++c)
        for (fp i = 0; i < p; ++i)
            for (std::size_t s = 0; s < n; ++s)
                C.at(s, c) = C.at(s, c) +
                             ratfunc::monomial(p, 1, i) * substitute_power(ker[c][i * n + s], p);
    for (std::size_t c = 0; c < n; ++c) {
        rvector img = M.apply(1, column(C, c));
        for (const ratfunc& x : img)
            if (!x.is_zero()) throw relation_failure("computed section is not horizontal");
    }
    if (lv.m == 0) return {std::nullopt, C};

    level_params low{p, lv.m - 1};
    std::vector<rmatrix> mats;
    for (unsigned long j = 0; j <= low.q(); ++j) {
        rmatrix X(n, n, p);
        for (std::size_t c = 0; c < n; ++c) {
            auto x = solve(C, M.apply(j * p, column(C, c)));
            if (!x) throw relation_failure("restriction to sections failed");
            for (std::size_t r = 0; r < n; ++r) {
                std::vector<ratfunc> parts = frobenius_split((*x)[r], 1, p);
                for (fp ii = 1; ii < p; ++ii)
                    if (!parts[ii].is_zero())
                        throw relation_failure("restricted entry not invariant under u = t^p");
                X.at(r, c) = parts[0];
            }
        }
        mats.push_back(std::move(X));
    }
    return {make_module(low, false, std::move(mats), true), C};
}

// iterated descent; the basis matrix accumulates in the original coordinates
inline std::pair<std::size_t, rmatrix> descend_full(const diffmodule& M) {
    const level_params& lv = M.lv;
    std::size_t n = M.n;
    std::optional<diffmodule> cur = M;
    rmatrix Ctot = ridentity(n, lv.p);
    unsigned long pl = 1;
    for (unsigned step = 0; step <= lv.m; ++step) {
        auto [res, C] = descend_once(*cur);
        rmatrix Clift(n, n, lv.p);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                Clift.at(r, c) = substitute_power(C.at(r, c), pl);
        Ctot = Ctot * Clift;
        pl *= lv.p;
        cur = std::move(res);
        if (!cur) break;
    }
    for (std::size_t c = 0; c < n; ++c)
        for (unsigned long j = 1; j <= lv.q(); ++j) {
            rvector img = M.apply(j, column(Ctot, c));
            for (const ratfunc& x : img)
                if (!x.is_zero())
                    throw relation_failure("accumulated basis is not horizontal at index " +
                                           std::to_string(j));
        }
    return {n, Ctot};
}

struct unit_counit_report {
    bool counit_iso = false;
    bool counit_intertwines = false;
    bool unit_iso = false;
    bool ok() const { return counit_iso && counit_intertwines && unit_iso; }
};

inline unit_counit_report unit_counit_checks(const diffmodule& M) {
    const level_params& lv = M.lv;
    std::size_t n = M.n;
    unit_counit_report rep;
    auto [rank, Ctot] = descend_full(M);
    rep.counit_iso = (rank == n && rank_of(Ctot) == n);
    if (rep.counit_iso) {
        diffmodule G = gauge(M, Ctot);
        diffmodule Tn = trivial(lv, n);
        rep.counit_intertwines = true;
        for (unsigned long j = 0; j <= lv.q(); ++j)
            if (!(G.A[j] == Tn.A[j])) rep.counit_intertwines = false;
    }
    auto [n2, C2] = descend_full(trivial(lv, n));
    rep.unit_iso = (n2 == n && rank_of(C2) == n);
    return rep;
}

}  // namespace dormant
