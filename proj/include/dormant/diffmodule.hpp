#pragma once

#include <cassert>
#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "dormant/funcfield.hpp"
#include "dormant/matrix.hpp"

namespace dormant {

// A level-m differential module over R ⊂ K = F_p(t) as the family of operator
// matrices A_j, j = 0..p^{m+1}; column i of A_j holds the coordinates of the
// j-th operator applied to the basis vector e_i.  log selects the twisted
// composition rule.
struct diffmodule {
    level_params lv;
    bool log = false;
    std::size_t n = 0;
    std::vector<rmatrix> A;  // size q+1

    const bracket_table& table() const { return tables(lv); }

    rvector col(std::size_t j, std::size_t i) const { return column(A[j], i); }

    // the action on an arbitrary coordinate vector:
    // nabla_<j>(v) = sum_{j'} brace[j][j'] * sum_i derive(v_i, j') * col_i(A_{j-j'})
    rvector apply(unsigned long j, const rvector& v) const {
        const bracket_table& T = table();
        rvector out(n, ratfunc(lv.p));
        for (unsigned long jp = 0; jp <= j; ++jp) {
            fp b = T.brace(j, jp);
            if (b == 0) continue;
            const rmatrix& Aj = A[j - jp];
            for (std::size_t i = 0; i < n; ++i) {
                ratfunc dv = derive(v[i], jp, T, log);
                if (dv.is_zero()) continue;
                dv = b * dv;
                for (std::size_t r = 0; r < n; ++r) {
                    const ratfunc& a = Aj.at(r, i);
                    if (!a.is_zero()) out[r] = out[r] + dv * a;
                }
            }
        }
        return out;
    }

    // violated relations as (j, jp, basis index)
    std::vector<std::tuple<unsigned long, unsigned long, std::size_t>>
    validate_report() const {
        const bracket_table& T = table();
        unsigned long q = lv.q();
        std::vector<std::tuple<unsigned long, unsigned long, std::size_t>> fails;
        assert(A.size() == q + 1);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                bool diag = (r == c);
                const ratfunc& x = A[0].at(r, c);
                if (x != (diag ? ratfunc::constant(lv.p, 1) : ratfunc(lv.p))) {
                    fails.emplace_back(0, 0, c);
                    break;
                }
            }
        for (unsigned long j = 0; j <= q; ++j)
            for (unsigned long jp = 0; jp <= j; ++jp)
                for (std::size_t i = 0; i < n; ++i) {
                    rvector lhs = apply(jp, col(j - jp, i));
                    rvector rhs(n, ratfunc(lv.p));
                    if (!log) {
                        fp a = T.angle(j, jp);
                        if (a)
                            for (std::size_t r = 0; r < n; ++r)
                                rhs[r] = a * A[j].at(r, i);
                    } else {
                        for (unsigned long jpp = bracket_table::atop_lo(j, jp);
                             jpp <= j; ++jpp) {
                            fp cval = T.atop(j, jp, jpp);
                            if (cval == 0) continue;
                            for (std::size_t r = 0; r < n; ++r)
                                rhs[r] = rhs[r] + cval * A[jpp].at(r, i);
                        }
                    }
                    if (lhs != rhs) fails.emplace_back(j, jp, i);
                }
        return fails;
    }

    void validate() const {
        auto fails = validate_report();
        if (!fails.empty()) {
            auto [j, jp, i] = fails.front();
            throw relation_failure("module relations violated at (j=" +
                                   std::to_string(j) + ", j'=" + std::to_string(jp) +
                                   ", column=" + std::to_string(i) + ") and " +
                                   std::to_string(fails.size() - 1) + " more");
        }
    }

    const rmatrix& curvature() const { return A[lv.q()]; }
    bool is_dormant() const { return curvature().is_zero(); }

    bool regular_at_zero() const {
        for (const auto& M : A)
            for (const auto& x : M.e)
                if (!x.is_zero() && ord0(x) < 0) return false;
        return true;
    }
};

inline diffmodule make_module(const level_params& lv, bool log,
                              std::vector<rmatrix> mats, bool check = true) {
    diffmodule M;
    M.lv = lv;
    M.log = log;
    M.n = mats.empty() ? 0 : mats[0].rows;
    M.A = std::move(mats);
    if (check) M.validate();
    return M;
}

inline diffmodule trivial(const level_params& lv, std::size_t n, bool log = false) {
    std::vector<rmatrix> mats;
    mats.push_back(ridentity(n, lv.p));
    for (unsigned long j = 1; j <= lv.q(); ++j) mats.emplace_back(n, n, lv.p);
    return make_module(lv, log, std::move(mats));
}

// the rank-1 log module with constant matrices q_j! C(-a, j)
inline diffmodule nabla(const level_params& lv, unsigned long a) {
    const bracket_table& T = tables(lv);
    std::vector<rmatrix> mats;
    for (unsigned long j = 0; j <= lv.q(); ++j) {
        rmatrix m(1, 1, lv.p);
        m.at(0, 0) = ratfunc::constant(lv.p, T.dcoef(-static_cast<long long>(a % lv.q()), j));
        mats.push_back(std::move(m));
    }
    return make_module(lv, true, std::move(mats));
}

// rank-q module on the divided-power basis delta_<0>..delta_<q-1>
inline diffmodule p_module(const level_params& lv, bool log) {
    const bracket_table& T = tables(lv);
    unsigned long q = lv.q();
    std::vector<rmatrix> mats;
    for (unsigned long j = 0; j <= q; ++j) {
        rmatrix m(q, q, lv.p);
        for (unsigned long l = 0; l < q; ++l) {
            if (!log) {
                if (j + l < q) m.at(j + l, l) = ratfunc::constant(lv.p, T.angle(j + l, j));
            } else {
                unsigned long lo = std::max(j, l);
                unsigned long hi = std::min(j + l, q - 1);
                for (unsigned long jpp = lo; jpp <= hi; ++jpp)
                    m.at(jpp, l) = ratfunc::constant(lv.p, T.atop(j + l, j, jpp));
            }
        }
        mats.push_back(std::move(m));
    }
    return make_module(lv, log, std::move(mats));
}

inline diffmodule direct_sum(const diffmodule& M1, const diffmodule& M2) {
    assert(M1.lv == M2.lv && M1.log == M2.log);
    std::size_t n = M1.n + M2.n;
    std::vector<rmatrix> mats;
    for (unsigned long j = 0; j <= M1.lv.q(); ++j) {
        rmatrix m(n, n, M1.lv.p);
        for (std::size_t r = 0; r < M1.n; ++r)
            for (std::size_t c = 0; c < M1.n; ++c) m.at(r, c) = M1.A[j].at(r, c);
        for (std::size_t r = 0; r < M2.n; ++r)
            for (std::size_t c = 0; c < M2.n; ++c)
                m.at(M1.n + r, M1.n + c) = M2.A[j].at(r, c);
        mats.push_back(std::move(m));
    }
    return make_module(M1.lv, M1.log, std::move(mats));
}

inline diffmodule tensor(const diffmodule& M1, const diffmodule& M2) {
    assert(M1.lv == M2.lv && M1.log == M2.log);
    const bracket_table& T = tables(M1.lv);
    std::size_t n1 = M1.n, n2 = M2.n;
    std::vector<rmatrix> mats;
    for (unsigned long j = 0; j <= M1.lv.q(); ++j) {
        rmatrix m(n1 * n2, n1 * n2, M1.lv.p);
        for (unsigned long jp = 0; jp <= j; ++jp) {
            fp b = T.brace(j, jp);
            if (b == 0) continue;
            const rmatrix& B1 = M1.A[jp];
            const rmatrix& B2 = M2.A[j - jp];
            for (std::size_t r1 = 0; r1 < n1; ++r1)
                for (std::size_t c1 = 0; c1 < n1; ++c1) {
                    if (B1.at(r1, c1).is_zero()) continue;
                    ratfunc w = b * B1.at(r1, c1);
                    for (std::size_t r2 = 0; r2 < n2; ++r2)
                        for (std::size_t c2 = 0; c2 < n2; ++c2) {
                            if (B2.at(r2, c2).is_zero()) continue;
                            ratfunc& dst = m.at(r1 * n2 + r2, c1 * n2 + c2);
                            dst = dst + w * B2.at(r2, c2);
                        }
                }
        }
        mats.push_back(std::move(m));
    }
    return make_module(M1.lv, M1.log, std::move(mats));
}

inline diffmodule dual(const diffmodule& M) {
    const bracket_table& T = tables(M.lv);
    std::vector<rmatrix> mats;
    mats.push_back(ridentity(M.n, M.lv.p));
    for (unsigned long j = 1; j <= M.lv.q(); ++j) {
        rmatrix D(M.n, M.n, M.lv.p);
        for (unsigned long jp = 0; jp < j; ++jp) {
            fp b = T.brace(j, jp);
            if (b == 0) continue;
            rmatrix term = transpose(M.A[j - jp]) * mats[jp];
            D = D - scale(b, term);
        }
        mats.push_back(std::move(D));
    }
    return make_module(M.lv, M.log, std::move(mats));
}

// base change by an invertible matrix g (new basis columns = g * old basis):
// A'_j = g^{-1} * sum_{j'} brace[j][j'] * A_{j-j'} * derive(g, j')
inline diffmodule gauge(const diffmodule& M, const rmatrix& g) {
    const bracket_table& T = tables(M.lv);
    rmatrix ginv = inverse_of(g);
    std::vector<rmatrix> mats;
    for (unsigned long j = 0; j <= M.lv.q(); ++j) {
        rmatrix S(M.n, M.n, M.lv.p);
        for (unsigned long jp = 0; jp <= j; ++jp) {
            fp b = T.brace(j, jp);
            if (b == 0) continue;
            rmatrix dg(M.n, M.n, M.lv.p);
            for (std::size_t r = 0; r < M.n; ++r)
                for (std::size_t c = 0; c < M.n; ++c)
                    dg.at(r, c) = derive(g.at(r, c), jp, T, M.log);
            S = S + scale(b, M.A[j - jp] * dg);
        }
        mats.push_back(ginv * S);
    }
    return make_module(M.lv, M.log, std::move(mats));
}

// lattice twist: base change by a * identity for a nonzero rational function
inline diffmodule twist_by_unit(const diffmodule& M, const ratfunc& a) {
    assert(!a.is_zero());
    rmatrix g(M.n, M.n, M.lv.p);
    for (std::size_t i = 0; i < M.n; ++i) g.at(i, i) = a;
    return gauge(M, g);
}

inline diffmodule eta(const diffmodule& M) {
    assert(!M.log);
    std::vector<rmatrix> mats;
    for (unsigned long j = 0; j <= M.lv.q(); ++j)
        mats.push_back(scale(ratfunc::monomial(M.lv.p, 1, j), M.A[j]));
    return make_module(M.lv, true, std::move(mats));
}

inline diffmodule eta_inverse(const diffmodule& M) {
    assert(M.log);
    std::vector<rmatrix> mats;
    for (unsigned long j = 0; j <= M.lv.q(); ++j) {
        rmatrix m(M.n, M.n, M.lv.p);
        for (std::size_t r = 0; r < M.n; ++r)
            for (std::size_t c = 0; c < M.n; ++c) {
                const ratfunc& x = M.A[j].at(r, c);
                if (x.is_zero()) continue;
                if (ord0(x) < static_cast<long>(j))
                    throw eta_not_divisible("A_" + std::to_string(j) + "[" +
                                            std::to_string(r) + "," + std::to_string(c) +
                                            "] not divisible by t^" + std::to_string(j));
                m.at(r, c) = x / ratfunc::monomial(M.lv.p, 1, j);
            }
        mats.push_back(std::move(m));
    }
    return make_module(M.lv, false, std::move(mats));
}

// pull a module at level m-l (presented over the contracted variable) back to
// level m via u -> t^{p^l}
inline diffmodule frobenius_pullback(const diffmodule& Mlow, const level_params& lv,
                                     unsigned l) {
    assert(Mlow.lv.p == lv.p && Mlow.lv.m + l == lv.m);
    unsigned long pl = 1;
    for (unsigned i = 0; i < l; ++i) pl *= lv.p;
    std::vector<rmatrix> mats;
    for (unsigned long j = 0; j <= lv.q(); ++j) {
        if (j % pl == 0) {
            const rmatrix& src = Mlow.A[j / pl];
            rmatrix m(Mlow.n, Mlow.n, lv.p);
            for (std::size_t r = 0; r < Mlow.n; ++r)
                for (std::size_t c = 0; c < Mlow.n; ++c)
                    m.at(r, c) = substitute_power(src.at(r, c), pl);
            mats.push_back(std::move(m));
        } else {
            mats.emplace_back(Mlow.n, Mlow.n, lv.p);
        }
    }
    return make_module(lv, Mlow.log, std::move(mats));
}

// T maps M1 -> M2 (n2 x n1): target action after T equals T after source action
inline bool morphism_ok(const diffmodule& M1, const diffmodule& M2, const rmatrix& T) {
    assert(T.rows == M2.n && T.cols == M1.n);
    for (unsigned long j = 0; j <= M1.lv.q(); ++j)
        for (std::size_t i = 0; i < M1.n; ++i) {
            rvector lhs = M2.apply(j, column(T, i));
            rvector rhs = matvec(T, M1.col(j, i));
            if (lhs != rhs) return false;
        }
    return true;
}

inline unsigned lowdigit(fp p, unsigned long j) {
    unsigned l = 0;
    while (j % p == 0) {
        j /= p;
        ++l;
    }
    return l;
}

// fill in a module from the actions of the indices p^0..p^m; every other
// index is forced by the composition relations (leading coefficients are
// p-units on the whole range)
inline diffmodule from_generators(const level_params& lv, bool log,
                                  const std::vector<rmatrix>& gens) {
    assert(gens.size() == lv.m + 1);
    const bracket_table& T = tables(lv);
    std::size_t n = gens[0].rows;
    unsigned long q = lv.q();
    std::vector<rmatrix> mats;
    mats.push_back(ridentity(n, lv.p));
    for (unsigned long j = 1; j <= q; ++j) {
        unsigned l = std::min<unsigned>(lv.m, lowdigit(lv.p, j));
        unsigned long pl = 1;
        for (unsigned i = 0; i < l; ++i) pl *= lv.p;
        if (j == pl) {
            mats.push_back(gens[l]);
            continue;
        }
        diffmodule part;
        part.lv = lv;
        part.log = log;
        part.n = n;
        part.A = mats;
        part.A.resize(q + 1, rmatrix(n, n, lv.p));
        rmatrix comp(n, n, lv.p);
        for (std::size_t i = 0; i < n; ++i) {
            rvector c = part.apply(pl, part.col(j - pl, i));
            for (std::size_t r = 0; r < n; ++r) comp.at(r, i) = c[r];
        }
        if (!log) {
            fp lead = T.angle(j, pl);
            assert(lead % lv.p != 0);
            mats.push_back(scale(invp(lead, lv.p), comp));
        } else {
            for (unsigned long jpp = bracket_table::atop_lo(j, pl); jpp < j; ++jpp) {
                fp cval = T.atop(j, pl, jpp);
                if (cval) comp = comp - scale(cval, mats[jpp]);
            }
            fp lead = T.atop(j, pl, j);
            assert(lead % lv.p != 0);
            mats.push_back(scale(invp(lead, lv.p), comp));
        }
    }
    diffmodule M;
    M.lv = lv;
    M.log = log;
    M.n = n;
    M.A = std::move(mats);
    auto fails = M.validate_report();
    if (!fails.empty()) {
        auto [j, jp, i] = fails.front();
        throw relation_failure("generators are inconsistent: first violation at (j=" +
                               std::to_string(j) + ", j'=" + std::to_string(jp) +
                               ", column=" + std::to_string(i) + "), " +
                               std::to_string(fails.size()) + " total");
    }
    return M;
}

}  // namespace dormant
