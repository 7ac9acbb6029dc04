#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

#include "dormant/ratfunc.hpp"

namespace dormant {

// Dense matrix over F_p(t), row-major.
struct rmatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<ratfunc> e;

    rmatrix() = default;
    rmatrix(std::size_t r, std::size_t c, fp p)
        : rows(r), cols(c), e(r * c, ratfunc(p)) {}

    ratfunc& at(std::size_t r, std::size_t c) { return e[r * cols + c]; }
    const ratfunc& at(std::size_t r, std::size_t c) const { return e[r * cols + c]; }

    bool operator==(const rmatrix& o) const {
        return rows == o.rows && cols == o.cols && e == o.e;
    }
    bool operator!=(const rmatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : e)
            if (!x.is_zero()) return false;
        return true;
    }
};

using rvector = std::vector<ratfunc>;

inline rmatrix ridentity(std::size_t n, fp p) {
    rmatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ratfunc::constant(p, 1);
    return m;
}

inline rmatrix operator+(const rmatrix& a, const rmatrix& b) {
    assert(a.rows == b.rows && a.cols == b.cols);
    rmatrix r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = r.e[i] + b.e[i];
    return r;
}

inline rmatrix operator-(const rmatrix& a, const rmatrix& b) {
    assert(a.rows == b.rows && a.cols == b.cols);
    rmatrix r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = r.e[i] - b.e[i];
    return r;
}

inline rmatrix operator*(const rmatrix& a, const rmatrix& b) {
    assert(a.cols == b.rows);
    fp p = a.e.empty() ? b.e.empty() ? 2 : b.e[0].p() : a.e[0].p();
    rmatrix r(a.rows, b.cols, p);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const ratfunc& av = a.at(i, k);
            if (av.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols; ++j) {
                const ratfunc& bv = b.at(k, j);
                if (bv.is_zero()) continue;
                r.at(i, j) = r.at(i, j) + av * bv;
            }
        }
    return r;
}

inline rmatrix scale(const ratfunc& s, const rmatrix& a) {
    rmatrix r = a;
    for (auto& x : r.e) x = s * x;
    return r;
}

inline rmatrix scale(fp s, const rmatrix& a) {
    rmatrix r = a;
    for (auto& x : r.e) x = s * x;
    return r;
}

inline rmatrix transpose(const rmatrix& a) {
    fp p = a.e.empty() ? 2 : a.e[0].p();
    rmatrix r(a.cols, a.rows, p);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
    return r;
}

inline rvector matvec(const rmatrix& a, const rvector& v) {
    assert(a.cols == v.size());
    fp p = a.e.empty() ? v[0].p() : a.e[0].p();
    rvector out(a.rows, ratfunc(p));
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a.at(i, k).is_zero() || v[k].is_zero()) continue;
            out[i] = out[i] + a.at(i, k) * v[k];
        }
    return out;
}

inline rvector column(const rmatrix& a, std::size_t c) {
    rvector v;
    v.reserve(a.rows);
    for (std::size_t r = 0; r < a.rows; ++r) v.push_back(a.at(r, c));
    return v;
}

inline rmatrix from_columns(const std::vector<rvector>& cols, fp p) {
    std::size_t nr = cols.empty() ? 0 : cols[0].size();
    rmatrix m(nr, cols.size(), p);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < nr; ++r) m.at(r, c) = cols[c][r];
    return m;
}

// Gauss-Jordan on [A | B]; returns rank, reduces A in place to RREF and
// applies the same row operations to B; records pivot columns.
inline std::size_t gauss(rmatrix& A, rmatrix* B, std::vector<std::size_t>& pivots) {
    pivots.clear();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < A.cols && rank < A.rows; ++col) {
        std::size_t sel = A.rows;
        for (std::size_t i = rank; i < A.rows; ++i)
            if (!A.at(i, col).is_zero()) {
                sel = i;
                break;
            }
        if (sel == A.rows) continue;
        if (sel != rank) {
            for (std::size_t j = 0; j < A.cols; ++j) std::swap(A.at(rank, j), A.at(sel, j));
            if (B)
                for (std::size_t j = 0; j < B->cols; ++j)
                    std::swap(B->at(rank, j), B->at(sel, j));
        }
        ratfunc inv = inverse(A.at(rank, col));
        for (std::size_t j = 0; j < A.cols; ++j) A.at(rank, j) = inv * A.at(rank, j);
        if (B)
            for (std::size_t j = 0; j < B->cols; ++j) B->at(rank, j) = inv * B->at(rank, j);
        for (std::size_t i = 0; i < A.rows; ++i) {
            if (i == rank || A.at(i, col).is_zero()) continue;
            ratfunc f = A.at(i, col);
            for (std::size_t j = 0; j < A.cols; ++j)
                A.at(i, j) = A.at(i, j) - f * A.at(rank, j);
            if (B)
                for (std::size_t j = 0; j < B->cols; ++j)
                    B->at(i, j) = B->at(i, j) - f * B->at(rank, j);
        }
        pivots.push_back(col);
        ++rank;
    }
    return rank;
}

inline std::size_t rank_of(rmatrix A) {
    std::vector<std::size_t> piv;
    return gauss(A, nullptr, piv);
}

// columns spanning ker(A)
inline std::vector<rvector> kernel_basis(rmatrix A) {
    fp p = A.e.empty() ? 2 : A.e[0].p();
    std::vector<std::size_t> piv;
    gauss(A, nullptr, piv);
    std::vector<rvector> out;
    std::size_t pi = 0;
    for (std::size_t f = 0; f < A.cols; ++f) {
        if (pi < piv.size() && piv[pi] == f) {
            ++pi;
            continue;
        }
        rvector v(A.cols, ratfunc(p));
        v[f] = ratfunc::constant(p, 1);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -A.at(i, f);
        out.push_back(std::move(v));
    }
    return out;
}

// one solution of A x = b, or nullopt
inline std::optional<rvector> solve(rmatrix A, const rvector& b) {
    assert(A.rows == b.size());
    fp p = b.empty() ? 2 : b[0].p();
    rmatrix B(A.rows, 1, p);
    for (std::size_t i = 0; i < A.rows; ++i) B.at(i, 0) = b[i];
    std::vector<std::size_t> piv;
    std::size_t rank = gauss(A, &B, piv);
    for (std::size_t i = rank; i < A.rows; ++i)
        if (!B.at(i, 0).is_zero()) return std::nullopt;
    rvector x(A.cols, ratfunc(p));
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = B.at(i, 0);
    return x;
}

// inverse; requires square nonsingular
inline std::optional<rmatrix> try_inverse(rmatrix A) {
    assert(A.rows == A.cols);
    fp p = A.e.empty() ? 2 : A.e[0].p();
    rmatrix B = ridentity(A.rows, p);
    std::vector<std::size_t> piv;
    std::size_t rank = gauss(A, &B, piv);
    if (rank != A.rows) return std::nullopt;
    return B;
}

inline rmatrix inverse_of(const rmatrix& A) {
    auto inv = try_inverse(A);
    assert(inv && "singular matrix");
    return *inv;
}

// ---- matrices over F_p ----------------------------------------------------

using fpmat = std::vector<std::vector<fp>>;
using fpvec = std::vector<fp>;

inline std::size_t fp_gauss(fpmat& A, fp p, std::vector<std::size_t>& pivots) {
    pivots.clear();
    std::size_t nr = A.size(), nc = nr ? A[0].size() : 0, rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t sel = nr;
        for (std::size_t i = rank; i < nr; ++i)
            if (A[i][col] % p) {
                sel = i;
                break;
            }
        if (sel == nr) continue;
        std::swap(A[rank], A[sel]);
        fp inv = invp(A[rank][col], p);
        for (auto& x : A[rank]) x = mulp(x, inv, p);
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == rank || A[i][col] % p == 0) continue;
            fp f = A[i][col];
            for (std::size_t j = 0; j < nc; ++j)
                A[i][j] = subp(A[i][j], mulp(f, A[rank][j], p), p);
        }
        pivots.push_back(col);
        ++rank;
    }
    return rank;
}

inline std::size_t fp_rank(fpmat A, fp p) {
    std::vector<std::size_t> piv;
    return fp_gauss(A, p, piv);
}

inline std::vector<fpvec> fp_kernel(fpmat A, fp p) {
    std::size_t nc = A.empty() ? 0 : A[0].size();
    std::vector<std::size_t> piv;
    fp_gauss(A, p, piv);
    std::vector<fpvec> out;
    std::size_t pi = 0;
    for (std::size_t f = 0; f < nc; ++f) {
        if (pi < piv.size() && piv[pi] == f) {
            ++pi;
            continue;
        }
        fpvec v(nc, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = negp(A[i][f], p);
        out.push_back(std::move(v));
    }
    return out;
}

inline std::optional<fpvec> fp_solve(fpmat A, const fpvec& b, fp p) {
    std::size_t nr = A.size(), nc = nr ? A[0].size() : 0;
    for (std::size_t i = 0; i < nr; ++i) A[i].push_back(b[i] % p);
    std::vector<std::size_t> piv;
    std::size_t rank = 0;
    {
        // eliminate on the first nc columns only
        for (std::size_t col = 0; col < nc && rank < nr; ++col) {
            std::size_t sel = nr;
            for (std::size_t i = rank; i < nr; ++i)
                if (A[i][col] % p) {
                    sel = i;
                    break;
                }
            if (sel == nr) continue;
            std::swap(A[rank], A[sel]);
            fp inv = invp(A[rank][col], p);
            for (auto& x : A[rank]) x = mulp(x, inv, p);
            for (std::size_t i = 0; i < nr; ++i) {
                if (i == rank || A[i][col] % p == 0) continue;
                fp f = A[i][col];
                for (std::size_t j = 0; j <= nc; ++j)
                    A[i][j] = subp(A[i][j], mulp(f, A[rank][j], p), p);
            }
            piv.push_back(col);
            ++rank;
        }
    }
    for (std::size_t i = rank; i < nr; ++i)
        if (A[i][nc] % p) return std::nullopt;
    fpvec x(nc, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = A[i][nc];
    return x;
}

inline fpmat fp_mul(const fpmat& A, const fpmat& B, fp p) {
    std::size_t nr = A.size(), inner = B.size(), nc = inner ? B[0].size() : 0;
    fpmat out(nr, fpvec(nc, 0));
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (A[i][k] == 0) continue;
            for (std::size_t j = 0; j < nc; ++j)
                out[i][j] = addp(out[i][j], mulp(A[i][k], B[k][j], p), p);
        }
    return out;
}

}  // namespace dormant
