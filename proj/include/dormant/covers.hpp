#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "dormant/errors.hpp"

namespace dormant {

using ram_triple = std::array<unsigned long, 3>;
using permutation = std::vector<unsigned>;
using cycle_list = std::vector<std::vector<unsigned>>;

inline std::vector<unsigned long> unit_branch_indices(unsigned long p, unsigned N) {
    unsigned long pn = 1;
    for (unsigned i = 0; i < N; ++i) pn *= p;
    std::vector<unsigned long> B;
    for (unsigned long a = 1; a < pn; ++a)
        if (a % 2 == 1 && a % p != 0) B.push_back(a);
    return B;
}

inline std::vector<ram_triple> bstar_enumerate(unsigned long p, unsigned N) {
    unsigned long pn = 1;
    for (unsigned i = 0; i < N; ++i) pn *= p;
    std::vector<unsigned long> B = unit_branch_indices(p, N);
    std::vector<ram_triple> out;
    for (unsigned long l0 : B)
        for (unsigned long l1 : B)
            for (unsigned long li : B)
                if (l0 + l1 + li < 2 * pn &&
                    (l0 > l1 ? l0 - l1 : l1 - l0) <= li && li <= l0 + l1) {
                    assert((l0 > l1 ? l0 - l1 : l1 - l0) < li && li < l0 + l1);
                    out.push_back({l0, l1, li});
                }
    std::sort(out.begin(), out.end());
    return out;
}

inline unsigned long cover_degree(const ram_triple& t) {
    unsigned long s = t[0] + t[1] + t[2];
    if (s % 2 != 1)
        throw parity_error("branch indices sum to the even value " + std::to_string(s));
    return (s - 1) / 2;
}

inline std::array<ram_triple, 4> variants(const ram_triple& t, unsigned long p, unsigned N) {
    unsigned long pn = 1;
    for (unsigned i = 0; i < N; ++i) pn *= p;
    std::array<ram_triple, 4> vs = {
        t,
        ram_triple{t[0], pn - t[1], pn - t[2]},
        ram_triple{pn - t[0], t[1], pn - t[2]},
        ram_triple{pn - t[0], pn - t[1], t[2]},
    };
    int odd = 0;
    for (const ram_triple& v : vs)
        if (v[0] % 2 == 1 && v[1] % 2 == 1 && v[2] % 2 == 1) ++odd;
    assert(odd == 1);
    return vs;
}

inline cycle_list cycles_of(const permutation& sig) {
    std::size_t n = sig.size();
    std::vector<bool> seen(n, false);
    cycle_list out;
    for (unsigned i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<unsigned> c = {i};
        seen[i] = true;
        unsigned j = sig[i];
        while (j != i) {
            c.push_back(j);
            seen[j] = true;
            j = sig[j];
        }
        if (c.size() > 1) out.push_back(std::move(c));
    }
    return out;
}

inline bool is_single_cycle(const permutation& sig, unsigned long lam) {
    cycle_list cs = cycles_of(sig);
    if (lam == 1) return cs.empty();
    return cs.size() == 1 && cs[0].size() == lam;
}

inline bool transitive(unsigned long d, const std::vector<permutation>& gens) {
    if (d == 0) return true;
    std::vector<bool> seen(d, false);
    std::vector<unsigned> stack = {0};
    seen[0] = true;
    std::size_t cnt = 1;
    while (!stack.empty()) {
        unsigned x = stack.back();
        stack.pop_back();
        for (const permutation& g : gens) {
            unsigned y = g[x];
            if (!seen[y]) {
                seen[y] = true;
                ++cnt;
                stack.push_back(y);
            }
        }
    }
    return cnt == d;
}

namespace detail {

inline permutation perm_identity(unsigned long d) {
    permutation e(d);
    std::iota(e.begin(), e.end(), 0u);
    return e;
}

inline permutation perm_compose(const permutation& a, const permutation& b) {
    permutation out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
    return out;
}

inline permutation perm_inverse(const permutation& a) {
    permutation out(a.size());
    for (unsigned i = 0; i < a.size(); ++i) out[a[i]] = i;
    return out;
}

inline void charge(unsigned long long& nodes, unsigned long long budget,
                   const char* where) {
    if (++nodes > budget)
        throw search_budget_exceeded("search budget " + std::to_string(budget) +
                                     " exhausted during " + where + " (progress: " +
                                     std::to_string(nodes) + " nodes)");
}

// deterministic orbit-stabilizer chain; every Schreier product and orbit
// extension is charged against the shared node budget
inline unsigned long long chain_order(unsigned long d, std::vector<permutation> gens,
                                      unsigned long long& nodes,
                                      unsigned long long budget) {
    permutation id = perm_identity(d);
    std::set<permutation> uniq(gens.begin(), gens.end());
    uniq.erase(id);
    if (uniq.empty()) return 1;
    gens.assign(uniq.begin(), uniq.end());

    unsigned base = 0;
    for (unsigned i = 0; i < d; ++i) {
        bool moved = false;
        for (const permutation& g : gens)
            if (g[i] != i) moved = true;
        if (moved) {
            base = i;
            break;
        }
    }

    std::vector<unsigned> orbit = {base};
    std::vector<permutation> rep(d);
    std::vector<bool> inorb(d, false);
    inorb[base] = true;
    rep[base] = id;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        unsigned x = orbit[head];
        for (const permutation& g : gens) {
            unsigned y = g[x];
            charge(nodes, budget, "orbit expansion");
            if (!inorb[y]) {
                inorb[y] = true;
                rep[y] = perm_compose(g, rep[x]);
                orbit.push_back(y);
            }
        }
    }

    std::set<permutation> stab;
    for (unsigned x : orbit) {
        for (const permutation& g : gens) {
            charge(nodes, budget, "stabilizer generation");
            permutation s = perm_compose(perm_inverse(rep[g[x]]), perm_compose(g, rep[x]));
            if (s != id) stab.insert(std::move(s));
        }
    }
    std::vector<permutation> sgens(stab.begin(), stab.end());
    return static_cast<unsigned long long>(orbit.size()) *
           chain_order(d, std::move(sgens), nodes, budget);
}

// full closure enumeration, usable as an independent order check on small
// groups; returns 0 when the group exceeds cap
inline unsigned long long closure_order(unsigned long d, const std::vector<permutation>& gens,
                                        unsigned long long cap) {
    std::set<permutation> seen;
    std::vector<permutation> frontier = {perm_identity(d)};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<permutation> next;
        for (const permutation& x : frontier)
            for (const permutation& g : gens) {
                permutation y = perm_compose(g, x);
                if (seen.insert(y).second) {
                    if (seen.size() > cap) return 0;
                    next.push_back(std::move(y));
                }
            }
        frontier = std::move(next);
    }
    return seen.size();
}

}  // namespace detail

struct cover_witness {
    cycle_list sigma0;
    cycle_list sigma1;
    cycle_list sigmainf;
    unsigned long long order = 1;
    unsigned long degree = 0;
};

inline permutation perm_from_cycles(unsigned long d, const cycle_list& cs) {
    permutation sig = detail::perm_identity(d);
    for (const std::vector<unsigned>& c : cs)
        for (std::size_t i = 0; i < c.size(); ++i) sig[c[i]] = c[(i + 1) % c.size()];
    return sig;
}

// independent validity check: rebuild the permutations from the cycle lists,
// recompute the product and transitivity, and recount the group by closure
inline bool verify_witness(const ram_triple& t, unsigned long p, const cover_witness& w) {
    unsigned long d = w.degree;
    if (d != cover_degree(t)) return false;
    permutation s0 = perm_from_cycles(d, w.sigma0);
    permutation s1 = perm_from_cycles(d, w.sigma1);
    if (!is_single_cycle(s0, t[0]) || !is_single_cycle(s1, t[1])) return false;
    permutation si = detail::perm_compose(s0, s1);
    if (cycles_of(si) != w.sigmainf) return false;
    if (!is_single_cycle(si, t[2])) return false;
    if (!transitive(d, {s0, s1})) return false;
    if (w.order % p == 0) return false;
    if (w.order <= 200000) {
        unsigned long long co = detail::closure_order(d, {s0, s1}, 200000);
        if (co != w.order) return false;
    }
    return true;
}

// first prime-to-p monodromy witness in a fixed enumeration order: sigma0 is
// the standard cycle on the first lambda0 points, sigma1 ranges over
// lambda1-cycles by lexicographic support and then lexicographic arrangement
inline std::pair<std::optional<cover_witness>, unsigned long long> realizable(
    const ram_triple& t, unsigned long p, unsigned N, unsigned long long budget = 100000000ULL) {
    unsigned long d = cover_degree(t);
    if (t[0] > d || t[1] > d || t[2] > d) return {std::nullopt, 0};

    permutation sig0 = detail::perm_identity(d);
    for (unsigned long i = 0; i < t[0]; ++i)
        sig0[i] = static_cast<unsigned>((i + 1) % t[0]);

    unsigned long long nodes = 0;
    unsigned long lam1 = t[1];

    auto consider = [&](const permutation& sig1) -> std::optional<cover_witness> {
        detail::charge(nodes, budget, "candidate enumeration");
        permutation siginf(d);
        for (unsigned long i = 0; i < d; ++i) siginf[i] = sig0[sig1[i]];
        if (!is_single_cycle(siginf, t[2])) return std::nullopt;
        if (!transitive(d, {sig0, sig1})) return std::nullopt;
        unsigned long long ordg = detail::chain_order(d, {sig0, sig1}, nodes, budget);
        if (N == 1) assert(ordg % p != 0);
        if (ordg % p == 0) return std::nullopt;
        cover_witness w{cycles_of(sig0), cycles_of(sig1), cycles_of(siginf), ordg, d};
        assert(verify_witness(t, p, w));
        return w;
    };

    if (lam1 == 1) {
        auto w = consider(detail::perm_identity(d));
        return {w, nodes};
    }

    // supports in lexicographic order, arrangements with the minimum first and
    // the tail in lexicographic order
    std::vector<unsigned> idx(lam1);
    std::iota(idx.begin(), idx.end(), 0u);
    for (;;) {
        std::vector<unsigned> rest(idx.begin() + 1, idx.end());
        do {
            permutation sig1 = detail::perm_identity(d);
            std::vector<unsigned> cyc = {idx[0]};
            cyc.insert(cyc.end(), rest.begin(), rest.end());
            for (unsigned long i = 0; i < lam1; ++i)
                sig1[cyc[i]] = cyc[(i + 1) % lam1];
            auto w = consider(sig1);
            if (w) return {w, nodes};
        } while (std::next_permutation(rest.begin(), rest.end()));
        long i = static_cast<long>(lam1) - 1;
        while (i >= 0 && idx[i] == d - lam1 + static_cast<unsigned long>(i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < lam1; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return {std::nullopt, nodes};
}

inline unsigned long half_class(unsigned long a, unsigned long p, unsigned N) {
    if (p == 2) throw even_characteristic("radius classes need odd characteristic");
    unsigned long pn = 1;
    for (unsigned i = 0; i < N; ++i) pn *= p;
    unsigned long v = (a % pn) * ((pn + 1) / 2) % pn;
    return std::min(v, pn - v);
}

inline std::array<unsigned long, 3> radii_of_triple(const ram_triple& t, unsigned long p,
                                                    unsigned N) {
    return {half_class(t[0], p, N), half_class(t[1], p, N), half_class(t[2], p, N)};
}

struct oper_row {
    ram_triple triple;
    unsigned long degree = 0;
    std::optional<cover_witness> witness;
    std::array<unsigned long, 3> radii{};
    std::array<std::pair<ram_triple, bool>, 4> variant_status{};
    bool variants_consistent = true;
};

inline const char* witness_status(bool found) {
    return found ? "witness found" : "no prime-to-p witness within budget";
}

inline std::vector<oper_row> enumerate_opers(unsigned long p, unsigned N,
                                             unsigned long long budget = 100000000ULL,
                                             unsigned threads = 1) {
    std::vector<ram_triple> ts = bstar_enumerate(p, N);
    std::vector<oper_row> rows(ts.size());
    std::vector<std::exception_ptr> errs(ts.size());

    auto work = [&](std::size_t i) {
        try {
            const ram_triple& t = ts[i];
            oper_row row;
            row.triple = t;
            row.degree = cover_degree(t);
            row.witness = realizable(t, p, N, budget).first;
            row.radii = radii_of_triple(t, p, N);
            std::array<ram_triple, 4> vs = variants(t, p, N);
            for (std::size_t k = 0; k < 4; ++k) {
                bool found = (k == 0) ? row.witness.has_value()
                                      : realizable(vs[k], p, N, budget).first.has_value();
                row.variant_status[k] = {vs[k], found};
            }
            row.variants_consistent = true;
            for (std::size_t k = 1; k < 4; ++k)
                if (row.variant_status[k].second != row.variant_status[0].second)
                    row.variants_consistent = false;
            rows[i] = std::move(row);
        } catch (...) {
            errs[i] = std::current_exception();
        }
    };

    unsigned tn = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(ts.size())));
    if (tn <= 1) {
        for (std::size_t i = 0; i < ts.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < tn; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < ts.size(); i += tn) work(i);
            });
        for (std::thread& th : pool) th.join();
    }
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (errs[i]) std::rethrow_exception(errs[i]);

    std::set<std::array<unsigned long, 3>> radset;
    unsigned long pn = 1;
    for (unsigned i = 0; i < N; ++i) pn *= p;
    for (const oper_row& row : rows)
        if (row.witness) {
            for (unsigned long l : row.triple) assert((l % pn) % p != 0);
            bool fresh = radset.insert(row.radii).second;
            assert(fresh && "radii must separate realizable triples");
            (void)fresh;
        }
    return rows;
}

}  // namespace dormant
