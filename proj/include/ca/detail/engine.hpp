#pragma once

#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "ca/bigint.hpp"
#include "ca/instance.hpp"
#include "ca/subsetalg.hpp"

namespace ca::detail {

struct EngineStats {
    // DP cells addressed per extension layer, one entry per layer beyond the
    // initial window.
    std::vector<unsigned long long> layer_cells;
};

// conflicts(v, g) = vertices whose weight to v exceeds g.
class ConflictTable {
  public:
    ConflictTable(const Instance& inst, int gmax)
        : stride_(gmax + 1), m_(std::size_t(inst.n()) * (gmax + 1), 0) {
        for (int v = 0; v < inst.n(); ++v)
            for (int u = 0; u < inst.n(); ++u) {
                if (u == v) continue;
                const int top = std::min(inst.weight(u, v), gmax + 1);
                for (int g = 0; g < top; ++g) m_[std::size_t(v) * stride_ + g] |= vbit(u);
            }
    }

    VertexSet at(int v, int g) const {
        return g >= stride_ ? 0 : m_[std::size_t(v) * stride_ + g];
    }

  private:
    int stride_;
    std::vector<VertexSet> m_;
};

struct DpSpec {
    VertexSet X = 0;
    int s = 1;
    int window = 1;  // sets kept live; 1 <= window <= s
    const std::vector<VertexSet>* masks = nullptr;  // entry masks by position, 1-based, size > s
    int strata = -1;  // -1: plain counts; otherwise keep size slices 0..strata
};

// Runs the layered recurrence over X and returns the last layer: one value
// per window state, or strata+1 size slices per state when counting.
//
// States are digit strings over X's vertices in increasing index order with
// base window+1: digit 0 = free, digit j = member of J_j. One extension step
// fixes the shared run (J_1..J_{W-1}), gathers the source group
// f(S) = T[(S, J_1..J_{W-1})] over the free vertices, applies the zeta sweep,
// and reads each successor state (J_1..J_{W-1}, T) off the transformed table
// at the eligible-predecessor set of its window. The zeta sweep turns the
// subset sum over departing sets into one table lookup per successor.
//
// The size dimension, when present, shifts by |T| at each step: a state's
// slice already includes the window's own size, and T is the set entering
// the window. Entry masks are enforced when a set enters: at the initial
// layer J_j sits at position j, and the set added at layer i sits at
// position i. Every set is therefore checked against its final position
// exactly once, whether or not it later leaves the window.
inline std::vector<BigInt> dp_final_layer(const Instance& inst, const DpSpec& sp,
                                          EngineStats* stats = nullptr) {
    const int W = sp.window;
    if (W < 1 || W > sp.s) throw std::invalid_argument("dp_final_layer: bad window length");
    if (sp.X & ~full_set(inst.n()))
        throw std::invalid_argument("dp_final_layer: X outside the vertex range");
    if (sp.masks && static_cast<int>(sp.masks->size()) <= sp.s)
        throw std::invalid_argument("dp_final_layer: mask array too short");

    const int m = set_size(sp.X);
    const std::size_t B = std::size_t(W) + 1;
    std::size_t states = 1;
    for (int i = 0; i < m; ++i) {
        if (states > (std::size_t{1} << 44) / B)
            throw std::length_error("dp_final_layer: state space too large");
        states *= B;
    }

    const bool counting = sp.strata >= 0;
    const int K = sp.strata;
    const int slices = counting ? K + 1 : 1;

    std::vector<int> xs;
    xs.reserve(m);
    for (VertexSet b = sp.X; b; b &= b - 1) xs.push_back(std::countr_zero(b));
    std::vector<std::size_t> Bpow(m + 1);
    Bpow[0] = 1;
    for (int p = 0; p < m; ++p) Bpow[p + 1] = Bpow[p] * B;

    const ConflictTable conflicts(inst, std::max(W, inst.ell()));
    const VertexSet everyone = full_set(inst.n());
    auto pos_mask = [&](int p) { return sp.masks ? (*sp.masks)[p] : everyone; };

    std::vector<BigInt> cur(states * std::size_t(slices));

    {
        // initial layer: indicator of window properness, by size slice when counting
        std::vector<VertexSet> J(W + 1, 0);
        auto rec = [&](auto&& self, int p, std::size_t idx, int sz) -> void {
            if (p < 0) {
                if (!counting)
                    cur[idx] = 1;
                else if (sz <= K)
                    cur[idx * slices + sz] = 1;
                return;
            }
            const int v = xs[p];
            self(self, p - 1, idx, sz);
            for (int d = 1; d <= W; ++d) {
                if (!(pos_mask(d) & vbit(v))) continue;
                bool ok = true;
                for (int e = 1; e <= W && ok; ++e)
                    if (J[e] & conflicts.at(v, d > e ? d - e : e - d)) ok = false;
                if (!ok) continue;
                J[d] |= vbit(v);
                self(self, p - 1, idx + d * Bpow[p], sz + 1);
                J[d] &= ~vbit(v);
            }
        };
        rec(rec, m - 1, 0, 0);
    }

    if (sp.s == W) return cur;

    std::vector<BigInt> nxt(states * std::size_t(slices));
    const std::size_t full_ranks = std::size_t{1} << m;
    std::vector<BigInt> f(full_ranks * std::size_t(slices));
    std::vector<std::size_t> offs(full_ranks);
    std::vector<VertexSet> tmask(full_ranks), tblock(full_ranks);
    std::vector<std::uint8_t> tok(full_ranks);
    std::vector<char> slice_zero(slices);
    std::vector<VertexSet> conf0(inst.n()), confW(inst.n());
    for (int v = 0; v < inst.n(); ++v) {
        conf0[v] = conflicts.at(v, 0);
        confW[v] = conflicts.at(v, W);
    }

    int ps[kMaxVertices];   // free digit positions, pushed high to low
    int asc[kMaxVertices];  // the same positions, lowest first
    int nfree = 0;
    VertexSet free_mask = 0;
    VertexSet carry_block = 0;  // in conflict with the shared run as a predecessor
    VertexSet carry_bad = 0;    // in conflict with the shared run as the entering set
    VertexSet layer_mask = everyone;
    unsigned long long cells = 0;

    auto process = [&](std::size_t base_old, std::size_t base_new) {
        const int g = nfree;
        const std::size_t gsz = std::size_t{1} << g;
        cells += gsz;
        for (int i = 0; i < g; ++i) asc[i] = ps[g - 1 - i];
        offs[0] = 0;
        for (std::size_t r = 1; r < gsz; ++r)
            offs[r] = offs[r & (r - 1)] + Bpow[asc[std::countr_zero(r)]];
        bool any = false;
        for (int k = 0; k < slices; ++k) slice_zero[k] = 1;
        for (std::size_t r = 0; r < gsz; ++r) {
            const std::size_t src = (base_old + offs[r]) * slices;
            for (int k = 0; k < slices; ++k) {
                f[std::size_t(k) * gsz + r] = cur[src + k];
                if (slice_zero[k] && !cur[src + k].is_zero()) {
                    slice_zero[k] = 0;
                    any = true;
                }
            }
        }
        if (!any) return;
        for (int k = 0; k < slices; ++k)
            if (!slice_zero[k]) zeta_in_place(f.data() + std::size_t(k) * gsz, g);
        tmask[0] = 0;
        tblock[0] = carry_block;
        tok[0] = 1;
        for (std::size_t t = 0; t < gsz; ++t) {
            if (t) {
                const std::size_t pr = t & (t - 1);
                const int u = xs[asc[std::countr_zero(t)]];
                tmask[t] = tmask[pr] | vbit(u);
                tblock[t] = tblock[pr] | confW[u];
                tok[t] = tok[pr] && !(conf0[u] & tmask[pr]) && !(carry_bad & vbit(u)) &&
                         (layer_mask & vbit(u));
            }
            if (!tok[t]) continue;
            const std::size_t state = base_new + W * offs[t];
            const VertexSet q_set = free_mask & ~tmask[t] & ~tblock[t];
            const std::size_t q = subset_rank(q_set, free_mask);
            if (!counting) {
                nxt[state] = f[q];
            } else {
                const int pc = std::popcount(t);
                for (int k = 0; pc + k <= K; ++k)
                    nxt[state * slices + (pc + k)] = f[std::size_t(k) * gsz + q];
            }
        }
    };

    auto groups = [&](auto&& self, int p, std::size_t base_old, std::size_t base_new) -> void {
        if (p < 0) {
            process(base_old, base_new);
            return;
        }
        const int v = xs[p];
        ps[nfree++] = p;
        free_mask |= vbit(v);
        self(self, p - 1, base_old, base_new);
        free_mask &= ~vbit(v);
        --nfree;
        for (int j = 1; j < W; ++j) {
            const VertexSet ob = carry_block;
            const VertexSet obad = carry_bad;
            carry_block |= conflicts.at(v, j);
            carry_bad |= conflicts.at(v, W - j);
            self(self, p - 1, base_old + (j + 1) * Bpow[p], base_new + j * Bpow[p]);
            carry_block = ob;
            carry_bad = obad;
        }
    };

    for (int i = W + 1; i <= sp.s; ++i) {
        for (auto& x : nxt) x = 0;
        cells = 0;
        layer_mask = pos_mask(i);
        groups(groups, m - 1, 0, 0);
        if (stats) stats->layer_cells.push_back(cells);
        std::swap(cur, nxt);
    }
    return cur;
}

inline BigInt dp_total(const Instance& inst, const DpSpec& sp, EngineStats* stats = nullptr) {
    const auto layer = dp_final_layer(inst, sp, stats);
    BigInt total = 0;
    if (sp.strata < 0) {
        for (const auto& x : layer) total += x;
    } else {
        const std::size_t slices = sp.strata + 1;
        for (std::size_t i = sp.strata; i < layer.size(); i += slices) total += layer[i];
    }
    return total;
}

// Sum of (-1)^(n-|X|) * term(X) over all X of the n-vertex universe. Terms
// are exact integers, so the total is independent of evaluation order and
// worker partitioning cannot change it.
template <class TermFn>
BigInt signed_subset_sum(int n, int threads, TermFn&& term) {
    const std::uint64_t count = std::uint64_t{1} << n;
    auto signed_add = [n](BigInt& acc, VertexSet x, BigInt&& t) {
        if ((n - set_size(x)) & 1)
            acc -= t;
        else
            acc += t;
    };
    if (threads <= 1 || count == 1) {
        BigInt total = 0;
        for (std::uint64_t x = 0; x < count; ++x)
            signed_add(total, static_cast<VertexSet>(x), term(static_cast<VertexSet>(x)));
        return total;
    }
    const int nw = static_cast<int>(std::min<std::uint64_t>(threads, count));
    std::atomic<std::uint64_t> next{0};
    std::vector<BigInt> part(nw, BigInt(0));
    std::vector<std::exception_ptr> errs(nw);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w)
        pool.emplace_back([&, w] {
            try {
                BigInt local = 0;
                std::uint64_t x;
                while ((x = next.fetch_add(1, std::memory_order_relaxed)) < count)
                    signed_add(local, static_cast<VertexSet>(x), term(static_cast<VertexSet>(x)));
                part[w] = std::move(local);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
    BigInt total = 0;
    for (auto& p : part) total += p;
    return total;
}

// Number of internally weight-free subsets of every subset of the universe
// (the empty set counts). For v the lowest vertex of X,
// ind[X] = ind[X \ v] + ind[X \ v \ N(v)] with N(v) the positive-weight
// neighbourhood.
inline std::vector<std::uint64_t> independent_counts(const Instance& inst) {
    const int n = inst.n();
    std::vector<VertexSet> nb(n, 0);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u)
            if (u != v && inst.weight(u, v) > 0) nb[v] |= vbit(u);
    std::vector<std::uint64_t> ind(std::size_t{1} << n);
    ind[0] = 1;
    for (std::size_t X = 1; X < ind.size(); ++X) {
        const int v = std::countr_zero(X);
        ind[X] = ind[X & (X - 1)] + ind[X & ~std::size_t(nb[v] | vbit(v))];
    }
    return ind;
}

// The same table stratified by subset size: entry [X*(n+1)+k] counts the
// internally weight-free k-subsets of X. Values fit 32 bits for n <= 32.
inline std::vector<std::uint32_t> independent_size_counts(const Instance& inst) {
    const int n = inst.n();
    const int stride = n + 1;
    std::vector<VertexSet> nb(n, 0);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u)
            if (u != v && inst.weight(u, v) > 0) nb[v] |= vbit(u);
    std::vector<std::uint32_t> tab(std::size_t(stride) << n, 0);
    tab[0] = 1;
    for (std::size_t X = 1; X < (std::size_t{1} << n); ++X) {
        const int v = std::countr_zero(X);
        const std::size_t drop = X & (X - 1);
        const std::size_t keep = X & ~std::size_t(nb[v] | vbit(v));
        std::uint32_t* dst = &tab[X * stride];
        const std::uint32_t* a = &tab[drop * stride];
        const std::uint32_t* b = &tab[keep * stride];
        dst[0] = 1;
        for (int k = 1; k <= n; ++k) dst[k] = a[k] + b[k - 1];
    }
    return tab;
}

// Tuple count over X when no two positions constrain each other: every
// position picks an internally weight-free subset independently.
inline BigInt low_tuples(const Instance& inst, VertexSet X, int s) {
    const int m = set_size(X);
    std::vector<int> xs;
    xs.reserve(m);
    for (VertexSet b = X; b; b &= b - 1) xs.push_back(std::countr_zero(b));
    std::vector<std::uint32_t> nbr(m, 0);  // rank-space neighbourhoods
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (inst.weight(xs[i], xs[j]) > 0) {
                nbr[i] |= std::uint32_t{1} << j;
                nbr[j] |= std::uint32_t{1} << i;
            }
    std::vector<std::uint64_t> ind(std::size_t{1} << m);
    ind[0] = 1;
    for (std::size_t r = 1; r < ind.size(); ++r) {
        const int v = std::countr_zero(r);
        ind[r] = ind[r & (r - 1)] + ind[r & ~std::size_t(nbr[v] | (std::uint32_t{1} << v))];
    }
    return boost::multiprecision::pow(BigInt(ind.back()), static_cast<unsigned>(s));
}

inline std::vector<BigInt> poly_mul_trunc(const std::vector<BigInt>& a,
                                          const std::vector<BigInt>& b, int top) {
    std::vector<BigInt> c(top + 1);
    for (int i = 0; i <= top && i < static_cast<int>(a.size()); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= top && j < static_cast<int>(b.size()); ++j) {
            if (b[j].is_zero()) continue;
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

// Assignment count for instances whose pairwise constraints never cross
// positions (ell <= 1): each position contributes a generating polynomial of
// internally weight-free subsets, optionally cut by a per-position mask, and
// the answer is the degree-n coefficient of the product.
inline BigInt low_count_masked(const Instance& inst, int s,
                               const std::vector<VertexSet>* masks, int threads) {
    const int n = inst.n();
    if (masks && static_cast<int>(masks->size()) <= s)
        throw std::invalid_argument("low_count_masked: mask array too short");
    const auto table = independent_size_counts(inst);
    const int stride = n + 1;
    auto row_poly = [&](VertexSet sub) {
        std::vector<BigInt> p(stride);
        const std::uint32_t* row = table.data() + std::size_t(sub) * stride;
        for (int k = 0; k < stride; ++k) p[k] = row[k];
        return p;
    };
    return signed_subset_sum(n, threads, [&](VertexSet X) -> BigInt {
        std::vector<BigInt> acc{BigInt(1)};
        if (!masks) {
            std::vector<BigInt> base = row_poly(X);
            int e = s;
            while (e) {
                if (e & 1) acc = poly_mul_trunc(acc, base, n);
                e >>= 1;
                if (e) base = poly_mul_trunc(base, base, n);
            }
        } else {
            for (int p = 1; p <= s; ++p) acc = poly_mul_trunc(acc, row_poly(X & (*masks)[p]), n);
        }
        return static_cast<int>(acc.size()) > n ? acc[n] : BigInt(0);
    });
}

inline BigInt low_decide_total(const Instance& inst, int s, int threads) {
    const auto ind = independent_counts(inst);
    // the explicit return type forces the expression template to collapse
    // while its operands are still alive
    return signed_subset_sum(inst.n(), threads, [&](VertexSet X) -> BigInt {
        return boost::multiprecision::pow(BigInt(ind[X]), static_cast<unsigned>(s));
    });
}

}  // namespace ca::detail
