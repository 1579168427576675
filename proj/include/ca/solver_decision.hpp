#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ca/detail/engine.hpp"
#include "ca/window.hpp"

namespace ca {

struct TupleStats {
    std::vector<unsigned long long> layer_cells;
};

// Number of s-tuples of subsets of X that are proper and whose sets at
// distance below the window bound are pairwise disjoint. window_override 0
// uses the instance bound ell; larger windows are allowed (they only forbid
// more repeats), smaller ones are rejected because the live window could no
// longer see every constrained pair.
inline BigInt tuples_count(const Instance& inst, VertexSet X, int s, int window_override = 0,
                           TupleStats* stats = nullptr) {
    if (s < 1) throw std::invalid_argument("tuples_count: span must be positive");
    if (X & ~full_set(inst.n()))
        throw std::invalid_argument("tuples_count: X outside the vertex range");
    if (window_override < 0)
        throw std::invalid_argument("tuples_count: negative window override");
    if (window_override && window_override < inst.ell())
        throw std::invalid_argument("tuples_count: window override below the instance bound");
    if (stats) stats->layer_cells.clear();
    const int ell_eff = window_override ? window_override : inst.ell();
    if (ell_eff <= 1) return detail::low_tuples(inst, X, s);
    detail::DpSpec sp;
    sp.X = X;
    sp.s = s;
    sp.window = std::min(ell_eff - 1, s);
    detail::EngineStats es;
    BigInt r = detail::dp_total(inst, sp, &es);
    if (stats) stats->layer_cells = std::move(es.layer_cells);
    return r;
}

inline bool decide_span(const Instance& inst, int s, int threads = 1) {
    if (s < 1) throw std::invalid_argument("decide_span: span must be positive");
    if (threads < 1) throw std::invalid_argument("decide_span: thread count must be positive");
    if (inst.ell() == 0) return true;  // no constraints, any channel works everywhere
    BigInt total;
    if (inst.ell() == 1) {
        total = detail::low_decide_total(inst, s, threads);
    } else {
        const int W = std::min(inst.ell() - 1, s);
        total = detail::signed_subset_sum(inst.n(), threads, [&](VertexSet X) {
            detail::DpSpec sp;
            sp.X = X;
            sp.s = s;
            sp.window = W;
            return detail::dp_total(inst, sp);
        });
    }
    if (total < 0) throw std::logic_error("decide_span: negative inclusion-exclusion total");
    return total > 0;
}

inline int min_span(const Instance& inst, int threads = 1) {
    int lo = inst.ell() >= 1 ? inst.ell() + 1 : 1;
    int hi = span_upper_bound(inst);
    // feasibility is monotone in s and guaranteed at hi
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (decide_span(inst, mid, threads))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

}  // namespace ca
