#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ca/detail/engine.hpp"
#include "ca/solver_decision.hpp"

namespace ca {

// masks[p] for p = 1..s: free vertices allowed at channel p next to the
// fixed ones. masks[0] is unused.
struct PositionMaskSet {
    std::vector<VertexSet> masks;
};

namespace detail {

inline void validate_partial(const Instance& inst, const PartialAssignment& fixed, int s) {
    VertexSet seen = 0;
    for (const auto& [v, ch] : fixed.fixed) {
        if (v < 0 || v >= inst.n())
            throw std::invalid_argument("extended_decide: fixed vertex out of range");
        if (seen & vbit(v))
            throw std::invalid_argument("extended_decide: vertex fixed twice");
        seen |= vbit(v);
        if (ch < 1 || ch > s)
            throw std::invalid_argument("extended_decide: fixed channel out of range");
    }
}

}  // namespace detail

inline PositionMaskSet build_position_masks(const Instance& inst, const PartialAssignment& fixed,
                                            int s) {
    if (s < 1) throw std::invalid_argument("build_position_masks: span must be positive");
    detail::validate_partial(inst, fixed, s);
    const VertexSet zmask = fixed.domain();
    PositionMaskSet pm;
    pm.masks.assign(s + 1, 0);
    for (int p = 1; p <= s; ++p) {
        VertexSet allowed = full_set(inst.n()) & ~zmask;
        for (const auto& [z, cz] : fixed.fixed)
            for (VertexSet b = allowed; b; b &= b - 1) {
                const int v = std::countr_zero(b);
                if (std::abs(p - cz) < inst.weight(v, z)) allowed &= ~vbit(v);
            }
        pm.masks[p] = allowed;
    }
    return pm;
}

// Is there a proper assignment with channels in 1..s extending the fixed
// channels? The fixed vertices are folded into per-position masks and the
// counting recurrence runs over the free vertices alone, so the work grows
// with the number of free vertices only.
inline bool extended_decide(const Instance& inst, const PartialAssignment& fixed, int s,
                            int threads = 1) {
    if (s < 1) throw std::invalid_argument("extended_decide: span must be positive");
    if (threads < 1) throw std::invalid_argument("extended_decide: thread count must be positive");
    detail::validate_partial(inst, fixed, s);
    for (std::size_t i = 0; i < fixed.fixed.size(); ++i)
        for (std::size_t j = i + 1; j < fixed.fixed.size(); ++j) {
            const auto& [u, cu] = fixed.fixed[i];
            const auto& [v, cv] = fixed.fixed[j];
            if (std::abs(cu - cv) < inst.weight(u, v)) return false;
        }
    const VertexSet zmask = fixed.domain();
    std::vector<int> fr;
    for (int v = 0; v < inst.n(); ++v)
        if (!(zmask & vbit(v))) fr.push_back(v);
    const int nf = static_cast<int>(fr.size());
    if (nf == 0) return true;

    Instance red(nf);
    for (int i = 0; i < nf; ++i)
        for (int j = i + 1; j < nf; ++j)
            if (int wt = inst.weight(fr[i], fr[j]); wt > 0) red.set_weight(i, j, wt);

    const PositionMaskSet pm = build_position_masks(inst, fixed, s);
    std::vector<VertexSet> masks(s + 1, 0);
    for (int p = 1; p <= s; ++p)
        for (int i = 0; i < nf; ++i)
            if (pm.masks[p] & vbit(fr[i])) masks[p] |= vbit(i);

    BigInt total;
    if (red.ell() <= 1) {
        total = detail::low_count_masked(red, s, &masks, threads);
    } else {
        const int W = std::min(red.ell() - 1, s);
        total = detail::signed_subset_sum(nf, threads, [&](VertexSet X) {
            detail::DpSpec sp;
            sp.X = X;
            sp.s = s;
            sp.window = W;
            sp.masks = &masks;
            sp.strata = nf;
            return detail::dp_total(red, sp);
        });
    }
    if (total < 0) throw std::logic_error("extended_decide: negative inclusion-exclusion total");
    return total > 0;
}

struct FindStats {
    int probes = 0;  // extended_decide calls
};

// Lexicographically smallest proper assignment with channels in 1..s, fixing
// vertices in index order and probing channels upward. At most n*s probes;
// absent exactly when no proper assignment exists.
inline std::optional<Assignment> find_assignment(const Instance& inst, int s,
                                                 FindStats* stats = nullptr) {
    if (s < 1) throw std::invalid_argument("find_assignment: span must be positive");
    PartialAssignment cur;
    for (int v = 0; v < inst.n(); ++v) {
        int got = 0;
        for (int ch = 1; ch <= s; ++ch) {
            cur.fix(v, ch);
            if (stats) ++stats->probes;
            if (extended_decide(inst, cur, s)) {
                got = ch;
                break;
            }
        }
        if (!got) return std::nullopt;
    }
    Assignment a;
    a.span = s;
    a.channels.assign(inst.n(), 0);
    for (const auto& [v, ch] : cur.fixed) a.channels[v] = ch;
    if (!is_proper_assignment(inst, a))
        throw std::logic_error("find_assignment: produced an improper assignment");
    return a;
}

}  // namespace ca
