#pragma once

#include <algorithm>
#include <stdexcept>

#include "ca/detail/engine.hpp"
#include "ca/solver_decision.hpp"

namespace ca {

// Number of proper assignments with channels in 1..s. The tuple recurrence
// gains a size dimension; only the slice where every vertex occurs exactly
// once survives the inclusion-exclusion.
inline BigInt count_assignments(const Instance& inst, int s, int threads = 1) {
    if (s < 1) throw std::invalid_argument("count_assignments: span must be positive");
    if (threads < 1)
        throw std::invalid_argument("count_assignments: thread count must be positive");
    BigInt total;
    if (inst.ell() <= 1) {
        total = detail::low_count_masked(inst, s, nullptr, threads);
    } else {
        const int W = std::min(inst.ell() - 1, s);
        total = detail::signed_subset_sum(inst.n(), threads, [&](VertexSet X) {
            detail::DpSpec sp;
            sp.X = X;
            sp.s = s;
            sp.window = W;
            sp.strata = inst.n();
            return detail::dp_total(inst, sp);
        });
    }
    if (total < 0) throw std::logic_error("count_assignments: negative inclusion-exclusion total");
    return total;
}

}  // namespace ca
