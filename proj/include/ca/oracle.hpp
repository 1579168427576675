#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "ca/bigint.hpp"
#include "ca/instance.hpp"
#include "ca/subsetalg.hpp"

namespace ca {

inline constexpr unsigned long long kDefaultOracleBudget = 100000000ULL;

class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void check_pow_budget(unsigned long long base, int expn, unsigned long long budget,
                             const char* who) {
    unsigned long long acc = 1;
    for (int i = 0; i < expn; ++i) {
        if (base != 0 && acc > budget / base)
            throw BudgetError(std::string(who) + ": search space exceeds the budget");
        acc *= base;
    }
    if (acc > budget) throw BudgetError(std::string(who) + ": search space exceeds the budget");
}

}  // namespace detail

// Plain enumeration with prefix pruning. The budget guard bounds the raw
// search space s^n up front, independent of how much pruning helps.
inline bool brute_decide(const Instance& inst, int s,
                         unsigned long long budget = kDefaultOracleBudget) {
    if (s < 1) throw std::invalid_argument("brute_decide: span must be positive");
    detail::check_pow_budget(static_cast<unsigned long long>(s), inst.n(), budget, "brute_decide");
    std::vector<int> ch(inst.n(), 0);
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == inst.n()) return true;
        for (int c = 1; c <= s; ++c) {
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (std::abs(ch[u] - c) < inst.weight(u, v)) ok = false;
            if (!ok) continue;
            ch[v] = c;
            if (self(self, v + 1)) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

inline BigInt brute_count(const Instance& inst, int s,
                          unsigned long long budget = kDefaultOracleBudget) {
    if (s < 1) throw std::invalid_argument("brute_count: span must be positive");
    detail::check_pow_budget(static_cast<unsigned long long>(s), inst.n(), budget, "brute_count");
    std::vector<int> ch(inst.n(), 0);
    BigInt total = 0;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == inst.n()) {
            ++total;
            return;
        }
        for (int c = 1; c <= s; ++c) {
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (std::abs(ch[u] - c) < inst.weight(u, v)) ok = false;
            if (!ok) continue;
            ch[v] = c;
            self(self, v + 1);
        }
    };
    rec(rec, 0);
    return total;
}

// Direct tuple enumeration over X: properness on every pair of positions and
// disjointness for positions closer than the window bound. Shares nothing
// with the layered solver beyond the two definitions.
inline BigInt brute_tuples_count(const Instance& inst, VertexSet X, int s,
                                 int window_override = 0,
                                 unsigned long long budget = kDefaultOracleBudget) {
    if (s < 1) throw std::invalid_argument("brute_tuples_count: span must be positive");
    if (X & ~full_set(inst.n()))
        throw std::invalid_argument("brute_tuples_count: X outside the vertex range");
    if (window_override < 0)
        throw std::invalid_argument("brute_tuples_count: negative window override");
    const int m = set_size(X);
    detail::check_pow_budget(1ULL << m, s, budget, "brute_tuples_count");
    const int reach = (window_override ? window_override : inst.ell()) - 1;
    std::vector<VertexSet> sets(s + 1, 0);
    BigInt total = 0;
    auto rec = [&](auto&& self, int p) -> void {
        if (p > s) {
            ++total;
            return;
        }
        enumerate_subsets(X, [&](VertexSet sub) {
            for (VertexSet a = sub; a; a &= a - 1) {
                const int x = std::countr_zero(a);
                for (VertexSet b = a & (a - 1); b; b &= b - 1)
                    if (inst.weight(x, std::countr_zero(b)) > 0) return;
            }
            for (int e = 1; e < p; ++e) {
                const int gap = p - e;
                if (gap <= reach && (sets[e] & sub)) return;
                for (VertexSet a = sets[e]; a; a &= a - 1) {
                    const int x = std::countr_zero(a);
                    for (VertexSet b = sub; b; b &= b - 1)
                        if (inst.weight(x, std::countr_zero(b)) > gap) return;
                }
            }
            sets[p] = sub;
            self(self, p + 1);
            sets[p] = 0;
        });
    };
    rec(rec, 1);
    return total;
}

inline int brute_min_span(const Instance& inst,
                          unsigned long long budget = kDefaultOracleBudget) {
    const int hi = span_upper_bound(inst);
    for (int s = 1; s <= hi; ++s)
        if (brute_decide(inst, s, budget)) return s;
    throw std::logic_error("brute_min_span: the upper bound must be feasible");
}

}  // namespace ca
