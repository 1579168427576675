#include <gtest/gtest.h>

#include <random>

#include "ca/oracle.hpp"
#include "ca/solver_decision.hpp"
#include "testutil.hpp"

using namespace ca;
using catest::parse_str;

namespace {
const char* kTwo = "ca 1\nn 2\nw 0 1 2\n";
}

TEST(TuplesCount, HandValues) {
    const Instance inst = parse_str(kTwo);
    EXPECT_EQ(tuples_count(inst, 0, 3), 1);
    EXPECT_EQ(tuples_count(inst, vbit(0), 3), 5);
    EXPECT_EQ(tuples_count(inst, vbit(0) | vbit(1), 1), 3);
    EXPECT_EQ(tuples_count(inst, vbit(0) | vbit(1), 3), 11);
}

TEST(TuplesCount, Validation) {
    const Instance inst = parse_str(kTwo);
    EXPECT_THROW(tuples_count(inst, vbit(2), 3), std::invalid_argument);
    EXPECT_THROW(tuples_count(inst, vbit(0), 0), std::invalid_argument);
    EXPECT_THROW(tuples_count(inst, vbit(0), 3, -1), std::invalid_argument);
    EXPECT_THROW(tuples_count(inst, vbit(0), 3, 1), std::invalid_argument);
    EXPECT_NO_THROW(tuples_count(inst, vbit(0), 3, 2));
    EXPECT_NO_THROW(tuples_count(inst, vbit(0), 3, 5));
}

// One unconstrained vertex with a forced repeat gap: the tuple count walks
// the Fibonacci sequence.
TEST(TuplesCount, ForcedGapGivesFibonacci) {
    const Instance inst(1);
    const int want[] = {2, 3, 5, 8, 13, 21};
    for (int s = 1; s <= 6; ++s) {
        EXPECT_EQ(tuples_count(inst, vbit(0), s, 2), want[s - 1]) << "s " << s;
        EXPECT_EQ(brute_tuples_count(inst, vbit(0), s, 2), want[s - 1]) << "s " << s;
    }
}

TEST(TuplesCount, WiderOverrideOnlyRemoves) {
    const Instance inst = parse_str(kTwo);
    const VertexSet X = vbit(0) | vbit(1);
    for (int s = 1; s <= 5; ++s) {
        BigInt prev = tuples_count(inst, X, s, 2);
        for (int ov = 3; ov <= 6; ++ov) {
            const BigInt cur = tuples_count(inst, X, s, ov);
            EXPECT_LE(cur, prev);
            EXPECT_EQ(cur, brute_tuples_count(inst, X, s, ov));
            prev = cur;
        }
    }
}

TEST(TuplesCount, MatchesExhaustiveEnumeration) {
    std::mt19937 gen(41);
    int nontrivial = 0;
    for (int it = 0; it < 60; ++it) {
        const int n = 2 + static_cast<int>(gen() % 4);
        const Instance inst = catest::random_instance(n, 4, gen);
        VertexSet X = gen() & full_set(n);
        while (set_size(X) > 3) X &= X - 1;
        for (int s = 1; s <= 4; ++s) {
            EXPECT_EQ(tuples_count(inst, X, s), brute_tuples_count(inst, X, s))
                << "n " << n << " X " << X << " s " << s;
        }
        if (inst.ell() >= 2) ++nontrivial;
    }
    EXPECT_GE(nontrivial, 20);
}

TEST(TuplesCount, WiderGroundSets) {
    std::mt19937 gen(42);
    for (int it = 0; it < 8; ++it) {
        const int n = 5;
        const Instance inst = catest::random_instance(n, 3, gen);
        const VertexSet X = full_set(5);
        for (int s = 1; s <= 3; ++s)
            EXPECT_EQ(tuples_count(inst, X, s), brute_tuples_count(inst, X, s));
    }
}

TEST(TuplesCount, LayerCellsFollowTheStateCount) {
    std::mt19937 gen(43);
    int checked = 0;
    for (int it = 0; it < 40; ++it) {
        const int n = 2 + static_cast<int>(gen() % 4);
        const Instance inst = catest::random_instance(n, 4, gen);
        if (inst.ell() < 2) continue;
        const VertexSet X = gen() & full_set(n);
        const int s = inst.ell() + 1 + static_cast<int>(gen() % 3);
        TupleStats stats;
        tuples_count(inst, X, s, 0, &stats);
        const int W = inst.ell() - 1;
        ASSERT_EQ(stats.layer_cells.size(), static_cast<std::size_t>(s - W));
        unsigned long long per_layer = 1;
        for (int i = 0; i < set_size(X); ++i) per_layer *= static_cast<unsigned>(inst.ell());
        for (auto c : stats.layer_cells) EXPECT_EQ(c, per_layer);
        ++checked;
    }
    EXPECT_GE(checked, 10);
}

TEST(DecideSpan, HandValues) {
    const Instance two = parse_str(kTwo);
    EXPECT_FALSE(decide_span(two, 1));
    EXPECT_FALSE(decide_span(two, 2));
    EXPECT_TRUE(decide_span(two, 3));
    const Instance tri = catest::complete_instance(3, 2);
    EXPECT_FALSE(decide_span(tri, 4));
    EXPECT_TRUE(decide_span(tri, 5));
}

TEST(DecideSpan, UnconstrainedInstanceAlwaysFits) {
    EXPECT_TRUE(decide_span(Instance(4), 1));
}

TEST(DecideSpan, MatchesExhaustiveSearch) {
    std::mt19937 gen(44);
    for (int it = 0; it < 60; ++it) {
        const int n = 2 + static_cast<int>(gen() % 4);
        const Instance inst = catest::random_instance(n, 4, gen);
        const int top = std::min(span_upper_bound(inst), 8);
        bool seen_true = false;
        for (int s = 1; s <= top; ++s) {
            const bool got = decide_span(inst, s);
            EXPECT_EQ(got, brute_decide(inst, s)) << "n " << n << " s " << s;
            EXPECT_TRUE(!seen_true || got) << "feasibility must be monotone in s";
            seen_true = seen_true || got;
        }
    }
}

TEST(DecideSpan, TrueAtTheGenericUpperBound) {
    std::mt19937 gen(45);
    for (int it = 0; it < 25; ++it) {
        const int n = 2 + static_cast<int>(gen() % 5);
        const Instance inst = catest::random_instance(n, 3, gen);
        EXPECT_TRUE(decide_span(inst, span_upper_bound(inst)));
    }
}

TEST(DecideSpan, ThreadCountDoesNotChangeAnswers) {
    std::mt19937 gen(46);
    for (int it = 0; it < 10; ++it) {
        const Instance inst = catest::random_instance(6, 3, gen);
        for (int s = 2; s <= 6; s += 2) {
            const bool base = decide_span(inst, s, 1);
            EXPECT_EQ(decide_span(inst, s, 2), base);
            EXPECT_EQ(decide_span(inst, s, 8), base);
        }
    }
}

TEST(MinSpan, HandValues) {
    EXPECT_EQ(min_span(parse_str(kTwo)), 3);
    EXPECT_EQ(min_span(catest::complete_instance(3, 2)), 5);
    EXPECT_EQ(min_span(catest::complete_instance(3, 1)), 3);
    EXPECT_EQ(min_span(catest::cycle_instance(5, 1)), 3);
    EXPECT_EQ(min_span(Instance(3)), 1);
}

TEST(MinSpan, MatchesExhaustiveSearch) {
    std::mt19937 gen(47);
    for (int it = 0; it < 30; ++it) {
        const int n = 2 + static_cast<int>(gen() % 3);
        const Instance inst = catest::random_instance(n, 3, gen);
        EXPECT_EQ(min_span(inst), brute_min_span(inst));
    }
}

TEST(MinSpan, WithinTheGenericBounds) {
    std::mt19937 gen(48);
    for (int it = 0; it < 20; ++it) {
        const int n = 2 + static_cast<int>(gen() % 6);
        const Instance inst = catest::random_instance(n, 4, gen);
        const int got = min_span(inst, 1 + static_cast<int>(it % 3));
        EXPECT_LE(got, span_upper_bound(inst));
        if (inst.ell() >= 1) EXPECT_GE(got, inst.ell() + 1);
        EXPECT_TRUE(decide_span(inst, got));
        if (got > 1) EXPECT_FALSE(decide_span(inst, got - 1));
    }
}

// Summing the size-sliced table over every admissible size must reproduce
// the plain table state by state.
TEST(Engine, SizeSlicesSumToPlainCounts) {
    std::mt19937 gen(49);
    int checked = 0;
    for (int it = 0; it < 40; ++it) {
        const int n = 2 + static_cast<int>(gen() % 3);
        const Instance inst = catest::random_instance(n, 3, gen);
        if (inst.ell() < 2) continue;
        const VertexSet X = gen() & full_set(n);
        const int s = 2 + static_cast<int>(gen() % 4);
        detail::DpSpec plain;
        plain.X = X;
        plain.s = s;
        plain.window = std::min(inst.ell() - 1, s);
        const auto flat = detail::dp_final_layer(inst, plain);
        detail::DpSpec sliced = plain;
        sliced.strata = set_size(X) * s;
        const auto deep = detail::dp_final_layer(inst, sliced);
        const std::size_t slices = static_cast<std::size_t>(sliced.strata) + 1;
        ASSERT_EQ(deep.size(), flat.size() * slices);
        for (std::size_t st = 0; st < flat.size(); ++st) {
            BigInt acc = 0;
            for (std::size_t k = 0; k < slices; ++k) acc += deep[st * slices + k];
            EXPECT_EQ(acc, flat[st]) << "state " << st;
        }
        ++checked;
    }
    EXPECT_GE(checked, 10);
}
