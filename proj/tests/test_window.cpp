#include <gtest/gtest.h>

#include <random>

#include "ca/detail/engine.hpp"
#include "ca/window.hpp"
#include "testutil.hpp"

using namespace ca;
using catest::parse_str;

namespace {
const char* kTwo = "ca 1\nn 2\nw 0 1 2\n";
}

TEST(WindowProper, GapAgainstWeight) {
    const Instance inst = parse_str(kTwo);
    EXPECT_FALSE(window_is_proper(inst, {{vbit(0), vbit(1)}}));    // gap 1 < 2
    EXPECT_TRUE(window_is_proper(inst, {{vbit(0), 0}}));
    EXPECT_TRUE(window_is_proper(inst, {{0, 0}}));
    EXPECT_TRUE(window_is_proper(inst, {{vbit(0), 0, vbit(1)}}));  // gap 2
}

TEST(WindowProper, InternalPairsNeedWeightZero) {
    const Instance inst = parse_str(kTwo);
    EXPECT_FALSE(window_is_proper(inst, {{vbit(0) | vbit(1)}}));
    const Instance loose = parse_str("ca 1\nn 2\nw 0 1 0\n");
    EXPECT_TRUE(window_is_proper(loose, {{vbit(0) | vbit(1)}}));
}

TEST(WindowProper, PathThreeVertices) {
    Instance inst = catest::path_instance(3, 2);
    EXPECT_FALSE(window_is_proper(inst, {{vbit(0), vbit(1), 0}}));
    EXPECT_TRUE(window_is_proper(inst, {{vbit(0), 0, vbit(1)}}));
    EXPECT_TRUE(window_is_proper(inst, {{vbit(0), vbit(2), 0}}));  // w(0,2) = 0
}

TEST(WindowFrontier, HandValues) {
    const Instance inst = parse_str(kTwo);
    EXPECT_EQ(proper_frontier(inst, {{0}}), vbit(0) | vbit(1));
    EXPECT_EQ(proper_frontier(inst, {{vbit(1)}}), 0u);             // gap 1 < 2 blocks 0
    EXPECT_EQ(proper_frontier(inst, {{vbit(0)}}), 0u);
    EXPECT_EQ(proper_frontier(inst, {{0, vbit(1)}}), vbit(0));     // gap 2 admits 0
    EXPECT_EQ(proper_frontier(inst, {{}}), vbit(0) | vbit(1));     // empty window
}

TEST(WindowFrontier, UsedVerticesNeverReturn) {
    Instance inst(3);  // no constraints at all
    EXPECT_EQ(proper_frontier(inst, {{vbit(1), vbit(2)}}), vbit(0));
}

TEST(WindowIndex, HandValue) {
    const VertexSet X = vbit(0) | vbit(1);
    WindowState st{{vbit(1), vbit(0)}};  // digit(0) = 2, digit(1) = 1
    EXPECT_EQ(window_index(st, X), 5u);  // 2 + 1*3
    const WindowState back = window_from_index(5, X, 2);
    EXPECT_EQ(back.sets, st.sets);
}

TEST(WindowIndex, RoundTripIsBijective) {
    const VertexSet X = vbit(0) | vbit(2) | vbit(3);
    const int len = 2;
    std::size_t states = 1;
    for (int i = 0; i < set_size(X); ++i) states *= len + 1;
    for (std::size_t idx = 0; idx < states; ++idx) {
        const WindowState st = window_from_index(idx, X, len);
        EXPECT_EQ(window_index(st, X), idx);
    }
}

TEST(WindowIndex, Validation) {
    const VertexSet X = vbit(0) | vbit(1);
    EXPECT_THROW(window_index({{vbit(2)}}, X), std::invalid_argument);
    EXPECT_THROW(window_index({{vbit(0), vbit(0)}}, X), std::invalid_argument);
    EXPECT_THROW(window_from_index(9, X, 2), std::invalid_argument);
    EXPECT_NO_THROW(window_from_index(8, X, 2));
    EXPECT_THROW(window_from_index(0, X, -1), std::invalid_argument);
    EXPECT_THROW(window_from_index(1, X, 0), std::invalid_argument);
    EXPECT_NO_THROW(window_from_index(0, X, 0));
}

// The first table of the layered recurrence holds exactly the indicator of
// the proper windows: cross-check the engine's packed encoding against the
// reference predicate, state by state.
TEST(WindowIndex, MatchesEngineInitialLayer) {
    std::mt19937 gen(31);
    int checked = 0;
    for (int it = 0; it < 80; ++it) {
        const int n = 2 + static_cast<int>(gen() % 4);
        const Instance inst = catest::random_instance(n, 3, gen);
        if (inst.ell() < 2) continue;
        const VertexSet X = gen() & full_set(n);
        const int W = std::min(inst.ell() - 1, 3);
        detail::DpSpec sp;
        sp.X = X;
        sp.s = W;
        sp.window = W;
        const auto layer = detail::dp_final_layer(inst, sp);
        std::size_t states = 1;
        for (int i = 0; i < set_size(X); ++i) states *= W + 1;
        ASSERT_EQ(layer.size(), states);
        for (std::size_t idx = 0; idx < states; ++idx) {
            const WindowState st = window_from_index(idx, X, W);
            EXPECT_EQ(layer[idx], window_is_proper(inst, st) ? 1 : 0) << "idx " << idx;
        }
        ++checked;
    }
    EXPECT_GE(checked, 20);
}
