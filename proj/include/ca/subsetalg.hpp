#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ca/bigint.hpp"

namespace ca {

using VertexSet = std::uint32_t;

inline constexpr int kMaxVertices = 32;

constexpr VertexSet vbit(int v) { return VertexSet{1} << v; }

constexpr VertexSet full_set(int n) {
    return n >= kMaxVertices ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

constexpr int set_size(VertexSet s) { return std::popcount(s); }

// Rank of sub inside ground: bit i of the rank is the membership flag of
// ground's i-th lowest vertex. Bijective onto 0..2^|ground|-1 and monotone
// in the numeric value of sub.
inline std::uint32_t subset_rank(VertexSet sub, VertexSet ground) {
    if (sub & ~ground) throw std::invalid_argument("subset_rank: sub is not contained in ground");
    std::uint32_t r = 0;
    int i = 0;
    for (VertexSet b = ground; b; b &= b - 1, ++i)
        if (sub & (b & -b)) r |= std::uint32_t{1} << i;
    return r;
}

inline VertexSet subset_unrank(std::uint32_t r, VertexSet ground) {
    const int k = set_size(ground);
    if (k < kMaxVertices && (r >> k) != 0)
        throw std::invalid_argument("subset_unrank: rank out of range");
    VertexSet sub = 0;
    int i = 0;
    for (VertexSet b = ground; b; b &= b - 1, ++i)
        if ((r >> i) & 1) sub |= b & -b;
    return sub;
}

// Visits every subset of ground exactly once, in increasing rank order.
template <class F>
void enumerate_subsets(VertexSet ground, F&& visit) {
    VertexSet s = 0;
    while (true) {
        visit(s);
        if (s == ground) break;
        s = (s - ground) & ground;
    }
}

// Dense table over the subset lattice of an arbitrary ground set, indexed
// by subset rank.
struct SubsetTable {
    VertexSet ground = 0;
    std::vector<BigInt> values;

    SubsetTable() = default;
    explicit SubsetTable(VertexSet g) : ground(g), values(std::size_t{1} << set_size(g)) {}

    BigInt& at(VertexSet sub) { return values[subset_rank(sub, ground)]; }
    const BigInt& at(VertexSet sub) const { return values[subset_rank(sub, ground)]; }
};

// In-place sweeps over a rank-indexed array of length 2^nbits. Coordinates
// are processed in increasing order; with exact integers the result does not
// depend on that choice, it is pinned for determinism only.
inline void zeta_in_place(BigInt* f, int nbits) {
    const std::size_t size = std::size_t{1} << nbits;
    for (int d = 0; d < nbits; ++d) {
        const std::size_t step = std::size_t{1} << d;
        for (std::size_t s = 0; s < size; ++s)
            if (s & step) f[s] += f[s ^ step];
    }
}

inline void moebius_in_place(BigInt* f, int nbits) {
    const std::size_t size = std::size_t{1} << nbits;
    for (int d = 0; d < nbits; ++d) {
        const std::size_t step = std::size_t{1} << d;
        for (std::size_t s = 0; s < size; ++s)
            if (s & step) f[s] -= f[s ^ step];
    }
}

inline SubsetTable fast_zeta(const SubsetTable& t) {
    SubsetTable g = t;
    zeta_in_place(g.values.data(), set_size(g.ground));
    return g;
}

inline SubsetTable fast_moebius(const SubsetTable& t) {
    SubsetTable g = t;
    moebius_in_place(g.values.data(), set_size(g.ground));
    return g;
}

}  // namespace ca
