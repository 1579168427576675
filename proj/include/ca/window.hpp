#pragma once

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ca/instance.hpp"
#include "ca/subsetalg.hpp"

namespace ca {

// The trailing sets of a partial tuple, oldest first: sets[j-1] holds J_j,
// so the last entry occupies the newest position.
struct WindowState {
    std::vector<VertexSet> sets;

    int length() const { return static_cast<int>(sets.size()); }
};

// Proper: vertices at positions i <= j need j - i >= w whenever they differ.
// Within one set that forces weight zero on every internal pair.
inline bool window_is_proper(const Instance& inst, const WindowState& st) {
    const int len = st.length();
    for (int j = 1; j <= len; ++j)
        for (int i = 1; i <= j; ++i)
            for (VertexSet a = st.sets[i - 1]; a; a &= a - 1) {
                const int x = std::countr_zero(a);
                for (VertexSet b = st.sets[j - 1]; b; b &= b - 1) {
                    const int y = std::countr_zero(b);
                    if (x != y && j - i < inst.weight(x, y)) return false;
                }
            }
    return true;
}

// Vertices that may occupy the position immediately before the window: not
// already used, and at gap j from every member of J_j the weight fits.
inline VertexSet proper_frontier(const Instance& inst, const WindowState& st) {
    VertexSet used = 0;
    for (VertexSet s : st.sets) used |= s;
    VertexSet out = 0;
    for (int v = 0; v < inst.n(); ++v) {
        if (used & vbit(v)) continue;
        bool ok = true;
        for (int j = 1; j <= st.length() && ok; ++j)
            for (VertexSet b = st.sets[j - 1]; b && ok; b &= b - 1)
                if (inst.weight(v, std::countr_zero(b)) > j) ok = false;
        if (ok) out |= vbit(v);
    }
    return out;
}

// Digit encoding over X's vertices in increasing index order: digit 0 means
// free, digit j means membership in J_j. Base is length+1, so the index is
// bijective with 0..(length+1)^|X|-1.
inline std::size_t window_index(const WindowState& st, VertexSet X) {
    const int len = st.length();
    VertexSet used = 0;
    for (VertexSet s : st.sets) {
        if (s & ~X) throw std::invalid_argument("window_index: set outside X");
        if (s & used) throw std::invalid_argument("window_index: overlapping sets");
        used |= s;
    }
    const std::size_t base = static_cast<std::size_t>(len) + 1;
    std::size_t idx = 0;
    std::size_t mult = 1;
    for (VertexSet b = X; b; b &= b - 1) {
        const int v = std::countr_zero(b);
        std::size_t digit = 0;
        for (int j = 1; j <= len; ++j)
            if (st.sets[j - 1] & vbit(v)) digit = j;
        idx += digit * mult;
        mult *= base;
    }
    return idx;
}

inline WindowState window_from_index(std::size_t idx, VertexSet X, int length) {
    if (length < 0) throw std::invalid_argument("window_from_index: negative length");
    WindowState st;
    st.sets.assign(length, 0);
    const std::size_t base = static_cast<std::size_t>(length) + 1;
    for (VertexSet b = X; b; b &= b - 1) {
        const int v = std::countr_zero(b);
        const std::size_t digit = idx % base;
        idx /= base;
        if (digit) st.sets[digit - 1] |= vbit(v);
    }
    if (idx) throw std::invalid_argument("window_from_index: index out of range");
    return st;
}

}  // namespace ca
