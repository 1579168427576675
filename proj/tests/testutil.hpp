#pragma once

#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ca/instance.hpp"

namespace catest {

inline ca::Instance parse_str(const std::string& text) {
    std::istringstream in(text);
    return ca::parse_instance(in);
}

inline ca::Instance random_instance(int n, int wmax, std::mt19937& gen) {
    ca::Instance inst(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            inst.set_weight(u, v, static_cast<int>(gen() % (wmax + 1)));
    return inst;
}

inline ca::Instance path_instance(int n, int w) {
    ca::Instance inst(n);
    for (int v = 0; v + 1 < n; ++v) inst.set_weight(v, v + 1, w);
    return inst;
}

inline ca::Instance cycle_instance(int n, int w) {
    ca::Instance inst = path_instance(n, w);
    inst.set_weight(n - 1, 0, w);
    return inst;
}

inline ca::Instance complete_instance(int n, int w) {
    ca::Instance inst(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) inst.set_weight(u, v, w);
    return inst;
}

inline ca::SimpleGraph path_graph(int n) {
    ca::SimpleGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline ca::SimpleGraph cycle_graph(int n) {
    ca::SimpleGraph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline ca::SimpleGraph complete_graph(int n) {
    ca::SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// Lexicographically smallest proper assignment over channels 1..s, empty if
// none exists. Mirrors the fix-one-vertex-at-a-time extraction order.
inline std::vector<int> brute_lex_min(const ca::Instance& inst, int s) {
    std::vector<int> ch(inst.n(), 0);
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == inst.n()) return true;
        for (int c = 1; c <= s; ++c) {
            bool good = true;
            for (int u = 0; u < v; ++u)
                if (std::abs(ch[u] - c) < inst.weight(u, v)) {
                    good = false;
                    break;
                }
            if (!good) continue;
            ch[v] = c;
            if (self(self, v + 1)) return true;
        }
        return false;
    };
    if (rec(rec, 0)) return ch;
    return {};
}

}  // namespace catest
