#pragma once

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ca/subsetalg.hpp"

namespace ca {

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

// Symmetric nonnegative weights on vertex pairs, vertices 0..n-1.
// ell() is always the current maximum off-diagonal weight.
class Instance {
  public:
    explicit Instance(int n) : n_(n), w_(std::size_t(n) * std::size_t(n), 0) {
        if (n < 1) throw std::invalid_argument("Instance: n must be at least 1");
        if (n > kMaxVertices) throw std::invalid_argument("Instance: n exceeds the supported width");
    }

    int n() const { return n_; }
    int ell() const { return ell_; }
    int weight(int u, int v) const { return w_[std::size_t(u) * n_ + v]; }

    void set_weight(int u, int v, int wt) {
        check_vertex(u);
        check_vertex(v);
        if (wt < 0) throw std::invalid_argument("Instance: negative weight");
        if (u == v) {
            if (wt != 0) throw std::invalid_argument("Instance: nonzero diagonal weight");
            return;
        }
        w_[std::size_t(u) * n_ + v] = wt;
        w_[std::size_t(v) * n_ + u] = wt;
        if (wt >= ell_) {
            ell_ = wt;
        } else {
            ell_ = 0;
            for (int x : w_) ell_ = std::max(ell_, x);
        }
    }

  private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("Instance: vertex out of range");
    }

    int n_;
    int ell_ = 0;
    std::vector<int> w_;
};

struct Assignment {
    std::vector<int> channels;  // channels[v] in 1..span
    int span = 0;
};

// Channels fixed on a subset of the vertices. Entries stay sorted by vertex
// and unique; fix() overwrites an existing entry.
struct PartialAssignment {
    std::vector<std::pair<int, int>> fixed;  // (vertex, channel)

    void fix(int v, int ch) {
        auto it = std::lower_bound(fixed.begin(), fixed.end(), std::make_pair(v, 0),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it != fixed.end() && it->first == v)
            it->second = ch;
        else
            fixed.insert(it, {v, ch});
    }

    VertexSet domain() const {
        VertexSet z = 0;
        for (const auto& [v, ch] : fixed) z |= vbit(v);
        return z;
    }
};

struct SimpleGraph {
    int n;
    std::vector<VertexSet> adj;
    std::vector<std::pair<int, int>> edges;

    explicit SimpleGraph(int nn) : n(nn), adj(nn, 0) {
        if (nn < 1) throw std::invalid_argument("SimpleGraph: n must be at least 1");
        if (nn > kMaxVertices) throw std::invalid_argument("SimpleGraph: n exceeds the supported width");
    }

    bool adjacent(int u, int v) const { return (adj[u] >> v) & 1; }

    void add_edge(int u, int v) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("SimpleGraph: vertex out of range");
        if (u == v) throw std::invalid_argument("SimpleGraph: self-loop");
        if (adjacent(u, v)) throw std::invalid_argument("SimpleGraph: duplicate edge");
        adj[u] |= vbit(v);
        adj[v] |= vbit(u);
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
};

namespace detail {

struct SourceLine {
    int number;
    std::vector<std::string> tokens;
};

inline std::vector<SourceLine> tokenize_stream(std::istream& in) {
    std::vector<SourceLine> out;
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ss(raw);
        SourceLine ln{no, {}};
        std::string tok;
        while (ss >> tok) ln.tokens.push_back(std::move(tok));
        if (!ln.tokens.empty()) out.push_back(std::move(ln));
    }
    return out;
}

inline long long parse_int_token(const std::string& tok, int line, const char* what) {
    std::size_t pos = 0;
    long long value = 0;
    bool bad = false;
    try {
        value = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        bad = true;
    }
    if (bad || pos != tok.size())
        throw ParseError(line, std::string("expected an integer ") + what + ", got '" + tok + "'");
    return value;
}

inline int parse_vertex_token(const std::string& tok, int line, int n) {
    long long v = parse_int_token(tok, line, "vertex index");
    if (v < 0 || v >= n) throw ParseError(line, "vertex index out of range: " + tok);
    return static_cast<int>(v);
}

inline void expect_header(const std::vector<SourceLine>& lines) {
    if (lines.empty()) throw ParseError(1, "missing 'ca 1' header");
    const auto& h = lines.front();
    if (h.tokens.size() != 2 || h.tokens[0] != "ca" || h.tokens[1] != "1")
        throw ParseError(h.number, "expected 'ca 1' header");
}

inline int parse_count_line(const SourceLine& ln) {
    if (ln.tokens.size() != 2) throw ParseError(ln.number, "malformed 'n' line");
    long long n = parse_int_token(ln.tokens[1], ln.number, "vertex count");
    if (n < 1) throw ParseError(ln.number, "vertex count must be at least 1");
    if (n > kMaxVertices)
        throw ParseError(ln.number, "vertex count exceeds the supported maximum of " +
                                        std::to_string(kMaxVertices));
    return static_cast<int>(n);
}

}  // namespace detail

inline Instance parse_instance(std::istream& in) {
    const auto lines = detail::tokenize_stream(in);
    detail::expect_header(lines);
    std::optional<Instance> inst;
    std::vector<int> seen;  // previously given weight per pair, -1 = none
    int last_line = lines.front().number;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        last_line = ln.number;
        const std::string& kind = ln.tokens[0];
        if (kind == "n") {
            if (inst) throw ParseError(ln.number, "duplicate 'n' line");
            int n = detail::parse_count_line(ln);
            inst.emplace(n);
            seen.assign(std::size_t(n) * n, -1);
        } else if (kind == "w") {
            if (!inst) throw ParseError(ln.number, "'w' line before 'n'");
            if (ln.tokens.size() != 4) throw ParseError(ln.number, "malformed 'w' line");
            int u = detail::parse_vertex_token(ln.tokens[1], ln.number, inst->n());
            int v = detail::parse_vertex_token(ln.tokens[2], ln.number, inst->n());
            long long wt = detail::parse_int_token(ln.tokens[3], ln.number, "weight");
            if (wt < 0) throw ParseError(ln.number, "negative weight");
            if (wt > 1000000000) throw ParseError(ln.number, "weight too large");
            if (u == v) {
                if (wt != 0) throw ParseError(ln.number, "nonzero self-loop weight");
                continue;
            }
            int& slot = seen[std::size_t(std::min(u, v)) * inst->n() + std::max(u, v)];
            if (slot >= 0 && slot != wt)
                throw ParseError(ln.number, "conflicting duplicate weight entry for pair " +
                                                std::to_string(std::min(u, v)) + " " +
                                                std::to_string(std::max(u, v)));
            slot = static_cast<int>(wt);
            inst->set_weight(u, v, static_cast<int>(wt));
        } else if (kind == "g") {
            throw ParseError(ln.number, "graph edge line is not allowed in an instance file");
        } else {
            throw ParseError(ln.number, "unrecognized directive '" + kind + "'");
        }
    }
    if (!inst) throw ParseError(last_line, "missing 'n' line");
    return *inst;
}

inline SimpleGraph parse_graph(std::istream& in) {
    const auto lines = detail::tokenize_stream(in);
    detail::expect_header(lines);
    std::optional<SimpleGraph> g;
    int last_line = lines.front().number;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        last_line = ln.number;
        const std::string& kind = ln.tokens[0];
        if (kind == "n") {
            if (g) throw ParseError(ln.number, "duplicate 'n' line");
            g.emplace(detail::parse_count_line(ln));
        } else if (kind == "g") {
            if (!g) throw ParseError(ln.number, "'g' line before 'n'");
            if (ln.tokens.size() != 3) throw ParseError(ln.number, "malformed 'g' line");
            int u = detail::parse_vertex_token(ln.tokens[1], ln.number, g->n);
            int v = detail::parse_vertex_token(ln.tokens[2], ln.number, g->n);
            if (u == v) throw ParseError(ln.number, "self-loop edge");
            if (g->adjacent(u, v)) throw ParseError(ln.number, "duplicate edge");
            g->add_edge(u, v);
        } else if (kind == "w") {
            throw ParseError(ln.number, "weight line is not allowed in a graph file");
        } else {
            throw ParseError(ln.number, "unrecognized directive '" + kind + "'");
        }
    }
    if (!g) throw ParseError(last_line, "missing 'n' line");
    return *g;
}

// Canonical form: header, vertex count, then the nonzero weights with u < v
// in lexicographic order. parse_instance of the result reproduces the input.
inline std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << "ca 1\n"
        << "n " << inst.n() << "\n";
    for (int u = 0; u < inst.n(); ++u)
        for (int v = u + 1; v < inst.n(); ++v)
            if (inst.weight(u, v) != 0)
                out << "w " << u << ' ' << v << ' ' << inst.weight(u, v) << "\n";
    return out.str();
}

inline bool is_proper_assignment(const Instance& inst, const Assignment& a) {
    if (static_cast<int>(a.channels.size()) != inst.n())
        throw std::invalid_argument("is_proper_assignment: channel vector size mismatch");
    for (int u = 0; u < inst.n(); ++u)
        for (int v = u + 1; v < inst.n(); ++v)
            if (std::abs(a.channels[u] - a.channels[v]) < inst.weight(u, v)) return false;
    return true;
}

inline int span_upper_bound(const Instance& inst) {
    return inst.ell() >= 1 ? (inst.n() - 1) * inst.ell() + 1 : 1;
}

// Separation instance of a labeling problem: adjacent pairs need gap p,
// pairs joined through a common neighbour need gap q. A pair can be both
// (any triangle); both gaps then apply and the larger one wins.
inline Instance lpq_reduce(const SimpleGraph& g, int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("lpq_reduce: negative separation");
    Instance inst(g.n);
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            int wt = 0;
            if (g.adjacent(u, v)) wt = p;
            if (g.adj[u] & g.adj[v]) wt = std::max(wt, q);
            if (wt > 0) inst.set_weight(u, v, wt);
        }
    return inst;
}

}  // namespace ca
