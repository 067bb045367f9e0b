#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blowram/bitset.hpp"

namespace blowram {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simple undirected graph (irreflexive, symmetric) over vertices 0..n-1,
// stored as one adjacency bitrow per vertex.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n, Bitset(n)) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }

    bool has_edge(int u, int v) const {
        return u >= 0 && v >= 0 && u < n_ && v < n_ && u != v && adj_[u].test(v);
    }

    void add_edge(int u, int v) {
        check_pair(u, v);
        if (adj_[u].test(v)) throw std::invalid_argument("duplicate edge");
        adj_[u].set(v);
        adj_[v].set(u);
        ++m_;
    }

    void remove_edge(int u, int v) {
        check_pair(u, v);
        if (!adj_[u].test(v)) return;
        adj_[u].reset(v);
        adj_[v].reset(u);
        --m_;
    }

    const Bitset& neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return adj_[v].count(); }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    // Edges in lexicographic order with u < v.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        e.reserve(m_);
        for (int u = 0; u < n_; ++u)
            adj_[u].for_each([&](int v) { if (v > u) e.emplace_back(u, v); });
        return e;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

    static Graph complete(int n) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }

    static Graph cycle(int n) {
        if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
        Graph g(n);
        for (int v = 0; v < n; ++v) g.add_edge_unordered(v, (v + 1) % n);
        return g;
    }

    // Path on n vertices (n-1 edges).
    static Graph path(int n) {
        Graph g(n);
        for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
        return g;
    }

    static Graph complete_bipartite(int a, int b) {
        Graph g(a + b);
        for (int u = 0; u < a; ++u)
            for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
        return g;
    }

    Graph relabelled(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != n_)
            throw std::invalid_argument("permutation size mismatch");
        Graph g(n_);
        for (auto [u, v] : edges()) g.add_edge_unordered(perm[u], perm[v]);
        return g;
    }

    Graph induced(const std::vector<int>& verts) const {
        Graph g(static_cast<int>(verts.size()));
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                if (has_edge(verts[i], verts[j]))
                    g.add_edge(static_cast<int>(i), static_cast<int>(j));
        return g;
    }

private:
    void add_edge_unordered(int u, int v) { add_edge(std::min(u, v), std::max(u, v)); }

    void check_pair(int u, int v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw std::invalid_argument("vertex index out of range");
        if (u == v) throw std::invalid_argument("loop edge");
    }

    int n_ = 0;
    int m_ = 0;
    std::vector<Bitset> adj_;
};

// --- edge-list format -------------------------------------------------------
//
// First line "n m", then m lines "u v" with 0 <= u < v < n, LF-terminated.

inline std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

// --- graph6 format (McKay) --------------------------------------------------

inline std::string serialize_graph6(const Graph& g) {
    const int n = g.vertex_count();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int s = 12; s >= 0; s -= 6)
            out.push_back(static_cast<char>(63 + ((n >> s) & 63)));
    } else {
        throw std::invalid_argument("graph too large for graph6 writer");
    }
    // Upper triangle x(u,v), u < v, column by column.
    int bit = 5, acc = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            if (g.has_edge(u, v)) acc |= 1 << bit;
            if (--bit < 0) {
                out.push_back(static_cast<char>(63 + acc));
                bit = 5;
                acc = 0;
            }
        }
    }
    if (bit != 5) out.push_back(static_cast<char>(63 + acc));
    return out;
}

namespace detail {

inline Graph parse_graph6(const std::string& text) {
    std::string s = text;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.rfind(">>graph6<<", 0) == 0) s.erase(0, 10);
    if (s.empty()) throw ParseError("graph6: empty input");
    std::size_t pos = 0;
    long long n;
    if (s[0] == 126) {
        if (s.size() >= 2 && s[1] == 126)
            throw ParseError("graph6: 36-bit sizes not supported");
        if (s.size() < 4) throw ParseError("graph6: truncated size");
        n = 0;
        for (pos = 1; pos <= 3; ++pos) {
            int c = static_cast<unsigned char>(s[pos]) - 63;
            if (c < 0 || c > 63) throw ParseError("graph6: bad size byte");
            n = (n << 6) | c;
        }
    } else {
        n = static_cast<unsigned char>(s[0]) - 63;
        if (n < 0 || n > 62) throw ParseError("graph6: bad size byte");
        pos = 1;
    }
    Graph g(static_cast<int>(n));
    long long need = n * (n - 1) / 2;
    long long seen = 0;
    for (; pos < s.size(); ++pos) {
        int c = static_cast<unsigned char>(s[pos]) - 63;
        if (c < 0 || c > 63) throw ParseError("graph6: bad data byte");
        for (int b = 5; b >= 0 && seen < need; --b, ++seen) {
            if ((c >> b) & 1) {
                // seen-th pair in column order: v is the column, u the row.
                long long v = 1;
                long long k = seen;
                while (k >= v) { k -= v; ++v; }
                g.add_edge(static_cast<int>(k), static_cast<int>(v));
            }
        }
    }
    if (seen < need) throw ParseError("graph6: truncated data");
    return g;
}

} // namespace detail

// Accepts the edge-list format, or graph6 when the first non-space character
// is not a digit. Edge-list errors name the offending 1-based line.
inline Graph parse_graph(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty graph input");
    if (!std::isdigit(static_cast<unsigned char>(text[first])))
        return detail::parse_graph6(text.substr(first));

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw ParseError("line " + std::to_string(lineno) + ": " + what);
    };

    long long n = -1, m = -1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        ls >> n >> m;
        std::string rest;
        if (!ls || (ls >> rest)) fail("expected header \"n m\"");
        break;
    }
    if (n < 0 || m < 0) fail("expected header \"n m\"");
    if (n > 1'000'000) fail("vertex count too large");

    Graph g(static_cast<int>(n));
    long long read = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        long long u, v;
        std::string rest;
        ls >> u >> v;
        if (!ls || (ls >> rest)) fail("expected edge \"u v\"");
        if (u < 0 || v < 0 || u >= n || v >= n) fail("vertex index out of range");
        if (u == v) fail("loop edge");
        if (u > v) fail("edge not in u < v order");
        if (g.has_edge(static_cast<int>(u), static_cast<int>(v))) fail("duplicate edge");
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
        ++read;
    }
    if (read != m) {
        ++lineno;
        fail("declared " + std::to_string(m) + " edges, found " + std::to_string(read));
    }
    return g;
}

// Named graphs accepted by the CLI and tests: k2..k9, c4..c8, p3..p6.
inline Graph named_graph(const std::string& name) {
    if (name.size() >= 2 && (name[0] == 'k' || name[0] == 'c' || name[0] == 'p')) {
        bool digits = true;
        for (std::size_t i = 1; i < name.size(); ++i)
            digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
        if (digits) {
            int n = std::stoi(name.substr(1));
            if (name[0] == 'k' && n >= 2 && n <= 9) return Graph::complete(n);
            if (name[0] == 'c' && n >= 4 && n <= 8) return Graph::cycle(n);
            if (name[0] == 'p' && n >= 3 && n <= 6) return Graph::path(n);
        }
    }
    throw std::invalid_argument("unknown graph name: " + name);
}

} // namespace blowram
