#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blowram/blowup.hpp"
#include "blowram/counting.hpp"
#include "blowram/graph.hpp"

namespace blowram {

// An r-colouring of all edges of a host graph. Edges are kept in lexicographic
// (u < v) order; colours run 1..r.
struct EdgeColouring {
    Graph host;
    int r = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> colours;

    int colour_of(int u, int v) const {
        if (u > v) std::swap(u, v);
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].first == u && edges[i].second == v)
                return colours[i];
        throw std::invalid_argument("colour_of: not an edge");
    }
};

// Fast colour lookup table for hosts that get queried a lot.
class ColourMatrix {
public:
    explicit ColourMatrix(const EdgeColouring& col)
        : n_(col.host.vertex_count()), m_(n_ * n_, 0) {
        for (std::size_t i = 0; i < col.edges.size(); ++i) {
            auto [u, v] = col.edges[i];
            m_[u * n_ + v] = m_[v * n_ + u] = col.colours[i];
        }
    }
    int operator()(int u, int v) const { return m_[u * n_ + v]; }

private:
    int n_;
    std::vector<int> m_;
};

// File format: header "n m r", then m lines "u v c" with 1 <= c <= r.

inline std::string serialize_colouring(const EdgeColouring& col) {
    std::ostringstream out;
    out << col.host.vertex_count() << ' ' << col.edges.size() << ' ' << col.r << '\n';
    for (std::size_t i = 0; i < col.edges.size(); ++i)
        out << col.edges[i].first << ' ' << col.edges[i].second << ' ' << col.colours[i] << '\n';
    return out.str();
}

inline EdgeColouring parse_colouring(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw ParseError("line " + std::to_string(lineno) + ": " + what);
    };

    long long n = -1, m = -1, r = -1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string rest;
        ls >> n >> m >> r;
        if (!ls || (ls >> rest)) fail("expected header \"n m r\"");
        break;
    }
    if (n < 0 || m < 0 || r < 1) fail("expected header \"n m r\"");

    EdgeColouring col;
    col.host = Graph(static_cast<int>(n));
    col.r = static_cast<int>(r);
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        long long u, v, c;
        std::string rest;
        ls >> u >> v >> c;
        if (!ls || (ls >> rest)) fail("expected \"u v c\"");
        if (u < 0 || v < 0 || u >= n || v >= n) fail("vertex index out of range");
        if (u == v) fail("loop edge");
        if (c < 1 || c > r) fail("colour out of range");
        if (u > v) fail("edge not in u < v order");
        if (col.host.has_edge(static_cast<int>(u), static_cast<int>(v))) fail("duplicate edge");
        col.host.add_edge(static_cast<int>(u), static_cast<int>(v));
        col.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        col.colours.push_back(static_cast<int>(c));
    }
    if (static_cast<long long>(col.edges.size()) != m) {
        ++lineno;
        fail("declared " + std::to_string(m) + " edges, found "
             + std::to_string(col.edges.size()));
    }
    // Normalize to lexicographic edge order.
    std::vector<std::size_t> perm(col.edges.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return col.edges[a] < col.edges[b];
    });
    std::vector<std::pair<int, int>> e2(col.edges.size());
    std::vector<int> c2(col.colours.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        e2[i] = col.edges[perm[i]];
        c2[i] = col.colours[perm[i]];
    }
    col.edges = std::move(e2);
    col.colours = std::move(c2);
    return col;
}

// From-scratch recount: number of copies of H in the host whose edges all
// carry one colour. Independent of the incremental tallies the search keeps.
inline long long mono_copy_count(const EdgeColouring& col, const Graph& h) {
    ColourMatrix cm(col);
    long long mono = 0;
    for (const Copy& c : enumerate_copies(h, col.host)) {
        int colour = cm(c.edges[0].first, c.edges[0].second);
        bool same = colour != 0;
        for (std::size_t i = 1; same && i < c.edges.size(); ++i)
            same = cm(c.edges[i].first, c.edges[i].second) == colour;
        if (same) ++mono;
    }
    return mono;
}

// Structural check of a colouring against an expected host.
inline bool colouring_matches_host(const EdgeColouring& col, const Graph& host,
                                   int r, std::string* why = nullptr) {
    auto complain = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (col.host.vertex_count() != host.vertex_count())
        return complain("vertex count mismatch");
    if (col.r != r) return complain("colour count mismatch");
    if (col.edges.size() != static_cast<std::size_t>(host.edge_count()))
        return complain("edge count mismatch");
    for (std::size_t i = 0; i < col.edges.size(); ++i) {
        auto [u, v] = col.edges[i];
        if (!host.has_edge(u, v)) return complain("colouring has a non-host edge");
        if (col.colours[i] < 1 || col.colours[i] > r)
            return complain("colour out of range");
    }
    return true;
}

// Naive check for a monochromatic canonical copy of H[t_vec] inside a
// coloured blowup host: a t_vec-blowup of a copy of H in the base, each part
// inside one class. Enumerates embeddings of H into the base and t-subsets
// per class outright. Used to validate witnesses, not inside the search.
inline bool exists_mono_canonical_naive(const BlowupGraph& host, const EdgeColouring& col,
                                        const Graph& h, const std::vector<int>& t_vec,
                                        int* colour_found = nullptr) {
    const int k = h.vertex_count();
    if (static_cast<int>(t_vec.size()) != k)
        throw std::invalid_argument("t_vec size must match pattern vertex count");
    ColourMatrix cm(col);

    // phi maps H-vertex i to the base vertex (= host class) carrying part i.
    std::vector<std::vector<int>> chosen(k);
    auto check_embedding = [&](const std::vector<int>& phi, int colour) -> bool {
        auto complete_between = [&](int i, int j) {
            for (int a : chosen[i])
                for (int b : chosen[j])
                    if (cm(host.vertex(phi[i], a), host.vertex(phi[j], b)) != colour)
                        return false;
            return true;
        };
        auto rec = [&](auto&& self, int cls) -> bool {
            if (cls == k) return true;
            const int n = host.class_size(phi[cls]);
            const int t = t_vec[cls];
            if (t > n) return false;
            std::vector<int> subset(t);
            auto pick = [&](auto&& pickself, int idx, int from) -> bool {
                if (idx == t) {
                    chosen[cls] = subset;
                    for (int p = 0; p < cls; ++p)
                        if (h.has_edge(p, cls) && !complete_between(p, cls))
                            return false;
                    return self(self, cls + 1);
                }
                for (int j = from; j < n; ++j) {
                    subset[idx] = j;
                    if (pickself(pickself, idx + 1, j + 1)) return true;
                }
                return false;
            };
            return pick(pick, 0, 0);
        };
        return rec(rec, 0);
    };

    bool found = false;
    int found_colour = 0;
    detail::for_each_injective_hom(h, host.base(), [&](const std::vector<int>& phi) {
        if (found) return;
        for (int colour = 1; colour <= col.r && !found; ++colour) {
            if (check_embedding(phi, colour)) {
                found = true;
                found_colour = colour;
            }
        }
    });
    if (found && colour_found) *colour_found = found_colour;
    return found;
}

} // namespace blowram
