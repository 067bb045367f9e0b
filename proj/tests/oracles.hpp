#pragma once

// Reference implementations the tests score the library against. Everything
// here is written independently of the library's algorithms: plain
// enumeration, closed forms, and brute force, with no shared helper logic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "blowram/blowup.hpp"
#include "blowram/colouring.hpp"
#include "blowram/extract.hpp"
#include "blowram/graph.hpp"
#include "blowram/rational.hpp"

namespace oracles {

using blowram::BigRat;
using blowram::Bipartite;
using blowram::BlowupGraph;
using blowram::CanonicalCopy;
using blowram::ColourMatrix;
using blowram::CopyFamily;
using blowram::EdgeColouring;
using blowram::Graph;

// Every injective map [k] -> [n], as a reference for embedding counts.
template <typename F>
inline void for_each_injection(int k, int n, F&& visit) {
    std::vector<int> phi(k, -1);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == k) {
            visit(phi);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            phi[i] = v;
            self(self, i + 1);
            used[v] = false;
        }
    };
    rec(rec, 0);
}

inline long long inj_count_naive(const Graph& h, const Graph& g) {
    long long total = 0;
    for_each_injection(h.vertex_count(), g.vertex_count(), [&](const std::vector<int>& phi) {
        for (auto [u, v] : h.edges())
            if (!g.has_edge(phi[u], phi[v])) return;
        ++total;
    });
    return total;
}

inline long long aut_count_naive(const Graph& h) { return inj_count_naive(h, h); }

inline long long copy_count_naive(const Graph& h, const Graph& g) {
    return inj_count_naive(h, g) / aut_count_naive(h);
}

inline long long mono_copy_count_naive(const EdgeColouring& col, const Graph& h) {
    ColourMatrix cm(col);
    long long mono_injections = 0;
    for_each_injection(h.vertex_count(), col.host.vertex_count(),
                       [&](const std::vector<int>& phi) {
                           int colour = 0;
                           for (auto [u, v] : h.edges()) {
                               int c = cm(phi[u], phi[v]);
                               if (c == 0 || (colour != 0 && c != colour)) return;
                               colour = c;
                           }
                           ++mono_injections;
                       });
    return mono_injections / aut_count_naive(h);
}

// Minimum number of monochromatic triangles in a 2-coloured K_n.
inline long long goodman_min(long long n) {
    if (n % 2 == 0) return n * (n - 2) * (n - 4) / 24;
    if (n % 4 == 1) return n * (n - 1) * (n - 5) / 24;
    return (n + 1) * (n - 3) * (n - 4) / 24;
}

// Full r^m enumeration of edge colourings.
template <typename F>
inline void for_each_colouring_brute(int m, int r, F&& visit) {
    std::vector<int> colour(m, 1);
    while (true) {
        visit(colour);
        int i = 0;
        while (i < m && colour[i] == r) colour[i++] = 1;
        if (i == m) break;
        ++colour[i];
    }
}

inline long long count_mono_in(const Graph& g, const Graph& h, const std::vector<int>& colour) {
    // Edge colour lookup by lexicographic edge index.
    auto edges = g.edges();
    const int n = g.vertex_count();
    std::vector<int> id(static_cast<std::size_t>(n) * n, -1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        id[u * n + v] = id[v * n + u] = static_cast<int>(i);
    }
    long long mono_inj = 0;
    for_each_injection(h.vertex_count(), n, [&](const std::vector<int>& phi) {
        int c0 = -1;
        for (auto [u, v] : h.edges()) {
            if (!g.has_edge(phi[u], phi[v])) return;
            int c = colour[id[phi[u] * n + phi[v]]];
            if (c0 == -1) c0 = c;
            if (c != c0) return;
        }
        ++mono_inj;
    });
    return mono_inj / aut_count_naive(h);
}

inline bool arrows_brute(const Graph& g, const Graph& h, int r) {
    bool all = true;
    for_each_colouring_brute(g.edge_count(), r, [&](const std::vector<int>& colour) {
        if (all && count_mono_in(g, h, colour) == 0) all = false;
    });
    return all;
}

inline long long min_mono_brute(const Graph& g, const Graph& h, int r) {
    long long best = -1;
    for_each_colouring_brute(g.edge_count(), r, [&](const std::vector<int>& colour) {
        long long m = count_mono_in(g, h, colour);
        if (best < 0 || m < best) best = m;
    });
    return best;
}

// Independent graph6 encoder (printable ASCII, 6-bit groups, column-major
// upper triangle), for round-trip checks against the library's parser.
inline std::string graph6_encode(const Graph& g) {
    const int n = g.vertex_count();
    std::string out;
    if (n <= 62) {
        out += static_cast<char>(n + 63);
    } else {
        out += 126;
        out += static_cast<char>(((n >> 12) & 63) + 63);
        out += static_cast<char>(((n >> 6) & 63) + 63);
        out += static_cast<char>((n & 63) + 63);
    }
    std::vector<int> bits;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) bits.push_back(g.has_edge(u, v) ? 1 : 0);
    while (bits.size() % 6) bits.push_back(0);
    for (std::size_t i = 0; i < bits.size(); i += 6) {
        int x = 0;
        for (int b = 0; b < 6; ++b) x = (x << 1) | bits[i + b];
        out += static_cast<char>(x + 63);
    }
    return out;
}

// Fixed-point pruning by one-at-a-time deletions in a randomized order:
// repeatedly pick any reduced copy whose extension count is below theta and
// delete all its extensions, until none is left.
inline std::vector<CanonicalCopy> prune_naive(const CopyFamily& fam, int pivot,
                                              const BigRat& theta, std::mt19937_64& rng) {
    std::vector<CanonicalCopy> cur = fam.copies;
    while (true) {
        std::map<std::vector<int>, long long> count;
        for (const CanonicalCopy& c : cur) {
            std::vector<int> proj = c.slots;
            proj.erase(proj.begin() + pivot);
            ++count[proj];
        }
        std::vector<std::vector<int>> low;
        for (const auto& [proj, k] : count)
            if (BigRat(k) < theta) low.push_back(proj);
        if (low.empty()) break;
        const std::vector<int>& victim = low[rng() % low.size()];
        std::vector<CanonicalCopy> next;
        for (const CanonicalCopy& c : cur) {
            std::vector<int> proj = c.slots;
            proj.erase(proj.begin() + pivot);
            if (proj != victim) next.push_back(c);
        }
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end());
    return cur;
}

// Best s-subset of the left side by complete enumeration: maximize the
// common neighbourhood, ties to the lexicographically smallest subset. When
// every subset has an empty common neighbourhood, the convention is the
// first s left vertices.
inline std::pair<std::vector<int>, std::vector<int>> biclique_brute(const Bipartite& f, int s) {
    std::vector<int> best_a;
    int best_common = -1;
    std::vector<int> subset(s);
    auto rec = [&](auto&& self, int idx, int from) -> void {
        if (idx == s) {
            int common = 0;
            for (int b = 0; b < f.nb; ++b) {
                bool all = true;
                for (int a : subset)
                    if (!f.has_edge(a, b)) {
                        all = false;
                        break;
                    }
                if (all) ++common;
            }
            if (common > best_common) {
                best_common = common;
                best_a = subset;
            }
            return;
        }
        for (int a = from; a <= f.na - (s - idx); ++a) {
            subset[idx] = a;
            self(self, idx + 1, a + 1);
        }
    };
    rec(rec, 0, 0);
    if (best_common == 0) {
        best_a.clear();
        for (int a = 0; a < s; ++a) best_a.push_back(a);
    }
    std::vector<int> b0;
    for (int b = 0; b < f.nb; ++b) {
        bool all = true;
        for (int a : best_a)
            if (!f.has_edge(a, b)) {
                all = false;
                break;
            }
        if (all) b0.push_back(b);
    }
    return {best_a, b0};
}

// Is `copy` (a vertex set plus edge set inside `base`) a copy of h? Checked
// by permutation search for an isomorphism onto the copy's edge set.
inline bool is_copy_of(const blowram::Copy& copy, const Graph& h, const Graph& base) {
    if (static_cast<int>(copy.vertices.size()) != h.vertex_count()) return false;
    if (copy.edges.size() != static_cast<std::size_t>(h.edge_count())) return false;
    std::set<std::pair<int, int>> edge_set(copy.edges.begin(), copy.edges.end());
    for (auto [u, v] : copy.edges)
        if (!base.has_edge(u, v)) return false;
    bool found = false;
    std::vector<int> verts = copy.vertices;
    std::sort(verts.begin(), verts.end());
    for_each_injection(h.vertex_count(), static_cast<int>(verts.size()),
                       [&](const std::vector<int>& phi) {
                           if (found) return;
                           std::set<std::pair<int, int>> mapped;
                           for (auto [u, v] : h.edges()) {
                               int a = verts[phi[u]], b = verts[phi[v]];
                               mapped.emplace(std::min(a, b), std::max(a, b));
                           }
                           if (mapped == edge_set) found = true;
                       });
    return found;
}

// Independent validity check of a monochromatic extraction, straight from
// the raw colouring: the copy really is a pattern copy in the base, every
// class subset is nonempty and in range, and every cross pair along a copy
// edge is a host edge of the claimed colour.
inline bool mono_extraction_ok(const BlowupGraph& host, const EdgeColouring& col, const Graph& h,
                               const blowram::MonoExtraction& me, std::string* why = nullptr) {
    auto complain = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (!is_copy_of(me.copy, h, host.base())) return complain("not a pattern copy in the base");
    std::vector<int> verts = me.copy.vertices;
    std::sort(verts.begin(), verts.end());
    const auto& subs = me.result.class_subsets;
    if (subs.size() != verts.size()) return complain("class count mismatch");
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i].empty()) return complain("empty class subset");
        std::set<int> uniq(subs[i].begin(), subs[i].end());
        if (uniq.size() != subs[i].size()) return complain("repeated slot");
        for (int s : subs[i])
            if (s < 0 || s >= host.class_size(verts[i])) return complain("slot out of range");
    }
    if (me.colour < 1 || me.colour > col.r) return complain("colour out of range");
    ColourMatrix cm(col);
    std::vector<int> local(host.base().vertex_count(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    for (auto [u, v] : me.copy.edges) {
        int i = local[u], j = local[v];
        for (int su : subs[i])
            for (int sv : subs[j]) {
                int a = host.vertex(u, su), b = host.vertex(v, sv);
                if (!host.flat().has_edge(a, b)) return complain("missing host edge");
                if (cm(a, b) != me.colour) return complain("edge of the wrong colour");
            }
    }
    return true;
}

// Monochromatic canonical K2[t,t] in a 2-class blowup, by subset brute force.
inline bool exists_mono_biclique_brute(const BlowupGraph& host, const ColourMatrix& cm, int t,
                                       int r) {
    const int n0 = host.class_size(0), n1 = host.class_size(1);
    std::vector<int> sa(t), sb(t);
    bool found = false;
    auto try_colour = [&](int colour) {
        auto pick_b = [&](auto&& self, int idx, int from) -> bool {
            if (idx == t) {
                for (int a : sa)
                    for (int b : sb)
                        if (cm(host.vertex(0, a), host.vertex(1, b)) != colour) return false;
                return true;
            }
            for (int v = from; v < n1; ++v) {
                sb[idx] = v;
                if (self(self, idx + 1, v + 1)) return true;
            }
            return false;
        };
        auto pick_a = [&](auto&& self, int idx, int from) -> bool {
            if (idx == t) return pick_b(pick_b, 0, 0);
            for (int v = from; v < n0; ++v) {
                sa[idx] = v;
                if (self(self, idx + 1, v + 1)) return true;
            }
            return false;
        };
        return pick_a(pick_a, 0, 0);
    };
    for (int c = 1; c <= r && !found; ++c) found = try_colour(c);
    return found;
}

// Deterministic pseudo-random test graphs: every pair becomes an edge with
// probability percent/100 under a fixed-seed engine.
inline Graph random_graph(int n, int percent, std::mt19937_64& rng) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (static_cast<int>(rng() % 100) < percent) g.add_edge(u, v);
    return g;
}

inline EdgeColouring random_colouring(const Graph& host, int r, std::mt19937_64& rng) {
    EdgeColouring col;
    col.host = host;
    col.r = r;
    col.edges = host.edges();
    for (std::size_t i = 0; i < col.edges.size(); ++i)
        col.colours.push_back(1 + static_cast<int>(rng() % r));
    return col;
}

} // namespace oracles
