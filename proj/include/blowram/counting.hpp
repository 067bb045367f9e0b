#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "blowram/graph.hpp"
#include "blowram/rational.hpp"

namespace blowram {

namespace detail {

// Static vertex order for embedding searches: descending degree, then index,
// but always keeping the partial map connected to cut dead branches early.
inline std::vector<int> embedding_order(const Graph& h) {
    const int k = h.vertex_count();
    std::vector<int> order;
    std::vector<bool> placed(k, false);
    for (int step = 0; step < k; ++step) {
        int best = -1, best_links = -1, best_deg = -1;
        for (int v = 0; v < k; ++v) {
            if (placed[v]) continue;
            int links = 0;
            for (int u : order)
                if (h.has_edge(u, v)) ++links;
            int deg = h.degree(v);
            if (links > best_links || (links == best_links && deg > best_deg)) {
                best = v;
                best_links = links;
                best_deg = deg;
            }
        }
        placed[best] = true;
        order.push_back(best);
    }
    return order;
}

template <typename Visit>
void for_each_injective_hom(const Graph& h, const Graph& g, Visit&& visit) {
    const int k = h.vertex_count();
    const int n = g.vertex_count();
    if (k > n) return;
    std::vector<int> order = embedding_order(h);
    std::vector<int> image(k, -1);
    Bitset used(n);

    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == k) {
            visit(image);
            return;
        }
        int hv = order[pos];
        // Candidates: common neighbourhood of the already-mapped H-neighbours.
        Bitset cand(n);
        bool constrained = false;
        for (int q = 0; q < pos; ++q) {
            int hu = order[q];
            if (!h.has_edge(hu, hv)) continue;
            if (!constrained) {
                cand = g.neighbours(image[hu]);
                constrained = true;
            } else {
                cand &= g.neighbours(image[hu]);
            }
        }
        if (!constrained) {
            for (int v = 0; v < n; ++v)
                if (!used.test(v)) cand.set(v);
        }
        for (int v = cand.next(0); v >= 0; v = cand.next(v + 1)) {
            if (used.test(v)) continue;
            image[hv] = v;
            used.set(v);
            self(self, pos + 1);
            used.reset(v);
            image[hv] = -1;
        }
    };
    rec(rec, 0);
}

} // namespace detail

// Number of injective homomorphisms H -> G (edges map to edges; non-edges
// unconstrained).
inline long long inj_count(const Graph& h, const Graph& g) {
    if (h.vertex_count() == 0) throw std::invalid_argument("inj_count: empty pattern");
    long long count = 0;
    detail::for_each_injective_hom(h, g, [&](const std::vector<int>&) { ++count; });
    return count;
}

// |Aut(H)| by brute-force permutation search (adjacency preserved both ways).
inline long long aut_count(const Graph& h) {
    const int k = h.vertex_count();
    if (k == 0) throw std::invalid_argument("aut_count: empty graph");
    std::vector<int> image(k, -1);
    std::vector<bool> used(k, false);
    long long count = 0;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == k) {
            ++count;
            return;
        }
        for (int v = 0; v < k; ++v) {
            if (used[v]) continue;
            bool ok = true;
            for (int q = 0; q < pos && ok; ++q)
                ok = h.has_edge(q, pos) == h.has_edge(image[q], v);
            if (!ok) continue;
            image[pos] = v;
            used[v] = true;
            self(self, pos + 1);
            used[v] = false;
        }
    };
    rec(rec, 0);
    return count;
}

// Automorphisms as explicit vertex permutations (used for optional search
// pruning; capped so pathological inputs do not explode).
inline std::vector<std::vector<int>> automorphisms(const Graph& h, std::size_t cap = 50000) {
    const int k = h.vertex_count();
    std::vector<std::vector<int>> out;
    std::vector<int> image(k, -1);
    std::vector<bool> used(k, false);
    auto rec = [&](auto&& self, int pos) -> void {
        if (out.size() >= cap) return;
        if (pos == k) {
            out.push_back(image);
            return;
        }
        for (int v = 0; v < k; ++v) {
            if (used[v]) continue;
            bool ok = true;
            for (int q = 0; q < pos && ok; ++q)
                ok = h.has_edge(q, pos) == h.has_edge(image[q], v);
            if (!ok) continue;
            image[pos] = v;
            used[v] = true;
            self(self, pos + 1);
            used[v] = false;
        }
    };
    rec(rec, 0);
    return out;
}

// Unlabelled copies: inj / |Aut|.
inline long long copy_count(const Graph& h, const Graph& g) {
    return inj_count(h, g) / aut_count(h);
}

// A copy of H in G as a subgraph: image vertices (indexed by H-vertex) plus
// the image edge set.
struct Copy {
    std::vector<int> vertices;               // vertices[i] = image of H-vertex i
    std::vector<std::pair<int, int>> edges;  // normalized u < v, sorted
};

// All distinct copies (subgraphs isomorphic to H), deduplicated across the
// automorphisms of H. Deterministic order.
inline std::vector<Copy> enumerate_copies(const Graph& h, const Graph& g) {
    const int k = h.vertex_count();
    std::vector<std::pair<int, int>> h_edges = h.edges();
    std::set<std::pair<std::vector<int>, std::vector<std::pair<int, int>>>> seen;
    std::vector<Copy> out;
    detail::for_each_injective_hom(h, g, [&](const std::vector<int>& image) {
        Copy c;
        c.vertices = image;
        c.edges.reserve(h_edges.size());
        for (auto [u, v] : h_edges) {
            int a = image[u], b = image[v];
            c.edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(c.edges.begin(), c.edges.end());
        std::vector<int> vs = image;
        std::sort(vs.begin(), vs.end());
        if (seen.emplace(vs, c.edges).second) out.push_back(std::move(c));
    });
    (void)k;
    return out;
}

// Exact densities: d = 2e/v, m = max_J e(J)/v(J), m2 = max over subgraphs
// with at least one edge of (e-1)/(v-2), with d2(K2) = 1/2. Maxima are
// attained on connected induced subgraphs, which is what gets enumerated.
struct DensityReport {
    BigRat d;
    BigRat m;
    BigRat m2;
};

inline DensityReport density_stats(const Graph& h) {
    const int k = h.vertex_count();
    if (k == 0) throw std::invalid_argument("density_stats: empty graph");
    if (k > 20) throw std::invalid_argument("density_stats: too many vertices for subgraph enumeration");

    DensityReport rep;
    rep.d = BigRat(2 * h.edge_count(), k);
    rep.m = 0;
    rep.m2 = 0;

    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
        std::vector<int> verts;
        for (int v = 0; v < k; ++v)
            if ((mask >> v) & 1) verts.push_back(v);
        const int sz = static_cast<int>(verts.size());
        // Connectivity check (disconnected subsets never attain the maxima).
        std::vector<bool> reach(sz, false);
        std::vector<int> stack{0};
        reach[0] = true;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < sz; ++j)
                if (!reach[j] && h.has_edge(verts[i], verts[j])) {
                    reach[j] = true;
                    stack.push_back(j);
                }
        }
        if (std::find(reach.begin(), reach.end(), false) != reach.end()) continue;

        int e = 0;
        for (int i = 0; i < sz; ++i)
            for (int j = i + 1; j < sz; ++j)
                if (h.has_edge(verts[i], verts[j])) ++e;

        rep.m = std::max(rep.m, BigRat(e, sz));
        if (e >= 1) {
            if (sz == 2)
                rep.m2 = std::max(rep.m2, BigRat(1, 2));
            else if (sz >= 3)
                rep.m2 = std::max(rep.m2, BigRat(e - 1, sz - 2));
        }
    }
    return rep;
}

} // namespace blowram
