#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "blowram/blowup.hpp"
#include "blowram/colouring.hpp"
#include "blowram/counting.hpp"
#include "blowram/graph.hpp"
#include "blowram/search.hpp"

namespace blowram {

namespace detail {

// Decides whether every r-colouring of the full blowup G[n] contains a
// monochromatic canonical H[t]: the t-blowup of some copy of H in G, each
// part inside the class of the corresponding copy vertex.
//
// Backtracking over the blowup's edges with the usual colour-introduction
// symmetry breaking. Detection is incremental: colouring edge (x, y) can only
// complete monochromatic canonical copies through (x, y), so only copies of H
// using the base edge (class(x), class(y)) are examined, with the parts of
// those two classes pinned to contain x and y. Part selection then refines
// class by class, keeping only slots whose edges to all already-chosen parts
// carry the right colour.
class CanonicalSearch {
public:
    CanonicalSearch(const Graph& g, const Graph& h, int r, int t, int n, SearchOptions opts)
        : r_(r), t_(t), opts_(opts), host_(blowup(g, n)) {
        if (r < 1) throw std::invalid_argument("colour count must be at least 1");
        if (h.edge_count() < 1) throw std::invalid_argument("pattern needs at least one edge");
        if (t < 1 || n < 1) throw std::invalid_argument("class sizes must be at least 1");

        edges_ = host_.flat().edges();
        m_ = static_cast<int>(edges_.size());
        nf_ = host_.total_vertices();
        cm_.assign(static_cast<std::size_t>(nf_) * nf_, 0);

        const int bn = g.vertex_count();
        base_edge_plans_.assign(static_cast<std::size_t>(bn) * bn, {});
        for (const Copy& c : enumerate_copies(h, g)) build_plans(c);
    }

    bool any_copy() const {
        for (const auto& plans : base_edge_plans_)
            if (!plans.empty()) return true;
        return false;
    }

    const BlowupGraph& host() const { return host_; }

    SearchOutcome decide() {
        SearchOutcome out;
        if (t_ > min_class_size()) {
            out.verdict = Verdict::no;
            out.witness = uniform_colouring();
            out.note = "no canonical copy exists";
            return out;
        }
        if (!any_copy()) {
            out.verdict = Verdict::no;
            out.witness = uniform_colouring();
            out.note = "pattern has no copies in the base";
            return out;
        }
        colour_.assign(m_, 0);
        explored_ = 0;
        budget_hit_ = false;
        found_ = false;
        dfs(0, 0);
        out.explored = explored_;
        if (budget_hit_) {
            out.verdict = Verdict::unknown;
            out.exact = false;
            out.note = "node budget exhausted before the search completed";
            return out;
        }
        if (found_) {
            out.verdict = Verdict::no;
            out.witness = make_colouring(witness_);
        } else {
            out.verdict = Verdict::yes;
        }
        return out;
    }

private:
    // One H-copy in the base, prepared for detection through one of its base
    // edges: the class order starts with the pinned pair and then grows along
    // already-placed neighbours.
    struct Plan {
        std::vector<int> classes;            // base vertices in placement order
        std::vector<std::vector<int>> back;  // per position: earlier positions adjacent in the copy
    };

    void build_plans(const Copy& c) {
        const int k = static_cast<int>(c.vertices.size());
        std::vector<int> verts = c.vertices;
        std::sort(verts.begin(), verts.end());
        auto adjacent = [&](int a, int b) {
            auto p = std::minmax(a, b);
            return std::binary_search(c.edges.begin(), c.edges.end(),
                                      std::make_pair(p.first, p.second));
        };
        for (auto [bu, bv] : c.edges) {
            Plan plan;
            plan.classes = {bu, bv};
            std::vector<int> rest;
            for (int v : verts)
                if (v != bu && v != bv) rest.push_back(v);
            while (!rest.empty()) {
                int best = -1, best_links = -1;
                for (std::size_t i = 0; i < rest.size(); ++i) {
                    int links = 0;
                    for (int placed : plan.classes)
                        if (adjacent(rest[i], placed)) ++links;
                    if (links > best_links) {
                        best = static_cast<int>(i);
                        best_links = links;
                    }
                }
                plan.classes.push_back(rest[best]);
                rest.erase(rest.begin() + best);
            }
            plan.back.resize(k);
            for (int q = 0; q < k; ++q)
                for (int p = 0; p < q; ++p)
                    if (adjacent(plan.classes[p], plan.classes[q])) plan.back[q].push_back(p);
            base_edge_plans_[bu * host_.base().vertex_count() + bv].push_back(plan);
            base_edge_plans_[bv * host_.base().vertex_count() + bu].push_back(plan);
        }
    }

    int min_class_size() const {
        int mn = host_.class_size(0);
        for (int c = 1; c < host_.classes(); ++c) mn = std::min(mn, host_.class_size(c));
        return mn;
    }

    int colour_at(int u, int v) const { return cm_[u * nf_ + v]; }

    // Does colouring (x, y) with colour c complete a monochromatic canonical
    // copy? Checked against the current partial colouring (cm_ already holds c
    // on (x, y)).
    bool completes_mono(int x, int y, int c) const {
        int bx = host_.class_of(x), by = host_.class_of(y);
        const auto& plans = base_edge_plans_[bx * host_.base().vertex_count() + by];
        for (const Plan& plan : plans) {
            // plan.classes[0] and [1] are (bu, bv); orient the pins to match.
            int pin0, pin1;
            if (plan.classes[0] == bx) {
                pin0 = host_.slot_of(x);
                pin1 = host_.slot_of(y);
            } else {
                pin0 = host_.slot_of(y);
                pin1 = host_.slot_of(x);
            }
            parts_.assign(plan.classes.size(), {});
            if (extend(plan, 0, pin0, pin1, c)) return true;
        }
        return false;
    }

    bool extend(const Plan& plan, std::size_t pos, int pin0, int pin1, int c) const {
        if (pos == plan.classes.size()) return true;
        const int cls = plan.classes[pos];
        const int pin = pos == 0 ? pin0 : (pos == 1 ? pin1 : -1);
        const int csz = host_.class_size(cls);

        std::vector<int> cand;
        cand.reserve(csz);
        for (int s = 0; s < csz; ++s) {
            int vs = host_.vertex(cls, s);
            bool ok = true;
            for (int p : plan.back[pos]) {
                int pcls = plan.classes[p];
                for (int z : parts_[p]) {
                    if (colour_at(vs, host_.vertex(pcls, z)) != c) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) cand.push_back(s);
        }
        if (pin >= 0 && std::find(cand.begin(), cand.end(), pin) == cand.end()) return false;
        if (static_cast<int>(cand.size()) < t_) return false;

        // Branch over t-subsets of the candidates (containing the pin if any);
        // slots within a class are mutually unconstrained, but later classes
        // filter against the chosen part.
        std::vector<int>& part = parts_[pos];
        part.clear();
        if (pin >= 0) part.push_back(pin);
        auto pick = [&](auto&& self, std::size_t from) -> bool {
            if (static_cast<int>(part.size()) == t_) return extend(plan, pos + 1, pin0, pin1, c);
            for (std::size_t i = from; i < cand.size(); ++i) {
                if (cand[i] == pin) continue;
                part.push_back(cand[i]);
                if (self(self, i + 1)) return true;
                part.pop_back();
            }
            return false;
        };
        bool hit = pick(pick, 0);
        if (!hit) part.clear();
        return hit;
    }

    // Returns true when the whole search should stop.
    bool dfs(int pos, int max_used) {
        ++explored_;
        if (opts_.node_budget && explored_ > opts_.node_budget) {
            budget_hit_ = true;
            return true;
        }
        if (pos == m_) {
            witness_ = colour_;
            found_ = true;
            return true;
        }
        auto [x, y] = edges_[pos];
        int maxc = std::min(r_, max_used + 1);
        for (int c = 1; c <= maxc; ++c) {
            colour_[pos] = c;
            cm_[x * nf_ + y] = cm_[y * nf_ + x] = c;
            bool mono = completes_mono(x, y, c);
            bool stop = false;
            if (!mono) stop = dfs(pos + 1, std::max(max_used, c));
            colour_[pos] = 0;
            cm_[x * nf_ + y] = cm_[y * nf_ + x] = 0;
            if (stop) return true;
        }
        return false;
    }

    EdgeColouring make_colouring(const std::vector<int>& colours) const {
        EdgeColouring col;
        col.host = host_.flat();
        col.r = r_;
        col.edges = edges_;
        col.colours = colours;
        return col;
    }

    EdgeColouring uniform_colouring() const {
        EdgeColouring col;
        col.host = host_.flat();
        col.r = r_;
        col.edges = edges_;
        col.colours.assign(m_, 1);
        return col;
    }

    int r_, t_;
    SearchOptions opts_;
    BlowupGraph host_;
    std::vector<std::pair<int, int>> edges_;
    int m_ = 0, nf_ = 0;
    std::vector<int> cm_;  // flat colour lookup, 0 = unassigned
    std::vector<std::vector<Plan>> base_edge_plans_;

    std::vector<int> colour_;
    mutable std::vector<std::vector<int>> parts_;
    std::uint64_t explored_ = 0;
    bool budget_hit_ = false;
    bool found_ = false;
    std::vector<int> witness_;
};

} // namespace detail

// Does every r-colouring of the full blowup G[n] contain a monochromatic
// canonical copy of H[t]? The witness on "no" colours G[n]'s edges.
inline SearchOutcome canonical_arrows(const Graph& g, const Graph& h, int r, int t, int n,
                                      const SearchOptions& opts = {}) {
    detail::CanonicalSearch s(g, h, r, t, n, opts);
    return s.decide();
}

struct BlowupRamseyResult {
    enum class Kind { found, infinite, unknown };
    Kind kind = Kind::unknown;
    int n = 0;            // least class size that works, when found
    int undecided_n = 0;  // first class size whose search was inconclusive
    std::uint64_t explored = 0;
    std::string note;
};

// Least n with canonical arrowing of H[t] inside G[n], by increasing scan
// (restricting classes keeps any colouring valid, so the property is monotone
// in n). Infinite when G does not even arrow H.
inline BlowupRamseyResult blowup_ramsey_number(const Graph& g, const Graph& h, int r, int t,
                                               int n_cap, const SearchOptions& opts = {}) {
    BlowupRamseyResult res;
    SearchOutcome base = arrows(g, h, r, opts);
    res.explored += base.explored;
    if (base.verdict == Verdict::unknown) {
        res.kind = BlowupRamseyResult::Kind::unknown;
        res.note = "arrowing of the pattern itself is undecided within the budget";
        return res;
    }
    if (base.verdict == Verdict::no) {
        res.kind = BlowupRamseyResult::Kind::infinite;
        res.note = "host does not arrow the pattern, so no blowup size suffices";
        return res;
    }
    for (int n = std::max(1, t); n <= n_cap; ++n) {
        SearchOutcome out = canonical_arrows(g, h, r, t, n, opts);
        res.explored += out.explored;
        if (out.verdict == Verdict::yes) {
            res.kind = BlowupRamseyResult::Kind::found;
            res.n = n;
            return res;
        }
        if (out.verdict == Verdict::unknown) {
            res.kind = BlowupRamseyResult::Kind::unknown;
            res.undecided_n = n;
            res.note = "undecided at class size " + std::to_string(n) + " within the budget";
            return res;
        }
    }
    res.kind = BlowupRamseyResult::Kind::unknown;
    res.undecided_n = n_cap + 1;
    res.note = "no arrowing class size up to the cap " + std::to_string(n_cap);
    return res;
}

} // namespace blowram
