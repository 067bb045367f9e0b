#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "blowram/colouring.hpp"
#include "blowram/counting.hpp"
#include "blowram/graph.hpp"
#include "blowram/rational.hpp"

namespace blowram {

enum class Verdict { yes, no, unknown };

struct SearchOptions {
    int threads = 0;                // 0 = machine parallelism
    std::uint64_t node_budget = 0;  // 0 = unlimited; budgeted runs are sequential
    bool automorphism_pruning = false;
    std::uint64_t seed = 1;         // used by randomized fallbacks only
};

struct SearchOutcome {
    Verdict verdict = Verdict::unknown;
    long long count = -1;  // minimization value; an upper bound when !exact
    bool exact = true;
    std::uint64_t explored = 0;
    std::optional<EdgeColouring> witness;
    std::string note;
};

namespace detail {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Backtracking engine over r-colourings of the host's edges, tracking which
// target copies are forced monochromatic. Colour-permutation symmetry is
// broken by allowing colour c on an edge only once colours 1..c-1 appear
// earlier in the search order.
class MonoSearch {
public:
    MonoSearch(const Graph& host, const Graph& pattern, int r, SearchOptions opts)
        : host_(host), r_(r), opts_(opts) {
        if (r < 1) throw std::invalid_argument("colour count must be at least 1");
        if (pattern.edge_count() < 1) throw std::invalid_argument("pattern needs at least one edge");
        edges_ = host.edges();
        m_ = static_cast<int>(edges_.size());

        const int n = host.vertex_count();
        edge_id_.assign(static_cast<std::size_t>(n) * n, -1);
        for (int i = 0; i < m_; ++i) {
            auto [u, v] = edges_[i];
            edge_id_[u * n + v] = edge_id_[v * n + u] = i;
        }

        for (const Copy& c : enumerate_copies(pattern, host)) {
            std::vector<int> ids;
            ids.reserve(c.edges.size());
            for (auto [u, v] : c.edges) ids.push_back(edge_id_[u * n + v]);
            copies_.push_back(std::move(ids));
        }
        edge_copies_.assign(m_, {});
        for (std::size_t ci = 0; ci < copies_.size(); ++ci)
            for (int e : copies_[ci]) edge_copies_[e].push_back(static_cast<int>(ci));

        // Search order: edges through many copies first, ties lexicographic.
        order_.resize(m_);
        for (int i = 0; i < m_; ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            return edge_copies_[a].size() > edge_copies_[b].size();
        });

        if (opts_.automorphism_pruning && r <= 32) {  // renaming table is fixed-width
            for (const auto& perm : automorphisms(host)) {
                std::vector<int> ep(m_);
                for (int i = 0; i < m_; ++i) {
                    auto [u, v] = edges_[i];
                    ep[i] = edge_id_[perm[u] * n + perm[v]];
                }
                eperms_.push_back(std::move(ep));
            }
        }
    }

    long long copy_total() const { return static_cast<long long>(copies_.size()); }

    // --- public drivers -----------------------------------------------------

    // verdict yes = every r-colouring contains a monochromatic copy.
    SearchOutcome decide_arrows() {
        SearchOutcome out;
        if (copies_.empty()) {
            out.verdict = Verdict::no;
            out.witness = uniform_colouring();
            out.note = "pattern has no copies in host";
            return out;
        }
        run(Mode::decide);
        out.explored = explored_total_;
        if (budget_hit_) {
            out.verdict = Verdict::unknown;
            out.exact = false;
            out.note = "node budget exhausted before the search completed";
            return out;
        }
        if (found_.load()) {
            out.verdict = Verdict::no;
            out.witness = make_colouring(witness_);
        } else {
            out.verdict = Verdict::yes;
        }
        return out;
    }

    // count = minimum number of monochromatic copies over all r-colourings.
    SearchOutcome minimize_mono() {
        SearchOutcome out;
        if (copies_.empty()) {
            out.count = 0;
            out.verdict = Verdict::no;
            out.witness = uniform_colouring();
            out.note = "pattern has no copies in host";
            return out;
        }
        run(Mode::minimize);
        out.explored = explored_total_;
        if (budget_hit_) {
            out.exact = false;
            if (best_.load() <= copy_total()) {
                out.count = best_.load();
                out.witness = make_colouring(witness_);
            } else {
                // No leaf reached: the single-colour colouring is still a bound.
                out.count = copy_total();
                out.witness = uniform_colouring();
            }
            out.verdict = out.count >= 1 ? Verdict::unknown : Verdict::no;
            out.note = "node budget exhausted; count is an upper bound";
            return out;
        }
        out.count = best_.load();
        out.witness = make_colouring(witness_);
        out.verdict = out.count >= 1 ? Verdict::yes : Verdict::no;
        return out;
    }

    // Visit every complete colouring with no monochromatic copy (one
    // representative per colour-permutation class). visit may return false to
    // stop. Returns false if the enumeration was stopped early.
    template <typename V>
    bool enumerate_monofree(V&& visit) {
        State st = fresh_state();
        bool keep_going = true;
        auto rec = [&](auto&& self, int pos, int max_used) -> void {
            if (!keep_going) return;
            if (pos == m_) {
                keep_going = visit(const_cast<const std::vector<int>&>(st.colour));
                return;
            }
            int e = order_[pos];
            int maxc = std::min(r_, max_used + 1);
            for (int c = 1; c <= maxc && keep_going; ++c) {
                if (assign(st, e, c) == 0)
                    self(self, pos + 1, std::max(max_used, c));
                unassign(st, e, c);
            }
        };
        rec(rec, 0, 0);
        return keep_going;
    }

    EdgeColouring make_colouring(const std::vector<int>& colour_by_edge_id) const {
        EdgeColouring col;
        col.host = host_;
        col.r = r_;
        col.edges = edges_;
        col.colours = colour_by_edge_id;
        return col;
    }

private:
    enum class Mode { decide, minimize };

    struct State {
        std::vector<int> colour;  // per edge id; 0 = unassigned
        std::vector<int> cnt;     // copy-major colour tallies
        std::vector<int> unc;     // uncoloured edges per copy
        long long forced = 0;     // copies already monochromatic
        std::uint64_t explored = 0;
    };

    State fresh_state() const {
        State st;
        st.colour.assign(m_, 0);
        st.cnt.assign(copies_.size() * r_, 0);
        st.unc.resize(copies_.size());
        for (std::size_t i = 0; i < copies_.size(); ++i)
            st.unc[i] = static_cast<int>(copies_[i].size());
        return st;
    }

    // Returns the number of copies this assignment completed monochromatically.
    int assign(State& st, int e, int c) const {
        st.colour[e] = c;
        int made_mono = 0;
        for (int ci : edge_copies_[e]) {
            int& cnt = st.cnt[ci * r_ + (c - 1)];
            ++cnt;
            if (--st.unc[ci] == 0 && cnt == static_cast<int>(copies_[ci].size()))
                ++made_mono;
        }
        st.forced += made_mono;
        return made_mono;
    }

    void unassign(State& st, int e, int c) const {
        for (int ci : edge_copies_[e]) {
            int& cnt = st.cnt[ci * r_ + (c - 1)];
            if (st.unc[ci] == 0 && cnt == static_cast<int>(copies_[ci].size()))
                --st.forced;
            --cnt;
            ++st.unc[ci];
        }
        st.colour[e] = 0;
    }

    EdgeColouring uniform_colouring() const {
        EdgeColouring col;
        col.host = host_;
        col.r = r_;
        col.edges = edges_;
        col.colours.assign(m_, 1);
        return col;
    }

    // Lex-leader test against the graph automorphisms: prune when some
    // automorphism maps the current (colour-canonical) prefix to a fully
    // assigned, strictly smaller sequence after first-appearance renaming.
    bool dominated_by_automorphism(const State& st, int len) const {
        for (const auto& ep : eperms_) {
            int next_c = 1;
            int cmap[33] = {0};  // r is small; colours 1..32 supported here
            bool applicable = true;
            int cmpresult = 0;  // -1: image smaller, +1: image larger
            for (int i = 0; i < len; ++i) {
                int f = ep[order_[i]];
                int cf = st.colour[f];
                if (cf == 0) { applicable = false; break; }
                if (cmap[cf] == 0) cmap[cf] = next_c++;
                int d = cmap[cf];
                int c = st.colour[order_[i]];
                if (d != c) { cmpresult = d < c ? -1 : 1; break; }
            }
            if (applicable && cmpresult < 0) return true;
        }
        return false;
    }

    // --- sequential cores ----------------------------------------------------

    bool budget_exceeded(State& st) {
        ++st.explored;
        if (opts_.node_budget && st.explored + explored_total_ > opts_.node_budget) {
            budget_hit_ = true;
            return true;
        }
        return false;
    }

    // Returns true when the whole search should stop.
    bool dfs_decide(State& st, int pos, int max_used) {
        if (found_.load(std::memory_order_relaxed)) return true;
        if (budget_exceeded(st)) return true;
        if (pos == m_) {
            std::lock_guard<std::mutex> lock(witness_mutex_);
            if (!found_.load()) {
                witness_ = st.colour;
                found_.store(true);
            }
            return true;
        }
        if (!eperms_.empty() && pos > 0 && dominated_by_automorphism(st, pos)) return false;
        int e = order_[pos];
        int maxc = std::min(r_, max_used + 1);
        for (int c = 1; c <= maxc; ++c) {
            bool stop = false;
            if (assign(st, e, c) == 0)
                stop = dfs_decide(st, pos + 1, std::max(max_used, c));
            unassign(st, e, c);
            if (stop) return true;
        }
        return false;
    }

    void dfs_minimize(State& st, int pos, int max_used) {
        if (budget_hit_) return;
        if (budget_exceeded(st)) return;
        if (st.forced >= best_.load(std::memory_order_relaxed)) return;
        if (pos == m_) {
            long long cur = best_.load();
            while (st.forced < cur && !best_.compare_exchange_weak(cur, st.forced)) {
            }
            if (st.forced <= cur) {
                std::lock_guard<std::mutex> lock(witness_mutex_);
                if (st.forced <= best_.load()) witness_ = st.colour;
            }
            return;
        }
        if (!eperms_.empty() && pos > 0 && dominated_by_automorphism(st, pos)) return;
        int e = order_[pos];
        int maxc = std::min(r_, max_used + 1);
        for (int c = 1; c <= maxc; ++c) {
            assign(st, e, c);
            dfs_minimize(st, pos + 1, std::max(max_used, c));
            unassign(st, e, c);
        }
    }

    // --- driver ---------------------------------------------------------------

    struct Task {
        std::vector<int> prefix;  // colours along order_[0..len)
        int max_used = 0;
    };

    std::vector<Task> expand_tasks(Mode mode, int want) {
        std::vector<Task> frontier{{{}, 0}};
        int depth = 0;
        while (depth < m_ && depth < 16 && static_cast<int>(frontier.size()) < want) {
            std::vector<Task> next;
            State st = fresh_state();
            for (const Task& t : frontier) {
                for (int i = 0; i < depth; ++i) assign(st, order_[i], t.prefix[i]);
                int e = order_[depth];
                int maxc = std::min(r_, t.max_used + 1);
                for (int c = 1; c <= maxc; ++c) {
                    int mono = assign(st, e, c);
                    if (mode == Mode::minimize || mono == 0) {
                        Task child = t;
                        child.prefix.push_back(c);
                        child.max_used = std::max(t.max_used, c);
                        next.push_back(std::move(child));
                    }
                    unassign(st, e, c);
                }
                for (int i = depth - 1; i >= 0; --i) unassign(st, order_[i], t.prefix[i]);
            }
            frontier = std::move(next);
            ++depth;
            if (frontier.empty()) break;
        }
        return frontier;
    }

    void run_task(Mode mode, const Task& t) {
        State st = fresh_state();
        for (std::size_t i = 0; i < t.prefix.size(); ++i) assign(st, order_[i], t.prefix[i]);
        int pos = static_cast<int>(t.prefix.size());
        if (mode == Mode::decide)
            dfs_decide(st, pos, t.max_used);
        else
            dfs_minimize(st, pos, t.max_used);
        explored_total_ += st.explored;
    }

    void run(Mode mode) {
        found_.store(false);
        best_.store(copy_total() + 1);
        budget_hit_ = false;
        explored_total_ = 0;

        int threads = resolve_threads(opts_.threads);
        bool parallel = threads > 1 && opts_.node_budget == 0 && m_ >= 12;
        if (!parallel) {
            State st = fresh_state();
            if (mode == Mode::decide)
                dfs_decide(st, 0, 0);
            else
                dfs_minimize(st, 0, 0);
            explored_total_ += st.explored;
            return;
        }

        std::vector<Task> tasks = expand_tasks(mode, threads * 8);
        if (tasks.empty()) {
            // Every branch at the split depth forced a copy; fall back.
            State st = fresh_state();
            if (mode == Mode::decide)
                dfs_decide(st, 0, 0);
            else
                dfs_minimize(st, 0, 0);
            explored_total_ += st.explored;
            return;
        }
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                if (mode == Mode::decide && found_.load()) return;
                run_task(mode, tasks[i]);
            }
        };
        std::vector<std::thread> pool;
        int nw = std::min<int>(threads, static_cast<int>(tasks.size()));
        pool.reserve(nw);
        for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Graph host_;
    int r_;
    SearchOptions opts_;
    int m_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> edge_id_;
    std::vector<std::vector<int>> copies_;
    std::vector<std::vector<int>> edge_copies_;
    std::vector<int> order_;
    std::vector<std::vector<int>> eperms_;

    std::atomic<bool> found_{false};
    std::atomic<long long> best_{0};
    // explored_total_ is accumulated by worker threads one task at a time; the
    // budget check reads it racily, which only makes truncation conservative
    // (budgeted runs are sequential anyway).
    std::atomic<std::uint64_t> explored_total_{0};
    bool budget_hit_ = false;
    std::mutex witness_mutex_;
    std::vector<int> witness_;
};

} // namespace detail

// Does every r-colouring of G's edges contain a monochromatic copy of H?
inline SearchOutcome arrows(const Graph& g, const Graph& h, int r,
                            const SearchOptions& opts = {}) {
    detail::MonoSearch s(g, h, r, opts);
    return s.decide_arrows();
}

// Minimum number of monochromatic H-copies over all r-colourings of G.
inline SearchOutcome multiplicity(const Graph& g, const Graph& h, int r,
                                  const SearchOptions& opts = {}) {
    detail::MonoSearch s(g, h, r, opts);
    return s.minimize_mono();
}

struct RobustnessResult {
    BigRat value;       // Mult_r / Mult_1; an upper bound when !exact
    bool exact = true;
    long long mult_r = 0;
    long long mult_1 = 0;
    SearchOutcome outcome;  // the Mult_r search
};

// R_r(H; G) = Mult_r(H; G) / Mult_1(H; G); positive iff G r-arrows H.
inline RobustnessResult robustness(const Graph& g, const Graph& h, int r,
                                   const SearchOptions& opts = {}) {
    long long denom = copy_count(h, g);
    if (denom == 0) throw std::invalid_argument("robustness undefined: pattern has no copies in host");
    RobustnessResult res;
    res.outcome = multiplicity(g, h, r, opts);
    res.mult_r = res.outcome.count;
    res.mult_1 = denom;
    res.exact = res.outcome.exact;
    res.value = BigRat(res.mult_r, denom);
    return res;
}

struct SenderReport {
    bool is_sender = false;
    bool host_arrows = false;        // true would violate clause (i)
    bool forces = false;             // clause (ii) on the designated edge pair
    std::optional<EdgeColouring> counterexample;
    std::string detail;
};

// Checks the signal-sender property for edges e and f of S: S must not
// r-arrow H, and every colouring of S without a monochromatic H must give e
// and f equal colours (positive) or distinct colours (negative).
inline SenderReport verify_signal_sender(const Graph& s, std::pair<int, int> e,
                                         std::pair<int, int> f, int r, const Graph& h,
                                         bool positive, const SearchOptions& opts = {}) {
    if (!s.has_edge(e.first, e.second) || !s.has_edge(f.first, f.second))
        throw std::invalid_argument("designated pairs must be edges of the host");

    detail::MonoSearch search(s, h, r, opts);
    auto edge_index = [&](std::pair<int, int> p) {
        auto edges = s.edges();
        if (p.first > p.second) std::swap(p.first, p.second);
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i] == p) return static_cast<int>(i);
        throw std::logic_error("edge vanished");
    };
    const int ei = edge_index(e), fi = edge_index(f);

    SenderReport rep;
    bool any = false;
    std::optional<std::vector<int>> violating;
    search.enumerate_monofree([&](const std::vector<int>& colour) {
        any = true;
        bool agree = colour[ei] == colour[fi];
        if (agree != positive) {
            violating = colour;
            return false;  // one counterexample settles clause (ii)
        }
        return true;
    });

    rep.host_arrows = !any;
    rep.forces = any && !violating.has_value();
    rep.is_sender = !rep.host_arrows && rep.forces;
    if (rep.host_arrows) {
        rep.detail = "host arrows the pattern: no colouring avoids a monochromatic copy";
    } else if (violating) {
        rep.counterexample = search.make_colouring(*violating);
        rep.detail = positive ? "monochromatic-free colouring with distinct colours on the edge pair"
                              : "monochromatic-free colouring with equal colours on the edge pair";
    } else {
        rep.detail = "all monochromatic-free colourings force the designated relation";
    }
    return rep;
}

} // namespace blowram
