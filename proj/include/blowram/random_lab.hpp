#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "blowram/counting.hpp"
#include "blowram/graph.hpp"
#include "blowram/rational.hpp"
#include "blowram/search.hpp"

namespace blowram {

// ---------------------------------------------------------------------------
// Stateless randomness. Every random decision is a pure function of
// (seed, stream indices), so results are independent of evaluation order and
// thread count: two runs with the same seed are byte-identical.
//
//   value(seed, a)    = sm(sm(seed) + a)
//   value(seed, a, b) = sm(sm(sm(seed) + a) + b)
//
// where sm is the SplitMix64 finalizer.
// ---------------------------------------------------------------------------

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t stream2(std::uint64_t seed, std::uint64_t a) {
    return splitmix64(splitmix64(seed) + a);
}

inline std::uint64_t stream3(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(seed) + a) + b);
}

} // namespace rng

// G(n, p): each of the C(n,2) possible edges appears independently with
// probability p. Edge (u, v), u < v, is decided by stream index
// u*(2n-u-1)/2 + (v-u-1), its lexicographic rank. p <= 0 and p >= 1 are exact.
inline Graph sample_gnp(int n, double p, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    Graph g(n);
    const long double threshold = static_cast<long double>(p) * 18446744073709551616.0L;
    std::uint64_t idx = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++idx)
            if (static_cast<long double>(rng::stream2(seed, idx)) < threshold) g.add_edge(u, v);
    return g;
}

// The appearance-threshold scale n^(-1/m2) for copies of the pattern.
inline double threshold_scale(const Graph& h, int n) {
    if (n < 1) throw std::invalid_argument("host size must be positive");
    DensityReport d = density_stats(h);
    if (d.m2 <= 0) throw std::invalid_argument("pattern needs at least one edge");
    double m2 = numerator(d.m2).convert_to<double>() / denominator(d.m2).convert_to<double>();
    return std::pow(static_cast<double>(n), -1.0 / m2);
}

// ---------------------------------------------------------------------------
// Robustness with a budget. Tries the exact branch-and-bound first; if the
// node budget runs out, the incumbent is refined by restart local search
// (random colouring, first-improvement single-edge recolours, up to 100
// sideways moves per restart) and reported as a labelled upper bound.
// ---------------------------------------------------------------------------

struct RobustnessEstimate {
    BigRat value;          // mult_r / mult_1; an upper bound unless exact
    bool exact = false;
    long long mult_r = 0;  // exact minimum or the best colouring found
    long long mult_1 = 0;
    std::uint64_t explored = 0;
    int restarts = 0;
    std::string note;
};

namespace detail {

// Copies-through-edge structure for evaluating single-edge recolours.
class MonoTally {
public:
    MonoTally(const Graph& g, const Graph& h) : m_(g.edge_count()) {
        const int n = g.vertex_count();
        std::vector<int> edge_id(static_cast<std::size_t>(n) * n, -1);
        auto edges = g.edges();
        for (int i = 0; i < m_; ++i) {
            auto [u, v] = edges[i];
            edge_id[u * n + v] = edge_id[v * n + u] = i;
        }
        for (const Copy& c : enumerate_copies(h, g)) {
            std::vector<int> ids;
            for (auto [u, v] : c.edges) ids.push_back(edge_id[u * n + v]);
            copies_.push_back(std::move(ids));
        }
        through_.assign(m_, {});
        for (std::size_t ci = 0; ci < copies_.size(); ++ci)
            for (int e : copies_[ci]) through_[e].push_back(static_cast<int>(ci));
    }

    int edge_count() const { return m_; }
    long long copy_count() const { return static_cast<long long>(copies_.size()); }

    long long mono(const std::vector<int>& colour) const {
        long long total = 0;
        for (const auto& ids : copies_) total += is_mono(ids, colour);
        return total;
    }

    // Change in the monochromatic count if edge e is recoloured to c.
    // Temporarily applies the move to the caller's vector.
    long long delta(std::vector<int>& colour, int e, int c) const {
        long long d = 0;
        const int old = colour[e];
        for (int ci : through_[e]) d -= is_mono(copies_[ci], colour);
        colour[e] = c;
        for (int ci : through_[e]) d += is_mono(copies_[ci], colour);
        colour[e] = old;
        return d;
    }

private:
    static long long is_mono(const std::vector<int>& ids, const std::vector<int>& colour) {
        for (std::size_t i = 1; i < ids.size(); ++i)
            if (colour[ids[i]] != colour[ids[0]]) return 0;
        return 1;
    }

    int m_;
    std::vector<std::vector<int>> copies_;
    std::vector<std::vector<int>> through_;
};

} // namespace detail

inline RobustnessEstimate estimate_robustness(const Graph& g, const Graph& h, int r,
                                              std::uint64_t budget, std::uint64_t seed) {
    if (r < 1) throw std::invalid_argument("colour count must be at least 1");
    RobustnessEstimate est;
    est.mult_1 = copy_count(h, g);
    if (est.mult_1 == 0)
        throw std::invalid_argument("robustness undefined: pattern has no copies in host");

    SearchOptions opts;
    opts.node_budget = budget;
    opts.threads = 1;
    SearchOutcome out = multiplicity(g, h, r, opts);
    est.explored = out.explored;
    if (out.exact) {
        est.exact = true;
        est.mult_r = out.count;
        est.value = BigRat(est.mult_r, est.mult_1);
        return est;
    }

    // Refinement: the same budget again, counted in move evaluations.
    detail::MonoTally tally(g, h);
    const int m = tally.edge_count();
    long long best = out.count;
    std::uint64_t iters = 0;
    while (iters < budget && best > 0) {
        ++est.restarts;
        std::vector<int> colour(m);
        for (int e = 0; e < m; ++e)
            colour[e] = 1 + static_cast<int>(
                                rng::stream3(seed, static_cast<std::uint64_t>(est.restarts), e) % r);
        long long cur = tally.mono(colour);
        int sideways = 0;
        bool moving = true;
        while (moving && iters < budget) {
            moving = false;
            for (int e = 0; e < m && iters < budget; ++e) {
                for (int c = 1; c <= r; ++c) {
                    if (c == colour[e]) continue;
                    ++iters;
                    long long d = tally.delta(colour, e, c);
                    if (d < 0 || (d == 0 && sideways < 100)) {
                        if (d == 0) ++sideways;
                        colour[e] = c;
                        cur += d;
                        moving = moving || d < 0;
                    }
                    if (iters >= budget) break;
                }
            }
        }
        if (cur < best) best = cur;
    }
    est.mult_r = best;
    est.value = BigRat(est.mult_r, est.mult_1);
    est.note = "node budget exhausted; value is an upper bound from restart local search";
    return est;
}

// ---------------------------------------------------------------------------
// Arrowing frequency across an edge-probability grid. Each sample decides
// whether G(n, p) arrows the pattern within a per-sample node budget; the
// sample's graph is drawn with the derived seed stream3(seed, pi+1, si+1), so
// the whole table is a pure function of (seed, grid, samples) regardless of
// thread count.
// ---------------------------------------------------------------------------

struct ArrowPoint {
    double p = 0;
    int yes = 0;
    int undecided = 0;
};

struct ArrowExperimentResult {
    int r = 0, n = 0, samples = 0;
    std::uint64_t seed = 0, budget = 0;
    std::vector<ArrowPoint> points;

    std::string csv() const {
        std::string out = "p,arrow_freq,undecided_frac,samples,seed\n";
        char buf[160];
        for (const ArrowPoint& pt : points) {
            std::snprintf(buf, sizeof buf, "%.6g,%.6f,%.6f,%d,%llu\n", pt.p,
                          samples ? static_cast<double>(pt.yes) / samples : 0.0,
                          samples ? static_cast<double>(pt.undecided) / samples : 0.0, samples,
                          static_cast<unsigned long long>(seed));
            out += buf;
        }
        return out;
    }
};

inline ArrowExperimentResult arrow_experiment(const Graph& h, int r, int n,
                                              const std::vector<double>& p_grid, int samples,
                                              std::uint64_t seed,
                                              std::uint64_t per_sample_budget = 200'000,
                                              int threads = 0) {
    if (samples < 1) throw std::invalid_argument("sample count must be positive");
    if (n < 1) throw std::invalid_argument("host size must be positive");
    if (h.edge_count() < 1) throw std::invalid_argument("pattern needs at least one edge");
    if (r < 1) throw std::invalid_argument("colour count must be at least 1");

    ArrowExperimentResult res;
    res.r = r;
    res.n = n;
    res.samples = samples;
    res.seed = seed;
    res.budget = per_sample_budget;
    res.points.resize(p_grid.size());
    for (std::size_t pi = 0; pi < p_grid.size(); ++pi) res.points[pi].p = p_grid[pi];

    const std::size_t total = p_grid.size() * static_cast<std::size_t>(samples);
    std::vector<unsigned char> verdicts(total, 0);  // 0 no, 1 yes, 2 undecided

    auto run_one = [&](std::size_t task) {
        const std::size_t pi = task / samples;
        const std::size_t si = task % samples;
        Graph g = sample_gnp(n, p_grid[pi], rng::stream3(seed, pi + 1, si + 1));
        SearchOptions opts;
        opts.node_budget = per_sample_budget;
        opts.threads = 1;
        Verdict v = arrows(g, h, r, opts).verdict;
        verdicts[task] = v == Verdict::yes ? 1 : (v == Verdict::unknown ? 2 : 0);
    };

    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min<int>(workers, static_cast<int>(total));
    if (workers <= 1) {
        for (std::size_t t = 0; t < total; ++t) run_one(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < total; t = next.fetch_add(1)) run_one(t);
            });
        for (auto& th : pool) th.join();
    }

    for (std::size_t t = 0; t < total; ++t) {
        ArrowPoint& pt = res.points[t / samples];
        if (verdicts[t] == 1) ++pt.yes;
        if (verdicts[t] == 2) ++pt.undecided;
    }
    return res;
}

} // namespace blowram
