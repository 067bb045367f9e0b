#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "blowram/random_lab.hpp"
#include "oracles.hpp"

using namespace blowram;

TEST_CASE("edge-probability sampling endpoints and determinism") {
    REQUIRE(sample_gnp(7, 0.0, 123).edge_count() == 0);
    REQUIRE(sample_gnp(7, 1.0, 123) == Graph::complete(7));
    REQUIRE(sample_gnp(0, 0.5, 1).vertex_count() == 0);

    Graph a = sample_gnp(10, 0.4, 999);
    Graph b = sample_gnp(10, 0.4, 999);
    REQUIRE(a == b);
    // A different seed almost surely moves at least one of 45 pairs.
    REQUIRE(!(a == sample_gnp(10, 0.4, 1000)));

    REQUIRE_THROWS_AS(sample_gnp(-1, 0.5, 1), std::invalid_argument);
}

TEST_CASE("same-seed samples are nested across probabilities") {
    for (std::uint64_t seed : {1ULL, 2ULL, 77ULL}) {
        Graph lo = sample_gnp(9, 0.25, seed);
        Graph hi = sample_gnp(9, 0.65, seed);
        for (auto [u, v] : lo.edges()) REQUIRE(hi.has_edge(u, v));
    }
}

TEST_CASE("edge marginals sit within three standard errors") {
    const double p = 0.3;
    const int trials = 10000;
    const std::pair<int, int> probes[] = {{0, 1}, {2, 5}, {3, 4}, {1, 6}, {6, 7}};
    int hits[5] = {0, 0, 0, 0, 0};
    for (int s = 1; s <= trials; ++s) {
        Graph g = sample_gnp(8, p, static_cast<std::uint64_t>(s));
        for (int i = 0; i < 5; ++i)
            if (g.has_edge(probes[i].first, probes[i].second)) ++hits[i];
    }
    const double se = std::sqrt(p * (1 - p) / trials);
    for (int i = 0; i < 5; ++i) {
        double freq = static_cast<double>(hits[i]) / trials;
        REQUIRE(std::abs(freq - p) <= 3 * se);
    }
}

TEST_CASE("threshold scale follows the two-density exponent") {
    REQUIRE(threshold_scale(Graph::complete(3), 16) == Catch::Approx(0.25).epsilon(1e-12));
    REQUIRE(threshold_scale(Graph::complete(2), 10) == Catch::Approx(0.01).epsilon(1e-12));
    REQUIRE(threshold_scale(Graph::cycle(4), 8)
            == Catch::Approx(std::pow(8.0, -2.0 / 3.0)).epsilon(1e-12));
    REQUIRE_THROWS_AS(threshold_scale(Graph::complete(3), 0), std::invalid_argument);
    REQUIRE_THROWS_AS(threshold_scale(Graph(2), 5), std::invalid_argument);
}

TEST_CASE("robustness estimation is exact when the budget allows") {
    RobustnessEstimate est = estimate_robustness(Graph::complete(6), Graph::complete(3), 2,
                                                 10'000'000, 1);
    REQUIRE(est.exact);
    REQUIRE(est.value == BigRat(1, 10));
    REQUIRE(est.mult_r == 2);
    REQUIRE(est.mult_1 == 20);
    REQUIRE(est.note.empty());
}

TEST_CASE("budgeted estimates are honest upper bounds") {
    RobustnessEstimate est = estimate_robustness(Graph::complete(6), Graph::complete(3), 2,
                                                 200, 7);
    REQUIRE(!est.exact);
    REQUIRE(est.value >= BigRat(1, 10));
    REQUIRE(est.value <= BigRat(1));
    REQUIRE(est.restarts >= 1);
    REQUIRE(est.note.find("upper bound") != std::string::npos);

    REQUIRE_THROWS_AS(estimate_robustness(Graph::path(3), Graph::complete(3), 2, 100, 1),
                      std::invalid_argument);
}

TEST_CASE("arrow experiment tables are thread-count independent") {
    const Graph k3 = Graph::complete(3);
    ArrowExperimentResult one = arrow_experiment(k3, 2, 6, {0.3, 0.8}, 12, 9, 200'000, 1);
    ArrowExperimentResult four = arrow_experiment(k3, 2, 6, {0.3, 0.8}, 12, 9, 200'000, 4);
    REQUIRE(one.csv() == four.csv());
    REQUIRE(one.csv().find("p,arrow_freq,undecided_frac,samples,seed\n") == 0);

    // Rerunning with the same parameters reproduces the bytes too.
    ArrowExperimentResult again = arrow_experiment(k3, 2, 6, {0.3, 0.8}, 12, 9, 200'000, 2);
    REQUIRE(again.csv() == one.csv());
}

TEST_CASE("certain hosts pin the arrowing frequency at one") {
    ArrowExperimentResult res = arrow_experiment(Graph::complete(3), 2, 6, {1.0}, 15, 3);
    REQUIRE(res.points.size() == 1);
    REQUIRE(res.points[0].yes == 15);
    REQUIRE(res.points[0].undecided == 0);
    REQUIRE(res.csv().find("1,1.000000,0.000000,15,3") != std::string::npos);
}

TEST_CASE("a starved budget reports every sample as undecided") {
    ArrowExperimentResult res = arrow_experiment(Graph::complete(3), 2, 6, {0.9}, 8, 5, 1, 2);
    REQUIRE(res.points[0].undecided == 8);
    REQUIRE(res.points[0].yes == 0);
}

TEST_CASE("experiment input validation") {
    REQUIRE_THROWS_AS(arrow_experiment(Graph::complete(3), 2, 6, {0.5}, 0, 1),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(arrow_experiment(Graph::complete(3), 2, 0, {0.5}, 5, 1),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(arrow_experiment(Graph(3), 2, 6, {0.5}, 5, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(arrow_experiment(Graph::complete(3), 0, 6, {0.5}, 5, 1),
                      std::invalid_argument);
}
