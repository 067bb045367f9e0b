#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowram/counting.hpp"
#include "blowram/graph.hpp"
#include "blowram/rational.hpp"
#include "blowram/search.hpp"

namespace blowram {

namespace detail {

// "a.bce+XX" rendering of e^ln_value without ever materializing the number.
inline std::string render_exp(double ln_value) {
    if (std::isinf(ln_value)) return ln_value > 0 ? "inf" : "0";
    double exp10 = ln_value / std::log(10.0);
    double b = std::floor(exp10);
    double a = std::pow(10.0, exp10 - b);
    if (a >= 9.995) {  // rounding pushed the mantissa over
        a /= 10.0;
        b += 1.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2fe%+03d", a, static_cast<int>(b));
    return buf;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Upper-bound constant: host[e^(ln_c t)] canonically r-arrows
// pattern[t,...,t, e^(ln_c0 t)], with ln_c = r^v 4^(v^2-v) / R^v driven by the
// robustness R of the pattern in the host.
// ---------------------------------------------------------------------------

struct BoundReport {
    BigRat ln_c;
    BigRat ln_c0;
    BigRat robustness_used;
    int r = 0;
    int vh = 0;  // pattern vertices
    int eh = 0;  // pattern edges
    std::string claim;
};

// Formula level: everything downstream of the robustness value.
inline BoundReport upper_constant_from(const BigRat& robustness, int vh, int eh, int r) {
    if (robustness <= 0) throw std::domain_error("host does not arrow the pattern; constant undefined");
    if (vh < 1 || r < 1) throw std::invalid_argument("bad pattern or colour count");
    const unsigned v = static_cast<unsigned>(vh);
    BoundReport rep;
    rep.robustness_used = robustness;
    rep.r = r;
    rep.vh = vh;
    rep.eh = eh;
    BigInt numer = big_pow(r, v) * big_pow(4, v * v - v);
    rep.ln_c = BigRat(numer) / rat_pow(robustness, v);
    rep.ln_c0 = rep.ln_c * (BigRat(1) - rat_pow(robustness / r, v - 1));
    std::string ts;
    for (int i = 0; i + 1 < vh; ++i) ts += "t, ";
    rep.claim = "host[e^(" + rat_to_string(rep.ln_c) + " t)] canonically "
                + std::to_string(r) + "-arrows pattern[" + ts + "e^("
                + rat_to_string(rep.ln_c0) + " t)]";
    return rep;
}

inline BoundReport upper_constant(const Graph& g, const Graph& h, int r,
                                  const SearchOptions& opts = {}) {
    RobustnessResult rob = robustness(g, h, r, opts);
    if (!rob.exact)
        throw std::runtime_error("robustness did not finish exactly within the budget");
    return upper_constant_from(rob.value, h.vertex_count(), h.edge_count(), r);
}

// ---------------------------------------------------------------------------
// Local-lemma certificate: evaluates
//   e * inj(H,G) * e(Ht) * r^(1-e(Ht)) * (Delta/n^2) * prod_w C(n, t_w) <= 1
// where Ht is the blowup H[t_1..t_k], e(Ht) = sum over pattern edges of
// t_i t_j, and Delta = max t_i t_j. Holding certifies that G[n] does not
// canonically r-arrow H[t_1,...,t_k].
// ---------------------------------------------------------------------------

struct LLLCertificate {
    std::vector<int> t_vec;
    BigInt n;
    BigInt delta;
    BigInt e_tilde;
    double ln_lhs = 0;
    bool holds = false;
    std::string exactness;  // "log" or "rational"
    double ln_p = 0;        // (1 - e_tilde) ln r, the per-event probability bound
    double ln_d_plus_1 = 0; // dependency-degree bound of the local lemma
    std::string note;
};

namespace detail {

// ln C(n, t) for big n: sum of logs beats log-gamma, whose cancellation is
// catastrophic at n ~ 2^128.
inline double log_binomial(const BigInt& n, int t) {
    double s = 0;
    for (int i = 0; i < t; ++i) s += log_big(n - i);
    return s - std::lgamma(static_cast<double>(t) + 1.0);
}

// The left side of the certificate condition divided by e, as an exact
// rational. LHS <= 1 is then decided against a rational enclosure of e.
inline BigRat lll_lhs_over_e(long long inj, const BigInt& e_tilde, const BigInt& delta,
                             int r, const std::vector<int>& t_vec, const BigInt& n) {
    BigRat a = BigRat(inj) * BigRat(e_tilde) * BigRat(delta);
    a /= BigRat(n * n);
    // r^(1 - e_tilde) with e_tilde >= 1: divide by r^(e_tilde - 1).
    a /= BigRat(big_pow(r, static_cast<unsigned>(e_tilde - 1)));
    for (int t : t_vec) a *= BigRat(big_binomial(n, static_cast<unsigned>(t)));
    return a;
}

} // namespace detail

inline LLLCertificate lll_condition(const Graph& g, const Graph& h, int r,
                                    const std::vector<int>& t_vec, const BigInt& n) {
    const int k = h.vertex_count();
    if (static_cast<int>(t_vec.size()) != k)
        throw std::invalid_argument("t_vec length must match the pattern vertex count");
    if (h.edge_count() < 1) throw std::invalid_argument("pattern needs at least one edge");
    if (r < 1) throw std::invalid_argument("colour count must be at least 1");
    for (int t : t_vec)
        if (t < 1) throw std::invalid_argument("class sizes must be at least 1");

    LLLCertificate cert;
    cert.t_vec = t_vec;
    cert.n = n;
    cert.e_tilde = 0;
    cert.delta = 0;
    for (auto [i, j] : h.edges()) {
        BigInt prod = BigInt(t_vec[i]) * t_vec[j];
        cert.e_tilde += prod;
        if (prod > cert.delta) cert.delta = prod;
    }

    int max_t = *std::max_element(t_vec.begin(), t_vec.end());
    if (n < max_t) {
        cert.holds = true;
        cert.ln_lhs = -std::numeric_limits<double>::infinity();
        cert.exactness = "rational";
        cert.note = "no canonical copy";
        return cert;
    }

    long long inj = inj_count(h, g);
    if (inj == 0) {
        cert.holds = true;
        cert.ln_lhs = -std::numeric_limits<double>::infinity();
        cert.exactness = "rational";
        cert.note = "pattern has no embeddings in the host base";
        return cert;
    }

    const double ln_r = std::log(static_cast<double>(r));
    cert.ln_p = (1.0 - cert.e_tilde.convert_to<double>()) * ln_r;
    double binoms = 0;
    for (int t : t_vec) binoms += detail::log_binomial(n, t);
    cert.ln_d_plus_1 = std::log(static_cast<double>(inj)) + log_big(cert.e_tilde)
                       + log_big(cert.delta) - 2.0 * log_big(n) + binoms;
    cert.ln_lhs = 1.0 + cert.ln_p + cert.ln_d_plus_1;
    cert.holds = cert.ln_lhs <= 0;
    cert.exactness = "log";

    if (std::abs(cert.ln_lhs) < 0.01) {
        BigRat a = detail::lll_lhs_over_e(inj, cert.e_tilde, cert.delta, r, t_vec, n);
        cert.holds = times_euler_at_most_one(a);
        cert.exactness = "rational";
    }
    return cert;
}

struct LllMaxResult {
    BigInt n = 0;  // largest class size satisfying the condition; 0 when none
    bool monotone_ok = true;
    std::string note;
    std::uint64_t evaluations = 0;
};

// Largest n <= n_cap where the certificate condition holds, by doubling
// growth plus bisection. The condition's left side is nondecreasing in n
// (the derivative of ln of C-products minus 2 ln n is (sum t_w - 2)/n >= 0),
// so the truth set is an interval starting at max t_i; the downward scan
// below re-verifies that shape and reports any violation instead of hiding it.
inline LllMaxResult lll_max_n(const Graph& g, const Graph& h, int r,
                              const std::vector<int>& t_vec,
                              const BigInt& n_cap = BigInt(1) << 128) {
    LllMaxResult res;
    int max_t = *std::max_element(t_vec.begin(), t_vec.end());
    if (n_cap < max_t) {
        res.note = "cap is below the smallest feasible class size";
        return res;
    }
    auto holds = [&](const BigInt& n) {
        ++res.evaluations;
        return lll_condition(g, h, r, t_vec, n).holds;
    };

    BigInt lo = max_t;
    if (!holds(lo)) {
        for (int i = 1; i <= 8; ++i) {
            BigInt probe = lo + i;
            if (probe > n_cap) break;
            if (holds(probe)) {
                res.monotone_ok = false;
                res.note = "condition fails at the smallest class size but holds at "
                           + probe.str() + "; reporting no certified size";
                return res;
            }
        }
        res.note = "condition already fails at the smallest class size";
        return res;
    }
    if (holds(n_cap)) {
        res.n = n_cap;
        res.note = "condition still holds at the cap";
        return res;
    }
    BigInt hi = n_cap;
    BigInt probe = lo * 2;
    while (probe < n_cap && holds(probe)) {
        lo = probe;
        probe *= 2;
    }
    if (probe < n_cap) hi = probe;
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (holds(mid))
            lo = mid;
        else
            hi = mid;
    }
    res.n = lo;
    for (int i = 1; i <= 8; ++i) {
        BigInt down = lo - i;
        if (down < max_t) break;
        if (!holds(down)) {
            res.monotone_ok = false;
            res.note = "condition unexpectedly fails at " + down.str()
                       + " below the reported maximum " + lo.str();
            break;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Asymptotic lower bound (r^(d/v) / e) * t * r^(d t / 2) and the asymmetric
// non-arrowing size m with ln m = ln t - 1 + t (d ln r + ln k).
// ---------------------------------------------------------------------------

struct AsymptoticLower {
    double ln_value = 0;
    double growth_base = 0;  // r^(d/2): the per-t geometric factor
    std::string rendered;
};

inline AsymptoticLower asymptotic_lower(const Graph& h, int r, int t) {
    if (h.edge_count() < 1) throw std::invalid_argument("pattern needs at least one edge");
    if (t < 1 || r < 1) throw std::invalid_argument("t and r must be at least 1");
    const double v = h.vertex_count();
    const double d = 2.0 * h.edge_count() / v;
    const double ln_r = std::log(static_cast<double>(r));
    AsymptoticLower out;
    out.ln_value = (d / v) * ln_r - 1.0 + std::log(static_cast<double>(t)) + (d * t / 2.0) * ln_r;
    out.growth_base = std::pow(static_cast<double>(r), d / 2.0);
    out.rendered = detail::render_exp(out.ln_value);
    return out;
}

struct AsymmetricBound {
    double ln_m = 0;
    double per_t_exponent = 0;  // d(H) ln r + ln k
    std::string claim;
    std::string note;
};

// Host size m below which no blowup with one boosted class k^t can be forced:
// pattern[m] does not canonically r-arrow pattern[t,...,t,k^t], to leading
// order. The exponent uses the pattern's average degree d(H).
inline AsymmetricBound asymmetric_nonarrow_bound(const Graph& h, int r, int t, double ln_k) {
    if (h.edge_count() < 1) throw std::invalid_argument("pattern needs at least one edge");
    if (ln_k <= 0) throw std::invalid_argument("ln k must be positive");
    if (t < 1 || r < 1) throw std::invalid_argument("t and r must be at least 1");
    const double d = 2.0 * h.edge_count() / h.vertex_count();
    AsymmetricBound out;
    out.per_t_exponent = d * std::log(static_cast<double>(r)) + ln_k;
    out.ln_m = std::log(static_cast<double>(t)) - 1.0 + t * out.per_t_exponent;
    std::string ts;
    for (int i = 0; i + 1 < h.vertex_count(); ++i) ts += "t, ";
    out.claim = "pattern[" + detail::render_exp(out.ln_m) + "] does not canonically "
                + std::to_string(r) + "-arrow pattern[" + ts + "e^(" + std::to_string(t)
                + " ln k)] (leading order)";
    out.note = "average-degree exponent; boosted class size is k^t";
    return out;
}

} // namespace blowram
