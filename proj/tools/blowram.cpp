// blowram: command-line front end.
//
// Subcommands: arrow, mult, robustness, blowup-ramsey, lll, bounds, extract,
// gnp, sender, densities. Human-readable output by default; --json (or CSV
// for gnp) for machines. Exit codes: 0 computed, 1 computed with a negative
// verdict ("does not hold" / "not found"), 2 usage error, 3 node budget
// exhausted with a partial result.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "blowram/blowup.hpp"
#include "blowram/bounds.hpp"
#include "blowram/canonical_search.hpp"
#include "blowram/colouring.hpp"
#include "blowram/counting.hpp"
#include "blowram/extract.hpp"
#include "blowram/graph.hpp"
#include "blowram/random_lab.hpp"
#include "blowram/rational.hpp"
#include "blowram/search.hpp"

using nlohmann::json;
using namespace blowram;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A graph argument is either a built-in name (k2..k9, c4..c8, p3..p6) or a
// file path holding an edge list or graph6 line. Paths must not begin with a
// digit, so names and paths cannot collide.
Graph load_graph(const std::string& spec) {
    try {
        return named_graph(spec);
    } catch (const std::invalid_argument&) {
    }
    if (!spec.empty() && std::isdigit(static_cast<unsigned char>(spec[0])))
        throw std::invalid_argument("file path must not begin with a digit: " + spec);
    return parse_graph(read_file(spec));
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("empty entry in list: " + s);
        out.push_back(std::stoi(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty list: " + s);
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("empty entry in list: " + s);
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty list: " + s);
    return out;
}

std::pair<int, int> parse_edge(const std::string& s) {
    auto v = parse_int_list(s);
    if (v.size() != 2) throw std::invalid_argument("expected \"u,v\": " + s);
    return {v[0], v[1]};
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        default: return "unknown";
    }
}

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::yes: return 0;
        case Verdict::no: return 1;
        default: return 3;
    }
}

json big_to_json(const BigInt& n) {
    static const BigInt lo = std::numeric_limits<long long>::min();
    static const BigInt hi = std::numeric_limits<long long>::max();
    if (n >= lo && n <= hi) return json(n.convert_to<long long>());
    return json(n.str());
}

// nlohmann serializes non-finite doubles as null; the documented encoding for
// an infinite log is the string "-inf" / "inf".
json ln_to_json(double x) {
    if (std::isinf(x)) return json(x < 0 ? "-inf" : "inf");
    return json(x);
}

json outcome_json(const SearchOutcome& out, const std::string& witness_path) {
    json j;
    j["verdict"] = verdict_name(out.verdict);
    j["count"] = out.count < 0 ? json(nullptr) : json(out.count);
    j["exact"] = out.exact;
    j["explored"] = out.explored;
    j["witness_path"] = witness_path.empty() ? json(nullptr) : json(witness_path);
    if (!out.note.empty()) j["note"] = out.note;
    return j;
}

// Witnesses are only trusted after a round trip: write, re-parse, match the
// host, and recount monochromatic copies from scratch.
void emit_witness(const std::string& path, const EdgeColouring& col, const Graph& host, int r,
                  const Graph& pattern, long long expect_mono) {
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write witness file: " + path);
        out << serialize_colouring(col);
    }
    EdgeColouring back = parse_colouring(read_file(path));
    std::string why;
    if (!colouring_matches_host(back, host, r, &why))
        throw std::runtime_error("witness failed validation: " + why);
    if (expect_mono >= 0 && mono_copy_count(back, pattern) != expect_mono)
        throw std::runtime_error("witness failed validation: monochromatic recount mismatch");
}

struct Args {
    std::string graph, pattern, t_vec, witness, p_grid, edge_e, edge_f;
    std::string sign = "positive";
    int r = 0, t = 0, n = 0, n_cap = 32, threads = 0, samples = 0;
    std::uint64_t budget = 0, seed = 0;
    double ln_k = 0;
    bool as_json = false;
    std::string colouring_file;
};

SearchOptions search_options(const Args& a) {
    SearchOptions opts;
    opts.node_budget = a.budget;
    opts.threads = a.threads;
    opts.seed = a.seed;
    return opts;
}

int run_arrow(const Args& a) {
    Graph g = load_graph(a.graph), h = load_graph(a.pattern);
    SearchOutcome out = arrows(g, h, a.r, search_options(a));
    std::string wpath;
    if (!a.witness.empty() && out.witness) {
        emit_witness(a.witness, *out.witness, g, a.r, h, out.verdict == Verdict::no ? 0 : -1);
        wpath = a.witness;
    }
    if (a.as_json) {
        std::cout << outcome_json(out, wpath).dump(2) << "\n";
    } else {
        std::cout << "ARROWS: " << verdict_name(out.verdict) << "\n";
        if (!out.note.empty()) std::cout << "note: " << out.note << "\n";
        if (!wpath.empty()) std::cout << "witness: " << wpath << "\n";
    }
    return exit_for(out.verdict);
}

int run_mult(const Args& a) {
    Graph g = load_graph(a.graph), h = load_graph(a.pattern);
    SearchOutcome out = multiplicity(g, h, a.r, search_options(a));
    std::string wpath;
    if (!a.witness.empty() && out.witness) {
        emit_witness(a.witness, *out.witness, g, a.r, h, out.count);
        wpath = a.witness;
    }
    if (a.as_json) {
        std::cout << outcome_json(out, wpath).dump(2) << "\n";
    } else {
        std::cout << "MULTIPLICITY: " << out.count << (out.exact ? "" : " (upper bound)") << "\n";
        if (!out.note.empty()) std::cout << "note: " << out.note << "\n";
        if (!wpath.empty()) std::cout << "witness: " << wpath << "\n";
    }
    return out.exact ? 0 : 3;
}

int run_robustness(const Args& a, bool seed_given) {
    Graph g = load_graph(a.graph), h = load_graph(a.pattern);
    if (a.budget > 0) {
        if (!seed_given)
            throw std::invalid_argument(
                "--budget enables the randomized refinement; an explicit --seed is required");
        RobustnessEstimate est = estimate_robustness(g, h, a.r, a.budget, a.seed);
        if (a.as_json) {
            json j;
            j["verdict"] = est.exact ? "yes" : "unknown";
            j["count"] = est.mult_r;
            j["exact"] = est.exact;
            j["explored"] = est.explored;
            j["witness_path"] = nullptr;
            j["value"] = rat_to_string(est.value);
            j["mult_1"] = est.mult_1;
            j["restarts"] = est.restarts;
            if (!est.note.empty()) j["note"] = est.note;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "ROBUSTNESS: " << rat_to_string(est.value)
                      << (est.exact ? "" : " (upper bound)") << "\n";
            if (!est.note.empty()) std::cout << "note: " << est.note << "\n";
        }
        return est.exact ? 0 : 3;
    }
    RobustnessResult res = robustness(g, h, a.r, search_options(a));
    std::string wpath;
    if (!a.witness.empty() && res.outcome.witness) {
        emit_witness(a.witness, *res.outcome.witness, g, a.r, h, res.mult_r);
        wpath = a.witness;
    }
    if (a.as_json) {
        json j = outcome_json(res.outcome, wpath);
        j["value"] = rat_to_string(res.value);
        j["mult_1"] = res.mult_1;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "ROBUSTNESS: " << rat_to_string(res.value) << " (mult_" << a.r << " = "
                  << res.mult_r << ", copies = " << res.mult_1 << ")\n";
        if (!wpath.empty()) std::cout << "witness: " << wpath << "\n";
    }
    return 0;
}

int run_blowup_ramsey(const Args& a) {
    Graph g = load_graph(a.graph), h = load_graph(a.pattern);
    BlowupRamseyResult res = blowup_ramsey_number(g, h, a.r, a.t, a.n_cap, search_options(a));
    const char* verdict = res.kind == BlowupRamseyResult::Kind::found
                              ? "found"
                              : res.kind == BlowupRamseyResult::Kind::infinite ? "infinite"
                                                                               : "unknown";
    if (a.as_json) {
        json j;
        j["verdict"] = verdict;
        j["count"] = res.kind == BlowupRamseyResult::Kind::found ? json(res.n) : json(nullptr);
        j["exact"] = res.kind != BlowupRamseyResult::Kind::unknown;
        j["explored"] = res.explored;
        j["witness_path"] = nullptr;
        if (!res.note.empty()) j["note"] = res.note;
        std::cout << j.dump(2) << "\n";
    } else {
        if (res.kind == BlowupRamseyResult::Kind::found)
            std::cout << "BLOWUP-RAMSEY: " << res.n << "\n";
        else if (res.kind == BlowupRamseyResult::Kind::infinite)
            std::cout << "BLOWUP-RAMSEY: none (host does not arrow the pattern)\n";
        else
            std::cout << "BLOWUP-RAMSEY: unknown\n";
        if (!res.note.empty()) std::cout << "note: " << res.note << "\n";
    }
    switch (res.kind) {
        case BlowupRamseyResult::Kind::found: return 0;
        case BlowupRamseyResult::Kind::infinite: return 1;
        default: return 3;
    }
}

std::vector<int> resolve_t_vec(const Args& a, int pattern_vertices) {
    if (!a.t_vec.empty()) {
        auto tv = parse_int_list(a.t_vec);
        if (static_cast<int>(tv.size()) != pattern_vertices)
            throw std::invalid_argument("--t-vec length must match the pattern vertex count");
        return tv;
    }
    if (a.t < 1) throw std::invalid_argument("provide -t or --t-vec");
    return std::vector<int>(pattern_vertices, a.t);
}

json certificate_json(const LLLCertificate& cert) {
    json j;
    j["t_vec"] = cert.t_vec;
    j["n"] = big_to_json(cert.n);
    j["ln_lhs"] = ln_to_json(cert.ln_lhs);
    j["holds"] = cert.holds;
    j["exactness"] = cert.exactness;
    if (!cert.note.empty()) j["note"] = cert.note;
    return j;
}

int run_lll(const Args& a, bool n_given, bool cap_given) {
    Graph g = load_graph(a.graph), h = load_graph(a.pattern);
    std::vector<int> tv = resolve_t_vec(a, h.vertex_count());
    if (n_given) {
        LLLCertificate cert = lll_condition(g, h, a.r, tv, BigInt(a.n));
        if (a.as_json) {
            std::cout << certificate_json(cert).dump(2) << "\n";
        } else {
            std::cout << "LLL: " << (cert.holds ? "holds" : "fails") << " (ln lhs = " << cert.ln_lhs
                      << ", " << cert.exactness << ")\n";
            if (!cert.note.empty()) std::cout << "note: " << cert.note << "\n";
        }
        return cert.holds ? 0 : 1;
    }
    LllMaxResult res = cap_given ? lll_max_n(g, h, a.r, tv, BigInt(a.n_cap))
                                 : lll_max_n(g, h, a.r, tv);
    if (res.n == 0) {
        if (a.as_json) {
            json j;
            j["t_vec"] = tv;
            j["n"] = 0;
            j["holds"] = false;
            j["ln_lhs"] = nullptr;
            j["exactness"] = "log";
            j["note"] = res.note;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "LLL-MAX-N: none\n";
            if (!res.note.empty()) std::cout << "note: " << res.note << "\n";
        }
        return 1;
    }
    LLLCertificate cert = lll_condition(g, h, a.r, tv, res.n);
    if (a.as_json) {
        json j = certificate_json(cert);
        if (!res.note.empty()) j["note"] = res.note;
        j["evaluations"] = res.evaluations;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "LLL-MAX-N: " << res.n.str() << " (ln lhs = " << cert.ln_lhs << ", "
                  << cert.exactness << ")\n";
        if (!res.note.empty()) std::cout << "note: " << res.note << "\n";
    }
    return 0;
}

int run_bounds(const Args& a, bool ln_k_given) {
    Graph g = load_graph(a.graph), h = load_graph(a.pattern);
    RobustnessResult rob = robustness(g, h, a.r, search_options(a));
    if (!rob.exact) {
        if (a.as_json) {
            json j;
            j["ln_c"] = nullptr;
            j["ln_c0"] = nullptr;
            j["claim"] = "robustness inexact within the budget";
            j["robustness_upper_bound"] = rat_to_string(rob.value);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "BOUNDS: robustness inexact within the budget (upper bound "
                      << rat_to_string(rob.value) << ")\n";
        }
        return 3;
    }
    if (rob.value <= 0) {
        if (a.as_json) {
            json j;
            j["ln_c"] = nullptr;
            j["ln_c0"] = nullptr;
            j["claim"] = "host does not arrow the pattern; constant undefined";
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "BOUNDS: undefined (host does not arrow the pattern)\n";
        }
        return 1;
    }
    BoundReport rep = upper_constant_from(rob.value, h.vertex_count(), h.edge_count(), a.r);
    const int t = a.t > 0 ? a.t : 1;
    AsymptoticLower low = asymptotic_lower(h, a.r, t);
    std::optional<AsymmetricBound> asym;
    if (ln_k_given) asym = asymmetric_nonarrow_bound(h, a.r, t, a.ln_k);

    if (a.as_json) {
        json j;
        j["ln_c"] = rat_to_string(rep.ln_c);
        j["ln_c0"] = rat_to_string(rep.ln_c0);
        j["claim"] = rep.claim;
        j["robustness"] = rat_to_string(rep.robustness_used);
        j["asymptotic"] = {{"growth_base", low.growth_base},
                           {"ln_value", low.ln_value},
                           {"rendered", low.rendered},
                           {"t", t}};
        if (asym)
            j["asymmetric"] = {{"per_t_exponent", asym->per_t_exponent},
                               {"ln_m", asym->ln_m},
                               {"claim", asym->claim},
                               {"t", t}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "LN-C: " << rat_to_string(rep.ln_c) << "\n";
        std::cout << "LN-C0: " << rat_to_string(rep.ln_c0) << "\n";
        std::cout << "ROBUSTNESS: " << rat_to_string(rep.robustness_used) << "\n";
        std::cout << "CLAIM: " << rep.claim << "\n";
        std::cout << "ASYMPTOTIC-LOWER: growth base " << low.growth_base << " (value "
                  << low.rendered << " at t=" << t << ")\n";
        if (asym) {
            std::cout << "ASYMMETRIC: per-t exponent " << asym->per_t_exponent << "\n";
            std::cout << "  " << asym->claim << "\n";
        }
    }
    return 0;
}

int run_extract(const Args& a) {
    Graph g = load_graph(a.graph), h = load_graph(a.pattern);
    if (a.n < 1) throw std::invalid_argument("-n must give a positive class size");
    EdgeColouring col = parse_colouring(read_file(a.colouring_file));
    BlowupGraph host = blowup(g, a.n);

    MonoExtraction me;
    try {
        me = extract_monochromatic(host, col, h, ExtractTarget{a.t, 0});
    } catch (const std::runtime_error& e) {
        if (a.as_json) {
            json j;
            j["sizes"] = json::array();
            j["classes"] = json::array();
            j["colour"] = nullptr;
            j["guarantee_met"] = "no";
            j["note"] = e.what();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "EXTRACT: none (" << e.what() << ")\n";
        }
        return 1;
    }

    std::vector<int> verts = me.copy.vertices;
    std::sort(verts.begin(), verts.end());
    // Classes as flat host vertex ids of the original blowup.
    json classes = json::array();
    for (std::size_t i = 0; i < me.result.class_subsets.size(); ++i) {
        json cls = json::array();
        for (int slot : me.result.class_subsets[i]) cls.push_back(host.vertex(verts[i], slot));
        classes.push_back(cls);
    }
    if (a.as_json) {
        json j;
        j["sizes"] = me.result.sizes;
        j["classes"] = classes;
        j["colour"] = me.colour;
        j["guarantee_met"] = me.result.guarantee_met;
        j["mono_count"] = me.mono_count;
        j["copy"] = verts;
        if (!me.result.note.empty()) j["note"] = me.result.note;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "EXTRACT: colour " << me.colour << " on pattern copy {";
        for (std::size_t i = 0; i < verts.size(); ++i)
            std::cout << (i ? "," : "") << verts[i];
        std::cout << "} with " << me.mono_count << " monochromatic canonical copies\n";
        std::cout << "SIZES:";
        for (int s : me.result.sizes) std::cout << " " << s;
        std::cout << "\n";
        for (std::size_t i = 0; i < me.result.class_subsets.size(); ++i) {
            std::cout << "CLASS " << i << " (base vertex " << verts[i] << "):";
            for (int slot : me.result.class_subsets[i]) std::cout << " " << slot;
            std::cout << "\n";
        }
        std::cout << "GUARANTEE: " << me.result.guarantee_met << " (t=" << me.result.guarantee.t
                  << ", t'=" << me.result.guarantee.t_prime.str() << ")\n";
        if (!me.result.note.empty()) std::cout << "note: " << me.result.note << "\n";
    }
    return 0;
}

int run_gnp(const Args& a) {
    Graph h = load_graph(a.pattern);
    std::vector<double> grid = parse_double_list(a.p_grid);
    std::uint64_t budget = a.budget > 0 ? a.budget : 200'000;
    ArrowExperimentResult res =
        arrow_experiment(h, a.r, a.n, grid, a.samples, a.seed, budget, a.threads);
    if (a.as_json) {
        json pts = json::array();
        for (const ArrowPoint& pt : res.points)
            pts.push_back({{"p", pt.p},
                           {"arrow_freq", static_cast<double>(pt.yes) / res.samples},
                           {"undecided_frac", static_cast<double>(pt.undecided) / res.samples}});
        json j;
        j["n"] = res.n;
        j["r"] = res.r;
        j["samples"] = res.samples;
        j["seed"] = res.seed;
        j["budget"] = res.budget;
        j["points"] = pts;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << res.csv();
    }
    return 0;
}

int run_sender(const Args& a) {
    Graph s = load_graph(a.graph), h = load_graph(a.pattern);
    if (a.sign != "positive" && a.sign != "negative")
        throw std::invalid_argument("--sign must be positive or negative");
    SenderReport rep = verify_signal_sender(s, parse_edge(a.edge_e), parse_edge(a.edge_f), a.r, h,
                                            a.sign == "positive", search_options(a));
    std::string wpath;
    if (!a.witness.empty() && rep.counterexample) {
        emit_witness(a.witness, *rep.counterexample, s, a.r, h, 0);
        wpath = a.witness;
    }
    if (a.as_json) {
        json j;
        j["verdict"] = rep.is_sender ? "yes" : "no";
        j["count"] = nullptr;
        j["exact"] = true;
        j["explored"] = 0;
        j["witness_path"] = wpath.empty() ? json(nullptr) : json(wpath);
        j["host_arrows"] = rep.host_arrows;
        j["forces"] = rep.forces;
        j["detail"] = rep.detail;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "SENDER: " << (rep.is_sender ? "yes" : "no") << "\n";
        std::cout << "detail: " << rep.detail << "\n";
        if (!wpath.empty()) std::cout << "witness: " << wpath << "\n";
    }
    return rep.is_sender ? 0 : 1;
}

int run_densities(const Args& a) {
    Graph h = load_graph(a.pattern);
    DensityReport rep = density_stats(h);
    if (a.as_json) {
        json j;
        j["d"] = rat_to_string(rep.d);
        j["m"] = rat_to_string(rep.m);
        j["m2"] = rat_to_string(rep.m2);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "D: " << rat_to_string(rep.d) << "\n";
        std::cout << "M: " << rat_to_string(rep.m) << "\n";
        std::cout << "M2: " << rat_to_string(rep.m2) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"blowup Ramsey toolkit: arrowing searches, constants, certificates, extraction"};
    app.require_subcommand(1);
    Args a;

    auto add_common = [&](CLI::App* sub, bool need_graph, bool need_pattern, bool need_r) {
        auto* og = sub->add_option("--graph", a.graph, "host graph: name (k2..k9, c4..c8, p3..p6) or file");
        auto* op = sub->add_option("--pattern", a.pattern, "pattern graph: name or file");
        auto* orr = sub->add_option("-r", a.r, "number of colours");
        if (need_graph) og->required();
        if (need_pattern) op->required();
        if (need_r) orr->required();
        sub->add_option("--threads", a.threads, "worker threads (0 = machine parallelism)");
        sub->add_flag("--json", a.as_json, "machine-readable output");
        return sub;
    };

    CLI::App* arrow = add_common(app.add_subcommand("arrow", "does the host r-arrow the pattern?"),
                                 true, true, true);
    arrow->add_option("--budget", a.budget, "node budget (0 = unlimited)");
    arrow->add_option("--witness", a.witness, "write the non-arrowing colouring here");

    CLI::App* mult = add_common(
        app.add_subcommand("mult", "minimum monochromatic copies over all colourings"), true, true,
        true);
    mult->add_option("--budget", a.budget, "node budget (0 = unlimited)");
    mult->add_option("--witness", a.witness, "write the minimizing colouring here");

    CLI::App* rob = add_common(app.add_subcommand("robustness", "mult_r / mult_1"), true, true, true);
    rob->add_option("--budget", a.budget, "node budget; enables the randomized refinement");
    CLI::Option* rob_seed = rob->add_option("--seed", a.seed, "seed for the randomized refinement");
    rob->add_option("--witness", a.witness, "write the minimizing colouring here");

    CLI::App* bram = add_common(
        app.add_subcommand("blowup-ramsey", "least class size whose blowup canonically arrows"),
        true, true, true);
    bram->add_option("-t", a.t, "uniform blowup size of the pattern")->required();
    bram->add_option("--n-cap", a.n_cap, "largest class size to try (default 32)");
    bram->add_option("--budget", a.budget, "node budget (0 = unlimited)");

    CLI::App* lll = add_common(app.add_subcommand("lll", "local-lemma non-arrowing certificate"),
                               true, true, true);
    lll->add_option("-t", a.t, "uniform part size");
    lll->add_option("--t-vec", a.t_vec, "per-class part sizes a,b,c");
    CLI::Option* lll_n = lll->add_option("-n", a.n, "class size to certify");
    CLI::Option* lll_cap = lll->add_option("--n-cap", a.n_cap, "cap for the maximal-size scan");

    CLI::App* bounds = add_common(
        app.add_subcommand("bounds", "arrowing constants and asymptotic comparators"), true, true,
        true);
    bounds->add_option("-t", a.t, "blowup size used for rendered values (default 1)");
    bounds->add_option("--budget", a.budget, "node budget for the robustness search");
    CLI::Option* bounds_lnk = bounds->add_option("--ln-k", a.ln_k, "log class-count for the asymmetric bound");

    CLI::App* extract = add_common(
        app.add_subcommand("extract", "monochromatic canonical blowup from a colouring"), true,
        true, false);
    extract->add_option("colouring", a.colouring_file, "colouring file over the blowup host")
        ->required();
    extract->add_option("-n", a.n, "uniform class size of the blowup host")->required();
    extract->add_option("-t", a.t, "requested size of the first classes (0 = maximize)");

    CLI::App* gnp = add_common(app.add_subcommand("gnp", "arrowing frequency across a p grid"),
                               false, true, true);
    gnp->add_option("-n", a.n, "vertices per sample")->required();
    gnp->add_option("--p-grid", a.p_grid, "edge probabilities p1,p2,...")->required();
    gnp->add_option("--samples", a.samples, "samples per grid point")->required();
    gnp->add_option("--seed", a.seed, "experiment seed")->required();
    gnp->add_option("--budget", a.budget, "per-sample node budget (default 200000)");

    CLI::App* sender = add_common(
        app.add_subcommand("sender", "signal-sender check for a designated edge pair"), true, true,
        true);
    sender->add_option("--edge-e", a.edge_e, "first designated edge \"u,v\"")->required();
    sender->add_option("--edge-f", a.edge_f, "second designated edge \"u,v\"")->required();
    sender->add_option("--sign", a.sign, "positive (equal colours) or negative (distinct)");
    sender->add_option("--witness", a.witness, "write the violating colouring here");

    CLI::App* dens = add_common(app.add_subcommand("densities", "density statistics of a pattern"),
                                false, true, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(arrow)) return run_arrow(a);
        if (app.got_subcommand(mult)) return run_mult(a);
        if (app.got_subcommand(rob)) return run_robustness(a, rob_seed->count() > 0);
        if (app.got_subcommand(bram)) return run_blowup_ramsey(a);
        if (app.got_subcommand(lll)) return run_lll(a, lll_n->count() > 0, lll_cap->count() > 0);
        if (app.got_subcommand(bounds)) return run_bounds(a, bounds_lnk->count() > 0);
        if (app.got_subcommand(extract)) return run_extract(a);
        if (app.got_subcommand(gnp)) return run_gnp(a);
        if (app.got_subcommand(sender)) return run_sender(a);
        if (app.got_subcommand(dens)) return run_densities(a);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
