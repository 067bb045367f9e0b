#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowram/bitset.hpp"
#include "blowram/blowup.hpp"
#include "blowram/colouring.hpp"
#include "blowram/counting.hpp"
#include "blowram/graph.hpp"
#include "blowram/rational.hpp"

namespace blowram {

// A family of canonical copies living in one blowup host.
struct CopyFamily {
    BlowupGraph host;
    std::vector<CanonicalCopy> copies;
};

// ---------------------------------------------------------------------------
// Guarantee arithmetic: t = floor(rho^k 4^(-k^2+k) ln n) per class and
// t' = ceil(n^(1-rho^(k-1))) for the last class.
// ---------------------------------------------------------------------------

struct ExtractionParams {
    BigRat rho;
    int k = 0;
    BigInt n;
    long long t = 0;       // guaranteed size of the first k-1 classes
    long long s = 0;       // part size the biclique step pins; equals t
    BigInt t_prime = 0;    // guaranteed size of the last class (0 = see ln form)
    double ln_t_prime = 0;
    bool vacuous = false;  // t = 0: the formula promises nothing at this scale
    std::string note;
};

namespace detail {

// ceil(n^(a/b)) for big n by binary search on x^b >= n^a.
inline BigInt ceil_root_pow(const BigInt& n, const BigInt& a, const BigInt& b) {
    if (a == 0) return 1;
    BigInt na = big_pow(n, a.convert_to<unsigned>());
    unsigned bu = b.convert_to<unsigned>();
    BigInt lo = 1, hi = 1;
    while (big_pow(hi, bu) < na) hi <<= 1;
    while (hi - lo > 0) {
        BigInt mid = (lo + hi) / 2;
        if (big_pow(mid, bu) < na)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

} // namespace detail

inline ExtractionParams guaranteed_sizes(const BigRat& rho, int k, const BigInt& n) {
    if (rho <= 0 || rho > 1) throw std::invalid_argument("rho must lie in (0, 1]");
    if (k < 2) throw std::invalid_argument("at least two classes required");
    if (n < 1) throw std::invalid_argument("class size must be at least 1");
    ExtractionParams p;
    p.rho = rho;
    p.k = k;
    p.n = n;

    const double ln_n = log_big(n);
    const double rho_d = numerator(rho).convert_to<double>() / denominator(rho).convert_to<double>();
    p.t = static_cast<long long>(std::floor(std::pow(rho_d, k) * std::pow(4.0, k - k * k) * ln_n));
    if (p.t < 0) p.t = 0;
    p.s = p.t;
    p.vacuous = p.t == 0;
    if (p.vacuous) p.note = "guarantee vacuous at this scale";

    BigRat q = BigRat(1) - rat_pow(rho, static_cast<unsigned>(k - 1));  // exponent of n
    p.ln_t_prime = (numerator(q).convert_to<double>() / denominator(q).convert_to<double>()) * ln_n;
    BigInt a = numerator(q), b = denominator(q);
    if (a == 0) {
        p.t_prime = 1;
    } else if (a * static_cast<long long>(boost::multiprecision::msb(n) + 1) <= 100000 && b <= 64) {
        p.t_prime = detail::ceil_root_pow(n, a, b);
    } else if (p.ln_t_prime < 700) {
        p.t_prime = BigInt(static_cast<long long>(std::ceil(std::exp(p.ln_t_prime))));
        if (!p.note.empty()) p.note += "; ";
        p.note += "last-class guarantee rounded through floating point";
    } else {
        p.t_prime = 0;
        if (!p.note.empty()) p.note += "; ";
        p.note += "last-class guarantee expressible only in log form";
    }
    return p;
}

// ---------------------------------------------------------------------------
// Biclique extraction from a bipartite graph. Exact mode realizes the tally
// sum over b in B of C(d(b), s): enumerate the s-subsets of every right
// vertex's neighbourhood, then the subset with the highest tally is a part
// whose common neighbourhood is that tally. Falls back to a greedy sweep
// when the tally would exceed the budget.
// ---------------------------------------------------------------------------

struct Bipartite {
    int na = 0, nb = 0;
    std::vector<Bitset> rows;  // rows[a]: neighbours of a in B

    Bipartite() = default;
    Bipartite(int a, int b) : na(a), nb(b), rows(a, Bitset(b)) {}
    void add_edge(int a, int b) { rows[a].set(b); }
    bool has_edge(int a, int b) const { return rows[a].test(b); }
};

struct BicliqueResult {
    std::vector<int> a0, b0;
    bool exact = true;
};

inline BicliqueResult extract_biclique(const Bipartite& f, int s,
                                       long long budget = 5'000'000) {
    if (s < 1) throw std::invalid_argument("part size must be at least 1");
    if (s > f.na) throw std::invalid_argument("part size exceeds the left side");

    BicliqueResult res;

    // Right-vertex neighbourhoods in A.
    std::vector<std::vector<int>> nbr(f.nb);
    for (int a = 0; a < f.na; ++a)
        f.rows[a].for_each([&](int b) { nbr[b].push_back(a); });

    BigInt work = 0;
    for (int b = 0; b < f.nb; ++b) work += big_binomial(BigInt(nbr[b].size()), static_cast<unsigned>(s));

    if (work <= budget) {
        std::map<std::vector<int>, long long> tally;
        std::vector<int> subset(s);
        for (int b = 0; b < f.nb; ++b) {
            const auto& cand = nbr[b];
            if (static_cast<int>(cand.size()) < s) continue;
            auto rec = [&](auto&& self, int idx, int from) -> void {
                if (idx == s) {
                    ++tally[subset];
                    return;
                }
                for (int i = from; i <= static_cast<int>(cand.size()) - (s - idx); ++i) {
                    subset[idx] = cand[i];
                    self(self, idx + 1, i + 1);
                }
            };
            rec(rec, 0, 0);
        }
        if (tally.empty()) {
            // No right vertex sees s left vertices at once; any s-set works
            // (its common neighbourhood is empty).
            for (int a = 0; a < s; ++a) res.a0.push_back(a);
        } else {
            const std::vector<int>* best = nullptr;
            long long best_count = -1;
            for (const auto& [key, count] : tally)
                if (count > best_count) {
                    best = &key;
                    best_count = count;
                }
            res.a0 = *best;
        }
    } else {
        // Greedy: repeatedly take the left vertex keeping most of B alive.
        res.exact = false;
        Bitset alive(f.nb);
        for (int b = 0; b < f.nb; ++b) alive.set(b);
        std::vector<bool> taken(f.na, false);
        for (int step = 0; step < s; ++step) {
            int best = -1;
            std::size_t best_save = 0;
            for (int a = 0; a < f.na; ++a) {
                if (taken[a]) continue;
                std::size_t save = (alive & f.rows[a]).count();
                if (best < 0 || save > best_save) {
                    best = a;
                    best_save = save;
                }
            }
            taken[best] = true;
            res.a0.push_back(best);
            alive &= f.rows[best];
        }
        std::sort(res.a0.begin(), res.a0.end());
    }

    Bitset common(f.nb);
    for (int b = 0; b < f.nb; ++b) common.set(b);
    for (int a : res.a0) common &= f.rows[a];
    res.b0 = common.to_vector();
    return res;
}

// ---------------------------------------------------------------------------
// While-loop pruning: repeatedly delete all extensions of any reduced copy
// with fewer than theta extensions. Extensions of distinct reduced copies are
// disjoint, so deleting one group never changes another group's count and a
// single grouped pass reaches the fixed point.
// ---------------------------------------------------------------------------

inline CopyFamily prune_family(const CopyFamily& m, int pivot, const BigRat& theta) {
    if (pivot < 0 || pivot >= m.host.classes())
        throw std::invalid_argument("pivot is not a base vertex");
    if (theta <= 0) throw std::invalid_argument("theta must be positive");

    std::map<std::vector<int>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < m.copies.size(); ++i) {
        std::vector<int> proj = m.copies[i].slots;
        proj.erase(proj.begin() + pivot);
        groups[proj].push_back(i);
    }
    CopyFamily out;
    out.host = m.host;
    for (const auto& [proj, members] : groups)
        if (BigRat(members.size()) >= theta)
            for (std::size_t i : members) out.copies.push_back(m.copies[i]);
    std::sort(out.copies.begin(), out.copies.end());
    return out;
}

// ---------------------------------------------------------------------------
// Recursive canonical-blowup extraction.
// ---------------------------------------------------------------------------

struct ExtractTarget {
    int t = 0;        // requested size of the first k-1 classes; 0 = maximize
    int t_prime = 0;  // requested size of the last class; 0 = no demand
};

struct ExtractionResult {
    std::vector<std::vector<int>> class_subsets;  // slots per class, sorted
    std::vector<int> sizes;
    int colour = 0;  // 0 = uncoloured
    std::optional<CopyFamily> covered_by;
    ExtractionParams guarantee;
    std::string guarantee_met;  // "yes" | "vacuous" | "no"
    bool exact = true;          // every biclique step ran its exact tally
    std::string note;
};

namespace detail {

// Score for the automatic target: prefer a larger balanced size, then a
// larger last class, then fewer left vertices.
struct BicliqueScore {
    int balanced, last, neg_s;
    bool operator>(const BicliqueScore& o) const {
        if (balanced != o.balanced) return balanced > o.balanced;
        if (last != o.last) return last > o.last;
        return neg_s > o.neg_s;
    }
};

inline void append_note(std::string& dst, const std::string& add) {
    if (add.empty()) return;
    if (!dst.empty()) dst += "; ";
    dst += add;
}

// The biclique step shared by the base case and the top of each recursion
// level: pick s left vertices (explicit or scanned), return the result.
inline BicliqueResult biclique_step(const Bipartite& f, int requested_t, long long budget,
                                    std::string& note) {
    if (f.na == 0) throw std::runtime_error("empty left side in the biclique step");
    if (requested_t > 0) {
        int s = requested_t;
        if (s > f.na) {
            s = f.na;
            append_note(note, "requested class size clamped to " + std::to_string(s)
                                  + " available disjoint copies");
        }
        return extract_biclique(f, s, budget);
    }
    BicliqueResult best;
    BicliqueScore best_score{-1, -1, 0};
    for (int s = 1; s <= f.na; ++s) {
        BicliqueResult cur = extract_biclique(f, s, budget);
        BicliqueScore score{std::min<int>(s, static_cast<int>(cur.b0.size())),
                            static_cast<int>(cur.b0.size()), -s};
        if (score > best_score) {
            best_score = score;
            best = std::move(cur);
        }
    }
    return best;
}

// Disjoint member selection inside the recursive result: greedy over the
// cover family (whose members carry the extension-degree guarantee), then
// topped up with transversal copies on unused slots — the result blowup is
// complete across adjacent classes, so any fresh transversal is canonical.
inline std::vector<CanonicalCopy> disjoint_inside(const ExtractionResult& rec) {
    const int k = static_cast<int>(rec.class_subsets.size());
    std::vector<std::set<int>> used(k);
    std::vector<CanonicalCopy> picked;
    if (rec.covered_by) {
        for (const CanonicalCopy& c : rec.covered_by->copies) {
            bool ok = true;
            for (int i = 0; i < k && ok; ++i) {
                const auto& sub = rec.class_subsets[i];
                ok = std::binary_search(sub.begin(), sub.end(), c.slots[i])
                     && !used[i].count(c.slots[i]);
            }
            if (!ok) continue;
            for (int i = 0; i < k; ++i) used[i].insert(c.slots[i]);
            picked.push_back(c);
        }
    }
    int min_size = *std::min_element(rec.sizes.begin(), rec.sizes.end());
    for (int extra = static_cast<int>(picked.size()); extra < min_size; ++extra) {
        CanonicalCopy c;
        c.slots.resize(k);
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            ok = false;
            for (int slot : rec.class_subsets[i])
                if (!used[i].count(slot)) {
                    c.slots[i] = slot;
                    ok = true;
                    break;
                }
        }
        if (!ok) break;
        for (int i = 0; i < k; ++i) used[i].insert(c.slots[i]);
        picked.push_back(c);
    }
    return picked;
}

inline ExtractionResult extract_rec(const BlowupGraph& host,
                                    const std::vector<CanonicalCopy>& family,
                                    const ExtractTarget& target, long long budget) {
    ExtractionResult res;
    const int k = host.classes();

    if (k == 2) {
        Bipartite f(host.class_size(0), host.class_size(1));
        for (const CanonicalCopy& c : family) f.add_edge(c.slots[0], c.slots[1]);
        BicliqueResult bic = biclique_step(f, target.t, budget, res.note);
        res.exact = bic.exact;
        res.class_subsets = {bic.a0, bic.b0};
        res.sizes = {static_cast<int>(bic.a0.size()), static_cast<int>(bic.b0.size())};
        CopyFamily cover;
        cover.host = host;
        for (int a : bic.a0)
            for (int b : bic.b0) cover.copies.push_back(CanonicalCopy{{a, b}});
        res.covered_by = std::move(cover);
        return res;
    }

    const int pivot = k - 1;
    BigInt cells = 1;
    for (int i = 0; i < k; ++i) cells *= host.class_size(i);
    BigRat rho = BigRat(family.size()) / BigRat(cells);
    BigRat theta = rho / 2 * host.class_size(pivot);

    CopyFamily fam{host, family};
    CopyFamily pruned = prune_family(fam, pivot, theta);
    if (pruned.copies.empty()) {
        pruned = fam;
        append_note(res.note, "pruning emptied the family; continuing unpruned");
    }

    // Project away the pivot class; the projections are canonical in the
    // host restricted to the remaining classes.
    std::vector<int> keep(k - 1);
    for (int i = 0; i < k - 1; ++i) keep[i] = i;
    Graph base_rest = host.base().induced(keep);
    std::vector<int> sizes_rest(host.class_sizes().begin(), host.class_sizes().end() - 1);
    BlowupGraph host_rest(base_rest, sizes_rest);
    for (auto [u, v] : host.flat().edges())
        if (host.class_of(u) != pivot && host.class_of(v) != pivot) host_rest.add_edge(u, v);

    std::set<std::vector<int>> proj_set;
    for (const CanonicalCopy& c : pruned.copies)
        proj_set.emplace(c.slots.begin(), c.slots.end() - 1);
    std::vector<CanonicalCopy> projections;
    for (const auto& s : proj_set) projections.push_back(CanonicalCopy{s});

    ExtractionResult rec = extract_rec(host_rest, projections, ExtractTarget{}, budget);
    res.exact = rec.exact;
    append_note(res.note, rec.note);

    // Bipartite step: disjoint reduced copies against the pivot class,
    // adjacent when their union is a member of the pruned family.
    std::vector<CanonicalCopy> a_copies = disjoint_inside(rec);
    std::set<std::vector<int>> members;
    for (const CanonicalCopy& c : pruned.copies) members.insert(c.slots);
    auto extends = [&](const CanonicalCopy& reduced, int u) {
        std::vector<int> full = reduced.slots;
        full.push_back(u);
        return members.count(full) > 0;
    };

    Bipartite f(static_cast<int>(a_copies.size()), host.class_size(pivot));
    for (std::size_t a = 0; a < a_copies.size(); ++a)
        for (int u = 0; u < host.class_size(pivot); ++u)
            if (extends(a_copies[a], u)) f.add_edge(static_cast<int>(a), u);

    BicliqueResult bic = biclique_step(f, target.t, budget, res.note);
    res.exact = res.exact && bic.exact;

    res.class_subsets.assign(k, {});
    for (int idx : bic.a0)
        for (int i = 0; i < k - 1; ++i) res.class_subsets[i].push_back(a_copies[idx].slots[i]);
    for (int i = 0; i < k - 1; ++i)
        std::sort(res.class_subsets[i].begin(), res.class_subsets[i].end());
    res.class_subsets[pivot] = bic.b0;
    res.sizes.resize(k);
    for (int i = 0; i < k; ++i) res.sizes[i] = static_cast<int>(res.class_subsets[i].size());

    // Cover: pivot extensions of the selected copies, plus one pivot witness
    // for every member of the recursive cover (each is a projection of the
    // pruned family, so a witness exists).
    CopyFamily cover;
    cover.host = host;
    std::set<std::vector<int>> cover_seen;
    for (int idx : bic.a0)
        for (int u : bic.b0) {
            std::vector<int> full = a_copies[idx].slots;
            full.push_back(u);
            if (cover_seen.insert(full).second) cover.copies.push_back(CanonicalCopy{full});
        }
    if (rec.covered_by) {
        for (const CanonicalCopy& p : rec.covered_by->copies) {
            for (int u = 0; u < host.class_size(pivot); ++u) {
                if (!extends(p, u)) continue;
                std::vector<int> full = p.slots;
                full.push_back(u);
                if (cover_seen.insert(full).second) cover.copies.push_back(CanonicalCopy{full});
                break;
            }
        }
    }
    std::sort(cover.copies.begin(), cover.copies.end());
    res.covered_by = std::move(cover);
    return res;
}

} // namespace detail

// Structural validity: subset sanity, cross-class completeness in the host,
// and — when a cover is present — the cover relation plus enough pairwise
// disjoint members inside the result.
inline bool extraction_valid(const BlowupGraph& host, const ExtractionResult& res,
                             std::string* why = nullptr) {
    auto complain = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    const int k = host.classes();
    if (static_cast<int>(res.class_subsets.size()) != k)
        return complain("one subset per class required");
    if (static_cast<int>(res.sizes.size()) != k) return complain("sizes length mismatch");
    for (int i = 0; i < k; ++i) {
        const auto& sub = res.class_subsets[i];
        if (static_cast<int>(sub.size()) != res.sizes[i]) return complain("size entry mismatch");
        for (std::size_t j = 0; j < sub.size(); ++j) {
            if (sub[j] < 0 || sub[j] >= host.class_size(i))
                return complain("slot out of range");
            if (j > 0 && sub[j] <= sub[j - 1]) return complain("slots not sorted unique");
        }
    }
    for (auto [i, j] : host.base().edges())
        for (int su : res.class_subsets[i])
            for (int sv : res.class_subsets[j])
                if (!host.has_edge(host.vertex(i, su), host.vertex(j, sv)))
                    return complain("missing cross-class edge");

    if (res.covered_by) {
        const auto& fam = *res.covered_by;
        for (const CanonicalCopy& c : fam.copies) {
            if (static_cast<int>(c.slots.size()) != k) return complain("cover member arity");
            for (int i = 0; i < k; ++i)
                if (c.slots[i] < 0 || c.slots[i] >= host.class_size(i))
                    return complain("cover member slot out of range");
            for (auto [i, j] : host.base().edges())
                if (!host.has_edge(host.vertex(i, c.slots[i]), host.vertex(j, c.slots[j])))
                    return complain("cover member not canonical in the host");
        }
        for (auto [i, j] : host.base().edges())
            for (int su : res.class_subsets[i])
                for (int sv : res.class_subsets[j]) {
                    bool covered = false;
                    for (const CanonicalCopy& c : fam.copies)
                        if (c.slots[i] == su && c.slots[j] == sv) {
                            covered = true;
                            break;
                        }
                    if (!covered) return complain("edge not covered by any member");
                }

        // min(sizes) disjoint members inside the result: greedy, then exact
        // backtracking if greedy falls short.
        int want = *std::min_element(res.sizes.begin(), res.sizes.end());
        std::vector<const CanonicalCopy*> inside;
        for (const CanonicalCopy& c : fam.copies) {
            bool in = true;
            for (int i = 0; i < k && in; ++i)
                in = std::binary_search(res.class_subsets[i].begin(), res.class_subsets[i].end(),
                                        c.slots[i]);
            if (in) inside.push_back(&c);
        }
        auto disjoint = [&](const CanonicalCopy* a, const CanonicalCopy* b) {
            for (int i = 0; i < k; ++i)
                if (a->slots[i] == b->slots[i]) return false;
            return true;
        };
        std::vector<const CanonicalCopy*> chosen;
        for (const CanonicalCopy* c : inside) {
            bool ok = true;
            for (const CanonicalCopy* d : chosen)
                if (!disjoint(c, d)) {
                    ok = false;
                    break;
                }
            if (ok) chosen.push_back(c);
            if (static_cast<int>(chosen.size()) == want) break;
        }
        if (static_cast<int>(chosen.size()) < want) {
            long long nodes = 0;
            auto dfs = [&](auto&& self, std::size_t from, std::vector<const CanonicalCopy*>& cur)
                -> bool {
                if (static_cast<int>(cur.size()) == want) return true;
                if (++nodes > 2'000'000) return false;
                for (std::size_t i = from; i < inside.size(); ++i) {
                    bool ok = true;
                    for (const CanonicalCopy* d : cur)
                        if (!disjoint(inside[i], d)) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    cur.push_back(inside[i]);
                    if (self(self, i + 1, cur)) return true;
                    cur.pop_back();
                }
                return false;
            };
            std::vector<const CanonicalCopy*> cur;
            if (!dfs(dfs, 0, cur)) return complain("too few disjoint cover members inside the result");
        }
    }
    return true;
}

inline ExtractionResult extract_canonical_blowup(const BlowupGraph& sub,
                                                 const ExtractTarget& target = {},
                                                 long long budget = 5'000'000) {
    if (sub.classes() < 2) throw std::invalid_argument("at least two classes required");
    std::vector<CanonicalCopy> family = enumerate_canonical_copies(sub);
    if (family.empty()) throw std::runtime_error("no canonical copies in the host");

    ExtractionResult res = detail::extract_rec(sub, family, target, budget);

    BigInt cells = 1;
    int n_min = sub.class_size(0);
    for (int i = 0; i < sub.classes(); ++i) {
        cells *= sub.class_size(i);
        n_min = std::min(n_min, sub.class_size(i));
    }
    res.guarantee = guaranteed_sizes(BigRat(family.size()) / BigRat(cells), sub.classes(),
                                     std::max<BigInt>(BigInt(n_min), 1));
    if (res.guarantee.vacuous) {
        res.guarantee_met = "vacuous";
    } else {
        bool met = true;
        for (int i = 0; i + 1 < sub.classes(); ++i)
            if (res.sizes[i] < res.guarantee.t) met = false;
        if (res.guarantee.t_prime > 0) {
            if (BigInt(res.sizes.back()) < res.guarantee.t_prime) met = false;
        } else if (std::log(std::max(1.0, static_cast<double>(res.sizes.back())))
                   < res.guarantee.ln_t_prime - 1e-9) {
            met = false;
        }
        res.guarantee_met = met ? "yes" : "no";
    }
    if (target.t_prime > 0 && res.sizes.back() < target.t_prime)
        detail::append_note(res.note, "requested last-class size not reached");

    std::string why;
    if (!extraction_valid(sub, res, &why))
        throw std::runtime_error("extraction failed its own validity check: " + why);
    return res;
}

// ---------------------------------------------------------------------------
// Colour pipeline: count monochromatic canonical copies per (colour, copy of
// the pattern in the base), restrict to the best cylinder and extract there.
// ---------------------------------------------------------------------------

struct MonoExtraction {
    int colour = 0;
    Copy copy;                 // pattern copy in the base whose blowup was used
    long long mono_count = 0;  // monochromatic canonical copies in that cylinder
    BlowupGraph cylinder;      // the copy's blowup restricted to one colour
    ExtractionResult result;   // classes follow the cylinder (sorted copy vertices)
};

inline MonoExtraction extract_monochromatic(const BlowupGraph& host, const EdgeColouring& col,
                                            const Graph& h, const ExtractTarget& target = {},
                                            long long budget = 5'000'000) {
    std::string why;
    if (!colouring_matches_host(col, host.flat(), col.r, &why))
        throw std::invalid_argument("colouring does not match the host: " + why);

    std::vector<Copy> copies = enumerate_copies(h, host.base());
    if (copies.empty()) throw std::invalid_argument("pattern has no copies in the host base");
    ColourMatrix cm(col);

    auto make_cylinder = [&](const Copy& c, int colour) {
        std::vector<int> verts = c.vertices;
        std::sort(verts.begin(), verts.end());
        std::vector<int> local(host.base().vertex_count(), -1);
        for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
        Graph base(static_cast<int>(verts.size()));
        for (auto [u, v] : c.edges) base.add_edge(std::min(local[u], local[v]),
                                                  std::max(local[u], local[v]));
        std::vector<int> sizes;
        for (int v : verts) sizes.push_back(host.class_size(v));
        BlowupGraph cyl(base, sizes);
        for (auto [bu, bv] : base.edges()) {
            int gu = verts[bu], gv = verts[bv];
            for (int a = 0; a < host.class_size(gu); ++a)
                for (int b = 0; b < host.class_size(gv); ++b)
                    if (cm(host.vertex(gu, a), host.vertex(gv, b)) == colour)
                        cyl.add_edge(cyl.vertex(bu, a), cyl.vertex(bv, b));
        }
        return cyl;
    };

    MonoExtraction best;
    long long best_count = 0;
    for (int colour = 1; colour <= col.r; ++colour) {
        for (std::size_t ci = 0; ci < copies.size(); ++ci) {
            BlowupGraph cyl = make_cylinder(copies[ci], colour);
            long long count = count_canonical_copies(cyl);
            if (count > best_count) {
                best_count = count;
                best.colour = colour;
                best.copy = copies[ci];
                best.cylinder = std::move(cyl);
            }
        }
    }
    if (best_count == 0)
        throw std::runtime_error(
            "no monochromatic canonical copy in any colour (max count 0)");

    best.mono_count = best_count;
    best.result = extract_canonical_blowup(best.cylinder, target, budget);
    best.result.colour = best.colour;

    // Re-verify against the original colouring, not just the cylinder.
    std::vector<int> verts = best.copy.vertices;
    std::sort(verts.begin(), verts.end());
    for (auto [i, j] : best.cylinder.base().edges())
        for (int su : best.result.class_subsets[i])
            for (int sv : best.result.class_subsets[j])
                if (cm(host.vertex(verts[i], su), host.vertex(verts[j], sv)) != best.colour)
                    throw std::runtime_error("extracted blowup is not monochromatic in the host");
    return best;
}

} // namespace blowram
