#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "blowram/graph.hpp"

namespace blowram {

// One vertex chosen per class, stored as slot indices (slot j of class i is
// blowup vertex offset(i) + j).
struct CanonicalCopy {
    std::vector<int> slots;

    bool operator==(const CanonicalCopy& o) const { return slots == o.slots; }
    auto operator<=>(const CanonicalCopy& o) const { return slots <=> o.slots; }
};

// Blowup of a base graph: class i carries class_sizes[i] slots, and the edge
// set is a subset of the full blowup (edges run only between adjacent
// classes, never inside a class).
class BlowupGraph {
public:
    BlowupGraph() = default;

    BlowupGraph(Graph base, std::vector<int> class_sizes)
        : base_(std::move(base)), sizes_(std::move(class_sizes)) {
        if (static_cast<int>(sizes_.size()) != base_.vertex_count())
            throw std::invalid_argument("blowup: one class size per base vertex required");
        offsets_.resize(sizes_.size() + 1, 0);
        for (std::size_t i = 0; i < sizes_.size(); ++i) {
            if (sizes_[i] < 0) throw std::invalid_argument("blowup: negative class size");
            offsets_[i + 1] = offsets_[i] + sizes_[i];
        }
        flat_ = Graph(offsets_.back());
        class_of_.resize(offsets_.back());
        for (std::size_t i = 0; i < sizes_.size(); ++i)
            for (int j = 0; j < sizes_[i]; ++j)
                class_of_[offsets_[i] + j] = static_cast<int>(i);
    }

    const Graph& base() const { return base_; }
    const Graph& flat() const { return flat_; }
    const std::vector<int>& class_sizes() const { return sizes_; }

    int classes() const { return static_cast<int>(sizes_.size()); }
    int total_vertices() const { return offsets_.back(); }
    int class_size(int c) const { return sizes_[c]; }
    int offset(int c) const { return offsets_[c]; }
    int vertex(int c, int slot) const { return offsets_[c] + slot; }
    int class_of(int v) const { return class_of_[v]; }
    int slot_of(int v) const { return v - offsets_[class_of_[v]]; }

    void add_edge(int u, int v) {
        int cu = class_of(u), cv = class_of(v);
        if (cu == cv) throw std::invalid_argument("blowup edge inside a class");
        if (!base_.has_edge(cu, cv))
            throw std::invalid_argument("blowup edge between non-adjacent classes");
        flat_.add_edge(std::min(u, v), std::max(u, v));
    }

    bool has_edge(int u, int v) const { return flat_.has_edge(u, v); }

    // Slots of class c as a bitset over flat vertices.
    Bitset class_mask(int c) const {
        Bitset b(total_vertices());
        for (int j = 0; j < sizes_[c]; ++j) b.set(offsets_[c] + j);
        return b;
    }

private:
    Graph base_;
    std::vector<int> sizes_;
    std::vector<int> offsets_;
    Graph flat_;
    std::vector<int> class_of_;
};

// Full blowup: every slot pair across each base edge.
inline BlowupGraph blowup(const Graph& base, const std::vector<int>& class_sizes) {
    BlowupGraph b(base, class_sizes);
    for (auto [x, y] : base.edges())
        for (int i = 0; i < class_sizes[x]; ++i)
            for (int j = 0; j < class_sizes[y]; ++j)
                b.add_edge(b.vertex(x, i), b.vertex(y, j));
    return b;
}

inline BlowupGraph blowup(const Graph& base, int t) {
    return blowup(base, std::vector<int>(base.vertex_count(), t));
}

// Keep only the edges accepted by pred(u, v) with u < v (flat indices).
template <typename Pred>
BlowupGraph filter_edges(const BlowupGraph& src, Pred&& pred) {
    BlowupGraph b(src.base(), src.class_sizes());
    for (auto [u, v] : src.flat().edges())
        if (pred(u, v)) b.add_edge(u, v);
    return b;
}

namespace detail {

template <typename Visit>
void for_each_canonical_copy(const BlowupGraph& host, Visit&& visit) {
    const int k = host.classes();
    std::vector<int> slots(k, -1);
    auto rec = [&](auto&& self, int cls) -> void {
        if (cls == k) {
            visit(slots);
            return;
        }
        for (int j = 0; j < host.class_size(cls); ++j) {
            bool ok = true;
            for (int p = 0; p < cls && ok; ++p)
                if (host.base().has_edge(p, cls))
                    ok = host.has_edge(host.vertex(p, slots[p]), host.vertex(cls, j));
            if (!ok) continue;
            slots[cls] = j;
            self(self, cls + 1);
        }
        slots[cls] = -1;
    };
    rec(rec, 0);
}

} // namespace detail

// Selections of one slot per class inducing every base edge within the host's
// edge subset. Full K3[2] has 8.
inline long long count_canonical_copies(const BlowupGraph& host) {
    long long count = 0;
    detail::for_each_canonical_copy(host, [&](const std::vector<int>&) { ++count; });
    return count;
}

// Same, but with the pattern stated explicitly and checked against the base.
inline long long count_canonical_copies(const Graph& pattern, const BlowupGraph& host) {
    if (!(host.base() == pattern))
        throw std::invalid_argument("canonical copies: host base does not match pattern");
    return count_canonical_copies(host);
}

inline std::vector<CanonicalCopy> enumerate_canonical_copies(const BlowupGraph& host) {
    std::vector<CanonicalCopy> out;
    detail::for_each_canonical_copy(host, [&](const std::vector<int>& slots) {
        out.push_back(CanonicalCopy{slots});
    });
    return out;
}

} // namespace blowram
