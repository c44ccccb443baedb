#pragma once

// Exact graph isomorphism for small graphs: invariant prefilters, joint color
// refinement, then backtracking. Every mapping is verified before it is
// returned.

#include <gcarr/arrangement.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace gcarr {

struct IsomorphismResult {
    bool isomorphic = false;
    std::vector<int> mapping;  // g1 vertex -> g2 vertex when isomorphic
};

namespace detail {

template <AdjacencyGraph G>
std::vector<std::vector<int>> sorted_adjacency(const G& g) {
    std::vector<std::vector<int>> adj(g.vertex_count());
    for (std::size_t v = 0; v < adj.size(); ++v) {
        for (int w : g.neighbors(static_cast<int>(v))) adj[v].push_back(w);
        std::sort(adj[v].begin(), adj[v].end());
    }
    return adj;
}

inline bool adjacent(const std::vector<std::vector<int>>& adj, int u, int v) {
    const auto& a = adj[static_cast<std::size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
}

inline std::uint64_t count_3_cycles(const std::vector<std::vector<int>>& adj) {
    std::uint64_t count = 0;
    for (std::size_t u = 0; u < adj.size(); ++u) {
        for (int v : adj[u]) {
            if (v <= static_cast<int>(u)) continue;
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (w > v && adjacent(adj, static_cast<int>(u), w)) ++count;
            }
        }
    }
    return count;
}

// 1-WL refinement run on both graphs with a shared color dictionary.
inline std::pair<std::vector<int>, std::vector<int>> joint_refinement(const std::vector<std::vector<int>>& a,
                                                                      const std::vector<std::vector<int>>& b) {
    std::vector<int> ca(a.size()), cb(b.size());
    for (std::size_t v = 0; v < a.size(); ++v) ca[v] = static_cast<int>(a[v].size());
    for (std::size_t v = 0; v < b.size(); ++v) cb[v] = static_cast<int>(b[v].size());
    std::size_t classes = 0;
    for (;;) {
        std::map<std::vector<int>, int> dict;
        const auto signature = [](const std::vector<std::vector<int>>& adj, const std::vector<int>& col, std::size_t v) {
            std::vector<int> sig{col[v]};
            for (int w : adj[v]) sig.push_back(col[static_cast<std::size_t>(w)]);
            std::sort(sig.begin() + 1, sig.end());
            return sig;
        };
        for (std::size_t v = 0; v < a.size(); ++v) dict.emplace(signature(a, ca, v), 0);
        for (std::size_t v = 0; v < b.size(); ++v) dict.emplace(signature(b, cb, v), 0);
        int next = 0;
        for (auto& entry : dict) entry.second = next++;
        std::vector<int> na(a.size()), nb(b.size());
        for (std::size_t v = 0; v < a.size(); ++v) na[v] = dict[signature(a, ca, v)];
        for (std::size_t v = 0; v < b.size(); ++v) nb[v] = dict[signature(b, cb, v)];
        ca = std::move(na);
        cb = std::move(nb);
        if (dict.size() == classes) break;
        classes = dict.size();
    }
    return {ca, cb};
}

class IsoSearch {
public:
    IsoSearch(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b, const std::vector<int>& ca,
              const std::vector<int>& cb)
        : a_(a), b_(b), ca_(ca), cb_(cb), map_(a.size(), -1), inverse_(b.size(), -1) {
        // Order: rarest color class first, then breadth-first so each vertex
        // after the first in a component has an already-mapped neighbour.
        std::map<int, int> freq;
        for (int c : ca_) ++freq[c];
        std::vector<char> placed(a_.size(), 0);
        while (order_.size() < a_.size()) {
            int root = -1;
            for (std::size_t v = 0; v < a_.size(); ++v) {
                if (placed[v]) continue;
                if (root < 0 || freq[ca_[v]] < freq[ca_[static_cast<std::size_t>(root)]]) root = static_cast<int>(v);
            }
            std::size_t head = order_.size();
            order_.push_back(root);
            placed[static_cast<std::size_t>(root)] = 1;
            while (head < order_.size()) {
                const int v = order_[head++];
                for (int w : a_[static_cast<std::size_t>(v)]) {
                    if (!placed[static_cast<std::size_t>(w)]) {
                        placed[static_cast<std::size_t>(w)] = 1;
                        order_.push_back(w);
                    }
                }
            }
        }
    }

    bool run() { return extend(0); }
    const std::vector<int>& mapping() const { return map_; }

private:
    bool feasible(int v, int x) const {
        if (inverse_[static_cast<std::size_t>(x)] >= 0 || ca_[static_cast<std::size_t>(v)] != cb_[static_cast<std::size_t>(x)]) return false;
        int mapped_a = 0;
        for (int w : a_[static_cast<std::size_t>(v)]) {
            const int mw = map_[static_cast<std::size_t>(w)];
            if (mw < 0) continue;
            ++mapped_a;
            if (!adjacent(b_, x, mw)) return false;
        }
        int mapped_b = 0;
        for (int y : b_[static_cast<std::size_t>(x)]) mapped_b += inverse_[static_cast<std::size_t>(y)] >= 0 ? 1 : 0;
        return mapped_a == mapped_b;
    }

    bool extend(std::size_t depth) {
        if (depth == order_.size()) return true;
        const int v = order_[depth];
        std::vector<int> candidates;
        int anchor = -1;
        for (int w : a_[static_cast<std::size_t>(v)]) {
            if (map_[static_cast<std::size_t>(w)] >= 0) {
                anchor = map_[static_cast<std::size_t>(w)];
                break;
            }
        }
        if (anchor >= 0) {
            candidates = b_[static_cast<std::size_t>(anchor)];
        } else {
            for (std::size_t x = 0; x < b_.size(); ++x) candidates.push_back(static_cast<int>(x));
        }
        for (int x : candidates) {
            if (!feasible(v, x)) continue;
            map_[static_cast<std::size_t>(v)] = x;
            inverse_[static_cast<std::size_t>(x)] = v;
            if (extend(depth + 1)) return true;
            map_[static_cast<std::size_t>(v)] = -1;
            inverse_[static_cast<std::size_t>(x)] = -1;
        }
        return false;
    }

    const std::vector<std::vector<int>>& a_;
    const std::vector<std::vector<int>>& b_;
    const std::vector<int>& ca_;
    const std::vector<int>& cb_;
    std::vector<int> map_;
    std::vector<int> inverse_;
    std::vector<int> order_;
};

}  // namespace detail

// True when `mapping` is a bijection carrying edges of g1 exactly onto edges of g2.
template <AdjacencyGraph G1, AdjacencyGraph G2>
bool verify_isomorphism(const G1& g1, const G2& g2, const std::vector<int>& mapping) {
    const auto a = detail::sorted_adjacency(g1);
    const auto b = detail::sorted_adjacency(g2);
    if (a.size() != b.size() || mapping.size() != a.size()) return false;
    std::vector<char> hit(b.size(), 0);
    for (int x : mapping) {
        if (x < 0 || static_cast<std::size_t>(x) >= b.size() || hit[static_cast<std::size_t>(x)]) return false;
        hit[static_cast<std::size_t>(x)] = 1;
    }
    std::size_t ea = 0, eb = 0;
    for (const auto& n : a) ea += n.size();
    for (const auto& n : b) eb += n.size();
    if (ea != eb) return false;
    for (std::size_t u = 0; u < a.size(); ++u) {
        for (int w : a[u]) {
            if (!detail::adjacent(b, mapping[u], mapping[static_cast<std::size_t>(w)])) return false;
        }
    }
    return true;
}

template <AdjacencyGraph G1, AdjacencyGraph G2>
IsomorphismResult graph_isomorphic(const G1& g1, const G2& g2) {
    IsomorphismResult out;
    const auto a = detail::sorted_adjacency(g1);
    const auto b = detail::sorted_adjacency(g2);
    if (a.size() != b.size()) return out;

    std::vector<std::size_t> da, db;
    for (const auto& n : a) da.push_back(n.size());
    for (const auto& n : b) db.push_back(n.size());
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return out;
    if (detail::count_3_cycles(a) != detail::count_3_cycles(b)) return out;

    auto [ca, cb] = detail::joint_refinement(a, b);
    auto ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return out;

    detail::IsoSearch search(a, b, ca, cb);
    if (!search.run()) return out;
    if (!verify_isomorphism(g1, g2, search.mapping())) {
        throw std::logic_error("isomorphism search produced an invalid mapping");
    }
    out.isomorphic = true;
    out.mapping = search.mapping();
    return out;
}

}  // namespace gcarr
