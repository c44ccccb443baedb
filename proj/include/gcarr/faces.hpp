#pragma once

// Triangular faces, their antipodal pairing, and closed triangular chains.

#include <gcarr/arrangement.hpp>
#include <gcarr/errors.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gcarr {

struct Triangle {
    std::array<int, 3> vertices;  // sorted
    std::array<int, 3> edges;     // sorted
    int face = -1;

    bool has_vertex(int v) const { return std::find(vertices.begin(), vertices.end(), v) != vertices.end(); }
};

inline std::vector<int> shared_vertices(const Triangle& a, const Triangle& b) {
    std::vector<int> out;
    std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                          std::back_inserter(out));
    return out;
}

inline bool share_edge(const Triangle& a, const Triangle& b) {
    for (int e : a.edges) {
        if (std::find(b.edges.begin(), b.edges.end(), e) != b.edges.end()) return true;
    }
    return false;
}

// Length-3 faces ordered lexicographically by sorted vertex ids.
inline std::vector<Triangle> enumerate_triangles(const ArrangementGraph& g) {
    std::vector<Triangle> out;
    const auto& faces = g.faces();
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (faces[f].size() != 3) continue;
        Triangle t;
        std::copy(faces[f].vertices.begin(), faces[f].vertices.end(), t.vertices.begin());
        std::copy(faces[f].edges.begin(), faces[f].edges.end(), t.edges.begin());
        std::sort(t.vertices.begin(), t.vertices.end());
        std::sort(t.edges.begin(), t.edges.end());
        t.face = static_cast<int>(f);
        out.push_back(t);
    }
    std::sort(out.begin(), out.end(), [](const Triangle& a, const Triangle& b) { return a.vertices < b.vertices; });
    return out;
}

struct MirrorPairing {
    std::vector<int> partner;               // partner[t] = index of sigma(t), -1 if none
    std::vector<std::pair<int, int>> pairs;  // (t, partner) with t < partner

    bool total() const {
        return std::none_of(partner.begin(), partner.end(), [](int p) { return p < 0; }) &&
               pairs.size() * 2 == partner.size();
    }
};

inline MirrorPairing mirror_pairing(const std::vector<Triangle>& triangles, const std::vector<int>& sigma) {
    std::map<std::array<int, 3>, int> index;
    for (std::size_t i = 0; i < triangles.size(); ++i) index.emplace(triangles[i].vertices, static_cast<int>(i));
    MirrorPairing out;
    out.partner.assign(triangles.size(), -1);
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        std::array<int, 3> img{};
        for (std::size_t j = 0; j < 3; ++j) img[j] = sigma[static_cast<std::size_t>(triangles[i].vertices[j])];
        std::sort(img.begin(), img.end());
        if (auto it = index.find(img); it != index.end()) out.partner[i] = it->second;
    }
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        const int p = out.partner[i];
        if (p > static_cast<int>(i) && out.partner[static_cast<std::size_t>(p)] == static_cast<int>(i)) {
            out.pairs.emplace_back(static_cast<int>(i), p);
        }
    }
    return out;
}

// triangles[i] is an index into the triangle list; links[i] is the vertex
// shared by triangles[i] and triangles[i+1] (cyclically).
struct TriangularChain {
    std::vector<int> triangles;
    std::vector<int> links;

    std::size_t size() const { return triangles.size(); }
    int link_in(std::size_t i) const { return links[(i + links.size() - 1) % links.size()]; }
    int link_out(std::size_t i) const { return links[i]; }
};

// The vertex of chain triangle i touching neither neighbour.
inline int apex(const TriangularChain& chain, const std::vector<Triangle>& triangles, std::size_t i) {
    const auto& t = triangles[static_cast<std::size_t>(chain.triangles[i])];
    for (int v : t.vertices) {
        if (v != chain.link_in(i) && v != chain.link_out(i)) return v;
    }
    return -1;
}

struct ChainPair {
    TriangularChain first;   // foreground
    TriangularChain second;  // sigma image of first
};

inline TriangularChain mirror_chain(const TriangularChain& chain, const MirrorPairing& pairing,
                                    const std::vector<int>& sigma) {
    TriangularChain out;
    for (int t : chain.triangles) out.triangles.push_back(pairing.partner[static_cast<std::size_t>(t)]);
    for (int v : chain.links) out.links.push_back(sigma[static_cast<std::size_t>(v)]);
    return out;
}

// Violations of the chain invariants; empty when valid.
inline std::vector<std::string> validate_chain(const std::vector<Triangle>& triangles, const TriangularChain& chain) {
    std::vector<std::string> issues;
    const std::size_t n = chain.size();
    if (n < 3) return {"chain shorter than 3"};
    if (chain.links.size() != n) return {"link count differs from triangle count"};
    for (int t : chain.triangles) {
        if (t < 0 || static_cast<std::size_t>(t) >= triangles.size()) return {"triangle index out of range"};
    }
    if (std::set<int>(chain.triangles.begin(), chain.triangles.end()).size() != n) issues.push_back("repeated triangle");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = triangles[static_cast<std::size_t>(chain.triangles[i])];
        const auto& b = triangles[static_cast<std::size_t>(chain.triangles[(i + 1) % n])];
        const auto shared = shared_vertices(a, b);
        if (shared.size() != 1 || shared.front() != chain.links[i]) {
            issues.push_back("triangles " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                             " do not meet in exactly the link vertex");
        }
        if (chain.link_in(i) == chain.link_out(i)) issues.push_back("triangle " + std::to_string(i) + " has equal links");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (share_edge(a, triangles[static_cast<std::size_t>(chain.triangles[j])])) {
                issues.push_back("triangles " + std::to_string(i) + " and " + std::to_string(j) + " share an edge");
            }
        }
    }
    return issues;
}

// Non-consecutive chain triangles sharing a vertex. Reported, not an error.
inline std::vector<std::pair<std::size_t, std::size_t>> extra_vertex_sharing(const std::vector<Triangle>& triangles,
                                                                           const TriangularChain& chain) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = chain.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (!shared_vertices(triangles[static_cast<std::size_t>(chain.triangles[i])],
                                 triangles[static_cast<std::size_t>(chain.triangles[j])]).empty()) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

inline std::vector<std::string> validate_chain_pair(const std::vector<Triangle>& triangles, const ChainPair& pair,
                                                    const MirrorPairing& pairing, const std::vector<int>& sigma) {
    auto issues = validate_chain(triangles, pair.first);
    for (auto& s : validate_chain(triangles, pair.second)) issues.push_back("second: " + s);
    if (!issues.empty()) return issues;
    const auto mirrored = mirror_chain(pair.first, pairing, sigma);
    if (mirrored.triangles != pair.second.triangles || mirrored.links != pair.second.links) {
        issues.push_back("second chain is not the mirror image of the first");
    }
    std::set<int> used_edges;
    std::set<int> used_triangles;
    for (const auto* chain : {&pair.first, &pair.second}) {
        for (int t : chain->triangles) {
            if (!used_triangles.insert(t).second) issues.push_back("chains share triangle " + std::to_string(t));
            for (int e : triangles[static_cast<std::size_t>(t)].edges) {
                if (!used_edges.insert(e).second) issues.push_back("edge " + std::to_string(e) + " used twice");
            }
        }
    }
    return issues;
}

enum class ChainSearchStatus { found, not_found, budget_exhausted };

struct ChainSearchOptions {
    int length = 0;                       // required chain length; 0 means k
    std::uint64_t node_budget = 2000000;  // DFS extensions before giving up
};

struct ChainSearchResult {
    ChainSearchStatus status = ChainSearchStatus::not_found;
    std::optional<ChainPair> chains;
    std::size_t longest = 0;  // longest valid closed chain seen when the exact search fails
    std::uint64_t nodes = 0;
};

namespace detail {

// DFS for closed chains whose mirror images are edge-disjoint from them.
class ChainSearch {
public:
    ChainSearch(const std::vector<Triangle>& triangles, const MirrorPairing& pairing, std::size_t edge_count,
                std::uint64_t budget)
        : tri_(triangles), pairing_(pairing), budget_(budget), edge_used_(edge_count, 0) {
        std::map<int, std::vector<int>> at_vertex;
        for (std::size_t i = 0; i < tri_.size(); ++i) {
            for (int v : tri_[i].vertices) at_vertex[v].push_back(static_cast<int>(i));
        }
        adj_.resize(tri_.size());
        for (std::size_t i = 0; i < tri_.size(); ++i) {
            std::set<std::pair<int, int>> nb;
            for (int v : tri_[i].vertices) {
                for (int j : at_vertex[v]) {
                    if (j == static_cast<int>(i)) continue;
                    const auto shared = shared_vertices(tri_[i], tri_[static_cast<std::size_t>(j)]);
                    if (shared.size() == 1 && !share_edge(tri_[i], tri_[static_cast<std::size_t>(j)])) {
                        nb.emplace(j, shared.front());
                    }
                }
            }
            adj_[i].assign(nb.begin(), nb.end());
        }
    }

    // length 0 = any length >= 3, keeping the longest.
    ChainSearchStatus run(std::size_t length) {
        target_ = length;
        for (std::size_t s = 0; s < tri_.size(); ++s) {
            if (pairing_.partner[s] < 0) continue;
            start_ = static_cast<int>(s);
            path_.assign(1, start_);
            links_.clear();
            if (!place(start_)) continue;
            const bool done = extend();
            unplace(start_);
            if (done) return ChainSearchStatus::found;
            if (nodes_ >= budget_) return ChainSearchStatus::budget_exhausted;
        }
        return best_.triangles.empty() || target_ != 0 ? ChainSearchStatus::not_found : ChainSearchStatus::found;
    }

    const TriangularChain& best() const { return best_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    bool place(int t) {
        const int m = pairing_.partner[static_cast<std::size_t>(t)];
        if (m < 0 || m == t) return false;
        for (int x : {t, m}) {
            for (int e : tri_[static_cast<std::size_t>(x)].edges) {
                if (edge_used_[static_cast<std::size_t>(e)]) return false;
            }
        }
        for (int x : {t, m}) {
            for (int e : tri_[static_cast<std::size_t>(x)].edges) edge_used_[static_cast<std::size_t>(e)] = 1;
        }
        return true;
    }

    void unplace(int t) {
        const int m = pairing_.partner[static_cast<std::size_t>(t)];
        for (int x : {t, m}) {
            for (int e : tri_[static_cast<std::size_t>(x)].edges) edge_used_[static_cast<std::size_t>(e)] = 0;
        }
    }

    bool extend() {
        if (++nodes_ >= budget_) return false;
        const int last = path_.back();
        const int link_in = links_.empty() ? -1 : links_.back();
        // Try closing the chain.
        if (path_.size() >= 3 && (target_ == 0 || path_.size() == target_)) {
            for (auto [j, v] : adj_[static_cast<std::size_t>(last)]) {
                if (j != start_ || v == link_in || v == links_.front()) continue;
                TriangularChain c{path_, links_};
                c.links.push_back(v);
                if (target_ != 0) {
                    best_ = std::move(c);
                    return true;
                }
                if (c.size() > best_.size()) best_ = std::move(c);
                break;
            }
        }
        if (target_ != 0 && path_.size() >= target_) return false;
        for (auto [j, v] : adj_[static_cast<std::size_t>(last)]) {
            if (j <= start_ || v == link_in) continue;
            if (std::find(path_.begin(), path_.end(), j) != path_.end()) continue;
            if (!place(j)) continue;
            path_.push_back(j);
            links_.push_back(v);
            const bool done = extend();
            path_.pop_back();
            links_.pop_back();
            unplace(j);
            if (done) return true;
            if (nodes_ >= budget_) return false;
        }
        return false;
    }

    const std::vector<Triangle>& tri_;
    const MirrorPairing& pairing_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<std::vector<std::pair<int, int>>> adj_;  // (triangle, shared vertex), ascending
    std::vector<char> edge_used_;
    std::size_t target_ = 0;
    int start_ = 0;
    std::vector<int> path_;
    std::vector<int> links_;
    TriangularChain best_;
};

}  // namespace detail

// Closed chain of the requested length whose mirror image is disjoint from it.
// Starting triangles and extensions are tried lowest index first.
inline ChainSearchResult find_chain_pair(const ArrangementGraph& g, const std::vector<Triangle>& triangles,
                                         const std::vector<int>& sigma, const ChainSearchOptions& opts = {}) {
    if (g.k() < 4) throw PreconditionViolation("chain search requires k >= 4, got k = " + std::to_string(g.k()));
    const auto pairing = mirror_pairing(triangles, sigma);
    const auto length = static_cast<std::size_t>(opts.length > 0 ? opts.length : g.k());

    ChainSearchResult result;
    detail::ChainSearch exact(triangles, pairing, g.edge_count(), opts.node_budget);
    result.status = exact.run(length);
    result.nodes = exact.nodes();
    if (result.status == ChainSearchStatus::found) {
        const auto& first = exact.best();
        result.chains = ChainPair{first, mirror_chain(first, pairing, sigma)};
        result.longest = first.size();
        return result;
    }
    detail::ChainSearch any(triangles, pairing, g.edge_count(), opts.node_budget);
    any.run(0);
    result.nodes += any.nodes();
    result.longest = any.best().size();
    return result;
}

// Longest closed mirror-disjoint chain pair of any length, if one exists.
inline std::optional<ChainPair> find_longest_chain_pair(const ArrangementGraph& g, const std::vector<Triangle>& triangles,
                                                        const std::vector<int>& sigma, std::uint64_t budget = 2000000) {
    const auto pairing = mirror_pairing(triangles, sigma);
    detail::ChainSearch any(triangles, pairing, g.edge_count(), budget);
    any.run(0);
    if (any.best().triangles.empty()) return std::nullopt;
    return ChainPair{any.best(), mirror_chain(any.best(), pairing, sigma)};
}

// Plain-text chain listing: per triangle "t <link_in> <apex> <link_out>".
inline void write_chain_report(std::ostream& os, const std::vector<Triangle>& triangles, const ChainPair& pair) {
    const std::pair<const char*, const TriangularChain*> chains[] = {{"first", &pair.first}, {"second", &pair.second}};
    for (auto [name, chain] : chains) {
        os << "chain " << name << " length=" << chain->size() << '\n';
        for (std::size_t i = 0; i < chain->size(); ++i) {
            os << "t " << chain->link_in(i) << ' ' << apex(*chain, triangles, i) << ' ' << chain->link_out(i) << '\n';
        }
        os << "links";
        for (int v : chain->links) os << ' ' << v;
        os << '\n';
    }
}

}  // namespace gcarr
