#pragma once

// The 4-regular arrangement graph of a simple great-circle arrangement, with
// its rotation system and face structure.

#include <gcarr/errors.hpp>
#include <gcarr/geometry.hpp>

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gcarr {

// Any graph the coloring and isomorphism code can work on.
template <typename G>
concept AdjacencyGraph = requires(const G& g, int v) {
    { g.vertex_count() } -> std::convertible_to<std::size_t>;
    { g.neighbors(v) };
};

// Plain undirected graph; used for DIMACS input and test graphs.
class SimpleGraph {
public:
    explicit SimpleGraph(std::size_t n = 0) : adj_(n) {}

    void add_edge(int u, int v) {
        adj_.at(static_cast<std::size_t>(u)).push_back(v);
        adj_.at(static_cast<std::size_t>(v)).push_back(u);
        edges_.emplace_back(u, v);
    }

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::span<const int> neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

private:
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

struct ArrangementVertex {
    int circle_a;  // circle_a < circle_b
    int circle_b;
    int sign;      // +1 canonical representative, -1 its antipode
    SpherePoint point;
};

struct ArrangementEdge {
    int u;
    int v;
    int circle;  // host circle; v follows u counterclockwise about its normal
};

struct Face {
    std::vector<int> vertices;  // cyclic
    std::vector<int> edges;     // edges[i] joins vertices[i] and vertices[i+1]
    std::vector<int> darts;

    std::size_t size() const { return vertices.size(); }
};

class ArrangementGraph {
public:
    // Dart 2e runs edges[e].u -> edges[e].v, dart 2e+1 the reverse.
    static constexpr int reverse(int dart) { return dart ^ 1; }

    explicit ArrangementGraph(std::vector<GreatCircle> circles, const Tolerances& tol = {});

    int k() const { return static_cast<int>(circles_.size()); }
    const std::vector<GreatCircle>& circles() const { return circles_; }
    const Tolerances& tolerances() const { return tol_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<ArrangementVertex>& vertices() const { return vertices_; }
    const std::vector<ArrangementEdge>& edges() const { return edges_; }
    const std::vector<Face>& faces() const { return faces_; }

    int tail(int dart) const {
        const auto& e = edges_[static_cast<std::size_t>(dart / 2)];
        return dart % 2 == 0 ? e.u : e.v;
    }
    int head(int dart) const { return tail(reverse(dart)); }

    // Outgoing darts, counterclockwise seen from outside the sphere.
    const std::array<int, 4>& rotation(int v) const { return rotation_[static_cast<std::size_t>(v)]; }
    const std::array<int, 4>& neighbors(int v) const { return neighbors_[static_cast<std::size_t>(v)]; }
    int face_of_dart(int dart) const { return dart_face_[static_cast<std::size_t>(dart)]; }

    std::optional<int> edge_between(int u, int v) const {
        for (int d : rotation(u)) {
            if (head(d) == v) return d / 2;
        }
        return std::nullopt;
    }

    // Vertex id of the intersection of circles a != b with the given sign.
    int vertex_id(int a, int b, int sign) const {
        if (a > b) std::swap(a, b);
        const int n = k();
        const int pair = a * n - a * (a + 1) / 2 + (b - a - 1);
        return 2 * pair + (sign > 0 ? 0 : 1);
    }

    // Vertices on circle c in counterclockwise order about its normal.
    const std::vector<int>& circle_vertices(int c) const { return circle_order_[static_cast<std::size_t>(c)]; }

private:
    void build_vertices();
    void build_edges();
    void build_rotation();
    void trace_faces();

    std::vector<GreatCircle> circles_;
    Tolerances tol_;
    std::vector<ArrangementVertex> vertices_;
    std::vector<ArrangementEdge> edges_;
    std::vector<std::vector<int>> circle_order_;
    std::vector<std::array<int, 4>> rotation_;
    std::vector<std::array<int, 4>> neighbors_;
    std::vector<int> dart_face_;
    std::vector<Face> faces_;
};

inline ArrangementGraph::ArrangementGraph(std::vector<GreatCircle> circles, const Tolerances& tol)
    : circles_(std::move(circles)), tol_(tol) {
    if (circles_.size() < 3) {
        throw TooFewCircles("arrangement graph needs at least 3 circles, got " + std::to_string(circles_.size()));
    }
    try {
        check_distinct(circles_, tol_);
    } catch (const DegenerateCircles& e) {
        throw NotSimple(e.what());
    }
    if (!check_simple(circles_, tol_)) throw NotSimple("three or more circles meet at a point");
    build_vertices();
    build_edges();
    build_rotation();
    trace_faces();
}

inline ArrangementGraph build_graph(std::vector<GreatCircle> circles, const Tolerances& tol = {}) {
    return ArrangementGraph(std::move(circles), tol);
}

inline void ArrangementGraph::build_vertices() {
    const int n = k();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            auto [p, q] = intersect_pair(circles_[static_cast<std::size_t>(a)], circles_[static_cast<std::size_t>(b)], tol_);
            vertices_.push_back({a, b, +1, p});
            vertices_.push_back({a, b, -1, q});
        }
    }
}

inline void ArrangementGraph::build_edges() {
    const int n = k();
    circle_order_.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        std::vector<int> ids;
        std::vector<SpherePoint> pts;
        for (int other = 0; other < n; ++other) {
            if (other == c) continue;
            for (int sign : {+1, -1}) {
                const int id = vertex_id(c, other, sign);
                ids.push_back(id);
                pts.push_back(vertices_[static_cast<std::size_t>(id)].point);
            }
        }
        const auto order = circular_order(circles_[static_cast<std::size_t>(c)], pts, tol_);
        auto& ring = circle_order_[static_cast<std::size_t>(c)];
        for (std::size_t i : order) ring.push_back(ids[i]);
        for (std::size_t i = 0; i < ring.size(); ++i) {
            edges_.push_back({ring[i], ring[(i + 1) % ring.size()], c});
        }
    }
}

inline void ArrangementGraph::build_rotation() {
    const std::size_t nv = vertices_.size();
    std::vector<std::vector<std::pair<double, int>>> ends(nv);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& edge = edges_[e];
        const Vec3 n = circles_[static_cast<std::size_t>(edge.circle)].normal();
        const Vec3 pu = vertices_[static_cast<std::size_t>(edge.u)].point.coords();
        const Vec3 pv = vertices_[static_cast<std::size_t>(edge.v)].point.coords();
        const auto tangent_angle = [](Vec3 p, Vec3 t) {
            const Vec3 a = orthogonal_unit(p);
            const Vec3 b = cross(p, a);
            return std::atan2(dot(t, b), dot(t, a));
        };
        ends[static_cast<std::size_t>(edge.u)].emplace_back(tangent_angle(pu, cross(n, pu)), static_cast<int>(2 * e));
        ends[static_cast<std::size_t>(edge.v)].emplace_back(tangent_angle(pv, -cross(n, pv)), static_cast<int>(2 * e + 1));
    }
    rotation_.resize(nv);
    neighbors_.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        auto& list = ends[v];
        if (list.size() != 4) {
            throw CorruptRotation("vertex " + std::to_string(v) + " has degree " + std::to_string(list.size()));
        }
        std::sort(list.begin(), list.end());
        for (std::size_t i = 0; i < 4; ++i) {
            rotation_[v][i] = list[i].second;
            neighbors_[v][i] = head(list[i].second);
        }
    }
}

inline void ArrangementGraph::trace_faces() {
    const std::size_t nd = 2 * edges_.size();
    dart_face_.assign(nd, -1);
    for (std::size_t start = 0; start < nd; ++start) {
        if (dart_face_[start] >= 0) continue;
        const int fid = static_cast<int>(faces_.size());
        Face face;
        int d = static_cast<int>(start);
        do {
            if (dart_face_[static_cast<std::size_t>(d)] >= 0) {
                throw CorruptRotation("face tracing revisited dart " + std::to_string(d));
            }
            dart_face_[static_cast<std::size_t>(d)] = fid;
            face.darts.push_back(d);
            face.vertices.push_back(tail(d));
            face.edges.push_back(d / 2);
            // Step to the edge-end clockwise-adjacent to the reverse dart.
            const int h = head(d);
            const auto& rot = rotation(h);
            const auto pos = static_cast<std::size_t>(std::find(rot.begin(), rot.end(), reverse(d)) - rot.begin());
            if (pos == 4) throw CorruptRotation("reverse dart missing at vertex " + std::to_string(h));
            d = rot[(pos + 3) % 4];
        } while (d != static_cast<int>(start));
        faces_.push_back(std::move(face));
    }
}

inline const std::vector<Face>& enumerate_faces(const ArrangementGraph& g) { return g.faces(); }

// Structural problems of g; empty when every graph invariant holds.
inline std::vector<std::string> validate_graph(const ArrangementGraph& g) {
    std::vector<std::string> issues;
    const auto k = static_cast<std::size_t>(g.k());
    const std::size_t nv = g.vertex_count();
    const std::size_t ne = g.edge_count();
    if (nv != k * (k - 1)) issues.push_back("|V| != k(k-1)");
    if (ne != 2 * k * (k - 1)) issues.push_back("|E| != 2k(k-1)");
    if (g.faces().size() + nv != ne + 2) issues.push_back("Euler formula violated");

    std::set<std::pair<int, int>> seen;
    std::vector<int> degree(nv, 0);
    for (const auto& e : g.edges()) {
        if (e.u == e.v) issues.push_back("loop at " + std::to_string(e.u));
        if (!seen.insert(std::minmax(e.u, e.v)).second) issues.push_back("multi-edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        ++degree[static_cast<std::size_t>(e.u)];
        ++degree[static_cast<std::size_t>(e.v)];
        const auto& ring = g.circle_vertices(e.circle);
        const auto pos = static_cast<std::size_t>(std::find(ring.begin(), ring.end(), e.u) - ring.begin());
        if (pos == ring.size() || ring[(pos + 1) % ring.size()] != e.v) {
            issues.push_back("edge endpoints not consecutive on host circle " + std::to_string(e.circle));
        }
    }
    for (std::size_t v = 0; v < nv; ++v) {
        if (degree[v] != 4) issues.push_back("vertex " + std::to_string(v) + " has degree " + std::to_string(degree[v]));
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (g.circle_vertices(static_cast<int>(c)).size() != 2 * (k - 1)) issues.push_back("circle vertex count wrong");
    }

    std::vector<char> reached(nv, 0);
    std::queue<int> q;
    q.push(0);
    reached[0] = 1;
    std::size_t count = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : g.neighbors(v)) {
            if (!reached[static_cast<std::size_t>(w)]) {
                reached[static_cast<std::size_t>(w)] = 1;
                ++count;
                q.push(w);
            }
        }
    }
    if (count != nv) issues.push_back("graph is disconnected");

    std::vector<int> dart_uses(2 * ne, 0);
    std::size_t total = 0;
    for (const auto& f : g.faces()) {
        if (f.size() < 3) issues.push_back("face shorter than 3");
        total += f.size();
        for (std::size_t i = 0; i < f.size(); ++i) {
            ++dart_uses[static_cast<std::size_t>(f.darts[i])];
            if (g.tail(f.darts[i]) != f.vertices[i] || g.head(f.darts[i]) != f.vertices[(i + 1) % f.size()]) {
                issues.push_back("face darts do not chain");
            }
        }
    }
    if (total != 2 * ne) issues.push_back("sum of face lengths != 2|E|");
    if (std::any_of(dart_uses.begin(), dart_uses.end(), [](int u) { return u != 1; })) {
        issues.push_back("faces do not partition the darts");
    }
    return issues;
}

// x -> -x on the vertex set: (pair, +) <-> (pair, -).
inline std::vector<int> antipodal_involution(const ArrangementGraph& g) {
    std::vector<int> sigma(g.vertex_count());
    for (std::size_t v = 0; v < sigma.size(); ++v) sigma[v] = static_cast<int>(v ^ 1U);
    return sigma;
}

// Index of the face whose edge set is the image of face f under sigma, or -1.
inline std::vector<int> mirror_faces(const ArrangementGraph& g, const std::vector<int>& sigma) {
    std::map<std::vector<int>, int> by_edges;
    const auto& faces = g.faces();
    for (std::size_t f = 0; f < faces.size(); ++f) {
        auto key = faces[f].edges;
        std::sort(key.begin(), key.end());
        by_edges.emplace(std::move(key), static_cast<int>(f));
    }
    std::vector<int> image(faces.size(), -1);
    for (std::size_t f = 0; f < faces.size(); ++f) {
        std::vector<int> key;
        bool ok = true;
        const auto& vs = faces[f].vertices;
        for (std::size_t i = 0; i < vs.size() && ok; ++i) {
            const auto e = g.edge_between(sigma[static_cast<std::size_t>(vs[i])],
                                          sigma[static_cast<std::size_t>(vs[(i + 1) % vs.size()])]);
            if (e) key.push_back(*e);
            else ok = false;
        }
        if (!ok) continue;
        std::sort(key.begin(), key.end());
        if (auto it = by_edges.find(key); it != by_edges.end()) image[f] = it->second;
    }
    return image;
}

// Problems with sigma as a fixed-point-free, order-2, face-preserving automorphism.
inline std::vector<std::string> validate_involution(const ArrangementGraph& g, const std::vector<int>& sigma) {
    std::vector<std::string> issues;
    if (sigma.size() != g.vertex_count()) return {"sigma has wrong size"};
    for (std::size_t v = 0; v < sigma.size(); ++v) {
        const int s = sigma[v];
        if (s < 0 || static_cast<std::size_t>(s) >= sigma.size()) return {"sigma out of range"};
        if (static_cast<std::size_t>(s) == v) issues.push_back("fixed point " + std::to_string(v));
        if (static_cast<std::size_t>(sigma[static_cast<std::size_t>(s)]) != v) issues.push_back("sigma not an involution at " + std::to_string(v));
    }
    for (const auto& e : g.edges()) {
        if (!g.edge_between(sigma[static_cast<std::size_t>(e.u)], sigma[static_cast<std::size_t>(e.v)])) {
            issues.push_back("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " not preserved");
        }
    }
    const auto image = mirror_faces(g, sigma);
    std::vector<int> hit(image.size(), 0);
    for (std::size_t f = 0; f < image.size(); ++f) {
        if (image[f] < 0) {
            issues.push_back("face " + std::to_string(f) + " has no mirror face");
            continue;
        }
        ++hit[static_cast<std::size_t>(image[f])];
        if (g.faces()[static_cast<std::size_t>(image[f])].size() != g.faces()[f].size()) {
            issues.push_back("mirror of face " + std::to_string(f) + " has different length");
        }
    }
    if (std::any_of(hit.begin(), hit.end(), [](int h) { return h != 1; })) {
        issues.push_back("induced face map is not a bijection");
    }
    return issues;
}

}  // namespace gcarr
