#pragma once

// Great circles on the unit sphere, their intersections, and the arrangement
// generators used throughout the library.

#include <gcarr/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gcarr {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(Vec3 a) { return (1.0 / norm(a)) * a; }

// Angle between two unit vectors, robust near 0 and pi.
inline double angle_between(Vec3 a, Vec3 b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

// Flips the sign so that the first coordinate with |c| > 1e-12 is positive.
inline Vec3 canonical_sign(Vec3 a) {
    for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(a[i]) > 1e-12) return a[i] > 0 ? a : -a;
    }
    return a;
}

// Unit vector orthogonal to n: n x e, e the basis vector least aligned with n
// (lowest index on ties).
inline Vec3 orthogonal_unit(Vec3 n) {
    const std::array<double, 3> mag{std::abs(n.x), std::abs(n.y), std::abs(n.z)};
    const auto axis = static_cast<std::size_t>(std::min_element(mag.begin(), mag.end()) - mag.begin());
    const Vec3 e = axis == 0 ? Vec3{1, 0, 0} : (axis == 1 ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    return normalized(cross(n, e));
}

struct Tolerances {
    double dup = 1e-9;  // rad; equal/antipodal normals
    double on = 1e-9;   // |n . p| for a point on a circle
    double sep = 1e-9;  // rad; distinct intersection points
};

class SpherePoint {
public:
    SpherePoint() = default;
    explicit SpherePoint(Vec3 v) : coords_(normalized(v)) {}

    Vec3 coords() const { return coords_; }
    SpherePoint antipode() const { return SpherePoint(-coords_); }

private:
    Vec3 coords_{0, 0, 1};
};

class GreatCircle {
public:
    // Unit-length input is kept as is so that written files read back bit-identical.
    GreatCircle(int id, Vec3 normal)
        : id_(id), normal_(std::abs(norm(normal) - 1.0) <= 4 * std::numeric_limits<double>::epsilon() ? normal : normalized(normal)) {
        if (!std::isfinite(normal_.x) || !std::isfinite(normal_.y) || !std::isfinite(normal_.z)) {
            throw DegenerateCircles("great circle normal must be a nonzero finite vector");
        }
    }

    int id() const { return id_; }
    Vec3 normal() const { return normal_; }

private:
    int id_;
    Vec3 normal_;
};

// Antipodal pair of intersection points; first is the canonical representative.
inline std::pair<SpherePoint, SpherePoint> intersect_pair(const GreatCircle& a, const GreatCircle& b,
                                                          const Tolerances& tol = {}) {
    const Vec3 c = cross(a.normal(), b.normal());
    if (std::asin(std::min(1.0, norm(c))) < tol.dup) {
        throw DegenerateCircles("circles " + std::to_string(a.id()) + " and " + std::to_string(b.id()) +
                                " have parallel normals");
    }
    const Vec3 p = canonical_sign(normalized(c));
    return {SpherePoint(p), SpherePoint(-p)};
}

// Angle of p in [0, 2pi) in the right-handed frame (u, n x u, n) of circle c.
inline double angle_on_circle(const GreatCircle& c, Vec3 p) {
    const Vec3 u = orthogonal_unit(c.normal());
    const Vec3 v = cross(c.normal(), u);
    double a = std::atan2(dot(p, v), dot(p, u));
    if (a < 0) a += 2 * std::numbers::pi;
    return a;
}

// Indices of pts sorted counterclockwise (seen from +normal), starting at the
// smallest frame angle.
inline std::vector<std::size_t> circular_order(const GreatCircle& c, const std::vector<SpherePoint>& pts,
                                               const Tolerances& tol = {}) {
    std::vector<double> angle(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec3 p = pts[i].coords();
        if (std::abs(dot(c.normal(), p)) >= tol.on) {
            throw PointOffCircle("point " + std::to_string(i) + " is not on circle " + std::to_string(c.id()));
        }
        angle[i] = angle_on_circle(c, p);
    }
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return angle[a] < angle[b]; });
    for (std::size_t i = 0; i < order.size() && order.size() > 1; ++i) {
        const std::size_t j = order[(i + 1) % order.size()];
        if (angle_between(pts[order[i]].coords(), pts[j].coords()) < tol.sep) {
            throw CoincidentPoints("points " + std::to_string(order[i]) + " and " + std::to_string(j) +
                                   " coincide on circle " + std::to_string(c.id()));
        }
    }
    return order;
}

// True when a and b describe the same cyclic sequence.
inline bool cyclic_equal(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    const auto it = std::find(b.begin(), b.end(), a.front());
    if (it == b.end()) return false;
    const auto offset = static_cast<std::size_t>(it - b.begin());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[(i + offset) % b.size()]) return false;
    }
    return true;
}

// Rejects duplicate (equal or antipodal) normals.
inline void check_distinct(const std::vector<GreatCircle>& circles, const Tolerances& tol = {}) {
    for (std::size_t i = 0; i < circles.size(); ++i) {
        for (std::size_t j = i + 1; j < circles.size(); ++j) {
            if (std::asin(std::min(1.0, norm(cross(circles[i].normal(), circles[j].normal())))) < tol.dup) {
                throw DegenerateCircles("circles " + std::to_string(i) + " and " + std::to_string(j) +
                                        " are the same great circle");
            }
        }
    }
}

// No two intersection points of different circle pairs coincide.
inline bool check_simple(const std::vector<GreatCircle>& circles, const Tolerances& tol = {}) {
    std::vector<Vec3> pts;
    pts.reserve(circles.size() * circles.size());
    for (std::size_t i = 0; i < circles.size(); ++i) {
        for (std::size_t j = i + 1; j < circles.size(); ++j) {
            auto [p, q] = intersect_pair(circles[i], circles[j], tol);
            pts.push_back(p.coords());
            pts.push_back(q.coords());
        }
    }
    // Points 2m and 2m+1 come from the same pair and are antipodal.
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = (a / 2 + 1) * 2; b < pts.size(); ++b) {
            if (angle_between(pts[a], pts[b]) < tol.sep) return false;
        }
    }
    return true;
}

// Normals from independent standard normals; the whole set is redrawn until
// the arrangement is simple.
inline std::vector<GreatCircle> generate_random(int k, std::uint64_t seed, const Tolerances& tol = {}) {
    if (k < 3) throw TooFewCircles("need at least 3 circles, got " + std::to_string(k));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        std::vector<GreatCircle> circles;
        circles.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            Vec3 v;
            do {
                v = {gauss(rng), gauss(rng), gauss(rng)};
            } while (norm(v) < 1e-6);
            circles.emplace_back(i, v);
        }
        bool distinct = true;
        try {
            check_distinct(circles, tol);
        } catch (const DegenerateCircles&) {
            distinct = false;
        }
        if (distinct && check_simple(circles, tol)) return circles;
    }
}

enum class Fixture { octahedron, cuboctahedron, icosidodecahedron };

inline std::string_view to_string(Fixture f) {
    switch (f) {
        case Fixture::octahedron: return "octahedron";
        case Fixture::cuboctahedron: return "cuboctahedron";
        case Fixture::icosidodecahedron: return "icosidodecahedron";
    }
    return "?";
}

inline Fixture parse_fixture(std::string_view name) {
    for (Fixture f : {Fixture::octahedron, Fixture::cuboctahedron, Fixture::icosidodecahedron}) {
        if (to_string(f) == name) return f;
    }
    throw UnknownFixture("unknown fixture '" + std::string(name) + "'");
}

inline std::vector<GreatCircle> fixture_arrangement(Fixture f) {
    std::vector<Vec3> normals;
    switch (f) {
        case Fixture::octahedron:
            normals = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
            break;
        case Fixture::cuboctahedron:
            normals = {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};
            break;
        case Fixture::icosidodecahedron: {
            const double phi = std::numbers::phi;
            normals = {{0, 1, phi}, {0, 1, -phi}, {1, phi, 0}, {1, -phi, 0}, {phi, 0, 1}, {-phi, 0, 1}};
            break;
        }
    }
    std::vector<GreatCircle> circles;
    for (std::size_t i = 0; i < normals.size(); ++i) circles.emplace_back(static_cast<int>(i), normals[i]);
    return circles;
}

inline std::vector<GreatCircle> fixture_arrangement(std::string_view name) {
    return fixture_arrangement(parse_fixture(name));
}

}  // namespace gcarr
