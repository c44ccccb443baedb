#pragma once

// Proper 3-colorings: verification, an exact backtracking solver, brute-force
// counting, Kempe flips, and the chain-seeded coloring procedure.

#include <gcarr/arrangement.hpp>
#include <gcarr/errors.hpp>
#include <gcarr/faces.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace gcarr {

using Color = std::uint8_t;
inline constexpr Color kUncolored = 0;
inline constexpr int kColors = 3;

// Vertex -> {1,2,3}; 0 marks an unassigned vertex.
class Coloring {
public:
    Coloring() = default;
    explicit Coloring(std::size_t n) : colors_(n, kUncolored) {}
    explicit Coloring(std::vector<Color> colors) : colors_(std::move(colors)) {
        for (Color c : colors_) {
            if (c > kColors) throw std::invalid_argument("color out of range: " + std::to_string(c));
        }
    }

    std::size_t size() const { return colors_.size(); }
    Color operator[](int v) const { return colors_[static_cast<std::size_t>(v)]; }
    bool assigned(int v) const { return (*this)[v] != kUncolored; }

    void set(int v, Color c) {
        if (c > kColors) throw std::invalid_argument("color out of range: " + std::to_string(c));
        colors_[static_cast<std::size_t>(v)] = c;
    }

    bool total() const {
        return std::none_of(colors_.begin(), colors_.end(), [](Color c) { return c == kUncolored; });
    }
    std::size_t assigned_count() const {
        return static_cast<std::size_t>(std::count_if(colors_.begin(), colors_.end(), [](Color c) { return c != kUncolored; }));
    }
    const std::vector<Color>& values() const { return colors_; }

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    std::vector<Color> colors_;
};

// Edges (u < v) whose endpoints share a color.
template <AdjacencyGraph G>
std::vector<std::pair<int, int>> verify_proper(const G& g, const Coloring& coloring) {
    if (coloring.size() != g.vertex_count()) throw IncompleteColoring("coloring size differs from vertex count");
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (!coloring.assigned(static_cast<int>(v))) throw IncompleteColoring("vertex " + std::to_string(v) + " is uncolored");
    }
    std::vector<std::pair<int, int>> bad;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const int u = static_cast<int>(v);
        for (int w : g.neighbors(u)) {
            if (u < w && coloring[u] == coloring[w]) bad.emplace_back(u, w);
        }
    }
    return bad;
}

namespace detail {

// Partial-coloring conflicts only; uncolored vertices are ignored.
template <AdjacencyGraph G>
bool partial_consistent(const G& g, const Coloring& c) {
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const int u = static_cast<int>(v);
        if (!c.assigned(u)) continue;
        for (int w : g.neighbors(u)) {
            if (c[w] == c[u]) return false;
        }
    }
    return true;
}

template <AdjacencyGraph G>
unsigned allowed_mask(const G& g, const Coloring& c, int v) {
    unsigned mask = 0b111;
    for (int w : g.neighbors(v)) {
        if (c.assigned(w)) mask &= ~(1U << (c[w] - 1));
    }
    return mask;
}

inline Color lowest_color(unsigned mask) {
    for (int c = 1; c <= kColors; ++c) {
        if (mask & (1U << (c - 1))) return static_cast<Color>(c);
    }
    return kUncolored;
}

inline int popcount3(unsigned mask) { return (mask & 1U) + ((mask >> 1) & 1U) + ((mask >> 2) & 1U); }

}  // namespace detail

enum class ExactStatus { colored, infeasible, timeout };

inline std::string_view to_string(ExactStatus s) {
    switch (s) {
        case ExactStatus::colored: return "colored";
        case ExactStatus::infeasible: return "infeasible";
        case ExactStatus::timeout: return "timeout";
    }
    return "?";
}

struct ExactResult {
    ExactStatus status = ExactStatus::infeasible;
    Coloring coloring;  // total and proper when status == colored
    std::uint64_t nodes = 0;
};

namespace detail {

template <AdjacencyGraph G>
class ExactSolver {
public:
    ExactSolver(const G& g, double timeout_seconds)
        : g_(g), n_(g.vertex_count()), domain_(n_, 0b111), color_(n_, kUncolored),
          deadline_(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(timeout_seconds))) {
        degree_.resize(n_);
        for (std::size_t v = 0; v < n_; ++v) {
            degree_[v] = static_cast<int>(std::distance(std::begin(g_.neighbors(static_cast<int>(v))),
                                                        std::end(g_.neighbors(static_cast<int>(v)))));
        }
    }

    ExactResult solve(const Coloring* seed) {
        ExactResult out;
        if (seed) {
            for (std::size_t v = 0; v < n_; ++v) {
                const Color c = (*seed)[static_cast<int>(v)];
                if (c == kUncolored) continue;
                if (!(domain_[v] & (1U << (c - 1))) || !assign(static_cast<int>(v), c)) {
                    out.status = ExactStatus::infeasible;
                    return out;
                }
            }
        }
        const bool ok = search();
        out.nodes = nodes_;
        if (timed_out_) {
            out.status = ExactStatus::timeout;
        } else if (ok) {
            out.status = ExactStatus::colored;
            out.coloring = Coloring(color_);
        } else {
            out.status = ExactStatus::infeasible;
        }
        return out;
    }

private:
    // Fewest remaining colors, then highest degree, then lowest index.
    int select() const {
        int best = -1;
        for (std::size_t v = 0; v < n_; ++v) {
            if (color_[v] != kUncolored) continue;
            if (best < 0) {
                best = static_cast<int>(v);
                continue;
            }
            const auto b = static_cast<std::size_t>(best);
            const int dv = popcount3(domain_[v]);
            const int db = popcount3(domain_[b]);
            if (dv < db || (dv == db && degree_[v] > degree_[b])) best = static_cast<int>(v);
        }
        return best;
    }

    // Forward checking: prune c from uncolored neighbours; false on wipe-out.
    bool assign(int v, Color c) {
        color_[static_cast<std::size_t>(v)] = c;
        trail_.push_back({v, -1, 0});
        const unsigned bit = 1U << (c - 1);
        bool ok = true;
        for (int w : g_.neighbors(v)) {
            const auto wi = static_cast<std::size_t>(w);
            if (color_[wi] != kUncolored) {
                if (color_[wi] == c) ok = false;
                continue;
            }
            if (domain_[wi] & bit) {
                trail_.push_back({v, w, domain_[wi]});
                domain_[wi] &= ~bit;
                if (domain_[wi] == 0) ok = false;
            }
        }
        return ok;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            const auto e = trail_.back();
            trail_.pop_back();
            if (e.pruned < 0) color_[static_cast<std::size_t>(e.vertex)] = kUncolored;
            else domain_[static_cast<std::size_t>(e.pruned)] = e.old_domain;
        }
    }

    bool search() {
        if ((++nodes_ & 1023U) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
        if (timed_out_) return false;
        const int v = select();
        if (v < 0) return true;
        const unsigned dom = domain_[static_cast<std::size_t>(v)];
        for (int c = 1; c <= kColors; ++c) {
            if (!(dom & (1U << (c - 1)))) continue;
            const std::size_t mark = trail_.size();
            if (assign(v, static_cast<Color>(c)) && search()) return true;
            undo_to(mark);
            if (timed_out_) return false;
        }
        return false;
    }

    struct TrailEntry {
        int vertex;
        int pruned;  // -1: color assignment of `vertex`
        unsigned old_domain;
    };

    const G& g_;
    std::size_t n_;
    std::vector<unsigned> domain_;
    std::vector<Color> color_;
    std::vector<int> degree_;
    std::vector<TrailEntry> trail_;
    std::chrono::steady_clock::time_point deadline_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

}  // namespace detail

inline constexpr double kDefaultTimeoutSeconds = 60.0;

// Backtracking with forward checking, most-constrained vertex first. A seed
// pre-assigns colors; an inconsistent seed is reported as infeasible.
template <AdjacencyGraph G>
ExactResult color_exact(const G& g, double timeout_seconds = kDefaultTimeoutSeconds, const Coloring* seed = nullptr) {
    if (seed && seed->size() != g.vertex_count()) throw std::invalid_argument("seed size differs from vertex count");
    detail::ExactSolver<G> solver(g, timeout_seconds);
    auto result = solver.solve(seed);
    if (result.status == ExactStatus::colored && !verify_proper(g, result.coloring).empty()) {
        throw std::logic_error("exact solver produced an improper coloring");
    }
    return result;
}

inline constexpr std::size_t kMaxCountVertices = 16;

// Number of proper 3-colorings by enumerating all 3^|V| assignments.
template <AdjacencyGraph G>
std::uint64_t count_colorings(const G& g) {
    const std::size_t n = g.vertex_count();
    if (n > kMaxCountVertices) {
        throw TooLarge("count_colorings supports at most " + std::to_string(kMaxCountVertices) + " vertices, got " +
                       std::to_string(n));
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t v = 0; v < n; ++v) {
        for (int w : g.neighbors(static_cast<int>(v))) {
            if (static_cast<int>(v) < w) edges.emplace_back(static_cast<int>(v), w);
        }
    }
    std::vector<int> digit(n, 0);
    std::uint64_t count = 0;
    for (;;) {
        bool proper = true;
        for (auto [u, w] : edges) {
            if (digit[static_cast<std::size_t>(u)] == digit[static_cast<std::size_t>(w)]) {
                proper = false;
                break;
            }
        }
        if (proper) ++count;
        std::size_t i = 0;
        while (i < n && ++digit[i] == kColors) digit[i++] = 0;
        if (i == n) break;
    }
    return count;
}

// Swap colors a and b on the {a,b} component containing v.
template <AdjacencyGraph G>
Coloring kempe_flip(const G& g, const Coloring& coloring, int v, Color a, Color b) {
    if (a == b || a < 1 || a > kColors || b < 1 || b > kColors) throw std::invalid_argument("kempe_flip needs two distinct colors");
    if (coloring[v] != a && coloring[v] != b) {
        throw VertexNotInPair("vertex " + std::to_string(v) + " has color " + std::to_string(coloring[v]) +
                              ", not in the pair");
    }
    Coloring out = coloring;
    std::vector<char> seen(g.vertex_count(), 0);
    std::queue<int> q;
    q.push(v);
    seen[static_cast<std::size_t>(v)] = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        out.set(u, coloring[u] == a ? b : a);
        for (int w : g.neighbors(u)) {
            if (!seen[static_cast<std::size_t>(w)] && (coloring[w] == a || coloring[w] == b)) {
                seen[static_cast<std::size_t>(w)] = 1;
                q.push(w);
            }
        }
    }
    return out;
}

// Color pattern along a triangular chain, written closed (first == last).
// Apex markers sit on the first and last entry.
struct SeedSequence {
    std::string_view name;
    std::vector<Color> colors;

    // Open period: the closed list without its repeated last entry.
    std::vector<Color> period() const { return {colors.begin(), colors.end() - 1}; }
};

namespace seeds {

// Five circles, light- and dark-grey chains.
inline const SeedSequence five_first{"five/first", {3, 1, 2, 1, 3, 2, 3}};
inline const SeedSequence five_second{"five/second", {1, 3, 2, 3, 1, 2, 1}};
// Seven circles.
inline const SeedSequence seven_first{"seven/first", {3, 2, 3, 2, 3, 1, 3, 1, 3}};
inline const SeedSequence seven_second{"seven/second", {3, 1, 3, 2, 3, 1, 3, 2, 3}};
// Remaining vertices of the horizon circle, seven circles.
inline const SeedSequence seven_horizon{"seven/horizon", {1, 2, 1, 3, 1, 2, 1, 2, 3, 2, 1, 2, 1}};

}  // namespace seeds

inline std::vector<std::string> validate_seed_sequence(const SeedSequence& s) {
    std::vector<std::string> issues;
    if (s.colors.size() < 2) return {"sequence too short"};
    for (Color c : s.colors) {
        if (c < 1 || c > kColors) issues.push_back("color out of range");
    }
    for (std::size_t i = 0; i + 1 < s.colors.size(); ++i) {
        if (s.colors[i] == s.colors[i + 1]) issues.push_back("entries " + std::to_string(i) + " and " + std::to_string(i + 1) + " repeat");
    }
    if (s.colors.front() != s.colors.back()) issues.push_back("closed form must end where it starts");
    return issues;
}

// Repeats the period to length n; if the wrap-around repeats a color the last
// entry becomes a color differing from both neighbours. Second is true when
// that repair happened.
inline std::pair<std::vector<Color>, bool> generalize_sequence(const SeedSequence& s, std::size_t n, std::size_t offset = 0) {
    const auto p = s.period();
    std::vector<Color> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = p[(i + offset) % p.size()];
    bool repaired = false;
    if (n >= 3 && out[n - 1] == out[0]) {
        const unsigned mask = 0b111U & ~(1U << (out[n - 2] - 1)) & ~(1U << (out[0] - 1));
        out[n - 1] = detail::lowest_color(mask);
        repaired = true;
    }
    return {out, repaired};
}

enum class Stage { pure_paper, propagation, exact_fallback };

inline std::string_view to_string(Stage s) {
    switch (s) {
        case Stage::pure_paper: return "pure-paper";
        case Stage::propagation: return "propagation";
        case Stage::exact_fallback: return "exact-fallback";
    }
    return "?";
}

struct HeuristicTrace {
    Stage stage = Stage::exact_fallback;
    std::string chain_source;  // "length-k", "longest", "none"
    std::size_t chain_length = 0;
    bool odd_case = false;
    std::string pattern;  // seed pattern for the odd case
    bool seed_generalized = false;
    std::vector<std::string> notes;
};

struct HeuristicResult {
    Coloring coloring;
    HeuristicTrace trace;
};

struct HeuristicOptions {
    double timeout_seconds = kDefaultTimeoutSeconds;
    ChainSearchOptions search;
};

namespace detail {

struct ChainSeed {
    Coloring coloring;
    std::vector<int> apexes;
    std::vector<int> links;  // both chains' links
};

// Assigns c to v unless v already holds a different color or a neighbour has c.
inline bool try_set(const ArrangementGraph& g, Coloring& col, int v, Color c) {
    if (col.assigned(v)) return col[v] == c;
    for (int w : g.neighbors(v)) {
        if (col[w] == c) return false;
    }
    col.set(v, c);
    return true;
}

inline std::vector<int> chain_apexes(const std::vector<Triangle>& tris, const TriangularChain& chain) {
    std::vector<int> out;
    for (std::size_t i = 0; i < chain.size(); ++i) out.push_back(apex(chain, tris, i));
    return out;
}

// Even case: links alternate 1/3 (phases per chain), apexes get 2.
inline std::optional<ChainSeed> even_seed(const ArrangementGraph& g, const std::vector<Triangle>& tris,
                                          const ChainPair& chains, int phase_first, int phase_second) {
    ChainSeed seed{Coloring(g.vertex_count()), {}, {}};
    const std::pair<const TriangularChain*, int> parts[] = {{&chains.first, phase_first}, {&chains.second, phase_second}};
    for (auto [chain, phase] : parts) {
        for (std::size_t i = 0; i < chain->size(); ++i) {
            const Color c = (i + static_cast<std::size_t>(phase)) % 2 == 0 ? 1 : 3;
            if (!try_set(g, seed.coloring, chain->links[i], c)) return std::nullopt;
            seed.links.push_back(chain->links[i]);
        }
    }
    for (const auto* chain : {&chains.first, &chains.second}) {
        for (int a : chain_apexes(tris, *chain)) {
            if (!try_set(g, seed.coloring, a, 2)) return std::nullopt;
            seed.apexes.push_back(a);
        }
    }
    return seed;
}

// Placement of a seed pattern on one chain: rotation offset and direction.
struct PatternPlacement {
    std::size_t offset = 0;
    bool reversed = false;
};

inline std::vector<Color> place_pattern(const SeedSequence& s, std::size_t n, PatternPlacement at, bool& generalized) {
    auto [seq, repaired] = generalize_sequence(s, n, at.offset);
    generalized = generalized || repaired || n + 1 != s.colors.size();
    if (at.reversed) std::reverse(seq.begin(), seq.end());
    return seq;
}

// Odd case: links follow the generalized patterns, apexes take the third color.
// With `mirrored` the second chain copies the first chain's colors vertex for
// vertex under the antipodal map.
inline std::optional<ChainSeed> odd_seed(const ArrangementGraph& g, const std::vector<Triangle>& tris,
                                         const ChainPair& chains, const SeedSequence& first, PatternPlacement at_first,
                                         const SeedSequence& second, PatternPlacement at_second, bool mirrored,
                                         bool& generalized) {
    ChainSeed seed{Coloring(g.vertex_count()), {}, {}};
    const auto seq_first = place_pattern(first, chains.first.size(), at_first, generalized);
    const auto seq_second = mirrored ? seq_first : place_pattern(second, chains.second.size(), at_second, generalized);
    const std::pair<const TriangularChain*, const std::vector<Color>*> parts[] = {{&chains.first, &seq_first},
                                                                                  {&chains.second, &seq_second}};
    for (auto [chain, seq] : parts) {
        for (std::size_t i = 0; i < chain->size(); ++i) {
            if (!try_set(g, seed.coloring, chain->links[i], (*seq)[i])) return std::nullopt;
            seed.links.push_back(chain->links[i]);
        }
    }
    for (const auto* chain : {&chains.first, &chains.second}) {
        for (std::size_t i = 0; i < chain->size(); ++i) {
            const int a = apex(*chain, tris, i);
            const unsigned mask = allowed_mask(g, seed.coloring, a);
            if (seed.coloring.assigned(a)) {
                if (!(mask & (1U << (seed.coloring[a] - 1)))) return std::nullopt;
            } else if (mask == 0 || !try_set(g, seed.coloring, a, lowest_color(mask))) {
                return std::nullopt;
            }
            seed.apexes.push_back(a);
        }
    }
    return seed;
}

// Uncolored vertices in breadth-first distance from `sources`; second holds the
// distance (1 for neighbours of sources). Unreachable vertices are omitted.
inline std::vector<std::pair<int, int>> bfs_levels(const ArrangementGraph& g, const Coloring& col, const std::vector<int>& sources) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<int> q;
    for (int s : sources) {
        if (dist[static_cast<std::size_t>(s)] < 0) {
            dist[static_cast<std::size_t>(s)] = 0;
            q.push(s);
        }
    }
    std::vector<std::pair<int, int>> order;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : g.neighbors(v)) {
            const auto wi = static_cast<std::size_t>(w);
            if (dist[wi] >= 0 || col.assigned(w)) continue;
            dist[wi] = dist[static_cast<std::size_t>(v)] + 1;
            order.emplace_back(w, dist[wi]);
            q.push(w);
        }
    }
    return order;
}

// Lattice levels around the apexes alternate 1, 2, 1, ...
inline std::optional<Coloring> even_levels(const ArrangementGraph& g, const ChainSeed& seed) {
    Coloring col = seed.coloring;
    for (auto [v, d] : bfs_levels(g, col, seed.apexes)) {
        if (!try_set(g, col, v, d % 2 == 1 ? 1 : 2)) return std::nullopt;
    }
    if (!col.total()) return std::nullopt;
    return col;
}

// Outward propagation from the chains, horizon-circle vertices last. A vertex
// is colored once it is the most constrained one left (two differently colored
// neighbours force the third color); ties go to the vertex closest to the
// chains. Free choices take the lowest color, or the horizon pattern's color
// on the horizon circle.
inline std::optional<Coloring> odd_propagate(const ArrangementGraph& g, const ChainSeed& seed) {
    Coloring col = seed.coloring;
    const auto& horizon = g.circle_vertices(0);
    std::vector<int> horizon_pos(g.vertex_count(), -1);
    for (std::size_t i = 0; i < horizon.size(); ++i) horizon_pos[static_cast<std::size_t>(horizon[i])] = static_cast<int>(i);

    std::vector<int> sources;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (col.assigned(static_cast<int>(v))) sources.push_back(static_cast<int>(v));
    }
    std::vector<int> level(g.vertex_count(), std::numeric_limits<int>::max());
    for (auto [v, d] : bfs_levels(g, col, sources)) level[static_cast<std::size_t>(v)] = d;

    const auto pattern = seeds::seven_horizon.period();
    for (bool horizon_phase : {false, true}) {
        for (;;) {
            int best = -1;
            std::tuple<int, int, int> best_key{4, 0, 0};
            for (std::size_t v = 0; v < g.vertex_count(); ++v) {
                const int u = static_cast<int>(v);
                if (col.assigned(u) || (horizon_pos[v] >= 0) != horizon_phase) continue;
                const std::tuple<int, int, int> key{popcount3(allowed_mask(g, col, u)), level[v], u};
                if (best < 0 || key < best_key) {
                    best = u;
                    best_key = key;
                }
            }
            if (best < 0) break;
            const unsigned mask = allowed_mask(g, col, best);
            if (mask == 0) return std::nullopt;
            Color c = lowest_color(mask);
            if (horizon_phase) {
                const Color want = pattern[static_cast<std::size_t>(horizon_pos[static_cast<std::size_t>(best)]) % pattern.size()];
                if (mask & (1U << (want - 1))) c = want;
            }
            col.set(best, c);
        }
    }
    return col;
}

// Greedy forcing: most constrained vertex first, lowest allowed color.
inline std::optional<Coloring> propagate(const ArrangementGraph& g, Coloring col) {
    for (;;) {
        int best = -1;
        int best_free = 4;
        int best_colored = -1;
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            const int u = static_cast<int>(v);
            if (col.assigned(u)) continue;
            const int free = popcount3(allowed_mask(g, col, u));
            int colored = 0;
            for (int w : g.neighbors(u)) colored += col.assigned(w) ? 1 : 0;
            if (free < best_free || (free == best_free && colored > best_colored)) {
                best = u;
                best_free = free;
                best_colored = colored;
            }
        }
        if (best < 0) return col;
        if (best_free == 0) return std::nullopt;
        col.set(best, lowest_color(allowed_mask(g, col, best)));
    }
}

}  // namespace detail

namespace detail {

inline HeuristicResult finish(const ArrangementGraph& g, const std::optional<ChainSeed>& seed, HeuristicTrace trace,
                              double timeout_seconds) {
    if (seed) {
        if (auto col = propagate(g, seed->coloring)) {
            trace.stage = Stage::propagation;
            return {*col, std::move(trace)};
        }
        trace.notes.push_back("propagation from chain seed hit a dead end");
        auto seeded = color_exact(g, timeout_seconds, &seed->coloring);
        if (seeded.status == ExactStatus::colored) {
            trace.stage = Stage::exact_fallback;
            trace.notes.push_back("exact solver extended the chain seed");
            return {seeded.coloring, std::move(trace)};
        }
        trace.notes.push_back(std::string("seeded exact solve: ") + std::string(to_string(seeded.status)));
    } else if (auto col = propagate(g, Coloring(g.vertex_count()))) {
        trace.stage = Stage::propagation;
        return {*col, std::move(trace)};
    } else {
        trace.notes.push_back("unseeded propagation hit a dead end");
    }
    auto full = color_exact(g, timeout_seconds);
    trace.stage = Stage::exact_fallback;
    if (full.status == ExactStatus::infeasible) throw HeuristicFailed("no proper 3-coloring exists: counterexample candidate");
    if (full.status == ExactStatus::timeout) throw SolverTimeout("exact fallback exceeded its time limit");
    trace.notes.push_back("exact solver without seed");
    return {full.coloring, std::move(trace)};
}

}  // namespace detail

// Chain-seeded 3-coloring. Even chains: link cycles alternate 1/3, apexes 2,
// remaining vertices by lattice level. Odd chains: seeded from the five- and
// seven-circle patterns and propagated outward, horizon circle last. Falls
// back to forced propagation, then to the exact solver; the trace says which.
inline HeuristicResult color_chain_heuristic(const ArrangementGraph& g, const std::vector<Triangle>& tris,
                                             const ChainPair& chains, const HeuristicOptions& opts = {},
                                             std::string chain_source = "length-k") {
    if (g.k() < 4) throw PreconditionViolation("chain coloring requires k >= 4");
    const auto pairing = mirror_pairing(tris, antipodal_involution(g));
    if (auto issues = validate_chain_pair(tris, chains, pairing, antipodal_involution(g)); !issues.empty()) {
        throw PreconditionViolation("invalid chain pair: " + issues.front());
    }

    HeuristicTrace trace;
    trace.chain_source = std::move(chain_source);
    trace.chain_length = chains.first.size();
    trace.odd_case = chains.first.size() % 2 == 1;
    const bool full_length = static_cast<int>(chains.first.size()) == g.k();
    if (!full_length) trace.notes.push_back("chain length differs from k; pattern stage skipped");

    std::optional<detail::ChainSeed> first_seed;
    if (!trace.odd_case) {
        for (int p1 : {0, 1}) {
            for (int p2 : {0, 1}) {
                auto seed = detail::even_seed(g, tris, chains, p1, p2);
                if (!seed) continue;
                if (!first_seed) first_seed = seed;
                if (!full_length) continue;
                if (auto col = detail::even_levels(g, *seed)) {
                    trace.stage = Stage::pure_paper;
                    return {*col, std::move(trace)};
                }
            }
        }
        trace.notes.push_back(first_seed ? "lattice levels conflicted" : "no consistent (1,3) phase for the chain cycles");
    } else {
        const bool five_first = g.k() % 4 == 1;
        const std::pair<const SeedSequence*, const SeedSequence*> five{&seeds::five_first, &seeds::five_second};
        const std::pair<const SeedSequence*, const SeedSequence*> seven{&seeds::seven_first, &seeds::seven_second};
        for (auto [a, b] : five_first ? std::array{five, seven} : std::array{seven, five}) {
            const std::string pattern(a->name.substr(0, a->name.find('/')));
            for (bool mirrored : {true, false}) {
                for (std::size_t off1 = 0; off1 < a->period().size(); ++off1) {
                    for (std::size_t off2 = 0; off2 < (mirrored ? 1 : b->period().size()); ++off2) {
                        for (int dirs = 0; dirs < (mirrored ? 2 : 4); ++dirs) {
                            bool generalized = false;
                            auto seed = detail::odd_seed(g, tris, chains, *a, {off1, (dirs & 1) != 0}, *b,
                                                         {off2, (dirs & 2) != 0}, mirrored, generalized);
                            if (!seed) continue;
                            if (!first_seed) {
                                first_seed = seed;
                                trace.pattern = pattern;
                                trace.seed_generalized = generalized;
                            }
                            if (!full_length) continue;
                            if (auto col = detail::odd_propagate(g, *seed)) {
                                trace.stage = Stage::pure_paper;
                                trace.pattern = pattern + (mirrored ? "/mirrored" : "");
                                trace.seed_generalized = generalized;
                                return {*col, std::move(trace)};
                            }
                        }
                    }
                }
            }
        }
        trace.notes.push_back(first_seed ? "pattern propagation hit a dead end" : "no consistent pattern seeding");
    }
    return detail::finish(g, first_seed, std::move(trace), opts.timeout_seconds);
}

// Finds a chain pair (length k, else the longest available) and colors from it;
// without any chain the coloring starts from propagation.
inline HeuristicResult color_by_chains(const ArrangementGraph& g, const HeuristicOptions& opts = {}) {
    if (g.k() < 4) throw PreconditionViolation("chain coloring requires k >= 4");
    const auto tris = enumerate_triangles(g);
    const auto sigma = antipodal_involution(g);
    const auto found = find_chain_pair(g, tris, sigma, opts.search);
    if (found.chains) return color_chain_heuristic(g, tris, *found.chains, opts, "length-k");
    if (auto longest = find_longest_chain_pair(g, tris, sigma, opts.search.node_budget)) {
        return color_chain_heuristic(g, tris, *longest, opts, "longest");
    }
    HeuristicTrace trace;
    trace.chain_source = "none";
    trace.notes.push_back("no closed mirror-disjoint chain pair");
    return detail::finish(g, std::nullopt, std::move(trace), opts.timeout_seconds);
}

}  // namespace gcarr
