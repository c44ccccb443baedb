#include "oracles.hpp"

#include <gcarr/gcarr.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace gcarr;

namespace {

ArrangementGraph fixture_graph(Fixture f) { return ArrangementGraph(fixture_arrangement(f)); }

SimpleGraph complete_graph(int n) {
    SimpleGraph g(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    }
    return g;
}

// Octahedron: one color per antipodal pair.
Coloring octahedron_coloring(const ArrangementGraph& g) {
    Coloring c(g.vertex_count());
    const auto sigma = antipodal_involution(g);
    Color next = 1;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (c.assigned(static_cast<int>(v))) continue;
        c.set(static_cast<int>(v), next);
        c.set(sigma[v], next);
        ++next;
    }
    return c;
}

std::set<int> apexes(const ChainPair& pair, const std::vector<Triangle>& tris) {
    std::set<int> out;
    for (const auto* chain : {&pair.first, &pair.second}) {
        for (std::size_t i = 0; i < chain->size(); ++i) out.insert(apex(*chain, tris, i));
    }
    return out;
}

}  // namespace

TEST(VerifyProper, OctahedronAntipodalClasses) {
    const auto g = fixture_graph(Fixture::octahedron);
    EXPECT_TRUE(verify_proper(g, octahedron_coloring(g)).empty());
}

TEST(VerifyProper, MonochromeReportsEveryEdge) {
    const auto g = fixture_graph(Fixture::cuboctahedron);
    const Coloring mono(std::vector<Color>(g.vertex_count(), 1));
    EXPECT_EQ(verify_proper(g, mono).size(), g.edge_count());
}

TEST(VerifyProper, PartialColoringThrows) {
    const auto g = fixture_graph(Fixture::octahedron);
    Coloring c(g.vertex_count());
    c.set(0, 1);
    EXPECT_THROW(verify_proper(g, c), IncompleteColoring);
    EXPECT_THROW(verify_proper(g, Coloring(3)), IncompleteColoring);
}

TEST(ColorExact, Fixtures) {
    for (auto f : {Fixture::octahedron, Fixture::cuboctahedron, Fixture::icosidodecahedron}) {
        const auto g = fixture_graph(f);
        const auto r = color_exact(g);
        ASSERT_EQ(r.status, ExactStatus::colored) << to_string(f);
        EXPECT_TRUE(verify_proper(g, r.coloring).empty());
    }
}

TEST(ColorExact, CompleteGraphOnFourIsInfeasible) {
    EXPECT_EQ(color_exact(complete_graph(4)).status, ExactStatus::infeasible);
    EXPECT_EQ(color_exact(complete_graph(3)).status, ExactStatus::colored);
}

TEST(ColorExact, Deterministic) {
    const auto g = build_graph(generate_random(7, 5));
    const auto a = color_exact(g);
    const auto b = color_exact(g);
    EXPECT_EQ(a.coloring, b.coloring);
    EXPECT_EQ(a.nodes, b.nodes);
}

TEST(ColorExact, RespectsSeedAssignment) {
    const auto g = fixture_graph(Fixture::cuboctahedron);
    Coloring seed(g.vertex_count());
    seed.set(0, 3);
    seed.set(5, 2);
    const auto r = color_exact(g, kDefaultTimeoutSeconds, &seed);
    ASSERT_EQ(r.status, ExactStatus::colored);
    EXPECT_EQ(r.coloring[0], 3);
    EXPECT_EQ(r.coloring[5], 2);
    EXPECT_TRUE(verify_proper(g, r.coloring).empty());
}

TEST(ColorExact, ConflictingSeedIsInfeasible) {
    const auto g = fixture_graph(Fixture::octahedron);
    const int w = g.neighbors(0)[0];
    Coloring seed(g.vertex_count());
    seed.set(0, 1);
    seed.set(w, 1);
    EXPECT_EQ(color_exact(g, kDefaultTimeoutSeconds, &seed).status, ExactStatus::infeasible);
}

TEST(CountColorings, AgainstEnumeration) {
    const auto oct = fixture_graph(Fixture::octahedron);
    EXPECT_EQ(count_colorings(oct), 6U);
    EXPECT_EQ(count_colorings(oct), oracle::enumerate_colorings(6, oracle::edge_list(oct)));
    const auto cub = fixture_graph(Fixture::cuboctahedron);
    EXPECT_EQ(count_colorings(cub), oracle::enumerate_colorings(12, oracle::edge_list(cub)));
    EXPECT_GT(count_colorings(cub), 0U);

    SimpleGraph edge(2);
    edge.add_edge(0, 1);
    EXPECT_EQ(count_colorings(edge), 6U);
    EXPECT_EQ(count_colorings(complete_graph(4)), 0U);
}

TEST(CountColorings, GuardsSize) { EXPECT_THROW(count_colorings(fixture_graph(Fixture::icosidodecahedron)), TooLarge); }

TEST(CountColorings, FeasibilityAgreesWithSolver) {
    for (int k = 3; k <= 4; ++k) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto g = build_graph(generate_random(k, seed));
            EXPECT_EQ(count_colorings(g) > 0, color_exact(g).status == ExactStatus::colored);
        }
    }
    for (int n = 2; n <= 6; ++n) {
        const auto kn = complete_graph(n);
        EXPECT_EQ(count_colorings(kn) > 0, color_exact(kn).status == ExactStatus::colored) << "K" << n;
    }
}

TEST(KempeFlip, OctahedronComponentSwap) {
    const auto g = fixture_graph(Fixture::octahedron);
    const auto c = octahedron_coloring(g);
    const int v = 0;
    ASSERT_EQ(c[v], 1);
    const auto flipped = kempe_flip(g, c, v, 1, 3);
    EXPECT_TRUE(verify_proper(g, flipped).empty());
    EXPECT_EQ(flipped[v], 3);
    // Colors 1 and 3 cover four vertices forming a 4-cycle: all of them swap.
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        const Color before = c[static_cast<int>(u)];
        const Color after = flipped[static_cast<int>(u)];
        EXPECT_EQ(after, before == 2 ? 2 : (before == 1 ? 3 : 1));
    }
    EXPECT_EQ(kempe_flip(g, flipped, v, 1, 3), c);
}

TEST(KempeFlip, PreservesPropernessAndIsInvolution) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = build_graph(generate_random(6, seed));
        const auto c = color_exact(g).coloring;
        for (int v = 0; v < static_cast<int>(g.vertex_count()); v += 3) {
            const Color a = c[v];
            const Color b = a == 3 ? 1 : static_cast<Color>(a + 1);
            const auto f = kempe_flip(g, c, v, a, b);
            EXPECT_TRUE(verify_proper(g, f).empty());
            EXPECT_EQ(kempe_flip(g, f, v, a, b), c);
        }
    }
}

TEST(KempeFlip, VertexOutsidePair) {
    const auto g = fixture_graph(Fixture::octahedron);
    const auto c = octahedron_coloring(g);
    int v = 0;
    while (c[v] != 2) ++v;
    EXPECT_THROW(kempe_flip(g, c, v, 1, 3), VertexNotInPair);
}

TEST(SeedSequences, LiteralPatternsValidate) {
    for (const auto* s : {&seeds::five_first, &seeds::five_second, &seeds::seven_first, &seeds::seven_second, &seeds::seven_horizon}) {
        EXPECT_TRUE(validate_seed_sequence(*s).empty()) << s->name;
    }
}

TEST(SeedSequences, ValidatorRejects) {
    EXPECT_FALSE(validate_seed_sequence({"repeat", {1, 1, 2, 1}}).empty());
    EXPECT_FALSE(validate_seed_sequence({"open", {1, 2, 3}}).empty());
    EXPECT_FALSE(validate_seed_sequence({"range", {1, 4, 1}}).empty());
}

TEST(SeedSequences, GeneralizedSequencesAreCyclicallyProper) {
    for (const auto* s : {&seeds::five_first, &seeds::seven_first, &seeds::seven_horizon}) {
        for (std::size_t n = 3; n <= 15; ++n) {
            for (std::size_t off = 0; off < s->period().size(); ++off) {
                const auto [seq, repaired] = generalize_sequence(*s, n, off);
                ASSERT_EQ(seq.size(), n);
                for (std::size_t i = 0; i < n; ++i) EXPECT_NE(seq[i], seq[(i + 1) % n]) << s->name << " n=" << n;
                if (n % s->period().size() == 0) {
                    EXPECT_FALSE(repaired);
                }
            }
        }
    }
}

TEST(ChainHeuristic, CuboctahedronPatternStage) {
    const auto g = fixture_graph(Fixture::cuboctahedron);
    const auto tris = enumerate_triangles(g);
    const auto pair = *find_chain_pair(g, tris, antipodal_involution(g)).chains;
    const auto r = color_chain_heuristic(g, tris, pair);
    EXPECT_TRUE(verify_proper(g, r.coloring).empty());
    ASSERT_EQ(r.trace.stage, Stage::pure_paper);
    const auto apex = apexes(pair, tris);
    for (int v : apex) EXPECT_EQ(r.coloring[v], 2);
    for (const auto* chain : {&pair.first, &pair.second}) {
        for (int v : chain->links) EXPECT_TRUE(r.coloring[v] == 1 || r.coloring[v] == 3);
    }
}

TEST(ChainHeuristic, RandomFiveAndSix) {
    for (int k : {5, 6}) {
        const auto g = build_graph(generate_random(k, 2));
        const auto r = color_by_chains(g);
        EXPECT_TRUE(verify_proper(g, r.coloring).empty());
        EXPECT_FALSE(r.trace.chain_source.empty());
        EXPECT_EQ(r.trace.odd_case, r.trace.chain_length % 2 == 1);
    }
}

TEST(ChainHeuristic, PatternStageRespectsChainColors) {
    for (int k = 4; k <= 7; ++k) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto g = build_graph(generate_random(k, seed));
            const auto tris = enumerate_triangles(g);
            const auto found = find_chain_pair(g, tris, antipodal_involution(g));
            if (!found.chains) continue;
            const auto r = color_chain_heuristic(g, tris, *found.chains);
            EXPECT_TRUE(verify_proper(g, r.coloring).empty());
            if (r.trace.stage != Stage::pure_paper || r.trace.odd_case) continue;
            for (int v : apexes(*found.chains, tris)) EXPECT_EQ(r.coloring[v], 2);
            for (const auto* chain : {&found.chains->first, &found.chains->second}) {
                for (int v : chain->links) EXPECT_NE(r.coloring[v], 2);
            }
        }
    }
}

TEST(ChainHeuristic, RejectsSmallOrInvalidInput) {
    const auto oct = fixture_graph(Fixture::octahedron);
    EXPECT_THROW(color_by_chains(oct), PreconditionViolation);
    const auto g = fixture_graph(Fixture::cuboctahedron);
    const auto tris = enumerate_triangles(g);
    auto pair = *find_chain_pair(g, tris, antipodal_involution(g)).chains;
    pair.second = pair.first;
    EXPECT_THROW(color_chain_heuristic(g, tris, pair), PreconditionViolation);
}

TEST(StageNames, Strings) {
    EXPECT_EQ(to_string(Stage::pure_paper), "pure-paper");
    EXPECT_EQ(to_string(Stage::propagation), "propagation");
    EXPECT_EQ(to_string(Stage::exact_fallback), "exact-fallback");
}
