#include "oracles.hpp"

#include <gcarr/gcarr.hpp>

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace gcarr;

namespace {

ArrangementGraph fixture_graph(Fixture f) { return ArrangementGraph(fixture_arrangement(f)); }

std::set<int> apex_set(const TriangularChain& c, const std::vector<Triangle>& tris) {
    std::set<int> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.insert(apex(c, tris, i));
    return out;
}

}  // namespace

TEST(EnumerateTriangles, FixtureCounts) {
    EXPECT_EQ(enumerate_triangles(fixture_graph(Fixture::octahedron)).size(), 8U);
    EXPECT_EQ(enumerate_triangles(fixture_graph(Fixture::cuboctahedron)).size(), 8U);
    EXPECT_EQ(enumerate_triangles(fixture_graph(Fixture::icosidodecahedron)).size(), 20U);
}

TEST(EnumerateTriangles, ExactlyTheLengthThreeFaces) {
    for (int k = 3; k <= 8; ++k) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto circles = generate_random(k, seed);
            const ArrangementGraph g(circles);
            const auto tris = enumerate_triangles(g);
            EXPECT_EQ(tris.size(), oracle::count_cells_with_sides(circles, 3));
            for (std::size_t i = 0; i < tris.size(); ++i) {
                EXPECT_EQ(g.faces()[static_cast<std::size_t>(tris[i].face)].size(), 3U);
                if (i > 0) {
                    EXPECT_LT(tris[i - 1].vertices, tris[i].vertices);
                }
            }
        }
    }
}

TEST(MirrorPairing, OctahedronOppositeFaces) {
    const auto g = fixture_graph(Fixture::octahedron);
    const auto tris = enumerate_triangles(g);
    const auto pairing = mirror_pairing(tris, antipodal_involution(g));
    EXPECT_TRUE(pairing.total());
    EXPECT_EQ(pairing.pairs.size(), 4U);
    for (auto [a, b] : pairing.pairs) {
        EXPECT_TRUE(shared_vertices(tris[static_cast<std::size_t>(a)], tris[static_cast<std::size_t>(b)]).empty());
    }
}

TEST(MirrorPairing, CuboctahedronFourPairs) {
    const auto g = fixture_graph(Fixture::cuboctahedron);
    const auto pairing = mirror_pairing(enumerate_triangles(g), antipodal_involution(g));
    EXPECT_TRUE(pairing.total());
    EXPECT_EQ(pairing.pairs.size(), 4U);
}

TEST(MirrorPairing, TotalInvolutionOnRandomInstances) {
    for (int k = 3; k <= 8; ++k) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto g = build_graph(generate_random(k, seed));
            const auto tris = enumerate_triangles(g);
            const auto pairing = mirror_pairing(tris, antipodal_involution(g));
            ASSERT_TRUE(pairing.total()) << "k=" << k << " seed=" << seed;
            for (std::size_t t = 0; t < tris.size(); ++t) {
                const auto p = static_cast<std::size_t>(pairing.partner[t]);
                EXPECT_NE(p, t);
                EXPECT_EQ(pairing.partner[p], static_cast<int>(t));
            }
        }
    }
}

TEST(FindChainPair, CuboctahedronChainStructure) {
    const auto g = fixture_graph(Fixture::cuboctahedron);
    const auto tris = enumerate_triangles(g);
    const auto sigma = antipodal_involution(g);
    const auto res = find_chain_pair(g, tris, sigma);
    ASSERT_EQ(res.status, ChainSearchStatus::found);
    const auto& pair = *res.chains;
    EXPECT_EQ(pair.first.size(), 4U);
    EXPECT_EQ(pair.second.size(), 4U);
    EXPECT_TRUE(validate_chain_pair(tris, pair, mirror_pairing(tris, sigma), sigma).empty());

    // Eight distinct triangles: the chains use all of them.
    std::set<int> used(pair.first.triangles.begin(), pair.first.triangles.end());
    used.insert(pair.second.triangles.begin(), pair.second.triangles.end());
    EXPECT_EQ(used.size(), 8U);

    // Both chains have the same four apexes (the vertices later colored 2), and
    // their link cycles are disjoint (the two (1,3) cycles).
    EXPECT_EQ(apex_set(pair.first, tris), apex_set(pair.second, tris));
    EXPECT_EQ(apex_set(pair.first, tris).size(), 4U);
    std::set<int> links(pair.first.links.begin(), pair.first.links.end());
    links.insert(pair.second.links.begin(), pair.second.links.end());
    EXPECT_EQ(links.size(), 8U);
}

TEST(FindChainPair, OctahedronIsOutOfRange) {
    const auto g = fixture_graph(Fixture::octahedron);
    EXPECT_THROW(find_chain_pair(g, enumerate_triangles(g), antipodal_involution(g)), PreconditionViolation);
}

TEST(FindChainPair, RandomFiveSeedThreeAgreesWithExhaustiveSearch) {
    const auto g = build_graph(generate_random(5, 3));
    const auto tris = enumerate_triangles(g);
    const auto sigma = antipodal_involution(g);
    const auto res = find_chain_pair(g, tris, sigma);
    EXPECT_EQ(res.status == ChainSearchStatus::found, oracle::chain_pair_exists(tris, sigma, 5));
    if (res.chains) {
        EXPECT_EQ(res.chains->first.size(), 5U);
        EXPECT_TRUE(validate_chain_pair(tris, *res.chains, mirror_pairing(tris, sigma), sigma).empty());
    }
}

TEST(FindChainPair, ExistenceAgreesWithExhaustiveSearch) {
    for (int k = 4; k <= 6; ++k) {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            const auto g = build_graph(generate_random(k, seed));
            const auto tris = enumerate_triangles(g);
            if (k == 6 && tris.size() > 14) continue;  // keep the brute force small
            const auto sigma = antipodal_involution(g);
            const auto res = find_chain_pair(g, tris, sigma);
            ASSERT_NE(res.status, ChainSearchStatus::budget_exhausted);
            EXPECT_EQ(res.status == ChainSearchStatus::found, oracle::chain_pair_exists(tris, sigma, static_cast<std::size_t>(k)))
                << "k=" << k << " seed=" << seed;
        }
    }
}

TEST(FindChainPair, ReturnedPairsAlwaysValidate) {
    for (int k = 4; k <= 8; ++k) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto g = build_graph(generate_random(k, seed));
            const auto tris = enumerate_triangles(g);
            const auto sigma = antipodal_involution(g);
            const auto pairing = mirror_pairing(tris, sigma);
            const auto res = find_chain_pair(g, tris, sigma);
            if (res.chains) {
                EXPECT_TRUE(validate_chain_pair(tris, *res.chains, pairing, sigma).empty());
            }
            if (const auto longest = find_longest_chain_pair(g, tris, sigma)) {
                EXPECT_TRUE(validate_chain_pair(tris, *longest, pairing, sigma).empty());
                EXPECT_GE(longest->first.size(), res.chains ? res.chains->first.size() : 0U);
            }
        }
    }
}

TEST(ValidateChain, RejectsBrokenChains) {
    const auto g = fixture_graph(Fixture::cuboctahedron);
    const auto tris = enumerate_triangles(g);
    const auto sigma = antipodal_involution(g);
    auto pair = *find_chain_pair(g, tris, sigma).chains;
    auto broken = pair.first;
    std::swap(broken.links[0], broken.links[1]);
    EXPECT_FALSE(validate_chain(tris, broken).empty());
    auto short_chain = pair.first;
    short_chain.triangles.resize(2);
    short_chain.links.resize(2);
    EXPECT_FALSE(validate_chain(tris, short_chain).empty());
    pair.second = pair.first;
    EXPECT_FALSE(validate_chain_pair(tris, pair, mirror_pairing(tris, sigma), sigma).empty());
}

TEST(ChainReport, ListsBothChains) {
    const auto g = fixture_graph(Fixture::cuboctahedron);
    const auto tris = enumerate_triangles(g);
    const auto pair = *find_chain_pair(g, tris, antipodal_involution(g)).chains;
    std::ostringstream os;
    write_chain_report(os, tris, pair);
    const auto text = os.str();
    EXPECT_NE(text.find("chain first length=4"), std::string::npos);
    EXPECT_NE(text.find("chain second length=4"), std::string::npos);
}
