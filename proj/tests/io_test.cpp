#include <gcarr/gcarr.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

using namespace gcarr;

namespace {

std::multiset<std::pair<int, int>> edge_multiset(const ArrangementGraph& g) {
    std::multiset<std::pair<int, int>> out;
    for (const auto& e : g.edges()) out.insert(std::minmax(e.u, e.v));
    return out;
}

std::multiset<std::pair<int, int>> edge_multiset(const SimpleGraph& g) {
    std::multiset<std::pair<int, int>> out;
    for (auto [u, v] : g.edges()) out.insert(std::minmax(u, v));
    return out;
}

std::size_t count_matches(const std::string& text, const std::string& pattern) {
    const std::regex re(pattern);
    return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST(ArrangementText, RoundTripIsExact) {
    const auto circles = generate_random(6, 7);
    std::istringstream in(arrangement_text(circles));
    const auto back = read_arrangement(in);
    ASSERT_EQ(back.size(), circles.size());
    for (std::size_t i = 0; i < circles.size(); ++i) {
        EXPECT_EQ(back[i].normal().x, circles[i].normal().x);
        EXPECT_EQ(back[i].normal().y, circles[i].normal().y);
        EXPECT_EQ(back[i].normal().z, circles[i].normal().z);
    }
    EXPECT_EQ(arrangement_text(back), arrangement_text(circles));
}

TEST(ArrangementText, CommentsAndErrors) {
    std::istringstream ok("# three planes\n3\n1 0 0\n\n0 1 0\n0 0 1\n");
    EXPECT_EQ(read_arrangement(ok).size(), 3U);
    std::istringstream short_file("3\n1 0 0\n0 1 0\n");
    EXPECT_THROW(read_arrangement(short_file), ParseError);
    std::istringstream junk("2\n1 0 x\n0 1 0\n");
    EXPECT_THROW(read_arrangement(junk), ParseError);
    std::istringstream zero("2\n0 0 0\n0 1 0\n");
    EXPECT_THROW(read_arrangement(zero), ParseError);
    std::istringstream dup("2\n0 0 1\n0 0 -3\n");
    EXPECT_THROW(read_arrangement(dup), DegenerateCircles);
}

TEST(Dimacs, OctahedronHeader) {
    std::ostringstream os;
    write_dimacs(os, ArrangementGraph(fixture_arrangement(Fixture::octahedron)));
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "p edge 6 12");
}

TEST(Dimacs, RoundTripPreservesEdgeMultiset) {
    for (auto f : {Fixture::octahedron, Fixture::cuboctahedron, Fixture::icosidodecahedron}) {
        const ArrangementGraph g(fixture_arrangement(f));
        std::stringstream ss;
        write_dimacs(ss, g);
        const auto back = read_dimacs(ss);
        EXPECT_EQ(back.vertex_count(), g.vertex_count());
        EXPECT_EQ(edge_multiset(back), edge_multiset(g));
        std::ostringstream again;
        write_dimacs(again, back);
        EXPECT_EQ(again.str(), ss.str());
    }
}

TEST(Dimacs, ParseErrors) {
    std::istringstream bad_count("p edge 3 2\ne 1 2\n");
    EXPECT_THROW(read_dimacs(bad_count), ParseError);
    std::istringstream out_of_range("p edge 2 1\ne 1 3\n");
    EXPECT_THROW(read_dimacs(out_of_range), ParseError);
    std::istringstream no_header("e 1 2\n");
    EXPECT_THROW(read_dimacs(no_header), ParseError);
    std::istringstream comments("c a comment\np col 2 1\ne 1 2\n");
    EXPECT_EQ(read_dimacs(comments).edge_count(), 1U);
}

TEST(ColoringFile, RoundTrip) {
    const ArrangementGraph g(fixture_arrangement(Fixture::cuboctahedron));
    const auto c = color_exact(g).coloring;
    std::stringstream ss;
    write_coloring(ss, c, "exact-fallback");
    const auto text = ss.str();
    EXPECT_EQ(text.substr(0, 2), "v ");
    EXPECT_NE(text.find("c stage=exact-fallback\n"), std::string::npos);
    const auto back = read_coloring(ss, g.vertex_count());
    EXPECT_EQ(back.coloring, c);
    EXPECT_EQ(back.stage, "exact-fallback");
}

TEST(ColoringFile, RejectsBadLines) {
    std::istringstream bad_color("v 1 4\n");
    EXPECT_THROW(read_coloring(bad_color, 3), ParseError);
    std::istringstream bad_vertex("v 9 1\n");
    EXPECT_THROW(read_coloring(bad_vertex, 3), ParseError);
}

TEST(AtomicWrite, ReplacesContent) {
    const auto path = std::filesystem::temp_directory_path() / "gcarr_atomic_test.txt";
    write_file_atomic(path, "one\n");
    write_file_atomic(path, "two\n");
    std::ifstream in(path);
    std::string s;
    std::getline(in, s);
    EXPECT_EQ(s, "two");
    EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove(path);
}

TEST(Fnv, KnownValues) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Svg, CuboctahedronWithColoringAndChains) {
    const ArrangementGraph g(fixture_arrangement(Fixture::cuboctahedron));
    const auto tris = enumerate_triangles(g);
    const auto chains = *find_chain_pair(g, tris, antipodal_involution(g)).chains;
    const auto coloring = color_chain_heuristic(g, tris, chains).coloring;
    std::ostringstream os;
    write_svg(os, g, &coloring, &tris, &chains);
    const auto svg = os.str();
    EXPECT_EQ(svg.rfind("<?xml", 0), 0U);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_EQ(count_matches(svg, "class=\"vertex\""), 12U);
    EXPECT_EQ(count_matches(svg, "class=\"chain-fg\" fill=\"#d3d3d3\""), 4U);
    EXPECT_EQ(count_matches(svg, "class=\"chain-bg\" fill=\"#a9a9a9\""), 4U);
    EXPECT_EQ(count_matches(svg, "class=\"great-circle\""), 4U);
    // Palette: every vertex is red, green or blue.
    EXPECT_EQ(count_matches(svg, "class=\"vertex\"[^>]*fill=\"(#e41a1c|#4daf4a|#377eb8)\""), 12U);
    EXPECT_EQ(count_matches(svg, "<g"), count_matches(svg, "</g>"));
}

TEST(Svg, UncoloredAndDeterministic) {
    const ArrangementGraph g(generate_random(5, 1));
    std::ostringstream a, b;
    write_svg(a, g, nullptr, nullptr, nullptr);
    write_svg(b, g, nullptr, nullptr, nullptr);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(count_matches(a.str(), "class=\"vertex\"[^>]*fill=\"#ffffff\""), g.vertex_count());
    EXPECT_EQ(a.str().find("nan"), std::string::npos);
    EXPECT_EQ(a.str().find("inf"), std::string::npos);
}

TEST(Svg, PoleAvoidsCircles) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto circles = generate_random(6, seed);
        const Vec3 pole = choose_pole(circles);
        for (const auto& c : circles) EXPECT_GT(std::abs(dot(pole, c.normal())), 1e-9);
    }
}

TEST(Svg, HorizonModeMapsCircleZeroToUnitCircle) {
    const ArrangementGraph g(fixture_arrangement(Fixture::cuboctahedron));
    SvgOptions opts;
    opts.horizon = true;
    std::ostringstream os;
    write_svg(os, g, nullptr, nullptr, nullptr, opts);
    const auto svg = os.str();
    EXPECT_EQ(count_matches(svg, "class=\"vertex\""), 12U);
    EXPECT_EQ(svg.find("nan"), std::string::npos);
    // Projected from circle 0's pole, circle 0 is the unit circle and every
    // other great circle meets it at two antipodal points, so it is the smallest.
    const std::regex re("data-circle=\"(\\d+)\"[^>]*r=\"([0-9.]+)\"");
    double r0 = 0, rmin = 1e300;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
        const double r = std::stod((*it)[2]);
        if ((*it)[1] == "0") r0 = r;
        rmin = std::min(rmin, r);
    }
    EXPECT_GT(r0, 0.0);
    EXPECT_EQ(r0, rmin);
}
