#pragma once

// Text formats: arrangement files, DIMACS col graphs, coloring files.

#include <gcarr/arrangement.hpp>
#include <gcarr/coloring.hpp>
#include <gcarr/errors.hpp>
#include <gcarr/geometry.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace gcarr {

namespace detail {

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Next line that is neither blank nor a comment starting with `comment`.
inline bool next_data_line(std::istream& is, std::string& line, char comment, std::size_t& lineno) {
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == comment) continue;
        return true;
    }
    return false;
}

}  // namespace detail

// Line 1: k. Then one normal per line at round-trip precision.
inline void write_arrangement(std::ostream& os, const std::vector<GreatCircle>& circles) {
    os << circles.size() << '\n';
    for (const auto& c : circles) {
        const Vec3 n = c.normal();
        os << detail::format_double(n.x) << ' ' << detail::format_double(n.y) << ' ' << detail::format_double(n.z) << '\n';
    }
}

inline std::string arrangement_text(const std::vector<GreatCircle>& circles) {
    std::ostringstream os;
    write_arrangement(os, circles);
    return os.str();
}

inline std::vector<GreatCircle> read_arrangement(std::istream& is, const Tolerances& tol = {}) {
    std::string line;
    std::size_t lineno = 0;
    if (!detail::next_data_line(is, line, '#', lineno)) throw ParseError("arrangement: missing circle count");
    long long k = 0;
    {
        std::istringstream ls(line);
        std::string rest;
        if (!(ls >> k) || (ls >> rest) || k < 0) throw ParseError("arrangement line " + std::to_string(lineno) + ": bad circle count");
    }
    std::vector<GreatCircle> circles;
    for (long long i = 0; i < k; ++i) {
        if (!detail::next_data_line(is, line, '#', lineno)) {
            throw ParseError("arrangement: expected " + std::to_string(k) + " normals, got " + std::to_string(i));
        }
        std::istringstream ls(line);
        double x = 0, y = 0, z = 0;
        std::string rest;
        if (!(ls >> x >> y >> z) || (ls >> rest)) throw ParseError("arrangement line " + std::to_string(lineno) + ": expected three numbers");
        if (norm({x, y, z}) == 0.0) throw ParseError("arrangement line " + std::to_string(lineno) + ": zero normal");
        circles.emplace_back(static_cast<int>(i), Vec3{x, y, z});
    }
    if (detail::next_data_line(is, line, '#', lineno)) throw ParseError("arrangement line " + std::to_string(lineno) + ": trailing data");
    check_distinct(circles, tol);
    return circles;
}

inline std::vector<GreatCircle> load_arrangement(const std::filesystem::path& path, const Tolerances& tol = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_arrangement(in, tol);
}

// "p edge n m" then "e u v", vertices 1-indexed, edges in edge-list order.
inline void write_dimacs(std::ostream& os, const ArrangementGraph& g) {
    os << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) os << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

inline void write_dimacs(std::ostream& os, const SimpleGraph& g) {
    os << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) os << "e " << u + 1 << ' ' << v + 1 << '\n';
}

inline SimpleGraph read_dimacs(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    std::optional<SimpleGraph> g;
    long long declared_edges = 0;
    while (detail::next_data_line(is, line, 'c', lineno)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            std::string fmt;
            long long n = 0;
            if (g || !(ls >> fmt >> n >> declared_edges) || (fmt != "edge" && fmt != "col") || n < 0 || declared_edges < 0) {
                throw ParseError("dimacs line " + std::to_string(lineno) + ": bad problem line");
            }
            g.emplace(static_cast<std::size_t>(n));
        } else if (tag == "e") {
            long long u = 0, v = 0;
            if (!g || !(ls >> u >> v) || u < 1 || v < 1 || static_cast<std::size_t>(u) > g->vertex_count() ||
                static_cast<std::size_t>(v) > g->vertex_count() || u == v) {
                throw ParseError("dimacs line " + std::to_string(lineno) + ": bad edge");
            }
            g->add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
        } else {
            throw ParseError("dimacs line " + std::to_string(lineno) + ": unknown record '" + tag + "'");
        }
    }
    if (!g) throw ParseError("dimacs: missing problem line");
    if (static_cast<long long>(g->edge_count()) != declared_edges) {
        throw ParseError("dimacs: header declares " + std::to_string(declared_edges) + " edges, found " +
                         std::to_string(g->edge_count()));
    }
    return std::move(*g);
}

// "v <id> <color>" per vertex (1-indexed, matching the DIMACS export), then
// "c stage=<stage>".
inline void write_coloring(std::ostream& os, const Coloring& coloring, std::string_view stage) {
    for (std::size_t v = 0; v < coloring.size(); ++v) {
        os << "v " << v + 1 << ' ' << static_cast<int>(coloring[static_cast<int>(v)]) << '\n';
    }
    os << "c stage=" << stage << '\n';
}

struct ColoringFile {
    Coloring coloring;
    std::string stage;
};

// Vertices missing from the file stay uncolored.
inline ColoringFile read_coloring(std::istream& is, std::size_t vertex_count) {
    ColoringFile out{Coloring(vertex_count), {}};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "c") {
            std::string kv;
            if (ls >> kv && kv.rfind("stage=", 0) == 0) out.stage = kv.substr(6);
            continue;
        }
        long long v = 0, c = 0;
        if (tag != "v" || !(ls >> v >> c) || v < 1 || static_cast<std::size_t>(v) > vertex_count || c < 1 || c > kColors) {
            throw ParseError("coloring line " + std::to_string(lineno) + ": expected 'v <vertex> <color 1-3>'");
        }
        out.coloring.set(static_cast<int>(v - 1), static_cast<Color>(c));
    }
    return out;
}

// Writes via a temporary file and rename so readers never see a partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// 64-bit FNV-1a; stable across platforms, used for content-addressed names.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace gcarr
