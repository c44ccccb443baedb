// gcarr: generate great-circle arrangements, 3-color them, sweep claims, and
// export DIMACS / coloring / SVG files.

#include <gcarr/gcarr.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace {

using namespace gcarr;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeout = 3;

struct RunConfig {
    std::string command;
    std::optional<int> k;
    std::optional<std::uint64_t> seed;
    std::string k_range;
    std::string seed_range;
    std::vector<std::string> fixtures;
    std::vector<std::string> inputs;
    std::vector<std::string> claims;
    std::string method = "chain";
    double timeout = kDefaultTimeoutSeconds;
    std::optional<double> eps;
    unsigned jobs = 1;
    std::string format;
    std::string out;
    std::string coloring;
    std::string archive = "counterexamples";
    std::uint64_t chain_budget = ChainSearchOptions{}.node_budget;
    bool horizon = false;

    Tolerances tolerances() const {
        Tolerances t;
        if (eps) t.dup = t.on = t.sep = *eps;
        return t;
    }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void echo_config(const RunConfig& cfg) {
    const auto t = cfg.tolerances();
    std::cerr << "# config command=" << cfg.command;
    if (cfg.k) std::cerr << " k=" << *cfg.k;
    if (cfg.seed) std::cerr << " seed=" << *cfg.seed;
    if (!cfg.k_range.empty()) std::cerr << " k=" << cfg.k_range;
    if (!cfg.seed_range.empty()) std::cerr << " seeds=" << cfg.seed_range;
    for (const auto& f : cfg.fixtures) std::cerr << " fixture=" << f;
    for (const auto& i : cfg.inputs) std::cerr << " in=" << i;
    for (const auto& c : cfg.claims) std::cerr << " claim=" << c;
    if (cfg.command == "color" || (cfg.command == "export" && cfg.format == "coloring")) std::cerr << " method=" << cfg.method;
    if (!cfg.format.empty()) std::cerr << " format=" << cfg.format;
    if (cfg.horizon) std::cerr << " horizon=1";
    std::cerr << " timeout=" << cfg.timeout << " eps_dup=" << t.dup << " eps_on=" << t.on << " eps_sep=" << t.sep
              << " jobs=" << cfg.jobs << " chain_budget=" << cfg.chain_budget << '\n';
}

// "a..b" or "a", inclusive.
std::pair<long long, long long> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const long long v = std::stoll(s);
            return {v, v};
        }
        const long long lo = std::stoll(s.substr(0, dots));
        const long long hi = std::stoll(s.substr(dots + 2));
        if (hi < lo) throw UsageError("empty range " + s);
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw UsageError("bad range '" + s + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_like_dimacs(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return line[first] == 'p' || line[first] == 'c' || line[first] == 'e';
    }
    return false;
}

using Input = std::variant<Instance, SimpleGraph>;

// One instance from --in, --fixture, or --k/--seed.
Input load_single(const RunConfig& cfg) {
    const auto tol = cfg.tolerances();
    const int sources = (cfg.inputs.empty() ? 0 : 1) + (cfg.fixtures.empty() ? 0 : 1) + (cfg.k ? 1 : 0);
    if (sources != 1 || cfg.inputs.size() > 1 || cfg.fixtures.size() > 1) {
        throw UsageError("give exactly one of --in FILE, --fixture NAME, or --k K --seed S");
    }
    if (!cfg.inputs.empty()) {
        const auto text = read_file(cfg.inputs.front());
        std::istringstream is(text);
        if (looks_like_dimacs(text)) return read_dimacs(is);
        return file_instance(read_arrangement(is, tol), cfg.inputs.front(), tol);
    }
    if (!cfg.fixtures.empty()) return fixture_instance(parse_fixture(cfg.fixtures.front()), tol);
    return random_instance(*cfg.k, cfg.seed.value_or(0), tol);
}

const Instance& require_arrangement(const Input& in, const char* what) {
    if (const auto* inst = std::get_if<Instance>(&in)) return *inst;
    throw UsageError(std::string(what) + " needs an arrangement, not a plain graph");
}

void emit(const RunConfig& cfg, const std::string& content) {
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << content;
    } else {
        write_file_atomic(cfg.out, content);
    }
}

int cmd_generate(const RunConfig& cfg) {
    const auto in = load_single(cfg);
    const auto& inst = require_arrangement(in, "generate");
    const auto& g = inst.graph;
    if (!cfg.out.empty()) emit(cfg, arrangement_text(g.circles()));
    std::cout << "k=" << g.k() << " V=" << g.vertex_count() << " E=" << g.edge_count() << " F=" << g.faces().size()
              << " triangles=" << enumerate_triangles(g).size() << '\n';
    return kExitOk;
}

struct ColorOutcome {
    int exit_code = kExitOk;
    Coloring coloring;
    std::string stage;
};

ColorOutcome run_coloring(const RunConfig& cfg, const Input& in) {
    ColorOutcome out;
    if (cfg.method == "exact") {
        const auto res = std::visit([&](const auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Instance>) return color_exact(x.graph, cfg.timeout);
            else return color_exact(x, cfg.timeout);
        }, in);
        if (res.status == ExactStatus::infeasible) {
            std::cerr << "infeasible: no proper 3-coloring exists (counterexample candidate)\n";
            out.exit_code = kExitInfeasible;
            return out;
        }
        if (res.status == ExactStatus::timeout) {
            std::cerr << "timeout after " << cfg.timeout << " s\n";
            out.exit_code = kExitTimeout;
            return out;
        }
        out.coloring = res.coloring;
        out.stage = std::string(to_string(Stage::exact_fallback));
        return out;
    }
    if (cfg.method != "chain") throw UsageError("--method must be chain or exact");
    const auto& inst = require_arrangement(in, "--method chain");
    HeuristicOptions opts;
    opts.timeout_seconds = cfg.timeout;
    opts.search.node_budget = cfg.chain_budget;
    try {
        auto res = color_by_chains(inst.graph, opts);
        std::cerr << "# trace chain=" << res.trace.chain_source << " length=" << res.trace.chain_length;
        if (res.trace.chain_length > 0) std::cerr << " case=" << (res.trace.odd_case ? "odd" : "even");
        if (!res.trace.pattern.empty()) std::cerr << " pattern=" << res.trace.pattern;
        if (res.trace.seed_generalized) std::cerr << " generalized=1";
        std::cerr << '\n';
        for (const auto& note : res.trace.notes) std::cerr << "# note " << note << '\n';
        out.coloring = std::move(res.coloring);
        out.stage = std::string(to_string(res.trace.stage));
    } catch (const HeuristicFailed& e) {
        std::cerr << e.what() << '\n';
        out.exit_code = kExitInfeasible;
    } catch (const SolverTimeout& e) {
        std::cerr << e.what() << '\n';
        out.exit_code = kExitTimeout;
    }
    return out;
}

template <typename G>
bool gate_proper(const G& g, const Coloring& c) {
    const auto bad = verify_proper(g, c);
    if (!bad.empty()) std::cerr << "internal error: coloring has " << bad.size() << " conflicting edges; not written\n";
    return bad.empty();
}

int cmd_color(const RunConfig& cfg) {
    const auto in = load_single(cfg);
    auto res = run_coloring(cfg, in);
    if (res.exit_code != kExitOk) return res.exit_code;
    const bool proper = std::visit([&](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Instance>) return gate_proper(x.graph, res.coloring);
        else return gate_proper(x, res.coloring);
    }, in);
    if (!proper) return kExitUsage;
    std::ostringstream os;
    write_coloring(os, res.coloring, res.stage);
    emit(cfg, os.str());
    (cfg.out.empty() || cfg.out == "-" ? std::cerr : std::cout) << "stage=" << res.stage << " proper=true\n";
    return kExitOk;
}

std::vector<Instance> sweep_instances(const RunConfig& cfg) {
    const auto tol = cfg.tolerances();
    std::vector<Instance> out;
    if (!cfg.k_range.empty()) {
        const auto [klo, khi] = parse_range(cfg.k_range);
        const auto [slo, shi] = cfg.seed_range.empty() ? std::pair<long long, long long>{0, 0} : parse_range(cfg.seed_range);
        if (klo < 3) throw UsageError("k must be at least 3");
        if (slo < 0) throw UsageError("seeds must be non-negative");
        for (long long k = klo; k <= khi; ++k) {
            for (long long s = slo; s <= shi; ++s) {
                out.push_back(random_instance(static_cast<int>(k), static_cast<std::uint64_t>(s), tol));
            }
        }
    }
    for (const auto& f : cfg.fixtures) out.push_back(fixture_instance(parse_fixture(f), tol));
    for (const auto& path : cfg.inputs) {
        const auto text = read_file(path);
        std::istringstream is(text);
        out.push_back(file_instance(read_arrangement(is, tol), path, tol));
    }
    if (out.empty()) throw UsageError("claims needs --k/--seeds, --fixture, or --in");
    return out;
}

int cmd_claims(const RunConfig& cfg) {
    std::vector<ClaimId> claims;
    for (const auto& c : cfg.claims) {
        if (c == "all") claims.assign(std::begin(kAllClaims), std::end(kAllClaims));
        else claims.push_back(parse_claim(c));
    }
    if (claims.empty()) claims.assign(std::begin(kAllClaims), std::end(kAllClaims));
    ClaimConfig ccfg;
    ccfg.timeout_seconds = cfg.timeout;
    ccfg.chain_budget = cfg.chain_budget;
    if (!cfg.archive.empty()) ccfg.archive_dir = cfg.archive;
    const auto sweep = run_sweep(claims, sweep_instances(cfg), ccfg, cfg.jobs);
    std::ostringstream os;
    write_report(os, sweep);
    emit(cfg, os.str());
    if (!cfg.out.empty() && cfg.out != "-") {
        std::cout << "PASS=" << sweep.count(Verdict::pass) << " FAIL=" << sweep.count(Verdict::fail)
                  << " INCONCLUSIVE=" << sweep.count(Verdict::inconclusive) << " skipped=" << sweep.skipped << '\n';
    }
    return sweep_exit_status(sweep);
}

int cmd_export(const RunConfig& cfg) {
    const auto in = load_single(cfg);
    std::ostringstream os;
    if (cfg.format == "dimacs") {
        std::visit([&](const auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Instance>) write_dimacs(os, x.graph);
            else write_dimacs(os, x);
        }, in);
    } else if (cfg.format == "arrangement-text") {
        write_arrangement(os, require_arrangement(in, "arrangement-text export").graph.circles());
    } else if (cfg.format == "coloring") {
        auto res = run_coloring(cfg, in);
        if (res.exit_code != kExitOk) return res.exit_code;
        write_coloring(os, res.coloring, res.stage);
    } else if (cfg.format == "report" || cfg.format == "svg") {
        const auto& g = require_arrangement(in, "this export").graph;
        const auto tris = enumerate_triangles(g);
        const auto sigma = antipodal_involution(g);
        std::optional<ChainPair> chains;
        if (g.k() >= 4) {
            ChainSearchOptions opts;
            opts.node_budget = cfg.chain_budget;
            auto found = find_chain_pair(g, tris, sigma, opts);
            if (found.chains) chains = std::move(found.chains);
            else chains = find_longest_chain_pair(g, tris, sigma, cfg.chain_budget);
        }
        if (cfg.format == "report") {
            if (!chains) {
                std::cerr << "no closed chain pair found\n";
                return kExitUsage;
            }
            write_chain_report(os, tris, *chains);
        } else {
            std::optional<Coloring> coloring;
            if (cfg.coloring.empty()) {
                std::cerr << "warning: MissingColoring: no --coloring given, rendering uncolored vertices\n";
            } else {
                std::istringstream cs(read_file(cfg.coloring));
                coloring = read_coloring(cs, g.vertex_count()).coloring;
            }
            SvgOptions sopts;
            sopts.horizon = cfg.horizon;
            write_svg(os, g, coloring ? &*coloring : nullptr, &tris, chains ? &*chains : nullptr, sopts);
        }
    } else {
        throw UsageError("--format must be one of arrangement-text, dimacs, coloring, svg, report");
    }
    emit(cfg, os.str());
    return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--fixture", cfg.fixtures, "octahedron | cuboctahedron | icosidodecahedron");
    sub->add_option("--in", cfg.inputs, "arrangement text file (or DIMACS graph for color/export)");
    sub->add_option("--eps", cfg.eps, "override all geometric tolerances")->check(CLI::PositiveNumber);
    sub->add_option("--timeout", cfg.timeout, "exact solver time limit in seconds")->check(CLI::PositiveNumber);
    sub->add_option("--chain-budget", cfg.chain_budget, "chain search node budget");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Great-circle arrangement graphs: generation, 3-coloring, claim checks"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* gen = app.add_subcommand("generate", "write an arrangement and print its counts");
    auto* col = app.add_subcommand("color", "3-color an arrangement or DIMACS graph");
    auto* cl = app.add_subcommand("claims", "check claims over a grid of instances");
    auto* ex = app.add_subcommand("export", "export dimacs, coloring, svg, chain report, or arrangement text");
    for (auto* sub : {gen, col, ex}) {
        add_common(sub, cfg);
        sub->add_option("--k", cfg.k, "number of circles");
        sub->add_option("--seed", cfg.seed, "random seed");
    }
    for (auto* sub : {col, ex}) sub->add_option("--method", cfg.method, "chain | exact");
    add_common(cl, cfg);
    cl->add_option("--claim", cfg.claims, "claim id or 'all' (repeatable)");
    cl->add_option("--k", cfg.k_range, "k or k range a..b");
    cl->add_option("--seeds,--seed", cfg.seed_range, "seed or seed range a..b");
    cl->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1U, 256U));
    cl->add_option("--archive", cfg.archive, "directory for FAIL instances ('' disables)");
    ex->add_option("--format", cfg.format, "arrangement-text | dimacs | coloring | svg | report")->required();
    ex->add_option("--coloring", cfg.coloring, "coloring file for svg");
    ex->add_flag("--horizon", cfg.horizon, "project from the pole of circle 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    echo_config(cfg);
    try {
        if (cfg.command == "generate") return cmd_generate(cfg);
        if (cfg.command == "color") return cmd_color(cfg);
        if (cfg.command == "claims") return cmd_claims(cfg);
        return cmd_export(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
