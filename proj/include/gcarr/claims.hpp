#pragma once

// Claim registry: each structural assertion about great-circle arrangements is
// checked on concrete instances and reported as PASS, FAIL or INCONCLUSIVE.

#include <gcarr/arrangement.hpp>
#include <gcarr/coloring.hpp>
#include <gcarr/errors.hpp>
#include <gcarr/faces.hpp>
#include <gcarr/geometry.hpp>
#include <gcarr/io.hpp>
#include <gcarr/isomorphism.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace gcarr {

enum class ClaimId { triangles_2k, mirror_triangles, chain_pair_exists, fixed_k_isomorphic, three_colorable };

inline constexpr ClaimId kAllClaims[] = {ClaimId::triangles_2k, ClaimId::mirror_triangles, ClaimId::chain_pair_exists,
                                         ClaimId::fixed_k_isomorphic, ClaimId::three_colorable};

inline std::string_view to_string(ClaimId c) {
    switch (c) {
        case ClaimId::triangles_2k: return "triangles_2k";
        case ClaimId::mirror_triangles: return "mirror_triangles";
        case ClaimId::chain_pair_exists: return "chain_pair_exists";
        case ClaimId::fixed_k_isomorphic: return "fixed_k_isomorphic";
        case ClaimId::three_colorable: return "three_colorable";
    }
    return "?";
}

inline ClaimId parse_claim(std::string_view name) {
    for (ClaimId c : kAllClaims) {
        if (to_string(c) == name) return c;
    }
    throw std::invalid_argument("unknown claim '" + std::string(name) + "'");
}

enum class Verdict { pass, fail, inconclusive };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "PASS";
        case Verdict::fail: return "FAIL";
        case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

// A built arrangement together with how to rebuild it.
struct Instance {
    int k;
    std::optional<std::uint64_t> seed;
    std::optional<Fixture> fixture;
    std::string source;  // file path for instances loaded from disk
    Tolerances tol;
    ArrangementGraph graph;

    std::string descriptor() const {
        if (fixture) return "fixture=" + std::string(to_string(*fixture));
        if (seed) return "seed=" + std::to_string(*seed);
        return "file=" + source;
    }
};

inline Instance random_instance(int k, std::uint64_t seed, const Tolerances& tol = {}) {
    return Instance{k, seed, std::nullopt, {}, tol, ArrangementGraph(generate_random(k, seed, tol), tol)};
}

inline Instance fixture_instance(Fixture f, const Tolerances& tol = {}) {
    ArrangementGraph g(fixture_arrangement(f), tol);
    return Instance{g.k(), std::nullopt, f, {}, tol, std::move(g)};
}

inline Instance file_instance(std::vector<GreatCircle> circles, std::string source, const Tolerances& tol = {}) {
    ArrangementGraph g(std::move(circles), tol);
    return Instance{g.k(), std::nullopt, std::nullopt, std::move(source), tol, std::move(g)};
}

struct ClaimConfig {
    double timeout_seconds = kDefaultTimeoutSeconds;
    std::uint64_t chain_budget = ChainSearchOptions{}.node_budget;
    std::optional<std::filesystem::path> archive_dir;  // FAIL instances are exported here
};

struct ClaimReport {
    ClaimId claim;
    int k;
    std::string instance;
    std::string expected;
    std::string observed;
    Verdict verdict;
    std::string repro;  // flags and tolerances that rebuild the instance
    std::string archived;  // arrangement file written for FAIL verdicts
};

namespace detail {

inline std::string repro_string(const Instance& inst, const ClaimConfig& cfg) {
    std::ostringstream os;
    os << "k=" << inst.k << ' ' << inst.descriptor() << " eps_dup=" << inst.tol.dup << " eps_on=" << inst.tol.on
       << " eps_sep=" << inst.tol.sep << " timeout=" << cfg.timeout_seconds << " chain_budget=" << cfg.chain_budget;
    return os.str();
}

inline std::string archive(const Instance& inst, const ClaimConfig& cfg) {
    if (!cfg.archive_dir) return {};
    const auto text = arrangement_text(inst.graph.circles());
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.arr", static_cast<unsigned long long>(fnv1a64(text)));
    std::filesystem::create_directories(*cfg.archive_dir);
    const auto path = *cfg.archive_dir / name;
    if (!std::filesystem::exists(path)) write_file_atomic(path, text);
    return path.string();
}

inline ClaimReport finish_report(ClaimReport r, const Instance& inst, const ClaimConfig& cfg) {
    if (r.verdict == Verdict::fail) r.archived = archive(inst, cfg);
    return r;
}

}  // namespace detail

// Single-instance claims. fixed_k_isomorphic needs the two-instance overload.
inline ClaimReport check_claim(ClaimId claim, const Instance& inst, const ClaimConfig& cfg = {}) {
    const auto& g = inst.graph;
    ClaimReport r{claim, inst.k, inst.descriptor(), {}, {}, Verdict::fail, detail::repro_string(inst, cfg), {}};
    switch (claim) {
        case ClaimId::triangles_2k: {
            const auto t = enumerate_triangles(g).size();
            r.expected = std::to_string(2 * inst.k);
            r.observed = std::to_string(t);
            r.verdict = t == static_cast<std::size_t>(2 * inst.k) ? Verdict::pass : Verdict::fail;
            break;
        }
        case ClaimId::mirror_triangles: {
            const auto tris = enumerate_triangles(g);
            const auto sigma = antipodal_involution(g);
            const auto pairing = mirror_pairing(tris, sigma);
            const bool sigma_ok = validate_involution(g, sigma).empty();
            r.expected = "total";
            r.observed = pairing.total() && sigma_ok ? "total" : "partial:" + std::to_string(pairing.pairs.size()) + "/" +
                                                                     std::to_string(tris.size());
            r.verdict = r.observed == r.expected ? Verdict::pass : Verdict::fail;
            break;
        }
        case ClaimId::chain_pair_exists: {
            const auto tris = enumerate_triangles(g);
            ChainSearchOptions opts;
            opts.node_budget = cfg.chain_budget;
            const auto found = find_chain_pair(g, tris, antipodal_involution(g), opts);
            r.expected = "length=" + std::to_string(inst.k);
            switch (found.status) {
                case ChainSearchStatus::found:
                    r.observed = "length=" + std::to_string(found.chains->first.size());
                    r.verdict = Verdict::pass;
                    break;
                case ChainSearchStatus::not_found:
                    r.observed = "notfound:longest=" + std::to_string(found.longest);
                    r.verdict = Verdict::fail;
                    break;
                case ChainSearchStatus::budget_exhausted:
                    r.observed = "budget:" + std::to_string(found.nodes);
                    r.verdict = Verdict::inconclusive;
                    break;
            }
            break;
        }
        case ClaimId::fixed_k_isomorphic:
            throw std::invalid_argument("fixed_k_isomorphic compares two instances");
        case ClaimId::three_colorable: {
            const auto res = color_exact(g, cfg.timeout_seconds);
            r.expected = "colorable";
            r.observed = std::string(to_string(res.status));
            r.verdict = res.status == ExactStatus::colored      ? Verdict::pass
                        : res.status == ExactStatus::infeasible ? Verdict::fail
                                                                : Verdict::inconclusive;
            break;
        }
    }
    return detail::finish_report(std::move(r), inst, cfg);
}

inline ClaimReport check_claim(ClaimId claim, const Instance& a, const Instance& b, const ClaimConfig& cfg = {}) {
    if (claim != ClaimId::fixed_k_isomorphic) throw std::invalid_argument("only fixed_k_isomorphic takes two instances");
    if (a.k != b.k) throw MismatchedK("isomorphism claim needs equal k, got " + std::to_string(a.k) + " and " + std::to_string(b.k));
    ClaimReport r{claim, a.k, a.descriptor() + "|" + b.descriptor(), "isomorphic", {}, Verdict::fail,
                  detail::repro_string(a, cfg) + " vs " + b.descriptor(), {}};
    const auto iso = graph_isomorphic(a.graph, b.graph);
    r.observed = iso.isomorphic ? "isomorphic" : "non-isomorphic";
    r.verdict = iso.isomorphic ? Verdict::pass : Verdict::fail;
    if (r.verdict == Verdict::fail) {
        r.archived = detail::archive(a, cfg);
        const auto second = detail::archive(b, cfg);
        if (!second.empty()) r.archived += "," + second;
    }
    return r;
}

// Whether `claim` applies to an instance of size k.
inline bool claim_applies(ClaimId claim, int k) { return claim != ClaimId::chain_pair_exists || k >= 4; }

struct SweepResult {
    std::vector<ClaimReport> reports;
    std::size_t skipped = 0;

    std::size_t count(Verdict v) const {
        return static_cast<std::size_t>(std::count_if(reports.begin(), reports.end(), [v](const auto& r) { return r.verdict == v; }));
    }
};

// Runs every claim on every instance. Instances are compared for isomorphism
// against the first instance of the same k. Reports come back in claim order,
// then instance order, whatever the number of worker threads.
inline SweepResult run_sweep(const std::vector<ClaimId>& claims, const std::vector<Instance>& instances,
                             const ClaimConfig& cfg = {}, unsigned jobs = 1) {
    struct Task {
        ClaimId claim;
        std::size_t inst;
        std::optional<std::size_t> other;
    };
    std::vector<Task> tasks;
    SweepResult out;
    for (ClaimId c : claims) {
        for (std::size_t i = 0; i < instances.size(); ++i) {
            if (c == ClaimId::fixed_k_isomorphic) {
                std::size_t ref = i;
                for (std::size_t j = 0; j < i; ++j) {
                    if (instances[j].k == instances[i].k) {
                        ref = j;
                        break;
                    }
                }
                if (ref != i) tasks.push_back({c, ref, i});
            } else if (claim_applies(c, instances[i].k)) {
                tasks.push_back({c, i, std::nullopt});
            } else {
                ++out.skipped;
            }
        }
    }

    std::vector<std::optional<ClaimReport>> slots(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
            try {
                const auto& task = tasks[t];
                slots[t] = task.other ? check_claim(task.claim, instances[task.inst], instances[*task.other], cfg)
                                      : check_claim(task.claim, instances[task.inst], cfg);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    jobs = std::max(1U, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (errors[t]) std::rethrow_exception(errors[t]);
        out.reports.push_back(std::move(*slots[t]));
    }
    return out;
}

inline void write_report_line(std::ostream& os, const ClaimReport& r) {
    os << to_string(r.claim) << '\t' << r.k << '\t' << r.instance << '\t' << r.expected << '\t' << r.observed << '\t'
       << to_string(r.verdict) << '\n';
}

// Tab-separated lines, a "# repro" comment after each FAIL, and a JSON summary.
inline void write_report(std::ostream& os, const SweepResult& sweep) {
    os << "claim\tk\tinstance\texpected\tobserved\tverdict\n";
    for (const auto& r : sweep.reports) {
        write_report_line(os, r);
        if (r.verdict == Verdict::fail) {
            os << "# repro " << r.repro;
            if (!r.archived.empty()) os << " archive=" << r.archived;
            os << '\n';
        }
    }
    nlohmann::ordered_json summary;
    summary["pass"] = sweep.count(Verdict::pass);
    summary["fail"] = sweep.count(Verdict::fail);
    summary["inconclusive"] = sweep.count(Verdict::inconclusive);
    summary["skipped"] = sweep.skipped;
    os << "# summary " << summary.dump() << '\n';
}

// Process exit status for a sweep: number of FAIL verdicts, capped at 125.
inline int sweep_exit_status(const SweepResult& sweep) {
    return static_cast<int>(std::min<std::size_t>(sweep.count(Verdict::fail), 125));
}

}  // namespace gcarr
