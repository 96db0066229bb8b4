#pragma once

// Command implementations behind the `permdet` executable. Argument parsing lives in
// main.cpp; everything here takes a filled RunConfig and the raw input text, so tests
// can drive commands without spawning a process.

#include <chrono>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "permdet/permdet.hpp"

namespace permdet::cli {

enum class Command { per, det, cycles, pm_count, verify, classify, bench };
enum class InputFormat { edge_list, adjacency, biadjacency };
enum class OutputMode { text, records };

enum ExitCode : int {
    ok = 0,
    parse_error = 1,
    not_bipartite = 2,
    limit_exceeded = 3,
    verification_mismatch = 4,
};

struct RunConfig {
    Command command = Command::per;
    InputFormat format = InputFormat::edge_list;
    OutputMode output = OutputMode::text;
    std::size_t cycle_cap = default_cycle_cap;
    std::size_t guard_ryser = OracleLimits{}.ryser_max_n;
    std::size_t guard_sachs = OracleLimits{}.sachs_max_n;
    std::size_t guard_theorem2 = OracleLimits{}.theorem2_max_n;
    bool show_terms = false;
    unsigned threads = 1;  // 0 = hardware concurrency
    std::optional<std::size_t> m;  // verify: family-size bound for the induced-subgraph sweep; computed when absent
};

namespace detail {

using nlohmann::json;

inline std::string join(const std::vector<int>& v, std::string_view sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(sep) : "") + std::to_string(v[i]);
    return s;
}

inline std::string set_text(const VertexSet& s) { return "{" + join(s.labels(), ",") + "}"; }

inline std::string paren(const ExactInt& v) { return v < 0 ? "(" + v.str() + ")" : v.str(); }

inline OracleLimits limits(const RunConfig& c) {
    OracleLimits l;
    l.ryser_max_n = c.guard_ryser;
    l.sachs_max_n = c.guard_sachs;
    l.theorem2_max_n = c.guard_theorem2;
    l.cycle_cap = c.cycle_cap;
    return l;
}

inline EngineOptions engine_options(const RunConfig& c) {
    EngineOptions o;
    o.cycles.cap = c.cycle_cap;
    o.threads = c.threads;
    return o;
}

inline Graph read_graph(const RunConfig& c, std::string_view input) {
    switch (c.format) {
        case InputFormat::edge_list: return parse_edge_list(input);
        case InputFormat::adjacency: return parse_adjacency_matrix(input);
        case InputFormat::biadjacency: return graph_from_biadjacency(parse_biadjacency(input));
    }
    return {};
}

inline void emit(std::ostream& out, const json& record) { out << record.dump() << '\n'; }

inline std::string optional_text(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "n/a"; }

inline json optional_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

inline int run_per(const RunConfig& c, const Graph& g, std::ostream& out) {
    PermanentReport r = permanent_auto(g, engine_options(c));
    if (c.output == OutputMode::records) {
        emit(out, {{"record", "permanent"},
                   {"value", r.value.str()},
                   {"n", r.n},
                   {"path", std::string(to_string(r.path))},
                   {"m", optional_json(r.m)},
                   {"cycles", optional_json(r.num_cycles)},
                   {"cycles_4k", r.num_4k_cycles()},
                   {"cycles_4k_plus_2", optional_json(r.num_4k_plus_2_cycles)}});
        if (c.show_terms) {
            for (std::size_t k = 0; k < r.four_k_cycles.size(); ++k)
                emit(out, {{"record", "cycle_4k"}, {"index", k + 1}, {"vertices", r.four_k_cycles[k].labels()}});
            for (const auto& t : r.terms) {
                std::vector<std::size_t> idx;
                for (auto i : t.cycle_indices) idx.push_back(i + 1);
                emit(out, {{"record", "family_term"},
                           {"z", t.z()},
                           {"cycles", idx},
                           {"removed", t.covered.labels()},
                           {"det", t.det.str()},
                           {"coefficient", t.coefficient.str()}});
            }
            for (const auto& s : r.by_size())
                emit(out, {{"record", "size_summary"},
                           {"z", s.z},
                           {"families", s.families},
                           {"sum_unordered", s.unordered_sum.str()},
                           {"sum_ordered", s.ordered_sum.str()},
                           {"coefficient", s.coefficient.str()},
                           {"contribution", s.contribution.str()}});
        }
        return ok;
    }

    out << "per: " << r.value << '\n'
        << "n: " << r.n << '\n'
        << "path: " << to_string(r.path) << '\n'
        << "m: " << optional_text(r.m) << '\n'
        << "cycles: " << optional_text(r.num_cycles) << '\n'
        << "4k-cycles: " << (r.num_cycles ? std::to_string(r.num_4k_cycles()) : "n/a") << '\n'
        << "4k+2-cycles: " << optional_text(r.num_4k_plus_2_cycles) << '\n';
    if (!c.show_terms || r.path == PermanentPath::odd_shortcut) return ok;

    out << "\n4k-cycles:\n";
    for (std::size_t k = 0; k < r.four_k_cycles.size(); ++k)
        out << "  C" << k + 1 << " = (" << join(r.four_k_cycles[k].labels(), " ") << ")\n";
    out << "\nfamilies:\n";
    for (const auto& t : r.terms) {
        std::vector<int> names;
        for (auto i : t.cycle_indices) names.push_back(static_cast<int>(i + 1));
        std::string fam = "{";
        for (std::size_t i = 0; i < names.size(); ++i) fam += (i ? ",C" : "C") + std::to_string(names[i]);
        fam += "}";
        out << "  z=" << t.z() << "  " << fam << "  removed=" << set_text(t.covered) << "  det=" << t.det << '\n';
    }
    out << "\nterms by family size (ordered tuple sum = z! * unordered sum):\n";
    std::string sum_text;
    for (const auto& s : r.by_size()) {
        out << "  z=" << s.z << "  families=" << s.families << "  sum det=" << s.unordered_sum
            << "  ordered sum=" << s.ordered_sum << "  4^z=" << s.coefficient << "  contribution=" << s.coefficient
            << "*" << paren(s.unordered_sum) << "=" << s.contribution << '\n';
        sum_text += (sum_text.empty() ? "" : " + ") + paren(s.contribution);
    }
    out << "\nper = (-1)^" << r.n / 2 << " * [" << sum_text << "] = " << r.value << '\n';
    return ok;
}

inline int run_det(const RunConfig& c, const Graph& g, std::ostream& out) {
    ExactInt d = determinant(g.adjacency());
    if (c.output == OutputMode::records)
        emit(out, {{"record", "determinant"}, {"value", d.str()}, {"n", g.order()}});
    else
        out << "det: " << d << '\n';
    return ok;
}

inline int run_cycles(const RunConfig& c, const Graph& g, std::ostream& out) {
    auto cycles = enumerate_cycles(g, CycleOptions{std::nullopt, c.cycle_cap});
    auto c4k = four_k_cycles(cycles);
    auto families = enumerate_disjoint_families(c4k);
    const std::size_t m = max_disjoint(families);
    const std::size_t c4k2 = four_k_plus_2_cycles(cycles).size();

    if (c.output == OutputMode::records) {
        for (const auto& cy : cycles) {
            std::string cls = cy.length() % 4 == 0 ? "4k" : cy.length() % 4 == 2 ? "4k+2" : "odd";
            emit(out, {{"record", "cycle"}, {"length", cy.length()}, {"class", cls}, {"vertices", cy.labels()}});
        }
        for (const auto& f : families) {
            std::vector<std::size_t> idx;
            for (auto i : f.cycle_indices) idx.push_back(i + 1);
            emit(out, {{"record", "family"}, {"z", f.size()}, {"cycles_4k", idx}, {"covered", f.covered.labels()}});
        }
        emit(out, {{"record", "cycle_summary"},
                   {"cycles", cycles.size()},
                   {"cycles_4k", c4k.size()},
                   {"cycles_4k_plus_2", c4k2},
                   {"families", families.size()},
                   {"m", m}});
        return ok;
    }

    out << "cycles (" << cycles.size() << "):\n";
    for (const auto& cy : cycles) out << "  (" << join(cy.labels(), " ") << ")  length " << cy.length() << '\n';
    out << "4k-cycles (" << c4k.size() << "):\n";
    for (std::size_t k = 0; k < c4k.size(); ++k) out << "  C" << k + 1 << " = (" << join(c4k[k].labels(), " ") << ")\n";
    out << "4k+2-cycles: " << c4k2 << '\n';
    out << "disjoint 4k-cycle families (" << families.size() << "):\n";
    for (const auto& f : families) {
        std::string fam;
        for (auto i : f.cycle_indices) fam += (fam.empty() ? "C" : ",C") + std::to_string(i + 1);
        out << "  z=" << f.size() << "  {" << fam << "}  covered=" << set_text(f.covered) << '\n';
    }
    out << "m: " << m << '\n';
    return ok;
}

inline int run_pm_count(const RunConfig& c, std::string_view input, std::ostream& out, std::ostream& err) {
    if (c.format != InputFormat::biadjacency) {
        err << "error: pm-count requires --format biadjacency\n";
        return parse_error;
    }
    BinaryMatrix b = parse_biadjacency(input);
    ExactInt count = count_perfect_matchings(b, engine_options(c));
    if (c.output == OutputMode::records)
        emit(out, {{"record", "perfect_matchings"}, {"value", count.str()}, {"rows", b.rows()}, {"cols", b.cols()}});
    else
        out << "perfect matchings: " << count << '\n';
    return ok;
}

struct CheckLine {
    std::string name;
    std::string status;  // pass | FAIL | skipped(guard)
    std::string detail;
};

inline int run_verify(const RunConfig& c, const Graph& g, std::ostream& out) {
    const OracleLimits lim = limits(c);
    const auto n = static_cast<std::size_t>(g.order());
    std::vector<CheckLine> lines;
    auto check = [&](const std::string& name, std::size_t guard, const std::function<std::pair<bool, std::string>()>& body) {
        if (n > guard) {
            lines.push_back({name, "skipped(guard)", "n=" + std::to_string(n) + " > " + std::to_string(guard)});
            return;
        }
        try {
            auto [passed, detail] = body();
            lines.push_back({name, passed ? "pass" : "FAIL", detail});
        } catch (const LimitExceeded& e) {
            lines.push_back({name, "skipped(guard)", e.what()});
        }
    };
    auto eq = [](const ExactInt& a, const ExactInt& b) {
        return std::pair{a == b, a.str() + (a == b ? " == " : " != ") + b.str()};
    };

    const PermanentReport theorem = permanent_theorem1(g, engine_options(c));
    const PermanentReport autopath = permanent_auto(g, engine_options(c));
    const ExactInt det = determinant(g.adjacency());
    const std::size_t unlimited = static_cast<std::size_t>(-1);

    check("theorem1 == auto", unlimited, [&] {
        auto r = eq(theorem.value, autopath.value);
        r.second += " (auto path " + std::string(to_string(autopath.path)) + ")";
        return r;
    });
    if (n % 2 == 0 && theorem.num_4k_cycles() == 0) {
        check("corollary per == (-1)^(n/2) det", unlimited, [&] {
            auto r = eq(theorem.value, theorem.sign() * det);
            r.first = r.first && autopath.path == PermanentPath::corollary_fast_path;
            r.second += ", path " + std::string(to_string(autopath.path));
            return r;
        });
    }
    check("theorem1 == ryser", lim.ryser_max_n, [&] { return eq(theorem.value, per_ryser(g.adjacency(), lim.ryser_max_n)); });
    check("theorem1 == naive", lim.naive_max_n, [&] { return eq(theorem.value, per_naive(g.adjacency(), lim.naive_max_n)); });
    check("theorem1 == sachs", lim.sachs_max_n, [&] { return eq(theorem.value, per_via_sachs(g, lim)); });
    check("bareiss == det sachs", lim.sachs_max_n, [&] { return eq(det, det_via_sachs(g, lim)); });
    check("bareiss == det naive", lim.naive_max_n, [&] { return eq(det, det_naive(g.adjacency(), lim.naive_max_n)); });
    check("parity identity", lim.sachs_max_n, [&] { return std::pair{check_parity_identity(g, lim), std::string()}; });
    check("removal identity", lim.sachs_max_n, [&] { return std::pair{check_removal_identity(g, lim), std::string()}; });

    const std::size_t true_m = theorem.m.value_or(0);
    const std::size_t m = c.m.value_or(true_m);
    check("theorem2 holds at m=" + std::to_string(m), lim.theorem2_max_n, [&] {
        auto r = verify_theorem2(g, m, lim);
        return std::pair{r.holds_for_all, r.violating_subset ? "violated on " + set_text(*r.violating_subset) : ""};
    });
    if (!c.m && n % 2 == 0 && true_m >= 1) {
        check("theorem2 fails at m=" + std::to_string(true_m - 1), lim.theorem2_max_n, [&] {
            auto r = verify_theorem2(g, true_m - 1, lim);
            return std::pair{!r.holds_for_all, r.violating_subset ? "violated on " + set_text(*r.violating_subset) : ""};
        });
    }

    bool all_passed = true;
    for (const auto& l : lines) all_passed = all_passed && l.status != "FAIL";
    if (c.output == OutputMode::records) {
        for (const auto& l : lines) emit(out, {{"record", "check"}, {"name", l.name}, {"status", l.status}, {"detail", l.detail}});
        emit(out, {{"record", "verify_summary"}, {"passed", all_passed}, {"per", theorem.value.str()}});
    } else {
        for (const auto& l : lines) out << l.status << "  " << l.name << (l.detail.empty() ? "" : "  [" + l.detail + "]") << '\n';
        out << (all_passed ? "verify: all checks passed" : "verify: MISMATCH") << '\n';
    }
    return all_passed ? ok : verification_mismatch;
}

inline int run_classify(const RunConfig& c, const Graph& g, std::ostream& out) {
    EfficiencyClass e = classify_efficient(g, CycleOptions{std::nullopt, c.cycle_cap});
    if (c.output == OutputMode::records) {
        emit(out, {{"record", "classification"},
                   {"is_cactus", e.is_cactus},
                   {"girth", optional_json(e.girth)},
                   {"n", e.n},
                   {"c", e.girth_cycles},
                   {"condition_holds", e.condition_holds},
                   {"reading", "girth = shortest cycle length, c = number of cycles of that length"}});
        return ok;
    }
    out << "cactus: " << (e.is_cactus ? "yes" : "no") << '\n'
        << "girth: " << optional_text(e.girth) << '\n'
        << "n: " << e.n << '\n'
        << "c (cycles of girth length): " << e.girth_cycles << '\n';
    if (e.girth) {
        const std::size_t cc = e.girth_cycles;
        out << "inequality: " << *e.girth << " * " << cc + 2 << " > " << e.n << " + " << cc * (cc - 1) / 2 << " + " << cc
            << '\n';
    }
    out << "efficient: " << (e.condition_holds ? "yes" : "no") << '\n';
    return ok;
}

inline int run_bench(const RunConfig& c, const Graph& g, std::ostream& out) {
    using clock = std::chrono::steady_clock;
    const OracleLimits lim = limits(c);
    const auto n = static_cast<std::size_t>(g.order());
    struct Row {
        std::string method, status, value;
        double ms = 0;
        std::string notes;
    };
    std::vector<Row> rows;
    auto timed = [&](const std::string& method, std::size_t guard, const std::function<std::pair<ExactInt, std::string>()>& body) {
        if (n > guard) {
            rows.push_back({method, "skipped(guard)", "-", 0, "n=" + std::to_string(n) + " > " + std::to_string(guard)});
            return;
        }
        auto t0 = clock::now();
        try {
            auto [v, notes] = body();
            double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
            rows.push_back({method, "ok", v.str(), ms, notes});
        } catch (const LimitExceeded& e) {
            rows.push_back({method, "skipped(guard)", "-", 0, e.what()});
        }
    };
    const std::size_t unlimited = static_cast<std::size_t>(-1);
    timed("theorem1", unlimited, [&] {
        PermanentReport r = permanent_theorem1(g, engine_options(c));
        std::string notes = "cycles=" + optional_text(r.num_cycles) + " cycles_4k=" + std::to_string(r.num_4k_cycles()) +
                            " families=" + std::to_string(r.terms.size()) + " m=" + optional_text(r.m) +
                            " cache_hits=" + std::to_string(r.cache_hits) + " cache_misses=" + std::to_string(r.cache_misses);
        return std::pair{r.value, notes};
    });
    timed("auto", unlimited, [&] {
        PermanentReport r = permanent_auto(g, engine_options(c));
        return std::pair{r.value, "path=" + std::string(to_string(r.path))};
    });
    timed("ryser", lim.ryser_max_n, [&] { return std::pair{per_ryser(g.adjacency(), lim.ryser_max_n), std::string()}; });
    timed("sachs", lim.sachs_max_n, [&] { return std::pair{per_via_sachs(g, lim), std::string()}; });

    if (c.output == OutputMode::records) {
        for (const auto& r : rows)
            emit(out, {{"record", "bench"}, {"method", r.method}, {"status", r.status}, {"value", r.value},
                       {"wall_ms", r.ms}, {"notes", r.notes}});
        return ok;
    }
    out << "method    status          wall_ms      value  notes\n";
    for (const auto& r : rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%10.3f", r.ms);
        std::string method = r.method + std::string(r.method.size() < 10 ? 10 - r.method.size() : 0, ' ');
        std::string status = r.status + std::string(r.status.size() < 16 ? 16 - r.status.size() : 0, ' ');
        out << method << status << buf << "  " << r.value << "  " << r.notes << '\n';
    }
    return ok;
}

}  // namespace detail

/// Runs one command. Errors are reported on `err` and mapped to the documented exit codes.
inline int run(const RunConfig& config, std::string_view input, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == Command::pm_count) return detail::run_pm_count(config, input, out, err);
        const Graph g = detail::read_graph(config, input);
        switch (config.command) {
            case Command::per: return detail::run_per(config, g, out);
            case Command::det: return detail::run_det(config, g, out);
            case Command::cycles: return detail::run_cycles(config, g, out);
            case Command::verify: return detail::run_verify(config, g, out);
            case Command::classify: return detail::run_classify(config, g, out);
            case Command::bench: return detail::run_bench(config, g, out);
            case Command::pm_count: break;
        }
        return ok;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const NotBipartite& e) {
        err << "error: " << e.what() << '\n';
        return not_bipartite;
    } catch (const LimitExceeded& e) {
        err << "error: " << e.what() << '\n';
        return limit_exceeded;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return parse_error;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return parse_error;
    } catch (const std::logic_error& e) {
        // internal consistency failures (negative permanent, non-square matching count)
        err << "internal check failed: " << e.what() << '\n';
        return verification_mismatch;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return parse_error;
    }
}

}  // namespace permdet::cli
