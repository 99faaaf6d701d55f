#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "depmine.hpp"

namespace depmine::cli {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

inline LogLevel log_level_from_env() {
    const char* v = std::getenv("DEPMINER_LOG");
    if (v == nullptr) return LogLevel::info;
    const std::string s(v);
    if (s == "quiet") return LogLevel::quiet;
    if (s == "debug") return LogLevel::debug;
    return LogLevel::info;
}

struct Logger {
    LogLevel level;
    std::ostream* err;

    void info(const std::string& msg) const {
        if (level >= LogLevel::info) *err << msg << '\n';
    }
    void debug(const std::string& msg) const {
        if (level >= LogLevel::debug) *err << msg << '\n';
    }
};

namespace detail {

struct MineOptions {
    std::string data;
    std::string format = "auto";
    std::string measure;
    std::string mode = "pos";
    double min_value = 0.0;
    std::int64_t top_k = 0;
    bool has_min = false;
    bool has_top_k = false;
    int max_size = 4;
    std::vector<std::string> consequents;
    bool negated_consequents = false;
    int threads = 1;
    std::string out_path;
    bool tsv = false;
    std::string stats_json;
    bool compare = false;  // oracle only
};

inline void add_search_options(CLI::App& cmd, MineOptions& o, bool is_miner) {
    cmd.add_option("--data", o.data, "input data file (.dat FIMI / .csv binary matrix)")
        ->required();
    cmd.add_option("--format", o.format, "input format override: auto|fimi|csv");
    cmd.add_option("--measure", o.measure, "goodness measure: chi2|mi|z1|z2|j")->required();
    cmd.add_option("--mode", o.mode, "dependency polarity: pos|neg|both (default pos)");
    auto* omin = cmd.add_option("--min-value", o.min_value,
                                "emit every rule scoring at least this value");
    auto* otop = cmd.add_option("--top-k", o.top_k, "emit the k best rules");
    omin->excludes(otop);
    cmd.add_option("--max-size", o.max_size, "antecedent size cap (default 4)");
    cmd.add_option("--consequent", o.consequents,
                   "restrict consequents; 'attr' means attr=1, '!attr' means attr=0 (repeatable)");
    cmd.add_flag("--negated-consequents", o.negated_consequents,
                 "also mine rules with negated consequents (A=0)");
    cmd.add_option("--out", o.out_path, "write rules to a file instead of stdout");
    cmd.add_flag("--tsv", o.tsv, "tab-separated output instead of csv");
    cmd.add_option("--stats-json", o.stats_json, "write search statistics to a JSON file");
    if (is_miner) cmd.add_option("--threads", o.threads, "worker count (default 1)");
    cmd.callback([&o, omin, otop] {
        o.has_min = omin->count() > 0;
        o.has_top_k = otop->count() > 0;
    });
}

inline DataFormat parse_format(const std::string& s) {
    if (s == "auto") return DataFormat::auto_detect;
    if (s == "fimi") return DataFormat::fimi;
    if (s == "csv") return DataFormat::csv;
    throw config_error("unknown format '" + s + "' (expected auto|fimi|csv)");
}

inline PolarityMode parse_mode(const std::string& s) {
    if (s == "pos") return PolarityMode::positive;
    if (s == "neg") return PolarityMode::negative;
    if (s == "both") return PolarityMode::both;
    throw config_error("unknown mode '" + s + "' (expected pos|neg|both)");
}

inline SearchConfig build_config(const Dataset& ds, const MineOptions& o) {
    SearchConfig cfg;
    cfg.measure = &find_measure(o.measure);
    cfg.mode = parse_mode(o.mode);
    if (o.has_min == o.has_top_k)
        throw config_error("exactly one of --min-value / --top-k is required");
    cfg.goal = o.has_min ? SearchGoal::threshold(o.min_value) : SearchGoal::top_k(o.top_k);
    cfg.max_antecedent_size = o.max_size;
    cfg.allow_negated_consequents = o.negated_consequents;
    cfg.threads = o.threads;
    if (!o.consequents.empty()) {
        std::vector<Literal> filter;
        for (const std::string& spec : o.consequents) {
            if (spec.empty()) throw config_error("empty --consequent value");
            const bool negated = spec.front() == '!';
            const std::string name = negated ? spec.substr(1) : spec;
            const auto idx = ds.index_of(name);
            if (!idx) throw config_error("unknown consequent attribute '" + name + "'");
            filter.push_back({*idx, static_cast<std::uint8_t>(negated ? 0 : 1)});
        }
        cfg.consequent_filter = std::move(filter);
    }
    validate(cfg);
    return cfg;
}

inline Dataset load_for(const MineOptions& o, const Logger& log) {
    Dataset ds = load_data(o.data, parse_format(o.format));
    log.info("loaded " + o.data + ": rows=" + std::to_string(ds.row_count()) +
             " attributes=" + std::to_string(ds.attribute_count()) +
             " mineable=" + std::to_string(ds.mineable_attributes().size()));
    const auto excluded = ds.excluded_attributes();
    if (!excluded.empty()) {
        std::string names;
        for (auto a : excluded) {
            if (!names.empty()) names += ' ';
            names += ds.name(a);
        }
        log.info("excluded attributes (support 0 or n): " + names);
    }
    return ds;
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* os;

    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os = &fallback;
            return;
        }
        file.open(path);
        if (!file) throw parse_error("cannot open output file '" + path + "'");
        os = &file;
    }
};

inline void emit_stats(const SearchStats& stats, const MineOptions& o, const Logger& log) {
    if (log.level >= LogLevel::info) write_stats_kv(*log.err, stats);
    if (!o.stats_json.empty()) {
        nlohmann::json j;
        j["nodes_expanded"] = stats.nodes_expanded;
        j["nodes_pruned_by_bound"] = stats.nodes_pruned_by_bound;
        j["consequents_pruned"] = stats.consequents_pruned;
        j["rules_emitted"] = stats.rules_emitted;
        std::ofstream jf(o.stats_json);
        if (!jf) throw parse_error("cannot open stats file '" + o.stats_json + "'");
        jf << j.dump(2) << '\n';
    }
}

inline int handle_mine(const MineOptions& o, std::ostream& out, const Logger& log) {
    const Dataset ds = load_for(o, log);
    const SearchConfig cfg = build_config(ds, o);
    const MiningResult result = mine(ds, cfg);
    OutputTarget target(o.out_path, out);
    write_rules(*target.os, ds, result.rules, cfg.measure->descriptor.name, o.tsv ? '\t' : ',');
    emit_stats(result.stats, o, log);
    return 0;
}

inline int handle_oracle(const MineOptions& o, std::ostream& out, const Logger& log) {
    const Dataset ds = load_for(o, log);
    const SearchConfig cfg = build_config(ds, o);
    const OracleResult oracle = brute_force_mine(ds, cfg);
    if (!o.compare) {
        OutputTarget target(o.out_path, out);
        write_rules(*target.os, ds, oracle.rules, cfg.measure->descriptor.name,
                    o.tsv ? '\t' : ',');
        emit_stats(oracle.stats, o, log);
        return 0;
    }
    const MiningResult mined = mine(ds, cfg);
    const ComparisonReport report = compare(mined, oracle);
    print_comparison(out, report, ds);
    return report.pass() ? 0 : 3;
}

struct AxiomOptions {
    std::string measure;
    std::vector<count_t> n_values;
    std::vector<count_t> m_a_values;
    std::string csv_path;
    count_t n_cap = 200;
};

inline int handle_check_axioms(const AxiomOptions& o, std::ostream& out, const Logger& log) {
    const GoodnessMeasure& m = find_measure(o.measure);
    std::optional<std::vector<count_t>> mas;
    if (!o.m_a_values.empty()) mas = o.m_a_values;
    const AxiomReport report = verify_measure(m, o.n_values, mas, o.n_cap);

    out << "measure=" << report.measure_name << '\n';
    for (count_t n : [&] {
             std::vector<count_t> ns;
             for (const auto& g : report.grids)
                 if (ns.empty() || ns.back() != g.n) ns.push_back(g.n);
             return ns;
         }()) {
        AxiomGridResult agg{n, 0, {}, {}, {}, {}, {}};
        std::int64_t grid_count = 0;
        for (const auto& g : report.grids) {
            if (g.n != n) continue;
            ++grid_count;
            agg.minimum_at_independence.merge(g.minimum_at_independence);
            agg.leverage_monotonicity.merge(g.leverage_monotonicity);
            agg.antecedent_monotonicity.merge(g.antecedent_monotonicity);
            agg.confidence_line_positive.merge(g.confidence_line_positive);
            agg.confidence_line_negative.merge(g.confidence_line_negative);
        }
        out << "n=" << n << " sweeps=" << grid_count
            << " i=" << to_string(agg.minimum_at_independence.status())
            << " ii=" << to_string(agg.leverage_monotonicity.status())
            << " iii=" << to_string(agg.antecedent_monotonicity.status())
            << " iv_a=" << to_string(agg.confidence_line_positive.status())
            << " iv_b=" << to_string(agg.confidence_line_negative.status()) << '\n';
    }
    if (report.probe_steps > 0)
        log.info("opposite-side probe: " + std::to_string(report.probe_wrong) + " of " +
                 std::to_string(report.probe_steps) + " steps against the trend (informational)");
    out << "total_violations=" << report.total_violations << '\n';
    out << "verdict=" << (report.has_violations() ? "violations" : "pass") << '\n';

    if (!o.csv_path.empty()) {
        std::ofstream csv(o.csv_path);
        if (!csv) throw parse_error("cannot open csv file '" + o.csv_path + "'");
        write_axiom_violations_csv(csv, report);
    }
    return report.has_violations() ? 4 : 0;
}

struct BoundsOptions {
    std::string measure;
    count_t n = 0;
    count_t m_a = 0;
    count_t m_x = -1;
    count_t m_xa = -1;
    bool has_m_x = false;
    bool has_m_xa = false;
};

inline int handle_bounds(const BoundsOptions& o, std::ostream& out) {
    const GoodnessMeasure& m = find_measure(o.measure);
    out << "kind,polarity,value\n";
    for (Polarity pol : {Polarity::positive, Polarity::negative}) {
        if (!m.supports(pol)) continue;
        BoundQuery q{o.m_x, o.m_xa, o.m_a, o.n};
        out << "consequent_sup," << to_string(pol) << ','
            << format_value(bound_value(m, {BoundKind::Kind::consequent_sup, pol}, q)) << '\n';
        if (o.has_m_x) {
            out << "antecedent_rule," << to_string(pol) << ','
                << format_value(bound_value(m, {BoundKind::Kind::antecedent_rule, pol}, q))
                << '\n';
            out << "subtree_unknown_xa," << to_string(pol) << ','
                << format_value(bound_value(m, {BoundKind::Kind::subtree_unknown_xa, pol}, q))
                << '\n';
        }
        if (o.has_m_x && o.has_m_xa) {
            out << "subtree_known_xa," << to_string(pol) << ','
                << format_value(bound_value(m, {BoundKind::Kind::subtree_known_xa, pol}, q))
                << '\n';
        }
    }
    return 0;
}

}  // namespace detail

/// Runs the command line given as `args` (without the program name), writing
/// normal output to `out` and diagnostics to `err`. Exit codes: 0 success,
/// 1 usage or configuration error, 2 I/O or parse error, 3 comparison failure,
/// 4 axiom violations found.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const Logger log{log_level_from_env(), &err};

    CLI::App app{"dependency rule mining with measure-generic branch-and-bound pruning",
                 "depmine"};
    app.require_subcommand(1);

    detail::MineOptions mine_opts;
    auto* mine_cmd = app.add_subcommand("mine", "mine dependency rules with pruning");
    detail::add_search_options(*mine_cmd, mine_opts, /*is_miner=*/true);

    detail::MineOptions oracle_opts;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "brute-force reference miner / miner comparison");
    detail::add_search_options(*oracle_cmd, oracle_opts, /*is_miner=*/false);
    oracle_cmd->add_flag("--compare", oracle_opts.compare,
                         "run both miners and report differences (exit 3 on mismatch)");

    detail::AxiomOptions axiom_opts;
    auto* axiom_cmd =
        app.add_subcommand("check-axioms", "verify measure monotonicity on the count lattice");
    axiom_cmd->add_option("--measure", axiom_opts.measure, "measure name")->required();
    axiom_cmd->add_option("--n", axiom_opts.n_values, "data sizes to sweep (comma separated)")
        ->required()
        ->delimiter(',');
    axiom_cmd->add_option("--ma", axiom_opts.m_a_values,
                          "consequent counts to sweep (default: all 0 < m_a < n)")
        ->delimiter(',');
    axiom_cmd->add_option("--csv", axiom_opts.csv_path, "dump violations to a CSV file");
    axiom_cmd->add_option("--max-n", axiom_opts.n_cap, "sweep size cap (default 200)");

    detail::BoundsOptions bounds_opts;
    auto* bounds_cmd = app.add_subcommand("bounds", "print pruning bounds for given counts");
    bounds_cmd->add_option("--measure", bounds_opts.measure, "measure name")->required();
    bounds_cmd->add_option("--n", bounds_opts.n, "data size")->required();
    bounds_cmd->add_option("--ma", bounds_opts.m_a, "consequent count m(A=a)")->required();
    auto* bx = bounds_cmd->add_option("--mx", bounds_opts.m_x, "antecedent count m(X)");
    auto* bxa = bounds_cmd->add_option("--mxa", bounds_opts.m_xa, "joint count m(XA=a)");

    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.emplace_back("depmine");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const auto& s : full) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        bounds_opts.has_m_x = bx->count() > 0;
        bounds_opts.has_m_xa = bxa->count() > 0;

        if (mine_cmd->parsed()) return detail::handle_mine(mine_opts, out, log);
        if (oracle_cmd->parsed()) return detail::handle_oracle(oracle_opts, out, log);
        if (axiom_cmd->parsed()) return detail::handle_check_axioms(axiom_opts, out, log);
        if (bounds_cmd->parsed()) return detail::handle_bounds(bounds_opts, out);
        err << "error: no subcommand given\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const unsupported_polarity_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const config_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const lookup_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

inline int run_main(int argc, char** argv) {
    return run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

}  // namespace depmine::cli
