#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depmine/axioms.hpp"
#include "depmine/dataset.hpp"
#include "depmine/oracle.hpp"
#include "depmine/search.hpp"

namespace depmine {

/// 12 significant digits, C locale, negative zero normalized. All floating
/// output goes through this so miner and oracle CSVs diff cleanly.
inline std::string format_value(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string format_antecedent(const Dataset& ds,
                                     std::span<const std::uint32_t> antecedent) {
    std::string out;
    for (std::size_t i = 0; i < antecedent.size(); ++i) {
        if (i > 0) out += ' ';
        out += ds.name(antecedent[i]);
    }
    return out;
}

inline std::string rule_to_string(const Dataset& ds, const Rule& r) {
    std::string out = format_antecedent(ds, r.antecedent);
    out += " -> ";
    if (r.consequent.value == 0) out += '!';
    out += ds.name(r.consequent.attribute);
    out += " (score ";
    out += format_value(r.score);
    out += ")";
    return out;
}

inline void write_rules(std::ostream& os, const Dataset& ds, std::span<const Rule> rules,
                        std::string_view measure_name, char delim = ',') {
    const char d = delim;
    os << "antecedent" << d << "consequent_attr" << d << "consequent_value" << d << "n_x" << d
       << "n_xa" << d << "n_a" << d << "n" << d << "confidence" << d << "leverage" << d
       << "polarity" << d << "measure" << d << "score" << '\n';
    for (const Rule& r : rules) {
        os << format_antecedent(ds, r.antecedent) << d << ds.name(r.consequent.attribute) << d
           << static_cast<int>(r.consequent.value) << d << r.quad.n_x << d << r.quad.n_xa << d
           << r.quad.n_a << d << r.quad.n << d << format_value(confidence(r.quad)) << d
           << format_value(leverage(r.quad)) << d << to_string(polarity(r.quad)) << d
           << measure_name << d << format_value(r.score) << '\n';
    }
}

inline void write_stats_kv(std::ostream& os, const SearchStats& s) {
    os << "nodes_expanded=" << s.nodes_expanded << '\n'
       << "nodes_pruned_by_bound=" << s.nodes_pruned_by_bound << '\n'
       << "consequents_pruned=" << s.consequents_pruned << '\n'
       << "rules_emitted=" << s.rules_emitted << '\n';
}

inline void write_axiom_violations_csv(std::ostream& os, const AxiomReport& report) {
    os << "condition,n,m_a,n_x1,n_xa1,n_x2,n_xa2,v1,v2\n";
    for (const auto& v : report.violations)
        os << v.condition << ',' << v.n << ',' << v.m_a << ',' << v.n_x1 << ',' << v.n_xa1
           << ',' << v.n_x2 << ',' << v.n_xa2 << ',' << format_value(v.v1) << ','
           << format_value(v.v2) << '\n';
}

inline void print_comparison(std::ostream& os, const ComparisonReport& report,
                             const Dataset& ds) {
    os << "missing_rules=" << report.missing.size() << '\n';
    for (const Rule& r : report.missing) os << "  missing: " << rule_to_string(ds, r) << '\n';
    os << "spurious_rules=" << report.spurious.size() << '\n';
    for (const Rule& r : report.spurious) os << "  spurious: " << rule_to_string(ds, r) << '\n';
    os << "score_mismatches=" << report.mismatches.size() << '\n';
    for (const auto& m : report.mismatches)
        os << "  mismatch: " << rule_to_string(ds, m.rule)
           << " miner_score=" << format_value(m.miner_score) << '\n';
    os << "miner_nodes=" << report.miner_nodes << '\n';
    os << "oracle_nodes=" << report.oracle_nodes << '\n';
    os << "verdict=" << (report.pass() ? "pass" : "fail") << '\n';
}

}  // namespace depmine
