#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "depmine/dataset.hpp"
#include "depmine/search.hpp"

// Brute-force reference miner. Deliberately does not include the bounds
// machinery: equivalence tests against the pruned miner are only meaningful
// while this translation path stays independent of it.

namespace depmine {

struct OracleResult {
    std::vector<Rule> rules;
    SearchStats stats;  ///< nodes_expanded counts every enumerated antecedent
};

struct ComparisonReport {
    struct ScoreMismatch {
        Rule rule;          ///< oracle's version
        double miner_score;
    };

    std::vector<Rule> missing;    ///< in oracle output, absent from miner output
    std::vector<Rule> spurious;   ///< in miner output, absent from oracle output
    std::vector<ScoreMismatch> mismatches;  ///< same identity, scores differ > 1e-9
    std::int64_t miner_nodes = 0;
    std::int64_t oracle_nodes = 0;

    bool pass() const { return missing.empty() && spurious.empty() && mismatches.empty(); }
};

namespace detail {

struct OracleWalker {
    const Dataset& ds;
    const SearchConfig& cfg;
    const std::vector<ConsequentLiteral>& consequents;
    RuleCollector& collector;
    SearchStats& stats;
    std::vector<std::uint32_t> attrs;
    std::vector<std::uint32_t> prefix;
    std::vector<RowSet> row_stack;

    void visit(const RowSet& parent_rows, std::size_t attr_index, int depth) {
        const std::uint32_t attr = attrs[attr_index];
        RowSet& rows = row_stack[static_cast<std::size_t>(depth)];
        rows.assign_and(parent_rows, ds.row_set(attr));
        ++stats.nodes_expanded;
        prefix.push_back(attr);

        const count_t n_x = rows.count();
        const count_t n = ds.row_count();
        for (const ConsequentLiteral& c : consequents) {
            if (std::find(prefix.begin(), prefix.end(), c.lit.attribute) != prefix.end())
                continue;
            const count_t joint = RowSet::and_count(rows, ds.row_set(c.lit.attribute));
            const count_t n_xa = c.lit.value == 1 ? joint : n_x - joint;
            const FrequencyQuad q{n_x, n_xa, c.n_a, n};
            if (!is_legal(q)) continue;
            const Polarity p = polarity(q);
            if (!polarity_active(cfg.mode, p) || !cfg.measure->supports(p)) continue;
            collector.offer(Rule{prefix, c.lit, q, cfg.measure->value(q)});
        }

        if (depth < cfg.max_antecedent_size) {
            for (std::size_t j = attr_index + 1; j < attrs.size(); ++j)
                visit(rows, j, depth + 1);
        }
        prefix.pop_back();
    }
};

}  // namespace detail

/// Enumerates every rule up to the antecedent size cap with no pruning at all,
/// then applies the same goal filtering and ordering as the miner. Guard rails
/// refuse instances where blind enumeration would be unreasonable.
inline OracleResult brute_force_mine(const Dataset& ds, const SearchConfig& cfg) {
    validate(cfg);
    if (ds.row_count() <= 0) throw config_error("dataset has no rows");
    const std::vector<std::uint32_t> attrs = ds.mineable_attributes();
    if (attrs.size() < 2)
        throw config_error("dataset needs at least two attributes with 0 < support < n");
    if (attrs.size() > 16)
        throw config_error("oracle guard rail: " + std::to_string(attrs.size()) +
                           " mineable attributes exceeds the limit of 16");
    if (cfg.max_antecedent_size > 6)
        throw config_error("oracle guard rail: max antecedent size " +
                           std::to_string(cfg.max_antecedent_size) + " exceeds the limit of 6");

    OracleResult result;
    const RuleOrder order{cfg.measure->increasing()};
    RuleCollector collector(cfg.goal, order);
    const std::vector<ConsequentLiteral> consequents = consequent_universe(ds, cfg);

    detail::OracleWalker walker{ds, cfg, consequents, collector, result.stats, attrs, {}, {}};
    walker.row_stack.assign(static_cast<std::size_t>(cfg.max_antecedent_size) + 1,
                            RowSet(ds.row_count()));
    const RowSet all_rows(ds.row_count(), true);
    for (std::size_t i = 0; i < attrs.size(); ++i) walker.visit(all_rows, i, 1);

    result.rules = std::move(collector).finish();
    result.stats.rules_emitted = static_cast<std::int64_t>(result.rules.size());
    return result;
}

/// Set-compares miner output against oracle output produced from identical
/// data and configuration. Scores are compared at 1e-9 on the intersection.
template <typename MinerResultT>
inline ComparisonReport compare(const MinerResultT& miner, const OracleResult& oracle) {
    ComparisonReport report;
    report.miner_nodes = miner.stats.nodes_expanded;
    report.oracle_nodes = oracle.stats.nodes_expanded;

    using Key = std::pair<std::vector<std::uint32_t>, std::pair<std::uint32_t, std::uint8_t>>;
    auto key = [](const Rule& r) {
        return Key{r.antecedent, {r.consequent.attribute, r.consequent.value}};
    };
    std::map<Key, const Rule*> miner_rules;
    for (const Rule& r : miner.rules) miner_rules.emplace(key(r), &r);

    for (const Rule& r : oracle.rules) {
        auto it = miner_rules.find(key(r));
        if (it == miner_rules.end()) {
            report.missing.push_back(r);
            continue;
        }
        if (std::abs(it->second->score - r.score) > 1e-9)
            report.mismatches.push_back({r, it->second->score});
        miner_rules.erase(it);
    }
    for (const auto& [k, rule] : miner_rules) report.spurious.push_back(*rule);
    return report;
}

}  // namespace depmine
