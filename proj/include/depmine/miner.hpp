#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

#include "depmine/bounds.hpp"
#include "depmine/dataset.hpp"
#include "depmine/search.hpp"

namespace depmine {

// Branch-and-bound enumeration of dependency rules.
//
// Antecedents are enumerated over a canonical prefix tree in ascending
// attribute order, so every set is visited exactly once. Each node caches its
// row set and per-consequent joint counts; the subtree bounds are then pure
// arithmetic. A node proposed by its parent is either expanded (its rules
// scored, its children proposed) or pruned by a bound before evaluation, so
// nodes_expanded + nodes_pruned_by_bound is exactly the number of proposed
// nodes. Empty nodes (n_x = 0) count as bound-pruned: the score supremum over
// an empty rule set fails every threshold.
//
// With threads > 1, first-level subtrees are partitioned round-robin across
// workers. Workers share nothing but the immutable context; each keeps a local
// collector whose threshold only sees its own finds, and the final merge is
// exact under the total rule order. Results are therefore deterministic for
// any fixed thread count, and the rule list is identical across thread counts
// (node statistics may differ between thread counts, never between runs).

struct MiningResult {
    std::vector<Rule> rules;
    SearchStats stats;
};

/// Consequent literals that survive the consequent-supremum check at the given
/// threshold: a literal is dropped when no active polarity can reach the
/// threshold even at its supremum point.
inline std::vector<Literal> prune_consequents(const Dataset& ds, const SearchConfig& cfg,
                                              double current_threshold) {
    validate(cfg);
    const GoodnessMeasure& m = *cfg.measure;
    std::vector<Literal> out;
    for (const ConsequentLiteral& c : consequent_universe(ds, cfg)) {
        bool keep = false;
        for (Polarity pol : {Polarity::positive, Polarity::negative}) {
            if (!polarity_active(cfg.mode, pol) || !m.supports(pol)) continue;
            const double sup = consequent_sup(m, c.n_a, ds.row_count(), pol);
            if (score_passes_threshold(sup, current_threshold, m.increasing())) keep = true;
        }
        if (keep) out.push_back(c.lit);
    }
    return out;
}

inline std::vector<Literal> prune_consequents(const Dataset& ds, const SearchConfig& cfg) {
    validate(cfg);
    const double tau = cfg.goal.kind == GoalKind::threshold
                           ? cfg.goal.min_value
                           : inactive_threshold(cfg.measure->increasing());
    return prune_consequents(ds, cfg, tau);
}

namespace detail {

struct MinerConsequent {
    Literal lit;
    count_t n_a = 0;
    const RowSet* rows = nullptr;  // positive tidset of the attribute
    bool check_positive = false;   // mode-active and supported
    bool check_negative = false;
};

struct MinerContext {
    const Dataset* ds = nullptr;
    const SearchConfig* cfg = nullptr;
    RuleOrder order;
    count_t n = 0;
    std::vector<std::uint32_t> attrs;  // mineable, ascending
    std::vector<MinerConsequent> consequents;
};

class SubtreeWalker {
public:
    SubtreeWalker(const MinerContext& ctx, RuleCollector& collector, SearchStats& stats)
        : ctx_(ctx), col_(collector), stats_(stats) {
        const int depth_cap = ctx.cfg->max_antecedent_size;
        row_stack_.assign(static_cast<std::size_t>(depth_cap) + 1, RowSet(ctx.n));
        joint_stack_.assign(static_cast<std::size_t>(depth_cap) + 1,
                            std::vector<count_t>(ctx.consequents.size(), 0));
        prefix_.reserve(static_cast<std::size_t>(depth_cap));
        all_rows_ = RowSet(ctx.n, true);
    }

    void run_first_level(std::size_t attr_index) { visit(all_rows_, attr_index, 1); }

private:
    const GoodnessMeasure& measure() const { return *ctx_.cfg->measure; }

    bool in_prefix(std::uint32_t attr) const {
        return std::find(prefix_.begin(), prefix_.end(), attr) != prefix_.end();
    }

    bool bound_passes(double bound, double tau) const {
        return score_passes_threshold(bound, tau, ctx_.order.increasing);
    }

    /// Any consequent still usable below this node whose support-only bound
    /// can reach the threshold?
    bool unknown_xa_gate(count_t n_x, std::uint32_t node_attr, double tau) const {
        for (const auto& c : ctx_.consequents) {
            if (c.lit.attribute == node_attr || in_prefix(c.lit.attribute)) continue;
            if (c.check_positive &&
                bound_passes(subtree_bound_unknown_xa(measure(), n_x, c.n_a, ctx_.n,
                                                      Polarity::positive),
                             tau))
                return true;
            if (c.check_negative &&
                bound_passes(subtree_bound_unknown_xa(measure(), n_x, c.n_a, ctx_.n,
                                                      Polarity::negative),
                             tau))
                return true;
        }
        return false;
    }

    /// Any consequent whose specialization bound from this node's own counts
    /// can reach the threshold?
    bool known_xa_gate(count_t n_x, const std::vector<count_t>& joint, double tau) const {
        for (std::size_t ci = 0; ci < ctx_.consequents.size(); ++ci) {
            const auto& c = ctx_.consequents[ci];
            if (in_prefix(c.lit.attribute)) continue;
            const count_t n_xa = c.lit.value == 1 ? joint[ci] : n_x - joint[ci];
            if (c.check_positive &&
                bound_passes(subtree_bound_known_xa(measure(), n_x, n_xa, c.n_a, ctx_.n,
                                                    Polarity::positive),
                             tau))
                return true;
            if (c.check_negative &&
                bound_passes(subtree_bound_known_xa(measure(), n_x, n_xa, c.n_a, ctx_.n,
                                                    Polarity::negative),
                             tau))
                return true;
        }
        return false;
    }

    void visit(const RowSet& parent_rows, std::size_t attr_index, int depth) {
        const std::uint32_t attr = ctx_.attrs[attr_index];
        RowSet& rows = row_stack_[static_cast<std::size_t>(depth)];
        rows.assign_and(parent_rows, ctx_.ds->row_set(attr));
        const count_t n_x = rows.count();
        if (n_x == 0 || !unknown_xa_gate(n_x, attr, col_.threshold())) {
            ++stats_.nodes_pruned_by_bound;
            return;
        }
        ++stats_.nodes_expanded;
        prefix_.push_back(attr);

        auto& joint = joint_stack_[static_cast<std::size_t>(depth)];
        for (std::size_t ci = 0; ci < ctx_.consequents.size(); ++ci)
            joint[ci] = RowSet::and_count(rows, *ctx_.consequents[ci].rows);

        if (n_x < ctx_.n) {  // n_x == n cannot head a rule but may still expand
            for (std::size_t ci = 0; ci < ctx_.consequents.size(); ++ci) {
                const auto& c = ctx_.consequents[ci];
                if (in_prefix(c.lit.attribute)) continue;
                const count_t n_xa = c.lit.value == 1 ? joint[ci] : n_x - joint[ci];
                const FrequencyQuad q{n_x, n_xa, c.n_a, ctx_.n};
                const std::int64_t num = leverage_numerator(q);
                if (num > 0 ? !c.check_positive : (num < 0 ? !c.check_negative : true)) continue;
                col_.offer(Rule{prefix_, c.lit, q, measure().value(q)});
            }
        }

        if (depth < ctx_.cfg->max_antecedent_size && attr_index + 1 < ctx_.attrs.size()) {
            const std::size_t n_candidates = ctx_.attrs.size() - attr_index - 1;
            if (known_xa_gate(n_x, joint, col_.threshold())) {
                for (std::size_t j = attr_index + 1; j < ctx_.attrs.size(); ++j)
                    visit(rows, j, depth + 1);
            } else {
                stats_.nodes_pruned_by_bound += static_cast<std::int64_t>(n_candidates);
            }
        }
        prefix_.pop_back();
    }

    const MinerContext& ctx_;
    RuleCollector& col_;
    SearchStats& stats_;
    std::vector<std::uint32_t> prefix_;
    std::vector<RowSet> row_stack_;
    std::vector<std::vector<count_t>> joint_stack_;
    RowSet all_rows_;
};

inline MinerContext make_context(const Dataset& ds, const SearchConfig& cfg,
                                 SearchStats& stats) {
    MinerContext ctx;
    ctx.ds = &ds;
    ctx.cfg = &cfg;
    ctx.order = RuleOrder{cfg.measure->increasing()};
    ctx.n = ds.row_count();
    ctx.attrs = ds.mineable_attributes();

    const GoodnessMeasure& m = *cfg.measure;
    const double tau0 = cfg.goal.kind == GoalKind::threshold
                            ? cfg.goal.min_value
                            : inactive_threshold(m.increasing());
    for (const ConsequentLiteral& c : consequent_universe(ds, cfg)) {
        MinerConsequent mc;
        mc.lit = c.lit;
        mc.n_a = c.n_a;
        mc.rows = &ds.row_set(c.lit.attribute);
        bool keep = false;
        for (Polarity pol : {Polarity::positive, Polarity::negative}) {
            if (!polarity_active(cfg.mode, pol) || !m.supports(pol)) continue;
            const double sup = consequent_sup(m, c.n_a, ctx.n, pol);
            const bool ok = score_passes_threshold(sup, tau0, m.increasing());
            if (pol == Polarity::positive) mc.check_positive = ok;
            else mc.check_negative = ok;
            keep = keep || ok;
        }
        if (keep) ctx.consequents.push_back(mc);
        else ++stats.consequents_pruned;
    }
    return ctx;
}

}  // namespace detail

inline MiningResult mine(const Dataset& ds, const SearchConfig& cfg) {
    validate(cfg);
    if (ds.row_count() <= 0) throw config_error("dataset has no rows");
    if (ds.mineable_attributes().size() < 2)
        throw config_error("dataset needs at least two attributes with 0 < support < n");

    MiningResult result;
    detail::MinerContext ctx = detail::make_context(ds, cfg, result.stats);
    if (ctx.consequents.empty()) return result;

    const std::size_t first_level = ctx.attrs.size();
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), std::max<std::size_t>(first_level, 1));

    std::vector<std::vector<Rule>> parts(workers);
    std::vector<SearchStats> worker_stats(workers);

    auto run_worker = [&](std::size_t w) {
        RuleCollector collector(cfg.goal, ctx.order);
        detail::SubtreeWalker walker(ctx, collector, worker_stats[w]);
        for (std::size_t i = w; i < first_level; i += workers) walker.run_first_level(i);
        parts[w] = std::move(collector).finish();
    };

    if (workers <= 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_worker, w);
        for (auto& t : pool) t.join();
    }

    result.rules = merge_sorted_results(std::move(parts), cfg.goal, ctx.order);
    for (const auto& ws : worker_stats) {
        result.stats.nodes_expanded += ws.nodes_expanded;
        result.stats.nodes_pruned_by_bound += ws.nodes_pruned_by_bound;
    }
    result.stats.rules_emitted = static_cast<std::int64_t>(result.rules.size());
    return result;
}

}  // namespace depmine
