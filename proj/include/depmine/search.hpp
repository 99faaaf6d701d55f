#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "depmine/dataset.hpp"
#include "depmine/errors.hpp"
#include "depmine/frequency.hpp"
#include "depmine/measures.hpp"

namespace depmine {

enum class PolarityMode { positive, negative, both };

inline bool polarity_active(PolarityMode mode, Polarity p) {
    switch (mode) {
        case PolarityMode::positive: return p == Polarity::positive;
        case PolarityMode::negative: return p == Polarity::negative;
        case PolarityMode::both: return p != Polarity::independent;
    }
    return false;
}

enum class GoalKind { threshold, top_k };

struct SearchGoal {
    GoalKind kind = GoalKind::threshold;
    double min_value = 0.0;  ///< threshold goal; a max for decreasing measures
    std::int64_t k = 0;

    static SearchGoal threshold(double v) { return {GoalKind::threshold, v, 0}; }
    static SearchGoal top_k(std::int64_t k) { return {GoalKind::top_k, 0.0, k}; }
};

struct SearchConfig {
    const GoodnessMeasure* measure = nullptr;
    PolarityMode mode = PolarityMode::positive;
    SearchGoal goal = SearchGoal::threshold(0.0);
    int max_antecedent_size = 4;
    std::optional<std::vector<Literal>> consequent_filter;
    bool allow_negated_consequents = false;
    int threads = 1;  ///< miner only; result bytes do not depend on it
};

inline void validate(const SearchConfig& cfg) {
    if (cfg.measure == nullptr) throw config_error("no measure configured");
    if (cfg.mode != PolarityMode::positive && !cfg.measure->supports(Polarity::negative))
        throw unsupported_polarity_error("measure '" + cfg.measure->descriptor.name +
                                         "' does not support negative dependencies");
    if (cfg.goal.kind == GoalKind::top_k && cfg.goal.k < 1)
        throw config_error("top-k goal requires k >= 1");
    if (cfg.max_antecedent_size < 1) throw config_error("max antecedent size must be >= 1");
    if (cfg.threads < 1) throw config_error("thread count must be >= 1");
}

struct SearchStats {
    std::int64_t nodes_expanded = 0;
    std::int64_t nodes_pruned_by_bound = 0;
    std::int64_t consequents_pruned = 0;
    std::int64_t rules_emitted = 0;
};

/// Strict total "better-than" order on rules: score first (direction-aware),
/// then smaller antecedent, lexicographic antecedent, consequent attribute,
/// positive literal before negated. Used for output order and for resolving
/// top-k ties deterministically.
struct RuleOrder {
    bool increasing = true;

    bool operator()(const Rule& a, const Rule& b) const {
        if (a.score != b.score) return increasing ? a.score > b.score : a.score < b.score;
        if (a.antecedent.size() != b.antecedent.size())
            return a.antecedent.size() < b.antecedent.size();
        if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
        if (a.consequent.attribute != b.consequent.attribute)
            return a.consequent.attribute < b.consequent.attribute;
        return a.consequent.value > b.consequent.value;
    }
};

inline bool score_passes_threshold(double score, double threshold, bool increasing) {
    return increasing ? score >= threshold : score <= threshold;
}

/// Threshold value that nothing beats yet (top-k pool not full).
inline double inactive_threshold(bool increasing) {
    return increasing ? -std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::infinity();
}

/// A consequent literal plus its count, the unit the search iterates over.
struct ConsequentLiteral {
    Literal lit;
    count_t n_a = 0;
};

/// The consequent literals a configuration asks for: every mineable attribute
/// as A=1 (plus A=0 when negated consequents are enabled), or exactly the
/// configured filter list. Filter entries must name mineable attributes.
inline std::vector<ConsequentLiteral> consequent_universe(const Dataset& ds,
                                                          const SearchConfig& cfg) {
    std::vector<ConsequentLiteral> out;
    const count_t n = ds.row_count();
    auto push = [&](Literal lit) {
        if (lit.attribute >= ds.attribute_count())
            throw lookup_error("attribute id " + std::to_string(lit.attribute) + " out of range");
        if (!ds.mineable(lit.attribute))
            throw config_error("consequent attribute '" + ds.name(lit.attribute) +
                               "' holds on every row or on no row");
        for (const auto& c : out)
            if (c.lit == lit) return;  // dedupe
        const count_t sup = ds.support(lit.attribute);
        out.push_back({lit, lit.value == 1 ? sup : n - sup});
    };
    if (cfg.consequent_filter) {
        for (Literal lit : *cfg.consequent_filter) push(lit);
    } else {
        for (std::uint32_t a : ds.mineable_attributes()) {
            push({a, 1});
            if (cfg.allow_negated_consequents) push({a, 0});
        }
    }
    return out;
}

/// Collects candidate rules under either goal. In threshold mode it keeps
/// everything passing the fixed threshold; in top-k mode it keeps the k best
/// under the total order, and threshold() is the rising k-th best score.
class RuleCollector {
public:
    RuleCollector(SearchGoal goal, RuleOrder order) : goal_(goal), better_(order) {
        if (goal_.kind == GoalKind::top_k) pool_.reserve(static_cast<std::size_t>(goal_.k) + 1);
    }

    void offer(Rule&& r) {
        if (goal_.kind == GoalKind::threshold) {
            if (score_passes_threshold(r.score, goal_.min_value, better_.increasing))
                pool_.push_back(std::move(r));
            return;
        }
        const auto worst_on_top = [this](const Rule& a, const Rule& b) { return better_(a, b); };
        if (pool_.size() < static_cast<std::size_t>(goal_.k)) {
            pool_.push_back(std::move(r));
            std::push_heap(pool_.begin(), pool_.end(), worst_on_top);
            return;
        }
        if (better_(r, pool_.front())) {
            std::pop_heap(pool_.begin(), pool_.end(), worst_on_top);
            pool_.back() = std::move(r);
            std::push_heap(pool_.begin(), pool_.end(), worst_on_top);
        }
    }

    /// Current pruning threshold: fixed in threshold mode; in top-k mode the
    /// k-th best score so far, inactive until k rules have been seen.
    double threshold() const {
        if (goal_.kind == GoalKind::threshold) return goal_.min_value;
        if (pool_.size() < static_cast<std::size_t>(goal_.k))
            return inactive_threshold(better_.increasing);
        return pool_.front().score;
    }

    /// Sorted best-first result. The collector is spent afterwards.
    std::vector<Rule> finish() && {
        std::sort(pool_.begin(), pool_.end(), better_);
        return std::move(pool_);
    }

    std::size_t size() const { return pool_.size(); }

private:
    SearchGoal goal_;
    RuleOrder better_;
    std::vector<Rule> pool_;
};

/// Merge per-worker result lists into the final sorted output. Exact for both
/// goals: every rule of the true top-k survives in its worker's pool, so
/// sorting the union and truncating reproduces the single-pool result.
inline std::vector<Rule> merge_sorted_results(std::vector<std::vector<Rule>> parts,
                                              const SearchGoal& goal, RuleOrder order) {
    std::vector<Rule> all;
    for (auto& p : parts) {
        all.insert(all.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    }
    std::sort(all.begin(), all.end(), order);
    if (goal.kind == GoalKind::top_k && all.size() > static_cast<std::size_t>(goal.k))
        all.resize(static_cast<std::size_t>(goal.k));
    return all;
}

}  // namespace depmine
