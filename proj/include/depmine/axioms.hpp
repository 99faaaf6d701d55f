#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "depmine/errors.hpp"
#include "depmine/frequency.hpp"
#include "depmine/measures.hpp"

namespace depmine {

// Numeric certification of the monotonicity conditions the pruning bounds
// rely on, by exhaustive sweeps over the legal integer lattice for fixed
// (n, m_a):
//
//   (i)   minimum at the independence crossing (in leverage terms, delta = 0)
//   (ii)  monotone in delta on each side of independence (fixed n_x)
//   (iii) monotone in n_x on each side of independence (fixed n_xa)
//   (iv)  monotone along exact-confidence lines: increasing along
//         n_xa = cf*n_x when cf > m_a/n (part a), decreasing along
//         m_a - n_xa = cf*(n - n_x) when cf > m_a/n (part b)
//
// Only lattice points are realizable in data, so finite differences on the
// lattice are the ground truth here; no symbolic math. Independence crossings
// and confidence-line keys are decided in exact integer arithmetic, which
// makes every verdict deterministic across platforms. Monotonicity is
// enforced non-strictly with a relative tie tolerance of 1e-12; strict steps
// are recorded as a statistic, and ties where both values are zero are
// tracked separately (measures defined only for positive dependencies are
// constant 0 elsewhere). For decreasing measures every comparison is
// reversed.

enum class ConditionStatus { holds, holds_non_strictly, violated };

inline std::string_view to_string(ConditionStatus s) {
    switch (s) {
        case ConditionStatus::holds: return "holds";
        case ConditionStatus::holds_non_strictly: return "holds_non_strictly";
        case ConditionStatus::violated: return "violated";
    }
    return "?";
}

enum class AxiomCondition {
    minimum_at_independence,   // (i)
    leverage_monotonicity,     // (ii)
    antecedent_monotonicity,   // (iii)
    confidence_line_positive,  // (iv a)
    confidence_line_negative,  // (iv b)
};

inline std::string_view condition_id(AxiomCondition c) {
    switch (c) {
        case AxiomCondition::minimum_at_independence: return "i";
        case AxiomCondition::leverage_monotonicity: return "ii";
        case AxiomCondition::antecedent_monotonicity: return "iii";
        case AxiomCondition::confidence_line_positive: return "iv_a";
        case AxiomCondition::confidence_line_negative: return "iv_b";
    }
    return "?";
}

struct AxiomViolation {
    std::string condition;  // "i", "ii", "iii", "iv_a", "iv_b"
    count_t n, m_a;
    count_t n_x1, n_xa1;
    count_t n_x2, n_xa2;
    double v1, v2;
};

struct ConditionResult {
    std::int64_t strict_steps = 0;
    std::int64_t tied_steps = 0;
    std::int64_t tied_steps_at_zero = 0;
    std::int64_t violation_count = 0;

    ConditionStatus status() const {
        if (violation_count > 0) return ConditionStatus::violated;
        if (tied_steps > 0) return ConditionStatus::holds_non_strictly;
        return ConditionStatus::holds;
    }

    void merge(const ConditionResult& o) {
        strict_steps += o.strict_steps;
        tied_steps += o.tied_steps;
        tied_steps_at_zero += o.tied_steps_at_zero;
        violation_count += o.violation_count;
    }
};

namespace detail {

constexpr double kTieRelTol = 1e-12;
constexpr double kZeroEps = 1e-12;

inline double tie_tol(double a, double b) {
    return kTieRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Measure values over the legal lattice for one (n, m_a).
struct LatticeGrid {
    count_t n = 0, m_a = 0;
    int dir = 1;  // +1 increasing measure, -1 decreasing (comparisons flip)
    std::vector<count_t> lo;              // per n_x, first legal n_xa
    std::vector<std::vector<double>> val; // val[n_x - 1][n_xa - lo]

    count_t lo_of(count_t n_x) const { return lo[static_cast<std::size_t>(n_x - 1)]; }
    count_t hi_of(count_t n_x) const {
        return lo_of(n_x) +
               static_cast<count_t>(val[static_cast<std::size_t>(n_x - 1)].size()) - 1;
    }
    double at(count_t n_x, count_t n_xa) const {
        return val[static_cast<std::size_t>(n_x - 1)]
                  [static_cast<std::size_t>(n_xa - lo_of(n_x))];
    }
    /// sign of n*n_xa - n_x*m_a: dependency polarity at a lattice point
    int delta_sign(count_t n_x, count_t n_xa) const {
        const std::int64_t d = n * n_xa - n_x * m_a;
        return d > 0 ? 1 : (d < 0 ? -1 : 0);
    }
};

inline LatticeGrid build_grid(const GoodnessMeasure& m, count_t n, count_t m_a) {
    if (n < 2 || m_a <= 0 || m_a >= n)
        throw config_error("axiom sweep requires n >= 2 and 0 < m_a < n");
    LatticeGrid g;
    g.n = n;
    g.m_a = m_a;
    g.dir = m.increasing() ? 1 : -1;
    g.lo.resize(static_cast<std::size_t>(n - 1));
    g.val.resize(static_cast<std::size_t>(n - 1));
    for (count_t n_x = 1; n_x < n; ++n_x) {
        const count_t lo = std::max<count_t>(0, n_x + m_a - n);
        const count_t hi = std::min(n_x, m_a);
        g.lo[static_cast<std::size_t>(n_x - 1)] = lo;
        auto& row = g.val[static_cast<std::size_t>(n_x - 1)];
        row.reserve(static_cast<std::size_t>(hi - lo + 1));
        for (count_t n_xa = lo; n_xa <= hi; ++n_xa)
            row.push_back(m.value(FrequencyQuad{n_x, n_xa, m_a, n}));
    }
    return g;
}

struct StepSink {
    const LatticeGrid& grid;
    AxiomCondition condition;
    ConditionResult& result;
    std::vector<AxiomViolation>& violations;

    /// Check one lattice step. `required_up` says whether the (direction
    /// adjusted) value must not decrease from p1 to p2.
    void step(count_t n_x1, count_t n_xa1, count_t n_x2, count_t n_xa2, bool required_up) {
        const double v1 = grid.at(n_x1, n_xa1);
        const double v2 = grid.at(n_x2, n_xa2);
        const double gain = (grid.dir * (v2 - v1)) * (required_up ? 1.0 : -1.0);
        const double tol = tie_tol(v1, v2);
        if (gain > tol) {
            ++result.strict_steps;
        } else if (gain >= -tol) {
            ++result.tied_steps;
            if (std::abs(v1) <= kZeroEps && std::abs(v2) <= kZeroEps)
                ++result.tied_steps_at_zero;
        } else {
            ++result.violation_count;
            violations.push_back({std::string(condition_id(condition)), grid.n, grid.m_a,
                                  n_x1, n_xa1, n_x2, n_xa2, v1, v2});
        }
    }
};

/// Conditions (i) and (ii): for each fixed n_x, walk n_xa across its legal
/// range. Values must fall towards the independence crossing and rise after
/// it, with the minimum attained at the delta = 0 lattice point when one
/// exists, or at one of the two bracketing points otherwise.
inline void sweep_delta(const LatticeGrid& g, ConditionResult& minimum,
                        ConditionResult& monotonic,
                        std::vector<AxiomViolation>& violations) {
    StepSink mono{g, AxiomCondition::leverage_monotonicity, monotonic, violations};
    for (count_t n_x = 1; n_x < g.n; ++n_x) {
        const count_t lo = g.lo_of(n_x), hi = g.hi_of(n_x);
        for (count_t k = lo; k < hi; ++k) {
            const int s1 = g.delta_sign(n_x, k);
            const int s2 = g.delta_sign(n_x, k + 1);
            if (s2 <= 0) mono.step(n_x, k, n_x, k + 1, /*required_up=*/false);
            else if (s1 >= 0) mono.step(n_x, k, n_x, k + 1, /*required_up=*/true);
            // straddling pair: no constraint between the bracketing points
        }

        // (i): the minimum must sit at the independence crossing
        const bool exact = (n_x * g.m_a) % g.n == 0;
        const count_t k_floor = (n_x * g.m_a) / g.n;
        const count_t cand_lo = k_floor;
        const count_t cand_hi = exact ? k_floor : k_floor + 1;
        double cand_min = g.dir * g.at(n_x, cand_lo);
        count_t cand_arg = cand_lo;
        if (cand_hi != cand_lo && g.dir * g.at(n_x, cand_hi) < cand_min) {
            cand_min = g.dir * g.at(n_x, cand_hi);
            cand_arg = cand_hi;
        }
        bool tied_outside = false;
        for (count_t k = lo; k <= hi; ++k) {
            if (k == cand_lo || k == cand_hi) continue;
            const double v = g.dir * g.at(n_x, k);
            const double tol = tie_tol(g.at(n_x, k), g.at(n_x, cand_arg));
            if (v < cand_min - tol) {
                ++minimum.violation_count;
                violations.push_back({std::string(condition_id(AxiomCondition::minimum_at_independence)),
                                      g.n, g.m_a, n_x, k, n_x, cand_arg, g.at(n_x, k),
                                      g.at(n_x, cand_arg)});
            } else if (v <= cand_min + tol) {
                tied_outside = true;
                if (std::abs(g.at(n_x, k)) <= kZeroEps &&
                    std::abs(g.at(n_x, cand_arg)) <= kZeroEps)
                    ++minimum.tied_steps_at_zero;
            }
        }
        if (tied_outside) ++minimum.tied_steps;
        else ++minimum.strict_steps;
    }
}

/// Condition (iii): for each fixed n_xa, walk n_x across its legal range.
/// Values must fall while the dependency is positive and rise once it turns
/// negative. Positive-only measures are checked on the positive side only.
inline void sweep_antecedent(const GoodnessMeasure& m, const LatticeGrid& g,
                             ConditionResult& result,
                             std::vector<AxiomViolation>& violations) {
    const bool positive_only = m.descriptor.polarity_support == PolaritySupport::positive_only;
    StepSink sink{g, AxiomCondition::antecedent_monotonicity, result, violations};
    for (count_t n_xa = 0; n_xa <= g.m_a; ++n_xa) {
        const count_t x_lo = std::max<count_t>(1, n_xa);
        const count_t x_hi = std::min(g.n - 1, n_xa + g.n - g.m_a);
        for (count_t n_x = x_lo; n_x < x_hi; ++n_x) {
            const int s1 = g.delta_sign(n_x, n_xa);
            const int s2 = g.delta_sign(n_x + 1, n_xa);  // delta falls as n_x grows
            if (s2 >= 0) sink.step(n_x, n_xa, n_x + 1, n_xa, /*required_up=*/false);
            else if (s1 <= 0 && !positive_only)
                sink.step(n_x, n_xa, n_x + 1, n_xa, /*required_up=*/true);
        }
    }
}

/// Condition (iv): group lattice points by exact rational confidence keys and
/// check monotonicity in n_x within each group. Keys and the side test are
/// exact integer comparisons; floating division never decides membership.
inline void sweep_confidence_lines(const GoodnessMeasure& m, const LatticeGrid& g,
                                   ConditionResult& part_a, ConditionResult& part_b,
                                   std::int64_t& probe_steps, std::int64_t& probe_wrong,
                                   std::vector<AxiomViolation>& violations) {
    using Key = std::pair<count_t, count_t>;
    struct Point {
        count_t n_x, n_xa;
    };
    std::map<Key, std::vector<Point>> groups_a;  // n_xa : n_x, reduced
    std::map<Key, std::vector<Point>> groups_b;  // (m_a - n_xa) : (n - n_x), reduced
    for (count_t n_x = 1; n_x < g.n; ++n_x) {
        for (count_t n_xa = g.lo_of(n_x); n_xa <= g.hi_of(n_x); ++n_xa) {
            const count_t ga = std::gcd(n_xa, n_x);
            groups_a[{n_xa / ga, n_x / ga}].push_back({n_x, n_xa});
            const count_t num_b = g.m_a - n_xa, den_b = g.n - n_x;
            const count_t gb = std::gcd(num_b, den_b);
            groups_b[{num_b / gb, den_b / gb}].push_back({n_x, n_xa});
        }
    }
    const bool probing = m.descriptor.polarity_support == PolaritySupport::both;

    auto walk = [&](const std::vector<Point>& pts, bool required_up, bool is_probe,
                    ConditionResult& result, AxiomCondition cond) {
        StepSink sink{g, cond, result, violations};
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (!is_probe) {
                sink.step(pts[i].n_x, pts[i].n_xa, pts[i + 1].n_x, pts[i + 1].n_xa, required_up);
                continue;
            }
            const double v1 = g.at(pts[i].n_x, pts[i].n_xa);
            const double v2 = g.at(pts[i + 1].n_x, pts[i + 1].n_xa);
            const double gain = (g.dir * (v2 - v1)) * (required_up ? 1.0 : -1.0);
            ++probe_steps;
            if (gain < -tie_tol(v1, v2)) ++probe_wrong;
        }
    };

    for (const auto& [key, pts] : groups_a) {
        // confidence vs m_a/n, cross-multiplied on the reduced key
        const std::int64_t lhs = g.n * key.first, rhs = g.m_a * key.second;
        if (lhs > rhs)
            walk(pts, /*required_up=*/true, false, part_a, AxiomCondition::confidence_line_positive);
        else if (lhs < rhs && probing)
            walk(pts, /*required_up=*/true, true, part_a, AxiomCondition::confidence_line_positive);
    }
    for (const auto& [key, pts] : groups_b) {
        const std::int64_t lhs = g.n * key.first, rhs = g.m_a * key.second;
        if (lhs > rhs)
            walk(pts, /*required_up=*/false, false, part_b, AxiomCondition::confidence_line_negative);
        else if (lhs < rhs && probing)
            walk(pts, /*required_up=*/false, true, part_b, AxiomCondition::confidence_line_negative);
    }
}

}  // namespace detail

struct DeltaAxiomCheck {
    ConditionResult minimum_at_independence;  // (i)
    ConditionResult leverage_monotonicity;    // (ii)
    std::vector<AxiomViolation> violations;
};

inline DeltaAxiomCheck check_minimum_and_delta_monotonicity(const GoodnessMeasure& m,
                                                            count_t n, count_t m_a) {
    const detail::LatticeGrid g = detail::build_grid(m, n, m_a);
    DeltaAxiomCheck out;
    detail::sweep_delta(g, out.minimum_at_independence, out.leverage_monotonicity,
                        out.violations);
    return out;
}

struct AntecedentAxiomCheck {
    ConditionResult result;  // (iii)
    std::vector<AxiomViolation> violations;
};

inline AntecedentAxiomCheck check_nx_monotonicity(const GoodnessMeasure& m, count_t n,
                                                  count_t m_a) {
    const detail::LatticeGrid g = detail::build_grid(m, n, m_a);
    AntecedentAxiomCheck out;
    detail::sweep_antecedent(m, g, out.result, out.violations);
    return out;
}

struct ConfidenceLineAxiomCheck {
    ConditionResult part_a;  // (iv a)
    ConditionResult part_b;  // (iv b)
    /// Informational probe of the opposite-polarity side of (iv); wrong-way
    /// steps are counted but are never treated as violations.
    std::int64_t probe_steps = 0;
    std::int64_t probe_wrong = 0;
    std::vector<AxiomViolation> violations;
};

inline ConfidenceLineAxiomCheck check_confidence_line_monotonicity(const GoodnessMeasure& m,
                                                                   count_t n, count_t m_a) {
    const detail::LatticeGrid g = detail::build_grid(m, n, m_a);
    ConfidenceLineAxiomCheck out;
    detail::sweep_confidence_lines(m, g, out.part_a, out.part_b, out.probe_steps,
                                   out.probe_wrong, out.violations);
    return out;
}

struct AxiomGridResult {
    count_t n, m_a;
    ConditionResult minimum_at_independence;
    ConditionResult leverage_monotonicity;
    ConditionResult antecedent_monotonicity;
    ConditionResult confidence_line_positive;
    ConditionResult confidence_line_negative;

    const ConditionResult& condition(AxiomCondition c) const {
        switch (c) {
            case AxiomCondition::minimum_at_independence: return minimum_at_independence;
            case AxiomCondition::leverage_monotonicity: return leverage_monotonicity;
            case AxiomCondition::antecedent_monotonicity: return antecedent_monotonicity;
            case AxiomCondition::confidence_line_positive: return confidence_line_positive;
            case AxiomCondition::confidence_line_negative: return confidence_line_negative;
        }
        throw config_error("unknown axiom condition");
    }
};

struct AxiomReport {
    std::string measure_name;
    std::vector<AxiomGridResult> grids;  // sorted by (n, m_a)
    std::vector<AxiomViolation> violations;  // stored up to a cap
    std::int64_t total_violations = 0;
    std::int64_t probe_steps = 0;
    std::int64_t probe_wrong = 0;

    static constexpr std::size_t kMaxStoredViolations = 1000;

    bool has_violations() const { return total_violations > 0; }

    ConditionResult aggregate(AxiomCondition c) const {
        ConditionResult out;
        for (const auto& grid : grids) out.merge(grid.condition(c));
        return out;
    }
};

/// Runs all sweeps over the requested (n, m_a) pairs. When no m_a list is
/// given, every 0 < m_a < n is swept. Sweeps are O(n^2) points with O(n)
/// walks, so n values above the cap are refused.
inline AxiomReport verify_measure(const GoodnessMeasure& m, std::vector<count_t> n_values,
                                  std::optional<std::vector<count_t>> m_a_values = std::nullopt,
                                  count_t n_cap = 200) {
    if (n_values.empty()) throw config_error("no n values to sweep");
    std::sort(n_values.begin(), n_values.end());
    n_values.erase(std::unique(n_values.begin(), n_values.end()), n_values.end());
    for (count_t n : n_values) {
        if (n < 2) throw config_error("axiom sweep requires n >= 2");
        if (n > n_cap)
            throw config_error("n = " + std::to_string(n) + " exceeds the sweep cap of " +
                               std::to_string(n_cap));
    }
    std::optional<std::vector<count_t>> mas = std::move(m_a_values);
    if (mas) {
        std::sort(mas->begin(), mas->end());
        mas->erase(std::unique(mas->begin(), mas->end()), mas->end());
    }

    AxiomReport report;
    report.measure_name = m.descriptor.name;
    auto absorb = [&report](std::vector<AxiomViolation>&& vs) {
        report.total_violations += static_cast<std::int64_t>(vs.size());
        for (auto& v : vs) {
            if (report.violations.size() >= AxiomReport::kMaxStoredViolations) break;
            report.violations.push_back(std::move(v));
        }
    };

    for (count_t n : n_values) {
        std::vector<count_t> row_mas;
        if (mas) {
            for (count_t v : *mas)
                if (v > 0 && v < n) row_mas.push_back(v);
        } else {
            for (count_t v = 1; v < n; ++v) row_mas.push_back(v);
        }
        for (count_t m_a : row_mas) {
            const detail::LatticeGrid g = detail::build_grid(m, n, m_a);
            AxiomGridResult grid{n, m_a, {}, {}, {}, {}, {}};
            std::vector<AxiomViolation> vs;
            detail::sweep_delta(g, grid.minimum_at_independence, grid.leverage_monotonicity, vs);
            detail::sweep_antecedent(m, g, grid.antecedent_monotonicity, vs);
            detail::sweep_confidence_lines(m, g, grid.confidence_line_positive,
                                           grid.confidence_line_negative, report.probe_steps,
                                           report.probe_wrong, vs);
            absorb(std::move(vs));
            report.grids.push_back(grid);
        }
    }
    return report;
}

inline AxiomReport verify_measure(std::string_view name, std::vector<count_t> n_values,
                                  std::optional<std::vector<count_t>> m_a_values = std::nullopt,
                                  count_t n_cap = 200) {
    return verify_measure(find_measure(name), std::move(n_values), std::move(m_a_values), n_cap);
}

}  // namespace depmine
