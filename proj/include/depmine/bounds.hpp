#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include "depmine/frequency.hpp"
#include "depmine/measures.hpp"

namespace depmine {

// Upper bounds on rule scores over unexplored parts of the search space.
//
// For a fixed consequent count m_a and data size n, every measure that passes
// the axiom verifier attains its best value over the reachable region at the
// same corner points: (m_a, m_a) for positive dependencies, (n - m_a, 0) for
// negative ones. Knowing a rule's own counts shrinks the reachable region of
// its specializations and moves those corners inward, which is what makes the
// bounds useful for pruning.
//
// For decreasing measures the same points give lower bounds; callers reverse
// the comparisons (direction dispatch), the formulas are shared.

/// Which bound is being asked for. `antecedent_rule` and `subtree_unknown_xa`
/// share a formula: both substitute the best reachable joint count given only
/// the antecedent support; the former reads it as a bound on the one rule, the
/// latter as a bound on the whole subtree.
struct BoundKind {
    enum class Kind { consequent_sup, antecedent_rule, subtree_known_xa, subtree_unknown_xa };
    Kind kind;
    Polarity polarity;
};

namespace detail {

inline void require_bound_polarity(const GoodnessMeasure& m, Polarity pol) {
    if (pol == Polarity::independent)
        throw config_error("bound polarity must be positive or negative");
    if (!m.supports(pol))
        throw unsupported_polarity_error("measure '" + m.descriptor.name +
                                         "' does not support negative dependencies");
}

inline void require_counts(bool ok, const std::string& what) {
    if (!ok) throw std::domain_error("bound precondition violated: " + what);
}

}  // namespace detail

/// Best achievable score for any rule with consequent count m_a: the value at
/// (m_a, m_a) for positive polarity, at (n - m_a, 0) for negative.
inline double consequent_sup(const GoodnessMeasure& m, count_t m_a, count_t n,
                             Polarity pol) {
    detail::require_bound_polarity(m, pol);
    detail::require_counts(n > 0 && m_a > 0 && m_a < n, "0 < m_a < n");
    if (pol == Polarity::positive) return m.value(FrequencyQuad{m_a, m_a, m_a, n});
    return m.value(FrequencyQuad{n - m_a, 0, m_a, n});
}

/// Bound on every specialization XQ -> A=a of a rule whose antecedent counts
/// (m_x, m_xa) are known. Positive: value at (m_xa, m_xa). Negative: value at
/// (m_x - m_xa, 0). When the relevant corner count is 0, no specialization of
/// that polarity exists at all and the bound collapses to the independence
/// value 0.
inline double subtree_bound_known_xa(const GoodnessMeasure& m, count_t m_x,
                                     count_t m_xa, count_t m_a, count_t n,
                                     Polarity pol) {
    detail::require_bound_polarity(m, pol);
    detail::require_counts(n > 0 && m_a > 0 && m_a < n, "0 < m_a < n");
    detail::require_counts(m_x > 0 && m_x <= n, "0 < m_x <= n");
    detail::require_counts(m_xa >= 0 && m_xa <= std::min(m_x, m_a) &&
                               m_xa >= m_x + m_a - n,
                           "m_xa within the reachable range");
    if (pol == Polarity::positive) {
        if (m_xa == 0) return 0.0;
        return m.value(FrequencyQuad{m_xa, m_xa, m_a, n});
    }
    const count_t u = m_x - m_xa;  // rows with antecedent but not consequent
    if (u == 0) return 0.0;
    return m.value(FrequencyQuad{u, 0, m_a, n});
}

/// Bound on a rule X -> A=a and all its specializations when only the
/// antecedent support m_x is known: substitute the best reachable joint count.
/// Positive: t = min(m_x, m_a) at (t, t). Negative: u = min(m_x, n - m_a) at
/// (u, 0).
inline double subtree_bound_unknown_xa(const GoodnessMeasure& m, count_t m_x,
                                       count_t m_a, count_t n, Polarity pol) {
    detail::require_bound_polarity(m, pol);
    detail::require_counts(n > 0 && m_a > 0 && m_a < n, "0 < m_a < n");
    detail::require_counts(m_x > 0 && m_x <= n, "0 < m_x <= n");
    if (pol == Polarity::positive) {
        const count_t t = std::min(m_x, m_a);
        return m.value(FrequencyQuad{t, t, m_a, n});
    }
    const count_t u = std::min(m_x, n - m_a);
    return m.value(FrequencyQuad{u, 0, m_a, n});
}

/// Counts for bound_value dispatch. m_x / m_xa may stay -1 when the kind does
/// not need them.
struct BoundQuery {
    count_t m_x = -1;
    count_t m_xa = -1;
    count_t m_a = 0;
    count_t n = 0;
};

inline double bound_value(const GoodnessMeasure& m, BoundKind kind,
                          const BoundQuery& q) {
    switch (kind.kind) {
        case BoundKind::Kind::consequent_sup:
            return consequent_sup(m, q.m_a, q.n, kind.polarity);
        case BoundKind::Kind::antecedent_rule:
        case BoundKind::Kind::subtree_unknown_xa:
            return subtree_bound_unknown_xa(m, q.m_x, q.m_a, q.n, kind.polarity);
        case BoundKind::Kind::subtree_known_xa:
            return subtree_bound_known_xa(m, q.m_x, q.m_xa, q.m_a, q.n, kind.polarity);
    }
    throw config_error("unknown bound kind");
}

inline std::string_view to_string(BoundKind::Kind k) {
    switch (k) {
        case BoundKind::Kind::consequent_sup: return "consequent_sup";
        case BoundKind::Kind::antecedent_rule: return "antecedent_rule";
        case BoundKind::Kind::subtree_known_xa: return "subtree_known_xa";
        case BoundKind::Kind::subtree_unknown_xa: return "subtree_unknown_xa";
    }
    return "?";
}

}  // namespace depmine
