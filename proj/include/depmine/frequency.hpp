#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "depmine/errors.hpp"

namespace depmine {

using count_t = std::int64_t;

/// The four absolute counts that fix a rule's 2x2 contingency situation.
///
/// A quad is "legal" when some dataset of n rows can actually produce it for a
/// non-trivial rule: the antecedent and the consequent must each hold on some
/// but not all rows, and the joint count must fit the marginals. Degenerate
/// inputs (n_x or n_a equal to 0 or n) are rejected rather than scored.
struct FrequencyQuad {
    count_t n_x;   ///< rows satisfying the antecedent
    count_t n_xa;  ///< rows satisfying antecedent and consequent literal
    count_t n_a;   ///< rows satisfying the consequent literal
    count_t n;     ///< total rows

    friend bool operator==(const FrequencyQuad&, const FrequencyQuad&) = default;
};

/// n*n_xa - n_x*n_a in exact integer arithmetic. Its sign decides dependency
/// polarity; all sign tests go through this, never through floating point.
inline std::int64_t leverage_numerator(const FrequencyQuad& q) noexcept {
    return q.n * q.n_xa - q.n_x * q.n_a;
}

inline bool is_legal(const FrequencyQuad& q) noexcept {
    if (q.n <= 0) return false;
    if (q.n_x <= 0 || q.n_x >= q.n) return false;
    if (q.n_a <= 0 || q.n_a >= q.n) return false;
    const count_t lo = std::max<count_t>(0, q.n_x + q.n_a - q.n);
    const count_t hi = std::min(q.n_x, q.n_a);
    return q.n_xa >= lo && q.n_xa <= hi;
}

inline std::string to_string(const FrequencyQuad& q) {
    return "(" + std::to_string(q.n_x) + ", " + std::to_string(q.n_xa) + ", " +
           std::to_string(q.n_a) + ", " + std::to_string(q.n) + ")";
}

inline void require_legal(const FrequencyQuad& q) {
    if (!is_legal(q)) throw std::domain_error("illegal frequency quad " + to_string(q));
}

/// leverage = P(XA) - P(X)P(A), computed as one exact integer divided by n^2.
inline double leverage(const FrequencyQuad& q) {
    require_legal(q);
    return static_cast<double>(leverage_numerator(q)) /
           (static_cast<double>(q.n) * static_cast<double>(q.n));
}

/// confidence = P(A|X).
inline double confidence(const FrequencyQuad& q) {
    require_legal(q);
    return static_cast<double>(q.n_xa) / static_cast<double>(q.n_x);
}

enum class Polarity { negative = -1, independent = 0, positive = 1 };

inline Polarity polarity(const FrequencyQuad& q) {
    require_legal(q);
    const std::int64_t num = leverage_numerator(q);
    if (num > 0) return Polarity::positive;
    if (num < 0) return Polarity::negative;
    return Polarity::independent;
}

inline std::string_view to_string(Polarity p) {
    switch (p) {
        case Polarity::positive: return "positive";
        case Polarity::negative: return "negative";
        case Polarity::independent: return "independent";
    }
    return "?";
}

/// The leverage parameterization of a contingency situation: (n_x, delta, n_a, n)
/// with delta the leverage. Maps back to a quad via n_xa = n_x*n_a/n + delta*n.
struct DeltaParams {
    count_t n_x;
    double delta;
    count_t n_a;
    count_t n;
};

inline DeltaParams delta_from_quad(const FrequencyQuad& q) {
    require_legal(q);
    return DeltaParams{q.n_x, leverage(q), q.n_a, q.n};
}

/// Inverse of delta_from_quad. The implied joint count must land on an integer
/// (within 1e-9) and the resulting quad must be legal; anything else is a
/// domain error. Values outside the legal set are rejected, never extrapolated.
inline FrequencyQuad quad_from_delta(const DeltaParams& p) {
    if (p.n <= 0) throw std::domain_error("delta params require n > 0");
    const double raw = static_cast<double>(p.n_x) * static_cast<double>(p.n_a) /
                           static_cast<double>(p.n) +
                       p.delta * static_cast<double>(p.n);
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) > 1e-9)
        throw std::domain_error("delta " + std::to_string(p.delta) +
                                " does not map to an integral joint count (got " +
                                std::to_string(raw) + ")");
    if (rounded < 0.0 || rounded > static_cast<double>(p.n))
        throw std::domain_error("delta " + std::to_string(p.delta) +
                                " maps outside the legal joint-count range");
    FrequencyQuad q{p.n_x, static_cast<count_t>(rounded), p.n_a, p.n};
    require_legal(q);
    return q;
}

/// A consequent literal A=a over binary attributes, a in {0,1}.
struct Literal {
    std::uint32_t attribute;
    std::uint8_t value;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// A scored dependency rule X -> A=a.
struct Rule {
    std::vector<std::uint32_t> antecedent;  ///< attribute ids, sorted ascending
    Literal consequent;
    FrequencyQuad quad;
    double score;
};

inline bool same_identity(const Rule& a, const Rule& b) {
    return a.consequent == b.consequent && a.antecedent == b.antecedent;
}

}  // namespace depmine
