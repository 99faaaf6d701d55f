#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "depmine/errors.hpp"
#include "depmine/frequency.hpp"

namespace depmine {

enum class Direction { increasing, decreasing };
enum class PolaritySupport { both, positive_only };

struct MeasureDescriptor {
    std::string name;
    Direction direction = Direction::increasing;
    PolaritySupport polarity_support = PolaritySupport::both;
};

/// A goodness measure: a pure, deterministic score over legal frequency quads,
/// plus the metadata search code needs (direction, supported polarities).
///
/// Every measure used with the search and bound machinery must score 0 at
/// exact independence; that value is the measure's worst for increasing
/// direction and its best-possible-nothing for pruning purposes.
struct GoodnessMeasure {
    MeasureDescriptor descriptor;
    std::function<double(const FrequencyQuad&)> value;

    bool increasing() const { return descriptor.direction == Direction::increasing; }
    bool supports(Polarity p) const {
        return p != Polarity::negative ||
               descriptor.polarity_support == PolaritySupport::both;
    }
};

/// chi^2 = n*(n*n_xa - n_x*n_a)^2 / (n_x*(n-n_x)*n_a*(n-n_a)).
/// The numerator difference is taken in exact integer arithmetic, so the value
/// is exactly 0 at independence and symmetric in the leverage sign.
inline double chi_square(const FrequencyQuad& q) {
    require_legal(q);
    const std::int64_t num = leverage_numerator(q);
    if (num == 0) return 0.0;
    const double d = static_cast<double>(num);
    const double n = static_cast<double>(q.n);
    const double nx = static_cast<double>(q.n_x);
    const double na = static_cast<double>(q.n_a);
    return n * d * d / (nx * (n - nx) * na * (n - na));
}

/// Mutual information in count form (n times the usual probability form),
/// natural logarithm, with the 0*ln(0) = 0 convention. Exactly 0 at
/// independence: every cell argument reduces to an integer ratio of equal
/// integers there.
inline double mutual_information(const FrequencyQuad& q) {
    require_legal(q);
    const double n = static_cast<double>(q.n);
    const auto cell = [n](count_t c, count_t row, count_t col) {
        if (c == 0) return 0.0;
        return static_cast<double>(c) *
               std::log(n * static_cast<double>(c) /
                        (static_cast<double>(row) * static_cast<double>(col)));
    };
    return cell(q.n_xa, q.n_x, q.n_a) +
           cell(q.n_x - q.n_xa, q.n_x, q.n - q.n_a) +
           cell(q.n_a - q.n_xa, q.n - q.n_x, q.n_a) +
           cell(q.n - q.n_x - q.n_a + q.n_xa, q.n - q.n_x, q.n - q.n_a);
}

/// z-score variant with variance term n_x*n_a*(n^2 - n_x*n_a).
/// Defined for positive dependencies only; returns 0 both at exact
/// independence and for negative dependencies.
inline double z_score_1(const FrequencyQuad& q) {
    require_legal(q);
    const std::int64_t num = leverage_numerator(q);
    if (num <= 0) return 0.0;
    const double n = static_cast<double>(q.n);
    const double nx = static_cast<double>(q.n_x);
    const double na = static_cast<double>(q.n_a);
    return std::sqrt(n) * static_cast<double>(num) /
           std::sqrt(nx * na * (n * n - nx * na));
}

/// z-score variant with variance term n_x*n_a*(n - n_a). Positive
/// dependencies only; 0 at independence and below, as for z_score_1.
inline double z_score_2(const FrequencyQuad& q) {
    require_legal(q);
    const std::int64_t num = leverage_numerator(q);
    if (num <= 0) return 0.0;
    const double n = static_cast<double>(q.n);
    const double nx = static_cast<double>(q.n_x);
    const double na = static_cast<double>(q.n_a);
    return static_cast<double>(num) / std::sqrt(nx * na * (n - na));
}

/// J-measure in count form, natural logarithm, 0*ln(0) = 0. Positive
/// dependencies only; 0 at independence and below.
inline double j_measure(const FrequencyQuad& q) {
    require_legal(q);
    const std::int64_t num = leverage_numerator(q);
    if (num <= 0) return 0.0;
    const double n = static_cast<double>(q.n);
    const double nx = static_cast<double>(q.n_x);
    const double na = static_cast<double>(q.n_a);
    const double nxa = static_cast<double>(q.n_xa);
    double v = nxa * std::log(nxa / na) - nx * std::log(nx / n);
    if (q.n_x > q.n_xa) v += (nx - nxa) * std::log((nx - nxa) / (n - na));
    return v;
}

inline const std::vector<GoodnessMeasure>& bundled_measures() {
    static const std::vector<GoodnessMeasure> measures = {
        {{"chi2", Direction::increasing, PolaritySupport::both}, &chi_square},
        {{"mi", Direction::increasing, PolaritySupport::both}, &mutual_information},
        {{"z1", Direction::increasing, PolaritySupport::positive_only}, &z_score_1},
        {{"z2", Direction::increasing, PolaritySupport::positive_only}, &z_score_2},
        {{"j", Direction::increasing, PolaritySupport::positive_only}, &j_measure},
    };
    return measures;
}

inline const GoodnessMeasure* try_find_measure(std::string_view name) {
    for (const auto& m : bundled_measures())
        if (m.descriptor.name == name) return &m;
    return nullptr;
}

inline const GoodnessMeasure& find_measure(std::string_view name) {
    if (const auto* m = try_find_measure(name)) return *m;
    throw config_error("unknown measure '" + std::string(name) +
                       "' (available: chi2, mi, z1, z2, j)");
}

inline double evaluate(const GoodnessMeasure& m, const FrequencyQuad& q) {
    require_legal(q);
    return m.value(q);
}

inline double evaluate(std::string_view name, const FrequencyQuad& q) {
    return evaluate(find_measure(name), q);
}

}  // namespace depmine
