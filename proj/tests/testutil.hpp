#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "depmine.hpp"

namespace depmine::testutil {

/// Deterministic coin flips from raw mt19937 draws. Raw engine output is
/// pinned by the standard; distribution adaptors are not.
struct Rng {
    std::mt19937 engine;
    explicit Rng(std::uint32_t seed) : engine(seed) {}

    bool chance(std::uint32_t num, std::uint32_t den = 1024) { return engine() % den < num; }
    std::uint32_t below(std::uint32_t m) { return engine() % m; }
};

/// Random binary dataset with per-attribute density drawn from
/// [lo, hi] / 1024. Bumps the seed until at least two attributes are mineable.
inline Dataset random_dataset(std::uint32_t seed, count_t n, std::uint32_t attrs,
                              std::uint32_t lo_millis = 150, std::uint32_t hi_millis = 820) {
    for (std::uint32_t s = seed;; ++s) {
        Rng rng(s);
        std::vector<std::string> names;
        std::vector<std::vector<count_t>> cols(attrs);
        for (std::uint32_t a = 0; a < attrs; ++a) {
            names.push_back(std::to_string(a + 1));
            const std::uint32_t density =
                lo_millis + (hi_millis > lo_millis ? rng.below(hi_millis - lo_millis + 1) : 0);
            for (count_t r = 0; r < n; ++r)
                if (rng.chance(density)) cols[a].push_back(r);
        }
        Dataset ds = Dataset::from_columns(n, std::move(names), cols);
        if (ds.mineable_attributes().size() >= 2) return ds;
    }
}

inline Dataset fimi_from_string(const std::string& text) {
    std::istringstream in(text);
    return load_fimi(in);
}

inline Dataset csv_from_string(const std::string& text) {
    std::istringstream in(text);
    return load_csv(in);
}

/// Row-by-row scan counter, the independent oracle for count_quad.
inline FrequencyQuad naive_quad(const Dataset& ds, const std::vector<std::uint32_t>& antecedent,
                                Literal consequent) {
    count_t n_x = 0, n_xa = 0, n_a = 0;
    for (count_t r = 0; r < ds.row_count(); ++r) {
        bool x = true;
        for (std::uint32_t a : antecedent)
            if (!ds.row_set(a).test(r)) {
                x = false;
                break;
            }
        const bool lit = ds.row_set(consequent.attribute).test(r) == (consequent.value == 1);
        if (x) ++n_x;
        if (x && lit) ++n_xa;
        if (lit) ++n_a;
    }
    return FrequencyQuad{n_x, n_xa, n_a, ds.row_count()};
}

/// Ten-row dataset where attribute "q" selects exactly the rows with both "x"
/// and "a", and "qn" exactly the rows with "x" but not "a". Specializing
/// x -> a by q (or qn) lands exactly on the corner point the subtree bounds
/// evaluate, for either polarity.
inline Dataset tightness_dataset() {
    return Dataset::from_columns(
        10, {"a", "x", "q", "qn"},
        {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 5, 6}, {0, 1, 2, 3}, {5, 6}});
}

/// Negated chi-square wrapper: a decreasing-direction measure for exercising
/// reversed comparisons.
inline GoodnessMeasure negated_chi_square() {
    return GoodnessMeasure{{"neg-chi2", Direction::decreasing, PolaritySupport::both},
                           [](const FrequencyQuad& q) { return -chi_square(q); }};
}

/// A deliberately non-well-behaving measure: plain confidence.
inline GoodnessMeasure confidence_measure() {
    return GoodnessMeasure{{"confidence", Direction::increasing, PolaritySupport::both},
                           [](const FrequencyQuad& q) { return confidence(q); }};
}

/// Exhaustive soundness sweep of one dataset: every specialization's score
/// must sit under its generalization's subtree bound, for every bundled
/// measure supporting the specialization's polarity. Works on the bitmask
/// representation, so the dataset must have at most 16 mineable attributes.
struct SoundnessOutcome {
    std::int64_t checks = 0;
    std::int64_t violations = 0;
};

inline SoundnessOutcome check_bound_soundness(const Dataset& ds, double tol = 1e-9) {
    const auto attrs = ds.mineable_attributes();
    const std::size_t m = attrs.size();
    if (m > 16) throw std::invalid_argument("soundness sweep limited to 16 attributes");
    const count_t n = ds.row_count();

    std::vector<std::uint32_t> row_mask(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < m; ++i)
        for (count_t r : ds.rows(attrs[i])) row_mask[static_cast<std::size_t>(r)] |= 1u << i;

    const std::uint32_t full = (1u << m) - 1;
    std::vector<count_t> n_x(full + 1, 0);
    std::vector<std::vector<count_t>> joint(full + 1, std::vector<count_t>(m, 0));
    for (std::uint32_t mask = 1; mask <= full; ++mask)
        for (count_t r = 0; r < n; ++r)
            if ((row_mask[static_cast<std::size_t>(r)] & mask) == mask) {
                ++n_x[mask];
                for (std::size_t c = 0; c < m; ++c)
                    if (row_mask[static_cast<std::size_t>(r)] >> c & 1) ++joint[mask][c];
            }

    SoundnessOutcome out;
    for (std::uint32_t super = 1; super <= full; ++super) {
        if (std::popcount(super) < 2) continue;
        const count_t sx = n_x[super];
        if (sx == 0 || sx == n) continue;
        for (std::size_t c = 0; c < m; ++c) {
            if (super >> c & 1) continue;
            const count_t sup_a = ds.support(attrs[c]);
            for (std::uint8_t value : {std::uint8_t{1}, std::uint8_t{0}}) {
                const count_t n_a = value == 1 ? sup_a : n - sup_a;
                const count_t sxa = value == 1 ? joint[super][c] : sx - joint[super][c];
                const FrequencyQuad spec{sx, sxa, n_a, n};
                const Polarity pol = polarity(spec);
                if (pol == Polarity::independent) continue;
                for (std::uint32_t sub = (super - 1) & super; sub != 0;
                     sub = (sub - 1) & super) {
                    const count_t px = n_x[sub];
                    const count_t pxa = value == 1 ? joint[sub][c] : px - joint[sub][c];
                    for (const auto& measure : bundled_measures()) {
                        if (!measure.supports(pol)) continue;
                        const double score = measure.value(spec);
                        const double bound =
                            subtree_bound_known_xa(measure, px, pxa, n_a, n, pol);
                        ++out.checks;
                        if (score > bound + tol) ++out.violations;
                    }
                }
            }
        }
    }
    return out;
}

/// Every legal quad for the given n, ascending (n_x, n_a, n_xa).
inline std::vector<FrequencyQuad> all_legal_quads(count_t n) {
    std::vector<FrequencyQuad> out;
    for (count_t n_x = 1; n_x < n; ++n_x)
        for (count_t n_a = 1; n_a < n; ++n_a) {
            const count_t lo = std::max<count_t>(0, n_x + n_a - n);
            const count_t hi = std::min(n_x, n_a);
            for (count_t n_xa = lo; n_xa <= hi; ++n_xa)
                out.push_back(FrequencyQuad{n_x, n_xa, n_a, n});
        }
    return out;
}

}  // namespace depmine::testutil
