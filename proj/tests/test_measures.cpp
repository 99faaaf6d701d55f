#include <doctest.h>

#include <cmath>

#include "testutil.hpp"

using namespace depmine;

namespace {

// Independent oracle for mutual information: n * (H(X) + H(A) - H(X,A)) from
// the four cell probabilities, natural logarithm.
double entropy_decomposition_mi(const FrequencyQuad& q) {
    const double n = static_cast<double>(q.n);
    const auto h = [](std::initializer_list<double> ps) {
        double sum = 0.0;
        for (double p : ps)
            if (p > 0.0) sum -= p * std::log(p);
        return sum;
    };
    const double pxa = q.n_xa / n;
    const double pxb = (q.n_x - q.n_xa) / n;
    const double pya = (q.n_a - q.n_xa) / n;
    const double pyb = (q.n - q.n_x - q.n_a + q.n_xa) / n;
    const double px = q.n_x / n, pa = q.n_a / n;
    return n * (h({px, 1 - px}) + h({pa, 1 - pa}) - h({pxa, pxb, pya, pyb}));
}

}  // namespace

TEST_CASE("chi-square on hand-checked quads") {
    CHECK(chi_square({4, 2, 5, 10}) == 0.0);
    // 10 * (40 - 20)^2 / (4 * 6 * 5 * 5) = 4000 / 600
    CHECK(std::abs(chi_square({4, 4, 5, 10}) - 20.0 / 3.0) <= 1e-12);
    // supremum point (m_a, m_a): equals n
    CHECK(std::abs(chi_square({5, 5, 5, 10}) - 10.0) <= 1e-12);
    CHECK_THROWS_AS(chi_square({0, 0, 5, 10}), std::domain_error);
}

TEST_CASE("mutual information on hand-checked quads") {
    CHECK(mutual_information({4, 2, 5, 10}) == 0.0);
    // two cells vanish under 0*ln(0) = 0, the other two give 5*ln2 each
    CHECK(std::abs(mutual_information({5, 5, 5, 10}) - 10.0 * std::log(2.0)) <= 1e-12);
    CHECK(std::abs(mutual_information({4, 4, 5, 10}) -
                   entropy_decomposition_mi({4, 4, 5, 10})) <= 1e-9);
}

TEST_CASE("z-scores on hand-checked quads") {
    CHECK(z_score_1({6, 1, 5, 10}) == 0.0);  // negative dependence
    CHECK(z_score_1({4, 2, 5, 10}) == 0.0);  // independence
    // sqrt(10) * 20 / sqrt(20 * 80)
    CHECK(std::abs(z_score_1({4, 4, 5, 10}) - std::sqrt(10.0) * 20.0 / 40.0) <= 1e-12);

    CHECK(z_score_2({6, 1, 5, 10}) == 0.0);
    CHECK(z_score_2({4, 2, 5, 10}) == 0.0);
    // 20 / sqrt(4 * 5 * 5)
    CHECK(std::abs(z_score_2({4, 4, 5, 10}) - 2.0) <= 1e-12);
}

TEST_CASE("j-measure on hand-checked quads") {
    CHECK(j_measure({4, 2, 5, 10}) == 0.0);
    CHECK(j_measure({6, 1, 5, 10}) == 0.0);
    // 4*ln(4/5) - 4*ln(4/10) = 4*ln2
    CHECK(std::abs(j_measure({4, 4, 5, 10}) - 4.0 * std::log(2.0)) <= 1e-12);
}

TEST_CASE("evaluate dispatches by measure name") {
    CHECK(std::abs(evaluate("chi2", {5, 5, 5, 10}) - 10.0) <= 1e-12);
    CHECK(evaluate("z1", {6, 1, 5, 10}) == 0.0);
    CHECK(evaluate("mi", {4, 2, 5, 10}) == 0.0);
    CHECK_THROWS_AS(evaluate("nope", {4, 2, 5, 10}), config_error);
}

TEST_CASE("bundled measure descriptors") {
    for (const auto& m : bundled_measures()) CHECK(m.descriptor.direction == Direction::increasing);
    CHECK(find_measure("chi2").descriptor.polarity_support == PolaritySupport::both);
    CHECK(find_measure("mi").descriptor.polarity_support == PolaritySupport::both);
    CHECK(find_measure("z1").descriptor.polarity_support == PolaritySupport::positive_only);
    CHECK(find_measure("z2").descriptor.polarity_support == PolaritySupport::positive_only);
    CHECK(find_measure("j").descriptor.polarity_support == PolaritySupport::positive_only);
}

TEST_CASE("every measure is exactly zero at independence and never below") {
    for (count_t n = 2; n <= 40; ++n)
        for (const FrequencyQuad& q : testutil::all_legal_quads(n))
            for (const auto& m : bundled_measures()) {
                const double v = m.value(q);
                REQUIRE(std::isfinite(v));
                REQUIRE(v >= 0.0);
                if (leverage_numerator(q) == 0) REQUIRE(v == 0.0);
            }
}

TEST_CASE("z1, z2, j are exactly zero on the non-positive side") {
    for (count_t n = 2; n <= 40; ++n)
        for (const FrequencyQuad& q : testutil::all_legal_quads(n)) {
            if (leverage_numerator(q) > 0) continue;
            REQUIRE(z_score_1(q) == 0.0);
            REQUIRE(z_score_2(q) == 0.0);
            REQUIRE(j_measure(q) == 0.0);
        }
}

TEST_CASE("chi-square depends on leverage only through its square") {
    for (count_t n = 2; n <= 30; ++n)
        for (const FrequencyQuad& q : testutil::all_legal_quads(n)) {
            // mirror point: n_xa' with leverage numerator negated
            const std::int64_t num = leverage_numerator(q);
            const std::int64_t mirror_num = q.n_x * q.n_a - num;  // n * n_xa'
            if (mirror_num % q.n != 0) continue;
            const FrequencyQuad mirror{q.n_x, mirror_num / q.n, q.n_a, q.n};
            if (!is_legal(mirror)) continue;
            REQUIRE(std::abs(chi_square(q) - chi_square(mirror)) <=
                    1e-9 * std::max(1.0, chi_square(q)));
        }
}

TEST_CASE("chi-square suprema equal n at both corner points") {
    for (count_t n : {10, 23, 50}) {
        for (count_t m_a = 1; m_a < n; ++m_a) {
            CHECK(std::abs(chi_square({m_a, m_a, m_a, n}) - static_cast<double>(n)) <= 1e-9);
            CHECK(std::abs(chi_square({n - m_a, 0, m_a, n}) - static_cast<double>(n)) <= 1e-9);
        }
    }
}

TEST_CASE("mutual information matches the entropy decomposition up to n = 50") {
    for (count_t n = 2; n <= 50; ++n)
        for (const FrequencyQuad& q : testutil::all_legal_quads(n))
            REQUIRE(std::abs(mutual_information(q) - entropy_decomposition_mi(q)) <= 1e-9);
}
