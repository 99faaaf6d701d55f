#include <doctest.h>

#include <cmath>

#include "testutil.hpp"

using namespace depmine;

namespace {

Rule rule(double score, std::vector<std::uint32_t> antecedent, Literal lit = {9, 1}) {
    return Rule{std::move(antecedent), lit, {1, 1, 1, 4}, score};
}

}  // namespace

TEST_CASE("top-k collector keeps the k best and exposes the k-th score") {
    RuleCollector col(SearchGoal::top_k(2), RuleOrder{true});
    CHECK(col.threshold() == -std::numeric_limits<double>::infinity());
    col.offer(rule(3, {1}));
    CHECK(col.threshold() == -std::numeric_limits<double>::infinity());
    col.offer(rule(1, {2}));
    CHECK(col.threshold() == 1.0);
    col.offer(rule(2, {3}));
    CHECK(col.threshold() == 2.0);
    const auto rules = std::move(col).finish();
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].score == 3.0);
    CHECK(rules[1].score == 2.0);
}

TEST_CASE("top-k ties at the k-th place go to the lexicographically smaller rule") {
    RuleCollector col(SearchGoal::top_k(2), RuleOrder{true});
    col.offer(rule(3, {1}));
    col.offer(rule(2, {5, 7}));
    col.offer(rule(2, {5, 6}));  // same score, smaller antecedent wins
    const auto rules = std::move(col).finish();
    REQUIRE(rules.size() == 2);
    CHECK(rules[1].antecedent == std::vector<std::uint32_t>{5, 6});

    RuleCollector col2(SearchGoal::top_k(2), RuleOrder{true});
    col2.offer(rule(3, {1}));
    col2.offer(rule(2, {5}));
    col2.offer(rule(2, {5, 6}));  // longer antecedent loses the tie
    const auto rules2 = std::move(col2).finish();
    CHECK(rules2[1].antecedent == std::vector<std::uint32_t>{5});
}

TEST_CASE("top-k larger than the universe keeps everything, threshold stays inactive") {
    RuleCollector col(SearchGoal::top_k(10), RuleOrder{true});
    col.offer(rule(3, {1}));
    col.offer(rule(1, {2}));
    CHECK(col.threshold() == -std::numeric_limits<double>::infinity());
    CHECK(std::move(col).finish().size() == 2);
}

TEST_CASE("threshold collector applies the direction-aware cut") {
    RuleCollector inc(SearchGoal::threshold(2.0), RuleOrder{true});
    inc.offer(rule(1.9, {1}));
    inc.offer(rule(2.0, {2}));
    inc.offer(rule(2.1, {3}));
    CHECK(std::move(inc).finish().size() == 2);  // >= threshold for increasing

    RuleCollector dec(SearchGoal::threshold(-2.0), RuleOrder{false});
    dec.offer(rule(-1.9, {1}));
    dec.offer(rule(-2.0, {2}));
    dec.offer(rule(-2.1, {3}));
    const auto rules = std::move(dec).finish();
    REQUIRE(rules.size() == 2);  // <= threshold for decreasing
    CHECK(rules[0].score == -2.1);
}

TEST_CASE("rule order: score, size, lexicographic antecedent, consequent") {
    const RuleOrder better{true};
    CHECK(better(rule(2, {1}), rule(1, {1})));
    CHECK(better(rule(1, {2}), rule(1, {1, 2})));
    CHECK(better(rule(1, {1, 2}), rule(1, {1, 3})));
    CHECK(better(rule(1, {1}, {4, 1}), rule(1, {1}, {5, 1})));
    // positive literal sorts before the negated one
    CHECK(better(rule(1, {1}, {4, 1}), rule(1, {1}, {4, 0})));
    const RuleOrder worse{false};
    CHECK(worse(rule(1, {1}), rule(2, {1})));
}

TEST_CASE("consequent universe respects negation flag and filters") {
    const Dataset ds = testutil::fimi_from_string("1 2\n2 3\n1 3\n1 2 3\n");
    SearchConfig cfg;
    cfg.measure = &find_measure("chi2");
    auto lits = consequent_universe(ds, cfg);
    CHECK(lits.size() == 3);
    for (const auto& c : lits) CHECK(c.lit.value == 1);

    cfg.allow_negated_consequents = true;
    lits = consequent_universe(ds, cfg);
    CHECK(lits.size() == 6);

    cfg.consequent_filter = std::vector<Literal>{{ds.require_index("2"), 0},
                                                 {ds.require_index("2"), 0}};
    lits = consequent_universe(ds, cfg);
    REQUIRE(lits.size() == 1);  // deduplicated
    CHECK(lits[0].lit.value == 0);
    CHECK(lits[0].n_a == 1);  // support(2) = 3 of 4 rows
}

TEST_CASE("search config validation") {
    SearchConfig cfg;
    CHECK_THROWS_AS(validate(cfg), config_error);
    cfg.measure = &find_measure("z1");
    cfg.mode = PolarityMode::negative;
    CHECK_THROWS_AS(validate(cfg), unsupported_polarity_error);
    cfg.mode = PolarityMode::both;
    CHECK_THROWS_AS(validate(cfg), unsupported_polarity_error);
    cfg.mode = PolarityMode::positive;
    cfg.goal = SearchGoal::top_k(0);
    CHECK_THROWS_AS(validate(cfg), config_error);
    cfg.goal = SearchGoal::top_k(3);
    cfg.max_antecedent_size = 0;
    CHECK_THROWS_AS(validate(cfg), config_error);
    cfg.max_antecedent_size = 2;
    CHECK_NOTHROW(validate(cfg));
}
