#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "testutil.hpp"

using namespace depmine;

TEST_CASE("fimi loading") {
    const Dataset ds = testutil::fimi_from_string("1 2\n2 3\n1 2 3\n");
    CHECK(ds.row_count() == 3);
    CHECK(ds.attribute_count() == 3);
    CHECK(ds.attribute_names() == std::vector<std::string>{"1", "2", "3"});
    CHECK(ds.rows(ds.require_index("2")) == std::vector<count_t>{0, 1, 2});
    CHECK(ds.rows(ds.require_index("1")) == std::vector<count_t>{0, 2});
    CHECK(ds.support(ds.require_index("3")) == 2);
}

TEST_CASE("fimi: empty lines are empty transactions, empty file is n = 0") {
    const Dataset with_gap = testutil::fimi_from_string("1 2\n\n2\n");
    CHECK(with_gap.row_count() == 3);
    const Dataset empty = testutil::fimi_from_string("");
    CHECK(empty.row_count() == 0);
    CHECK(empty.attribute_count() == 0);
}

TEST_CASE("fimi: malformed tokens carry the line number") {
    CHECK_THROWS_WITH_AS(testutil::fimi_from_string("1 x\n"),
                         doctest::Contains("line 1"), parse_error);
    CHECK_THROWS_AS(testutil::fimi_from_string("1 2\n3 -4\n"), parse_error);
}

TEST_CASE("fimi: duplicate items within a transaction are deduplicated") {
    const Dataset ds = testutil::fimi_from_string("5 5 5\n5\n");
    CHECK(ds.support(ds.require_index("5")) == 2);
}

TEST_CASE("fimi: attribute order is ascending item id, not first occurrence") {
    const Dataset ds = testutil::fimi_from_string("10 2\n7\n");
    CHECK(ds.attribute_names() == std::vector<std::string>{"2", "7", "10"});
}

TEST_CASE("csv loading") {
    const Dataset ds = testutil::csv_from_string("a,b\n1,0\n1,1\n");
    CHECK(ds.row_count() == 2);
    CHECK(ds.rows(ds.require_index("a")) == std::vector<count_t>{0, 1});
    CHECK(ds.rows(ds.require_index("b")) == std::vector<count_t>{1});
}

TEST_CASE("csv: ragged rows and non-binary cells are rejected with locations") {
    CHECK_THROWS_WITH_AS(testutil::csv_from_string("a,b\n1,0\n1\n"),
                         doctest::Contains("row 2"), parse_error);
    CHECK_THROWS_WITH_AS(testutil::csv_from_string("a,b\n1,2\n"),
                         doctest::Contains("(1, b)"), parse_error);
    CHECK_THROWS_AS(testutil::csv_from_string(""), parse_error);
    CHECK_THROWS_AS(testutil::csv_from_string("a,a\n1,1\n"), parse_error);
}

TEST_CASE("count_quad on the three-transaction toy") {
    const Dataset ds = testutil::fimi_from_string("1 2\n2 3\n1 2 3\n");
    const std::uint32_t a1 = ds.require_index("1"), a2 = ds.require_index("2"),
                        a3 = ds.require_index("3");
    const std::vector<std::uint32_t> x{a1};
    CHECK(count_quad(ds, x, {a2, 1}) == FrequencyQuad{2, 2, 3, 3});
    CHECK(count_quad(ds, x, {a3, 0}) == FrequencyQuad{2, 1, 1, 3});
    CHECK_THROWS_AS(count_quad(ds, x, {a1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(count_quad(ds, std::vector<std::uint32_t>{}, {a1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(count_quad(ds, std::vector<std::uint32_t>{99}, {a1, 1}), lookup_error);
}

TEST_CASE("count_quad is antecedent-order independent") {
    const Dataset ds = testutil::random_dataset(42, 40, 6);
    const std::vector<std::uint32_t> fwd{0, 2, 4};
    const std::vector<std::uint32_t> rev{4, 2, 0};
    CHECK(count_quad(ds, fwd, {1, 1}) == count_quad(ds, rev, {1, 1}));
}

TEST_CASE("positive and negated consequents partition the antecedent rows") {
    for (std::uint32_t seed : {3u, 9u, 27u}) {
        const Dataset ds = testutil::random_dataset(seed, 30, 6);
        for (std::uint32_t c = 2; c < 5; ++c) {
            const std::vector<std::uint32_t> x{0, 1};
            const FrequencyQuad pos = count_quad(ds, x, {c, 1});
            const FrequencyQuad neg = count_quad(ds, x, {c, 0});
            CHECK(pos.n_xa + neg.n_xa == pos.n_x);
            CHECK(pos.n_a + neg.n_a == ds.row_count());
        }
    }
}

TEST_CASE("count_quad agrees with the row-scan oracle on random data") {
    for (std::uint32_t seed = 1; seed <= 10; ++seed) {
        const Dataset ds = testutil::random_dataset(seed * 31, 200 + seed * 80, 7);
        testutil::Rng rng(seed);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<std::uint32_t> antecedent;
            for (std::uint32_t a = 0; a < ds.attribute_count(); ++a)
                if (rng.chance(300)) antecedent.push_back(a);
            if (antecedent.empty()) antecedent.push_back(rng.below(ds.attribute_count()));
            std::uint32_t cons = rng.below(ds.attribute_count());
            while (std::find(antecedent.begin(), antecedent.end(), cons) != antecedent.end())
                cons = rng.below(ds.attribute_count());
            const Literal lit{cons, static_cast<std::uint8_t>(rng.chance(512) ? 1 : 0)};
            CHECK(count_quad(ds, antecedent, lit) == testutil::naive_quad(ds, antecedent, lit));
        }
    }
}

TEST_CASE("full-support and zero-support attributes are parsed but not mineable") {
    const Dataset ds = testutil::csv_from_string("always,never,ok\n1,0,1\n1,0,0\n");
    CHECK(ds.attribute_count() == 3);
    CHECK(ds.mineable_attributes() == std::vector<std::uint32_t>{2});
    CHECK(ds.excluded_attributes() == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("load_data detects format by extension and honors the override") {
    const std::string dat_path = "depmine_test_tmp.dat";
    {
        std::ofstream f(dat_path);
        f << "1 2\n2 3\n";
    }
    const Dataset ds = load_data(dat_path);
    CHECK(ds.row_count() == 2);
    const Dataset forced = load_data(dat_path, DataFormat::fimi);
    CHECK(forced.attribute_count() == 3);
    CHECK_THROWS_AS(load_data("no_extension_file", DataFormat::auto_detect), config_error);
    CHECK_THROWS_AS(load_data("missing_file.dat"), parse_error);
    std::remove(dat_path.c_str());
}
