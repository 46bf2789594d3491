#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "taghort/errors.hpp"
#include "taghort/preprocess.hpp"

using namespace taghort;

TEST_CASE("quantile edges interpolate between order statistics") {
    CHECK(quantile_edges({1, 2, 3, 4, 5, 6, 7, 8}, 4) == std::vector<double>{2.75, 4.5, 6.25});
    CHECK(quantile_edges({1, 2, 3, 4}, 2) == std::vector<double>{2.5});
    CHECK(quantile_edges({4, 3, 2, 1}, 2) == std::vector<double>{2.5}); // order-free
}

TEST_CASE("constant columns have no usable quantile bins") {
    CHECK_THROWS_AS(quantile_edges({5, 5, 5}, 4), DegenerateBins);
}

TEST_CASE("duplicate edges merge into fewer bins") {
    // Heavy ties collapse interior edges; the survivors stay ascending and
    // every surviving bin is reachable.
    const auto edges = quantile_edges({1, 1, 1, 1, 2, 3, 8, 9}, 4);
    CHECK(edges == std::vector<double>{1.5, 4.25});
    // All ties except one extreme value: a single usable edge remains.
    CHECK(quantile_edges({1, 9, 9, 9, 9, 9, 9, 9}, 4) == std::vector<double>{9});
}

TEST_CASE("quantile tags carry interval labels and one-hot rows") {
    FeatureTable table;
    table.add_continuous("BMI", {10, 17.5, 34, 51.5, 60});
    TagDerivationConfig config;
    config.add_quantile("BMI", 4);
    const TagMatrix tags = derive_tags(table, config);

    CHECK(tags.dictionary == std::vector<std::string>{"BMI<17.5", "17.5<=BMI<34",
                                                      "34<=BMI<51.5", "51.5<=BMI"});
    // Exactly one active tag per sample; values equal to an edge go up.
    for (std::size_t i = 0; i < tags.samples(); ++i) {
        int active = 0;
        for (std::size_t p = 0; p < tags.tags; ++p) active += tags.at(i, p);
        CHECK(active == 1);
    }
    CHECK(tags.at(0, 0) == 1); // 10 -> lowest bin
    CHECK(tags.at(1, 1) == 1); // 17.5 sits on an edge -> upper bin
    CHECK(tags.at(2, 2) == 1); // 34 -> upper bin again
    CHECK(tags.at(3, 3) == 1); // 51.5 -> top bin
    CHECK(tags.at(4, 3) == 1);
}

TEST_CASE("binary columns become a yes/no tag pair") {
    FeatureTable table;
    table.add_binary("smoker", {1, 0});
    TagDerivationConfig config;
    config.add_passthrough("smoker");
    const TagMatrix tags = derive_tags(table, config);
    CHECK(tags.dictionary == std::vector<std::string>{"smoker=yes", "smoker=no"});
    CHECK(tags.at(0, 0) == 1);
    CHECK(tags.at(0, 1) == 0);
    CHECK(tags.at(1, 0) == 0);
    CHECK(tags.at(1, 1) == 1);
}

TEST_CASE("categorical columns one-hot in order of first appearance") {
    FeatureTable table;
    table.add_categorical("sex", {"F", "M", "F"});
    TagDerivationConfig config;
    config.add_onehot("sex");
    const TagMatrix tags = derive_tags(table, config);
    CHECK(tags.dictionary == std::vector<std::string>{"sex=F", "sex=M"});
    CHECK(tags.at(0, 0) == 1);
    CHECK(tags.at(1, 1) == 1);
    CHECK(tags.at(2, 0) == 1);
    CHECK(tags.at(1, 0) == 0);
}

TEST_CASE("rule and column kinds must agree") {
    FeatureTable table;
    table.add_categorical("sex", {"F", "M"});
    table.add_continuous("age", {30, 40});
    TagDerivationConfig quantile_on_categorical;
    quantile_on_categorical.add_quantile("sex", 4);
    CHECK_THROWS_AS(derive_tags(table, quantile_on_categorical), KindMismatch);

    TagDerivationConfig onehot_on_continuous;
    onehot_on_continuous.add_onehot("age");
    CHECK_THROWS_AS(derive_tags(table, onehot_on_continuous), KindMismatch);

    TagDerivationConfig unknown;
    unknown.add_quantile("bmi", 2);
    CHECK_THROWS_AS(derive_tags(table, unknown), UnknownColumn);

    TagDerivationConfig duplicate;
    duplicate.add_onehot("sex");
    duplicate.add_onehot("sex");
    CHECK_THROWS_AS(derive_tags(table, duplicate), Error);
}

TEST_CASE("feature table rejects missing and non-binary values") {
    FeatureTable table;
    CHECK_THROWS_AS(table.add_continuous("x", {1.0, std::nan("")}), NonFinite);
    CHECK_THROWS_AS(table.add_binary("b", {0.0, 0.5}), NonBinary);
    table.add_continuous("x", {1.0, 2.0});
    CHECK_THROWS_AS(table.add_continuous("x", {3.0, 4.0}), Error); // duplicate column
    CHECK_THROWS_AS(table.add_continuous("y", {1.0}), DimensionMismatch);
}

TEST_CASE("each descriptor partitions the samples and the output is deterministic") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> real(0.0, 100.0);
    std::vector<double> age;
    std::vector<double> flag;
    std::vector<std::string> group;
    const char* groups[3] = {"a", "b", "c"};
    for (int i = 0; i < 60; ++i) {
        age.push_back(real(rng));
        flag.push_back(static_cast<double>(rng() % 2));
        group.push_back(groups[rng() % 3]);
    }
    FeatureTable table;
    table.add_continuous("age", age);
    table.add_binary("flag", flag);
    table.add_categorical("group", group);
    TagDerivationConfig config;
    config.add_quantile("age", 4);
    config.add_passthrough("flag");
    config.add_onehot("group");

    const TagMatrix first = derive_tags(table, config);
    const TagMatrix second = derive_tags(table, config);
    CHECK(first.values == second.values);
    CHECK(first.dictionary == second.dictionary);
    CHECK(first.tags == 4 + 2 + 3); // column-count identity

    // One tag per descriptor group for every sample.
    const std::size_t offsets[4] = {0, 4, 6, 9};
    for (std::size_t i = 0; i < first.samples(); ++i)
        for (int g = 0; g < 3; ++g) {
            int active = 0;
            for (std::size_t p = offsets[g]; p < offsets[g + 1]; ++p) active += first.at(i, p);
            CHECK(active == 1);
        }
}

TEST_CASE("label values render shortest") {
    CHECK(format_value(2.75) == "2.75");
    CHECK(format_value(45.0) == "45");
    CHECK(format_value(0.1) == "0.1");
}
