#include <gtest/gtest.h>

#include <cmath>

#include <json.hpp>

#include "norbrack/serialization.hpp"

using namespace norbrack;

TEST(DecompositionJson, RoundTripExact)
{
    const OneFormSamples alpha(PeriodicScalarField::from_function(64, [](double t) { return std::cos(2 * t) + 0.3; }).samples());
    const ABDecomposition d = decompose_oneform(alpha);
    const std::string text = decomposition_to_json(d);
    const ABDecomposition back = decomposition_from_json(text);
    ASSERT_EQ(back.terms.size(), d.terms.size());
    for (std::size_t i = 0; i < d.terms.size(); ++i) {
        EXPECT_EQ(back.terms[i].coeff, d.terms[i].coeff);
        EXPECT_EQ(back.terms[i].a.samples(), d.terms[i].a.samples());
        EXPECT_EQ(back.terms[i].b.samples(), d.terms[i].b.samples());
    }
    const auto j = nlohmann::ordered_json::parse(text);
    EXPECT_EQ(j[0].begin().key(), "coeff");
    EXPECT_EQ(j[0]["a"].size(), 64u);
}

TEST(DecompositionJson, EmptyAndMalformed)
{
    EXPECT_EQ(decomposition_to_json(ABDecomposition{}), "[]");
    EXPECT_THROW(decomposition_from_json("{"), IoError);
    EXPECT_THROW(decomposition_from_json("{}"), IoError);
    EXPECT_THROW(decomposition_from_json("[{\"coeff\":1}]"), IoError);
}

TEST(SpanReportJson, FieldsInOrder)
{
    const SpanReport r = verify_spanning(circle(8), 3);
    const auto j = nlohmann::ordered_json::parse(span_report_to_json(r));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items())
        keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"n", "K", "m", "rank", "full", "sigma_min", "sigma_max", "rank_tol"}));
    EXPECT_EQ(j["n"], 8);
    EXPECT_EQ(j["K"], 3);
    EXPECT_EQ(j["rank"], 16);
    EXPECT_EQ(j["full"], true);
}
