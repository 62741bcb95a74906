#include <gtest/gtest.h>

#include "padyn/io.hpp"

using namespace padyn;

namespace {

errc code_of(auto&& f)
{
    try {
        f();
    } catch (const error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return errc::invalid_input;
}

} // namespace

TEST(ParseRing, Defaults)
{
    const auto r = parse_ring(Json::parse(R"({"p": 3, "precision": 10})"));
    EXPECT_EQ(r->p(), 3);
    EXPECT_EQ(r->f(), 1);
    EXPECT_EQ(r->e(), 1);
    EXPECT_EQ(r->precision(), 10);
    const auto s = parse_ring(Json::parse(R"({"p": 2, "e": 2, "precision": 10})"), 14);
    EXPECT_EQ(s->e(), 2);
    EXPECT_EQ(s->precision(), 14);
    EXPECT_EQ(Element::uniformizer(s) * Element::uniformizer(s), Element::from_int(s, 2));
}

TEST(ParseRing, RoundTrip)
{
    for (const char* text : {R"({"p": 2, "f": 2, "unram_poly": [1, 1, 1], "precision": 12})",
                             R"({"p": 3, "e": 2, "eis_poly": [[3], [3], [1]], "precision": 12})",
                             R"({"p": 2, "f": 2, "unram_poly": [1, 1, 1], "e": 2, "eis_poly": [[2], [0, 2], [1]], "precision": 12})"}) {
        const auto r = parse_ring(Json::parse(text));
        const auto j = to_json(*r);
        const auto back = parse_ring(j);
        EXPECT_EQ(to_json(*back), j);
        EXPECT_EQ(j["degree"], r->e() * r->f());
    }
}

TEST(ParseRing, Rejects)
{
    EXPECT_EQ(code_of([] { parse_ring(Json::parse(R"({"precision": 10})")); }), errc::invalid_input);
    EXPECT_EQ(code_of([] { parse_ring(Json::parse(R"({"p": 2})")); }), errc::invalid_input);
    EXPECT_EQ(code_of([] { parse_ring(Json::parse(R"({"p": 2, "eis_poly": 5, "precision": 8})")); }), errc::invalid_input);
    EXPECT_EQ(code_of([] { parse_ring(Json::parse(R"({"p": 2, "e": 2, "eis_poly": [[4], [0], [1]], "precision": 8})")); }),
              errc::not_eisenstein);
    EXPECT_EQ(code_of([] { parse_ring(Json::parse(R"({"p": 6, "precision": 8})")); }), errc::not_prime);
}

TEST(ParseLiteral, Forms)
{
    EXPECT_EQ(parse_literal(Json(5)), literal_from_int(5));
    EXPECT_EQ(parse_literal(std::string("[1, [0, 1]]")), (Literal{{1}, {0, 1}}));
    EXPECT_EQ(parse_literal(std::string("-3")), literal_from_int(-3));
    EXPECT_EQ(code_of([] { parse_literal(std::string("x+1")); }), errc::invalid_input);
    EXPECT_EQ(code_of([] { parse_literal(Json("7")); }), errc::invalid_input);
}

TEST(LiteralJson, InvertsParse)
{
    for (const char* text : {"5", "[1, [0, 1]]", "[0, 0, 1]", "[[1, 1]]"}) {
        const auto lit = parse_literal(std::string(text));
        EXPECT_EQ(parse_literal(literal_json(lit, 2)), lit) << text;
    }
}

TEST(ParseMap, PolynomialAndSeries)
{
    const auto r = make_standard_ring(2, 1, 1, 12);
    const auto phi = parse_map(Json::parse(R"({"type": "polynomial", "coeffs": [1, 1]})"), r);
    EXPECT_TRUE(phi.is_polynomial());
    EXPECT_EQ(eval(phi, Element::from_int(r, 5)), Element::from_int(r, 6));
    const auto s = parse_map(Json::parse(R"({"type": "series", "coeffs": [1, 1, 2], "tail_val": 9})"), r);
    EXPECT_FALSE(s.is_polynomial());
    EXPECT_EQ(s.tail_val, 9);
    EXPECT_EQ(code_of([&] { parse_map(Json::parse(R"({"type": "series", "coeffs": [1]})"), r); }), errc::invalid_input);
    EXPECT_EQ(code_of([&] { parse_map(Json::parse(R"({"type": "rational", "coeffs": [1]})"), r); }), errc::invalid_input);
    EXPECT_EQ(code_of([&] { parse_map(Json::parse(R"({"coeffs": []})"), r); }), errc::invalid_input);
}

TEST(MapJson, RoundTrip)
{
    const auto r = make_standard_ring(2, 2, 1, 10);
    const auto j = Json::parse(R"({"type": "series", "coeffs": [[[0, 1]], 3, [0, [1, 1]]], "tail_val": 8})");
    const auto s = parse_map(j, r);
    const auto back = parse_map(to_json(s), r);
    ASSERT_EQ(back.coeffs.size(), s.coeffs.size());
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) EXPECT_EQ(back[i], s[i]);
    EXPECT_EQ(back.tail_val, 8);
}

TEST(TreeJson, DeterministicAndComplete)
{
    const auto r = make_standard_ring(2, 1, 1, 20);
    const auto phi = ConvergentSeries::from_ints(r, {0, 3});
    const auto a = to_json(decompose(phi, 6)).dump();
    const auto b = to_json(decompose(phi, 6)).dump();
    EXPECT_EQ(a, b);
    const auto j = Json::parse(a);
    for (const char* key : {"ring", "map", "max_level", "trust_predictions", "hypothesis", "nodes", "components", "summary",
                            "partition"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_TRUE(j["partition"]["ok"].get<bool>());
    EXPECT_EQ(j["nodes"][0]["role"], "root");
    EXPECT_TRUE(j["nodes"][0]["parent"].is_null());
}

TEST(TreeJson, InfiniteValuationsAreStrings)
{
    const auto r = make_standard_ring(2, 1, 1, 20);
    const auto j = to_json(decompose(ConvergentSeries::from_ints(r, {0, 3}), 4));
    bool seen = false;
    for (const auto& n : j["nodes"])
        if (n.contains("B") && n["B"] == "inf") seen = true;
    EXPECT_TRUE(seen);
}

TEST(TreeDot, LabelsAndColours)
{
    const auto r = make_standard_ring(2, 1, 1, 20);
    const auto dot = to_dot(decompose(ConvergentSeries::from_ints(r, {1, 1}), 6));
    EXPECT_NE(dot.find("digraph decomposition"), std::string::npos);
    EXPECT_NE(dot.find("\"O_K\""), std::string::npos);
    EXPECT_NE(dot.find("palegreen"), std::string::npos);
    const auto sq = to_dot(decompose(ConvergentSeries::from_ints(r, {0, 0, 1}), 6));
    EXPECT_NE(sq.find("tomato"), std::string::npos);
}

TEST(AffineJson, CaseC)
{
    const auto r = make_standard_ring(2, 1, 1, 20);
    const auto j = to_json(affine_classify(literal_from_int(3), literal_from_int(0), r), 5);
    EXPECT_EQ(j["case"], "C");
    EXPECT_EQ(j["E_head"], (std::vector<int>{2, 1, 1, 1, 1}));
    EXPECT_EQ(j["component_count"], 1);
    EXPECT_EQ(j["fixed_point"]["valuation"], "inf");
}

TEST(ValuationJson, Infinity)
{
    EXPECT_EQ(valuation_json(kInfinity), "inf");
    EXPECT_EQ(valuation_json(3), 3);
}
