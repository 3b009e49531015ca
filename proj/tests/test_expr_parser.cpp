#include <gtest/gtest.h>

#include <crsphere/expr_parser.hpp>
#include <crsphere/report.hpp>

using namespace crs;

namespace {
const VarList kV{"z", "zb", "wb"};
}

TEST(ParseSeries, OracleHeisenberg) {
    TruncSeries t = parseSeries("-wb + z*zb", kV, 10);
    EXPECT_EQ(t.knownOrder(), 10);
    EXPECT_EQ(t.coefficient({0, 0, 1}), GaussRat(-1));
    EXPECT_EQ(t.coefficient({1, 1, 0}), GaussRat(1));
    EXPECT_EQ(t.size(), 2u);
}

TEST(ParseSeries, OracleZero) { EXPECT_TRUE(parseSeries("0", kV, 10).isZero()); }

TEST(ParseSeries, OracleHalfImaginary) {
    TruncSeries t = parseSeries("(1/2)*i*z^2 - (1/2)*i*zb^2", kV, 10);
    EXPECT_EQ(t.coefficient({2, 0, 0}), GaussRat::ratio(0, 1, 1, 2));
    EXPECT_EQ(t.coefficient({0, 2, 0}), GaussRat::ratio(0, 1, -1, 2));
}

TEST(ParseSeries, WhitespaceAndPrecedence) {
    EXPECT_EQ(parseSeries(" 2 * z ^ 2 + -3*zb", kV, 5), parseSeries("2*z^2-3*zb", kV, 5));
    EXPECT_EQ(toText(parseSeries("-z^2", kV, 5)), "-z^2");
    EXPECT_EQ(toText(parseSeries("(z + zb)^2", kV, 5)), "zb^2 + 2*z*zb + z^2");
}

TEST(ParseSeries, TruncatesToOrder) {
    EXPECT_EQ(toText(parseSeries("(1 + z)^5", VarList{"z"}, 3)), "1 + 5*z + 10*z^2");
}

TEST(ParseSeries, ImplicitMultiplicationRejected) {
    try {
        parseSeries("2i", kV, 5);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 1u);
    }
    EXPECT_THROW(parseSeries("2 z", kV, 5), ParseError);
}

TEST(ParseSeries, SyntaxErrorPosition) {
    try {
        parseSeries("z + * zb", kV, 5);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
        EXPECT_NE(std::string(e.what()).find("syntax error"), std::string::npos);
    }
    EXPECT_THROW(parseSeries("(z + zb", kV, 5), ParseError);
    EXPECT_THROW(parseSeries("", kV, 5), ParseError);
    EXPECT_THROW(parseSeries("z^", kV, 5), ParseError);
}

TEST(ParseSeries, UndeclaredVariable) {
    try {
        parseSeries("z + w", kV, 5);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("undeclared variable 'w'"), std::string::npos);
    }
}

TEST(ParseSeries, ExponentOverflow) {
    EXPECT_THROW(parseSeries("z^256", kV, 5), ParseError);
    EXPECT_THROW(parseSeries("z^99999999999", kV, 5), ParseError);
    EXPECT_NO_THROW(parseSeries("z^255", kV, 5));
}

TEST(ParseSeries, ZeroDenominator) { EXPECT_THROW(parseSeries("1/0*z", kV, 5), ParseError); }

TEST(ParseExpr, AstShape) {
    auto ast = parseExpr("-z^2 + (i)", kV);
    ASSERT_EQ(ast->kind, ExprAst::Kind::Add);
    EXPECT_EQ(ast->children[0]->kind, ExprAst::Kind::Neg);
    EXPECT_EQ(ast->children[0]->children[0]->kind, ExprAst::Kind::Pow);
    EXPECT_EQ(ast->children[0]->children[0]->exponent, 2u);
    EXPECT_EQ(ast->children[1]->kind, ExprAst::Kind::Paren);
    EXPECT_EQ(ast->children[1]->children[0]->kind, ExprAst::Kind::ImaginaryUnit);
}

TEST(ToText, ComplexCoefficientsRoundTrip) {
    TruncSeries f = parseSeries("(1/2 - 3*i)*z*zb^2 + i*wb - 7/3", kV, 9);
    EXPECT_EQ(parseSeries(toText(f), kV, 9), f);
}

// ---- reports -------------------------------------------------------------------

TEST(RenderReport, OracleSpherical) {
    Report r;
    r.verdict = Verdict::SphericalToOrder;
    r.testedOrder = 10;
    r.deltaAtOrigin = GaussRat(1);
    EXPECT_EQ(renderReport(r),
              R"({"verdict":"spherical-to-order","tested_order":10,"witness_monomial":null,)"
              R"("witness_coefficient":null,"delta_at_origin":{"re":"1/1","im":"0/1"},"timings":{}})");
}

TEST(RenderReport, OracleNonSphericalWitness) {
    Report r;
    r.verdict = Verdict::NonSpherical;
    r.testedOrder = 6;
    r.witnessMonomial = std::vector<int>{0, 2, 1};
    r.witnessCoefficient = GaussRat::ratio(-3, 4, 1, 2);
    r.deltaAtOrigin = GaussRat(2);
    std::string s = renderReport(r);
    EXPECT_NE(s.find(R"("witness_monomial":[0,2,1],"witness_coefficient":{"re":"-3/4","im":"1/2"})"),
              std::string::npos);
}

TEST(RenderReport, OracleLeviDegenerateHasNoWitness) {
    Report r;
    r.verdict = Verdict::LeviDegenerate;
    std::string s = renderReport(r);
    EXPECT_NE(s.find(R"("verdict":"levi-degenerate")"), std::string::npos);
    EXPECT_NE(s.find(R"("witness_monomial":null)"), std::string::npos);
}

TEST(RenderReport, KeyOrderAndDeterminism) {
    Report r;
    r.verdict = Verdict::NonSpherical;
    r.witnessMonomial = std::vector<int>{1, 0, 0};
    r.witnessCoefficient = GaussRat(5);
    r.timings = {{"z-stage", 1.5}, {"a-stage", 2.0}};
    r.series = {{"aj6", "5*z"}};
    Report copy = r;
    std::string s = renderReport(r);
    EXPECT_EQ(s, renderReport(copy));
    std::vector<std::size_t> at;
    for (const char* k : {"\"verdict\"", "\"tested_order\"", "\"witness_monomial\"", "\"witness_coefficient\"",
                          "\"delta_at_origin\"", "\"timings\"", "\"series\""})
        at.push_back(s.find(k));
    for (std::size_t i = 1; i < at.size(); ++i) EXPECT_LT(at[i - 1], at[i]);
    EXPECT_LT(s.find("a-stage"), s.find("z-stage"));
}

TEST(RenderReport, Pretty) {
    Report r;
    EXPECT_NE(renderReport(r, true).find("\n  \"tested_order\": 0"), std::string::npos);
}
