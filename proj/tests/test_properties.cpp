// Randomized algebraic laws; 200 seeded cases per property, exact comparison
// at the common known order.
#include <gtest/gtest.h>

#include <random>

#include <crsphere/expr_parser.hpp>
#include <crsphere/implicit_solve.hpp>

#include "random_series.hpp"

using namespace crs;
using crs::testing::randomSeries;
using crs::testing::xyz;

namespace {

constexpr int kCases = 200;

::testing::AssertionResult equalToCommonOrder(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries d = a - b;
    if (d.isZero()) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "difference " << toText(d) << " (known order " << d.knownOrder() << ")";
}

} // namespace

TEST(Properties, AdditionIsCommutativeAndAssociative) {
    std::mt19937_64 rng(1001);
    for (int n = 0; n < kCases; ++n) {
        TruncSeries f = randomSeries(rng, 4, 2, 8), g = randomSeries(rng, 4, 2, 8), h = randomSeries(rng, 4, 2, 8);
        ASSERT_TRUE(equalToCommonOrder(f + g, g + f)) << n;
        ASSERT_TRUE(equalToCommonOrder((f + g) + h, f + (g + h))) << n;
        ASSERT_TRUE((f - f).isZero()) << n;
    }
}

TEST(Properties, MultiplicationIsCommutativeAndAssociative) {
    std::mt19937_64 rng(1002);
    for (int n = 0; n < kCases; ++n) {
        TruncSeries f = randomSeries(rng, 3, 2, 7), g = randomSeries(rng, 3, 2, 7), h = randomSeries(rng, 3, 2, 7);
        ASSERT_TRUE(equalToCommonOrder(f * g, g * f)) << n;
        ASSERT_TRUE(equalToCommonOrder((f * g) * h, f * (g * h))) << n;
    }
}

TEST(Properties, Distributivity) {
    std::mt19937_64 rng(1003);
    for (int n = 0; n < kCases; ++n) {
        TruncSeries f = randomSeries(rng, 3, 2, 7), g = randomSeries(rng, 3, 2, 7), h = randomSeries(rng, 3, 2, 7);
        ASSERT_TRUE(equalToCommonOrder(f * (g + h), f * g + f * h)) << n;
    }
}

TEST(Properties, MultiplicationKnownOrderRule) {
    std::mt19937_64 rng(1004);
    for (int n = 0; n < kCases; ++n) {
        TruncSeries f = randomSeries(rng, 3, 2, 7, 1), g = randomSeries(rng, 3, 2, 7, 1);
        int expected = std::min({f.knownOrder() + g.valuation(), g.knownOrder() + f.valuation(),
                                 f.knownOrder() + g.knownOrder()});
        ASSERT_EQ((f * g).knownOrder(), std::min(expected, kExactOrder)) << n;
    }
}

TEST(Properties, Leibniz) {
    std::mt19937_64 rng(1005);
    for (int n = 0; n < kCases; ++n) {
        TruncSeries f = randomSeries(rng, 4, 3, 8), g = randomSeries(rng, 4, 3, 8);
        for (const char* v : {"z", "zb", "wb"})
            ASSERT_TRUE(equalToCommonOrder(derive(f * g, v), derive(f, v) * g + f * derive(g, v))) << n << " " << v;
    }
}

TEST(Properties, MixedPartialsCommute) {
    std::mt19937_64 rng(1006);
    for (int n = 0; n < kCases; ++n) {
        TruncSeries f = randomSeries(rng, 5, 3, 9);
        ASSERT_EQ(derive(f, "z", "wb"), derive(f, "wb", "z")) << n;
    }
}

TEST(Properties, ChainRuleThroughSubstitution) {
    std::mt19937_64 rng(1007);
    for (int n = 0; n < kCases; ++n) {
        TruncSeries f = randomSeries(rng, 3, 3, 7);
        TruncSeries h = randomSeries(rng, 3, 3, 7, 1);
        // (f o (z -> h))_zb = f_z(h) h_zb + f_zb(h)
        std::map<std::string, TruncSeries> img{{"z", h}};
        TruncSeries lhs = derive(substitute(f, img, xyz()), "zb");
        TruncSeries rhs =
            substitute(derive(f, "z"), img, xyz()) * derive(h, "zb") + substitute(derive(f, "zb"), img, xyz());
        ASSERT_TRUE(equalToCommonOrder(lhs, rhs)) << n;
    }
}

TEST(Properties, DivideMultiplyRoundTrip) {
    std::mt19937_64 rng(1008);
    for (int n = 0; n < kCases; ++n) {
        TruncSeries f = randomSeries(rng, 4, 2, 8);
        TruncSeries g = randomSeries(rng, 4, 2, 8, 1) + TruncSeries::constant(xyz(), fixtures::smallGauss(rng, true) +
                                                                                        GaussRat(4));
        TruncSeries q = divide(f, g);
        ASSERT_EQ(q.knownOrder(), std::min(f.knownOrder(), g.knownOrder())) << n;
        ASSERT_TRUE(equalToCommonOrder(q * g, f)) << n;
        ASSERT_TRUE(equalToCommonOrder(divide(f * g, g), f)) << n;
    }
}

TEST(Properties, ImplicitSolveResidualVanishes) {
    std::mt19937_64 rng(1009);
    const VarList v{"x", "y", "u", "s"};
    for (int n = 0; n < kCases; ++n) {
        int k = static_cast<int>(fixtures::smallInt(rng, 3, 6));
        auto var = [&](const char* name) { return TruncSeries::variable(v, name, k); };
        // Jacobian in (u, s) at the origin is [[-1, 2], [1, 1]].
        TruncSeries linear = fixtures::randomPoly(rng, {"x", "y"}, 1, 1, k).embedded(v);
        TruncSeries e1 = -var("u") + GaussRat(2) * var("s") + linear + fixtures::randomPoly(rng, v, 2, 3, k);
        TruncSeries e2 = var("u") + var("s") + fixtures::randomPoly(rng, v, 2, 3, k);
        auto sol = implicitSolve({e1, e2}, {"u", "s"}, k);
        const VarList knowns{"x", "y"};
        for (const auto& e : {e1, e2}) {
            TruncSeries r = substitute(e, sol, knowns);
            ASSERT_TRUE(r.isZero()) << n << ": " << toText(r);
            ASSERT_EQ(r.knownOrder(), k) << n;
        }
    }
}

TEST(Properties, ConjugationIsAnInvolution) {
    std::mt19937_64 rng(1010);
    const std::map<std::string, std::string> swap{{"z", "zb"}, {"zb", "z"}};
    for (int n = 0; n < kCases; ++n) {
        TruncSeries f = randomSeries(rng, 4, 2, 8);
        TruncSeries back = conjugateSeries(conjugateSeries(f, swap), swap);
        ASSERT_EQ(back, f) << n;
        TruncSeries g = randomSeries(rng, 4, 2, 8);
        ASSERT_TRUE(equalToCommonOrder(reorder(conjugateSeries(f * g, swap), xyz()),
                                       reorder(conjugateSeries(f, swap), xyz()) *
                                           reorder(conjugateSeries(g, swap), xyz())))
            << n;
    }
}

TEST(Properties, TextRoundTrip) {
    std::mt19937_64 rng(1011);
    for (int n = 0; n < kCases; ++n) {
        TruncSeries f = randomSeries(rng, 5, 1, 9);
        ASSERT_EQ(parseSeries(toText(f), xyz(), f.knownOrder()), f) << n << ": " << toText(f);
    }
}
