#include <gtest/gtest.h>

#include <random>

#include <crsphere/cr_defining.hpp>
#include <crsphere/expr_parser.hpp>
#include <crsphere/fixtures.hpp>

using namespace crs;

namespace {

ComplexDefining theta(const char* text, int k = 10) {
    return ComplexDefining::fromTheta(parseSeries(text, thetaVars(), k));
}

} // namespace

TEST(ComplexDefining, RejectsMalformed) {
    EXPECT_THROW(theta("wb + z*zb"), DomainError);
    EXPECT_THROW(theta("-wb + z"), DomainError);
    EXPECT_THROW(theta("1 - wb"), DomainError);
    EXPECT_THROW(ComplexDefining::fromTheta(parseSeries("-wb", VarList{"z", "wb"}, 5)), DomainError);
}

TEST(ToComplexDefining, OracleUnitSphereGraph) {
    RealGraph g(parseSeries("x^2 + y^2", realGraphVars(), 8));
    ComplexDefining d = toComplexDefining(g, 8);
    EXPECT_EQ(d.theta, parseSeries("-wb + 2*z*zb", thetaVars(), 8));
    EXPECT_EQ(d.realityChecked, 8);
    EXPECT_EQ(leviDelta(d).delta.constantTerm(), GaussRat(2));
    EXPECT_TRUE(d.rigid);
}

TEST(ToComplexDefining, OracleFlat) {
    ComplexDefining d = toComplexDefining(RealGraph(parseSeries("0", realGraphVars(), 6)), 6);
    EXPECT_EQ(toText(d.theta), "-wb");
    EXPECT_EQ(d.leviNondegenerate, false);
}

TEST(ToComplexDefining, OracleVDependent) {
    ComplexDefining d = toComplexDefining(RealGraph(parseSeries("x^2 + y^2 + v*(x^2 + y^2)", realGraphVars(), 8)), 8);
    EXPECT_FALSE(d.rigid);
    EXPECT_TRUE(verifyReality(d, 8).pass);
    EXPECT_EQ(d.theta.knownOrder(), 8);
}

TEST(RealGraph, Validation) {
    EXPECT_THROW(RealGraph(parseSeries("i*x^2", realGraphVars(), 5)), DomainError);
    EXPECT_THROW(RealGraph(parseSeries("x + y^2", realGraphVars(), 5)), DomainError);
}

TEST(VerifyReality, OracleHeisenberg) {
    for (int k : {3, 6, 10}) EXPECT_TRUE(verifyReality(theta("-wb + z*zb", k), k).pass);
}

TEST(VerifyReality, OracleHermitianRigid) { EXPECT_TRUE(verifyReality(theta("-wb + z*zb + z^2*zb^2"), 10).pass); }

TEST(VerifyReality, OracleImaginaryLevi) {
    RealityCheck rc = verifyReality(theta("-wb + i*z*zb"), 10);
    EXPECT_FALSE(rc.pass);
    ASSERT_TRUE(rc.witness);
    EXPECT_EQ(rc.witness->index.exponents(3), (std::vector<int>{1, 1, 0}));
    EXPECT_EQ(rc.witness->coeff, GaussRat(0, 2));
}

TEST(LeviDelta, OracleHeisenberg) {
    LeviResult r = leviDelta(theta("-wb + z*zb"));
    EXPECT_EQ(toText(r.delta), "1");
    EXPECT_TRUE(r.nondegenerate);
}

TEST(LeviDelta, OracleFlat) {
    LeviResult r = leviDelta(theta("-wb"));
    EXPECT_TRUE(r.delta.isZero());
    EXPECT_FALSE(r.nondegenerate);
}

TEST(LeviDelta, OracleRigidIsXiZZb) {
    ComplexDefining d = theta("-wb + z*zb + z^2*zb^3 - z^3*zb^2 + 5*z^4*zb");
    TruncSeries xi = parseSeries("z*zb + z^2*zb^3 - z^3*zb^2 + 5*z^4*zb", thetaVars(), 10);
    EXPECT_EQ(leviDelta(d).delta, derive(xi, "z", "zb").withKnownOrder(8));
}

TEST(DetectRigid, Oracles) {
    EXPECT_TRUE(detectRigid(theta("-wb + z*zb")));
    EXPECT_FALSE(detectRigid(theta("-wb + z*zb + z*zb*wb")));
    ComplexDefining d = toComplexDefining(RealGraph(parseSeries("x^2 + y^2 + v*x^2", realGraphVars(), 7)), 7);
    EXPECT_FALSE(d.rigid);
}

TEST(RigidXi, ExtractsXi) {
    ComplexDefining d = rigidDefining(parseSeries("z*zb + 2*z^3*zb", rigidVars(), 9));
    EXPECT_EQ(rigidXi(d), parseSeries("z*zb + 2*z^3*zb", rigidVars(), 9));
    EXPECT_THROW(rigidXi(theta("-wb + z*zb*wb + z*zb")), DomainError);
}

TEST(TransformDefining, OracleIdentity) {
    ComplexDefining h = fixtures::heisenberg(10);
    EXPECT_EQ(transformDefining(h, Biholo::identity(), 10).theta, h.theta);
}

TEST(TransformDefining, OracleSphericalImages) {
    ComplexDefining h = fixtures::heisenberg(10);
    for (const auto& m : fixtures::sphericalMaps()) {
        ComplexDefining t = transformDefining(h, fixtures::biholo(m, 10), 10);
        EXPECT_TRUE(verifyReality(t, 10).pass) << m.f << ", " << m.g;
        EXPECT_TRUE(leviDelta(t).nondegenerate);
        EXPECT_EQ(t.theta.knownOrder(), 10);
    }
    ComplexDefining t = transformDefining(h, fixtures::biholo(fixtures::sphericalMaps()[0], 10), 10);
    EXPECT_FALSE(t.rigid);
}

TEST(TransformDefining, NotGraphed) {
    // (z, w) -> (w, z) sends the complex tangent line to a transverse one.
    Biholo swap(parseSeries("w", holoVars(), 6), parseSeries("z", holoVars(), 6));
    EXPECT_THROW(transformDefining(fixtures::heisenberg(6), swap, 6), NotSolvable);
}

TEST(Biholo, Validation) {
    EXPECT_THROW(Biholo(parseSeries("1 + z", holoVars(), 4), parseSeries("w", holoVars(), 4)), DomainError);
    EXPECT_THROW(Biholo(parseSeries("z^2", holoVars(), 4), parseSeries("w", holoVars(), 4)), DomainError);
}

TEST(TransformDefining, CompositionMatchesSequentialApplication) {
    const int k = 7;
    ComplexDefining h = fixtures::heisenberg(k);
    Biholo h1 = fixtures::biholo({"z + z^2", "w"}, k);
    Biholo h2 = fixtures::biholo({"z + z*w", "w + i*w^2"}, k);
    ComplexDefining once = transformDefining(h, compose(h2, h1), k);
    ComplexDefining twice = transformDefining(transformDefining(h, h1, k), h2, k);
    EXPECT_EQ(once.theta, twice.theta);
}

TEST(VerifyReality, ConjugateEquationHasTheSameVerdict) {
    // conj(Theta)(zb, z, w) read back over (z, zb, wb) is again a defining
    // equation; it is real exactly when Theta is.
    std::mt19937_64 rng(7);
    for (int n = 0; n < 10; ++n) {
        TruncSeries xi = fixtures::randomHermitianXi(rng, 5, 8);
        if (n % 2) xi = xi + fixtures::randomPoly(rng, rigidVars(), 3, 4, 8);
        ComplexDefining d = rigidDefining(xi);
        TruncSeries conj = reorder(conjugateSeries(d.theta, crConjugation()), {"zb", "z", "w"});
        ComplexDefining dc = ComplexDefining::fromTheta(conj.renamed({{"zb", "z"}, {"z", "zb"}, {"w", "wb"}}));
        EXPECT_EQ(verifyReality(d, 8).pass, verifyReality(dc, 8).pass) << n;
    }
}
