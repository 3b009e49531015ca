#include <gtest/gtest.h>

#include <random>

#include <crsphere/expr_parser.hpp>
#include <crsphere/fixtures.hpp>
#include <crsphere/invariants.hpp>

using namespace crs;

namespace {

const VarList kOde{"x", "y", "yx"};

ComplexDefining rigid(const char* xi, int k) { return rigidDefining(parseSeries(xi, rigidVars(), k)); }

} // namespace

TEST(Tresse, OracleZero) {
    InvariantPair p = tresseInvariants({TruncSeries(kOde, 10)});
    EXPECT_TRUE(p.i1.isZero());
    EXPECT_TRUE(p.i2.isZero());
}

TEST(Tresse, OracleQuartic) {
    InvariantPair p = tresseInvariants({parseSeries("yx^4", kOde, kExactOrder)});
    EXPECT_EQ(p.i1, parseSeries("24", kOde, kExactOrder));
}

TEST(Tresse, I2Hand) {
    // F = y: I2 = 6 F_yy - 3 F_y F_pp + ... = 0; F = y^2: I2 = 12.
    EXPECT_TRUE(tresseInvariants({parseSeries("y", kOde, kExactOrder)}).i2.isZero());
    EXPECT_EQ(tresseInvariants({parseSeries("y^2", kOde, kExactOrder)}).i2, parseSeries("12", kOde, kExactOrder));
    // F = y*yx: D(F_pp) = 0, F_yp = 1, D(1) = 0, F_yy = 0, F_pp = 0 -> I2 = 4*F_p*F_yp = 4y.
    EXPECT_EQ(tresseInvariants({parseSeries("y*yx", kOde, kExactOrder)}).i2, parseSeries("4*y", kOde, kExactOrder));
}

TEST(Tresse, ExpandedI2AgreesOnRandomF) {
    std::mt19937_64 rng(17);
    for (int n = 0; n < 20; ++n) {
        OdeRhs f{fixtures::randomPoly(rng, kOde, 0, 4, 8)};
        EXPECT_TRUE((tresseInvariants(f).i2 - tresseI2Expanded(f)).isZero());
    }
}

TEST(Tresse, RejectsWrongArity) {
    EXPECT_THROW(tresseInvariants({parseSeries("x", VarList{"x", "y"}, 4)}), DomainError);
}

TEST(Aj4, OracleHeisenberg) { EXPECT_TRUE(aj4(fixtures::heisenberg(10)).isZero()); }

TEST(Aj4, OracleRigidSpecialization) {
    const int k = 10;
    TruncSeries xi = parseSeries("z*zb + z^2*zb^2", rigidVars(), k);
    auto x = [&](int i, int j) { return xi.derive(std::vector<int>{i, j}); };
    TruncSeries X = x(1, 1);
    TruncSeries expected = divide(x(2, 2) * X - x(2, 1) * x(1, 2), X * X * X).embedded(thetaVars());
    TruncSeries got = aj4(rigidDefining(xi));
    EXPECT_TRUE((got - expected).isZero());
    EXPECT_FALSE(got.isZero());
}

TEST(Aj4, ClosedFormEqualsDoubleOperator) {
    ComplexDefining d = rigid("z*zb + z^2*zb^2", 10);
    SolutionManifold m = SolutionManifold::fromDefining(d);
    TransferOps ops = firstJetTransfer(m);
    TruncSeries viaOps = applyDyx(ops, applyDyx(ops, m.q.derive(0).derive(0)));
    EXPECT_TRUE((aj4ClosedForm(d) - viaOps).isZero());
}

TEST(Aj4, TransformedHeisenbergKeepsAj6Zero) {
    ComplexDefining t = transformDefining(fixtures::heisenberg(10), fixtures::biholo({"z", "w + w^2"}, 10), 10);
    TruncSeries a4 = aj4(t);
    TruncSeries a6 = aj6(t, a4);
    EXPECT_TRUE(a6.isZero());
    EXPECT_GE(a6.knownOrder(), 3);
}

TEST(Aj4, LeviDegenerateThrows) { EXPECT_THROW(aj4(ComplexDefining::fromTheta(parseSeries("-wb", thetaVars(), 8))), LeviDegenerate); }

TEST(Aj6, OracleHeisenberg) {
    TruncSeries a6 = aj6(fixtures::heisenberg(10));
    EXPECT_TRUE(a6.isZero());
}

TEST(Aj6, SphericalImagesVanish) {
    for (const auto& map : fixtures::sphericalMaps()) {
        ComplexDefining t = transformDefining(fixtures::heisenberg(10), fixtures::biholo(map, 10), 10);
        EXPECT_TRUE(aj6(t).isZero()) << map.f << ", " << map.g;
    }
}

TEST(Aj6, CanonicalRigidNonzero) {
    TruncSeries a6 = aj6(rigid(fixtures::kCanonicalXi, 12));
    ASSERT_FALSE(a6.isZero());
    auto w = a6.lowestTerm();
    EXPECT_EQ(w->index.exponents(3), (std::vector<int>{0, 0, 0}));
    EXPECT_EQ(w->coeff, GaussRat(48));
}

TEST(RigidInvariant, Oracles) {
    EXPECT_TRUE(rigidInvariant(parseSeries("z*zb", rigidVars(), 10)).isZero());
    TruncSeries r = rigidInvariant(parseSeries(fixtures::kCanonicalXi, rigidVars(), 12));
    ASSERT_FALSE(r.isZero());
    EXPECT_EQ(r.lowestTerm()->coeff, GaussRat(48));
}

TEST(RigidInvariant, Errors) {
    EXPECT_THROW(rigidInvariant(parseSeries("z*zb + i*z^2*zb", rigidVars(), 8)), DomainError);
    EXPECT_THROW(rigidInvariant(parseSeries("z^2*zb^2", rigidVars(), 8)), LeviDegenerate);
}

TEST(RigidInvariant, EqualsAj6OverX7AtHigherOrder) {
    const int k = 12;
    for (const char* xiText : {"z*zb + z^2*zb^2", fixtures::kCanonicalXi, fixtures::kImaginaryXi}) {
        TruncSeries xi = parseSeries(xiText, rigidVars(), k);
        ComplexDefining d = rigidDefining(xi);
        TruncSeries X = xi.derive(std::vector<int>{1, 1});
        TruncSeries lhs = rigidInvariant(xi).embedded(thetaVars());
        TruncSeries rhs = divide(aj6(d), X.pow(7).embedded(thetaVars()));
        EXPECT_TRUE((lhs - rhs).isZero()) << xiText;
        EXPECT_GE(std::min(lhs.knownOrder(), rhs.knownOrder()), 4) << xiText;
    }
}

TEST(TransferredI1, EqualsAj6OverDelta7) {
    const int k = 8;
    for (const auto& fx : fixtures::corpus(k)) {
        TruncSeries i1 = transferredI1(fx.defining, k);
        TruncSeries delta = leviDelta(fx.defining).delta;
        TruncSeries rhs = divide(aj6(fx.defining), delta.pow(7));
        EXPECT_TRUE((i1 - rhs).isZero()) << fx.name;
    }
}

TEST(Dual, OracleHeisenbergIsConjugate) {
    SolutionManifold m = SolutionManifold::fromDefining(fixtures::heisenberg(8));
    SolutionManifold dual = dualManifold(m, 8);
    EXPECT_EQ(dual.q.vars(), (VarList{"zb", "z", "w"}));
    EXPECT_EQ(toText(dual.q), toText(parseSeries("-w + z*zb", VarList{"zb", "z", "w"}, 8)));
}

TEST(Dual, OracleAffine) {
    SolutionManifold m = SolutionManifold::fromQ(parseSeries("-b + x*a", VarList{"x", "a", "b"}, 8));
    SolutionManifold dual = dualManifold(m, 8);
    EXPECT_EQ(dual.q, parseSeries("-y + a*x", VarList{"a", "x", "y"}, 8));
}

TEST(Dual, DoubleDualIsIdentity) {
    for (const auto& fx : fixtures::corpus(8)) {
        SolutionManifold m = SolutionManifold::fromDefining(fx.defining);
        SolutionManifold dd = dualManifold(dualManifold(m, 8), 8);
        EXPECT_EQ(dd.q.vars(), m.q.vars());
        EXPECT_TRUE((dd.q - m.q.truncated(8)).isZero()) << fx.name;
    }
}

TEST(Dual, ConjugateOfTransformedFixture) {
    ComplexDefining t = transformDefining(fixtures::heisenberg(8), fixtures::biholo({"z + z*w", "w + w^2"}, 8), 8);
    SolutionManifold dual = dualManifold(SolutionManifold::fromDefining(t), 8);
    TruncSeries conj = conjugateSeries(t.theta, crConjugation());
    EXPECT_TRUE((reorder(dual.q, conj.vars()) - conj).isZero());
}

TEST(Koppisch, Heisenberg) {
    KoppischResult r = koppischCheck(SolutionManifold::fromDefining(fixtures::heisenberg(8)), 8);
    EXPECT_TRUE(r.i1Vanishes && r.i2Vanishes && r.dualI1Vanishes && r.dualI2Vanishes);
    EXPECT_TRUE(r.equivalencesHold());
}

TEST(Koppisch, Corpus) {
    for (const auto& fx : fixtures::corpus(8)) {
        KoppischResult r = koppischCheck(SolutionManifold::fromDefining(fx.defining), 8);
        EXPECT_TRUE(r.equivalencesHold()) << fx.name;
        if (fx.spherical) {
            EXPECT_TRUE(r.i1Vanishes && r.i2Vanishes && r.dualI1Vanishes && r.dualI2Vanishes) << fx.name;
        } else {
            EXPECT_FALSE(r.i1Vanishes || r.i2Vanishes || r.dualI1Vanishes || r.dualI2Vanishes) << fx.name;
        }
    }
}

TEST(Koppisch, NonConjugateFamilyEquivalence) {
    // A family that does not come from a hypersurface.
    SolutionManifold m = SolutionManifold::fromQ(parseSeries("-b + x*a + x^2*a^3", VarList{"x", "a", "b"}, 8));
    EXPECT_TRUE(koppischCheck(m, 8).equivalencesHold());
}

TEST(Verdict, OracleHeisenberg) {
    Report r = sphericalityVerdict(fixtures::heisenberg(10), 10);
    EXPECT_EQ(r.verdict, Verdict::SphericalToOrder);
    EXPECT_GE(r.testedOrder, 4);
    EXPECT_EQ(r.deltaAtOrigin, GaussRat(1));
    EXPECT_FALSE(r.witnessMonomial);
}

TEST(Verdict, OracleFlat) {
    Report r = sphericalityVerdict(ComplexDefining::fromTheta(parseSeries("-wb", thetaVars(), 10)), 10);
    EXPECT_EQ(r.verdict, Verdict::LeviDegenerate);
    EXPECT_FALSE(r.witnessMonomial);
}

TEST(Verdict, OracleRealityViolated) {
    Report r = sphericalityVerdict(ComplexDefining::fromTheta(parseSeries("-wb + i*z*zb", thetaVars(), 10)), 10);
    EXPECT_EQ(r.verdict, Verdict::RealityViolated);
    EXPECT_EQ(*r.witnessMonomial, (std::vector<int>{1, 1, 0}));
    EXPECT_EQ(*r.witnessCoefficient, GaussRat(0, 2));
}

TEST(Verdict, OracleCanonicalRigid) {
    Report r = sphericalityVerdict(rigid(fixtures::kCanonicalXi, 12), 12);
    EXPECT_EQ(r.verdict, Verdict::NonSpherical);
    EXPECT_EQ(*r.witnessMonomial, (std::vector<int>{0, 0, 0}));
    EXPECT_EQ(*r.witnessCoefficient, GaussRat(48));
    EXPECT_EQ(r.testedOrder, 6);
}

TEST(Verdict, TimingsOnlyWhenRequested) {
    EXPECT_TRUE(sphericalityVerdict(fixtures::heisenberg(8), 8).timings.empty());
    EXPECT_EQ(sphericalityVerdict(fixtures::heisenberg(8), 8, true).timings.size(), 4u);
}
