#ifndef CRSPHERE_INVARIANTS_HPP
#define CRSPHERE_INVARIANTS_HPP

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cr_defining.hpp"
#include "errors.hpp"
#include "ode_transfer.hpp"
#include "report.hpp"
#include "trunc_series.hpp"

namespace crs {

struct InvariantPair {
    TruncSeries i1;
    TruncSeries i2;
};

namespace detail {

/// Total derivative D = d_x + p d_y + F d_p on series over (x, y, p).
inline TruncSeries totalD(const TruncSeries& f, const TruncSeries& g) {
    TruncSeries p = TruncSeries::variable(f.vars(), f.vars()[2]);
    return g.derive(0) + p * g.derive(1) + f * g.derive(2);
}

inline TruncSeries d(const TruncSeries& f, int nx, int ny, int np) {
    return f.derive(std::vector<int>{nx, ny, np});
}

} // namespace detail

/// I1 = F_pppp and
/// I2 = D(D(F_pp)) - F_p D(F_pp) - 4 D(F_yp) + 6 F_yy - 3 F_y F_pp + 4 F_p F_yp.
inline InvariantPair tresseInvariants(const OdeRhs& ode) {
    const TruncSeries& f = ode.f;
    if (f.arity() != 3) throw DomainError("ODE right-hand side must be a series in (x, y, y_x)");
    using detail::d;
    using detail::totalD;
    TruncSeries fpp = d(f, 0, 0, 2);
    TruncSeries fp = d(f, 0, 0, 1);
    TruncSeries fyp = d(f, 0, 1, 1);
    TruncSeries dfpp = totalD(f, fpp);
    TruncSeries i2 = totalD(f, dfpp) - fp * dfpp - GaussRat(4) * totalD(f, fyp) + GaussRat(6) * d(f, 0, 2, 0) -
                     GaussRat(3) * d(f, 0, 1, 0) * fpp + GaussRat(4) * fp * fyp;
    return {d(f, 0, 0, 4), i2};
}

/// I2 with D(D(G)) expanded by hand (G = F_pp):
///   G_xx + 2p G_xy + p^2 G_yy + 2F G_xp + 2pF G_yp + F^2 G_pp + F G_y
///   + (F_x + p F_y + F F_p) G_p.
inline TruncSeries tresseI2Expanded(const OdeRhs& ode) {
    const TruncSeries& f = ode.f;
    using detail::d;
    TruncSeries p = TruncSeries::variable(f.vars(), f.vars()[2]);
    TruncSeries g = d(f, 0, 0, 2);
    TruncSeries ddg = d(g, 2, 0, 0) + GaussRat(2) * p * d(g, 1, 1, 0) + p * p * d(g, 0, 2, 0) +
                      GaussRat(2) * f * d(g, 1, 0, 1) + GaussRat(2) * p * f * d(g, 0, 1, 1) +
                      f * f * d(g, 0, 0, 2) + f * d(g, 0, 1, 0) +
                      (d(f, 1, 0, 0) + p * d(f, 0, 1, 0) + f * d(f, 0, 0, 1)) * d(g, 0, 0, 1);
    TruncSeries dg = d(g, 1, 0, 0) + p * d(g, 0, 1, 0) + f * d(g, 0, 0, 1);
    TruncSeries fyp = d(f, 0, 1, 1);
    TruncSeries dfyp = d(fyp, 1, 0, 0) + p * d(fyp, 0, 1, 0) + f * d(fyp, 0, 0, 1);
    return ddg - d(f, 0, 0, 1) * dg - GaussRat(4) * dfyp + GaussRat(6) * d(f, 0, 2, 0) -
           GaussRat(3) * d(f, 0, 1, 0) * g + GaussRat(4) * d(f, 0, 0, 1) * fyp;
}

/// AJ4 from its closed formula in the fourth jet of Theta, written with
/// explicit 2x2 determinants |p q; r s| = p s - q r.
inline TruncSeries aj4ClosedForm(const ComplexDefining& cd) {
    QJet t(cd.theta); // x = z, a = zb, b = wb
    auto det2 = [](const TruncSeries& p, const TruncSeries& q, const TruncSeries& r, const TruncSeries& s) {
        return p * s - q * r;
    };
    const auto &tzb = t.d("a"), &twb = t.d("b");
    const auto &tzzb = t.d("xa"), &tzwb = t.d("xb");
    TruncSeries levi = det2(tzb, twb, tzzb, tzwb);
    if (!levi.isUnit()) throw LeviDegenerate();
    const GaussRat two(2);

    TruncSeries num = t.d("xxaa") * (twb * twb * levi) - two * t.d("xxab") * (tzb * twb * levi) +
                      t.d("xxbb") * (tzb * tzb * levi);
    num = num + t.d("xxa") * (tzb * tzb * det2(twb, t.d("bb"), tzwb, t.d("xbb")) -
                              two * tzb * twb * det2(twb, t.d("ab"), tzwb, t.d("xab")) +
                              twb * twb * det2(twb, t.d("aa"), tzwb, t.d("xaa")));
    num = num + t.d("xxb") * (-tzb * tzb * det2(tzb, t.d("bb"), tzzb, t.d("xbb")) +
                              two * tzb * twb * det2(tzb, t.d("ab"), tzzb, t.d("xab")) -
                              twb * twb * det2(tzb, t.d("aa"), tzzb, t.d("xaa")));
    return divide(num, levi * levi * levi);
}

/// AJ4 computed twice: closed formula and second-jet transfer of T = Theta_zz.
inline TruncSeries aj4(const ComplexDefining& cd) {
    TruncSeries closed = aj4ClosedForm(cd);
    SolutionManifold m = SolutionManifold::fromDefining(cd);
    TruncSeries transferred = secondJetTransfer(m, cd.theta.derive(0).derive(0)).gyxyx;
    if (!(closed - transferred).isZero())
        throw InternalError("aj4: closed formula and second-jet transfer disagree");
    return closed.knownOrder() <= transferred.knownOrder() ? closed : transferred;
}

/// L^2[AJ4] before the delta^7 denominator is cleared.
inline TruncSeries aj6Rational(const ComplexDefining& cd, const TruncSeries& aj4Value) {
    TransferOps ops = firstJetTransfer(SolutionManifold::fromDefining(cd));
    return applyDyx(ops, applyDyx(ops, aj4Value));
}

/// delta^7 * L^2[AJ4], L = (-Theta_wb d_zb + Theta_zb d_wb) / delta.
inline TruncSeries aj6(const ComplexDefining& cd, const TruncSeries& aj4Value) {
    TransferOps ops = firstJetTransfer(SolutionManifold::fromDefining(cd));
    return ops.delta.pow(7) * applyDyx(ops, applyDyx(ops, aj4Value));
}
inline TruncSeries aj6(const ComplexDefining& cd) { return aj6(cd, aj4(cd)); }

/// Seven-term rigid invariant of Xi(z, zb), X = Xi_{z zb}:
///   Xi_{z^2 zb^4}/X^4 - 6 Xi_{z^2 zb^3} Xi_{z zb^2}/X^5 - 4 Xi_{z^2 zb^2} Xi_{z zb^3}/X^5
///   - Xi_{z^2 zb} Xi_{z zb^4}/X^5 + 15 Xi_{z^2 zb^2} Xi_{z zb^2}^2/X^6
///   + 10 Xi_{z zb^3} Xi_{z^2 zb} Xi_{z zb^2}/X^6 - 15 Xi_{z^2 zb} Xi_{z zb^2}^3/X^7
inline TruncSeries rigidInvariant(const TruncSeries& xiIn) {
    if (xiIn.arity() != 2) throw DomainError("Xi must be a series in (z, zb)");
    TruncSeries xi = xiIn.renamed({{xiIn.vars()[0], "z"}, {xiIn.vars()[1], "zb"}});
    TruncSeries mirror = reorder(conjugateSeries(xi, {{"z", "zb"}, {"zb", "z"}}), rigidVars());
    if (mirror != xi) throw DomainError("Xi is not Hermitian-symmetric: reality violated");
    auto x = [&](int i, int j) { return xi.derive(std::vector<int>{i, j}); };
    TruncSeries X = x(1, 1);
    if (!X.isUnit()) throw LeviDegenerate();
    TruncSeries X2 = X * X, X3 = X2 * X;
    TruncSeries num = x(2, 4) * X3 - GaussRat(6) * x(2, 3) * x(1, 2) * X2 - GaussRat(4) * x(2, 2) * x(1, 3) * X2 -
                      x(2, 1) * x(1, 4) * X2 + GaussRat(15) * x(2, 2) * x(1, 2) * x(1, 2) * X +
                      GaussRat(10) * x(1, 3) * x(2, 1) * x(1, 2) * X - GaussRat(15) * x(2, 1) * x(1, 2).pow(3);
    return divide(num, X3 * X3 * X);
}

/// Transferred Tresse I1: I1 of the eliminated ODE pulled back along
/// x -> z, y -> Theta, y_x -> Theta_z. Equals aj6 / delta^7.
inline TruncSeries transferredI1(const ComplexDefining& cd, int order) {
    SolutionManifold m = SolutionManifold::fromDefining(cd);
    OdeRhs ode = associatedOde(m, order);
    return transferToSolutionSpace(m, tresseInvariants(ode).i1);
}

/// Solves y = Q(x, a, b) for b = Q*(a, x, y). The result is read as a
/// solution manifold with roles (x, a, b) := (a, x, y).
inline SolutionManifold dualManifold(const SolutionManifold& m, int order) {
    const std::string& yName = m.odeVars[1];
    const VarList space{m.a(), m.x(), yName, m.b()};
    TruncSeries eq = m.q.truncated(order).embedded(space) - TruncSeries::variable(space, yName);
    std::map<std::string, TruncSeries> sol;
    try {
        sol = implicitSolve({eq}, {m.b()}, order);
    } catch (const NotSolvable&) {
        throw NotSolvable("dual: y = Q(x, a, b) cannot be solved for b");
    }
    std::string dualY = m.b();
    return SolutionManifold::fromQ(sol.at(m.b()), {m.a(), dualY, dualY + "_" + m.a()});
}

struct KoppischResult {
    bool i1Vanishes = false;
    bool i2Vanishes = false;
    bool dualI1Vanishes = false;
    bool dualI2Vanishes = false;
    int testedOrder = 0;

    /// I1 = 0 iff dual I2 = 0, and I2 = 0 iff dual I1 = 0.
    bool equivalencesHold() const { return i1Vanishes == dualI2Vanishes && i2Vanishes == dualI1Vanishes; }
};

inline KoppischResult koppischCheck(const SolutionManifold& m, int order) {
    SolutionManifold dual = dualManifold(m, order);
    if (!dual.solvable) throw NotSolvable("dual solution manifold is not solvable with respect to the parameters");
    InvariantPair e = tresseInvariants(associatedOde(m, order));
    InvariantPair s = tresseInvariants(associatedOde(dual, order));
    KoppischResult r;
    r.i1Vanishes = e.i1.isZero();
    r.i2Vanishes = e.i2.isZero();
    r.dualI1Vanishes = s.i1.isZero();
    r.dualI2Vanishes = s.i2.isZero();
    r.testedOrder = std::min({e.i1.knownOrder(), e.i2.knownOrder(), s.i1.knownOrder(), s.i2.knownOrder()});
    return r;
}

namespace detail {

class StageClock {
public:
    explicit StageClock(std::map<std::string, double>* sink) : sink_(sink) {}
    void mark(const std::string& stage) {
        auto now = std::chrono::steady_clock::now();
        if (sink_) (*sink_)[stage] = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
    }

private:
    std::map<std::string, double>* sink_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

inline void setWitness(Report& r, const TruncSeries& s) {
    if (auto w = s.lowestTerm()) {
        r.witnessMonomial = w->index.exponents(s.arity());
        r.witnessCoefficient = w->coeff;
    }
}

} // namespace detail

/// Reality, then Levi nondegeneracy, then vanishing of AJ6 to the order the
/// input supports. Never throws on mathematical outcomes.
inline Report sphericalityVerdict(const ComplexDefining& cdIn, int order, bool recordTimings = false) {
    Report r;
    detail::StageClock clock(recordTimings ? &r.timings : nullptr);
    ComplexDefining cd = cdIn;
    cd.theta = cd.theta.truncated(order);

    RealityCheck rc = verifyReality(cd, cd.theta.knownOrder());
    clock.mark("reality");
    LeviResult levi = leviDelta(cd);
    r.deltaAtOrigin = levi.delta.constantTerm();
    if (!rc.pass) {
        r.verdict = Verdict::RealityViolated;
        r.testedOrder = rc.residual.knownOrder();
        detail::setWitness(r, rc.residual);
        return r;
    }
    clock.mark("levi");
    if (!levi.nondegenerate) {
        r.verdict = Verdict::LeviDegenerate;
        r.testedOrder = levi.delta.knownOrder();
        return r;
    }
    TruncSeries a4 = aj4(cd);
    clock.mark("aj4");
    TruncSeries a6 = aj6(cd, a4);
    clock.mark("aj6");
    r.testedOrder = a6.knownOrder();
    if (a6.isZero()) {
        r.verdict = Verdict::SphericalToOrder;
    } else {
        r.verdict = Verdict::NonSpherical;
        detail::setWitness(r, a6);
    }
    return r;
}

} // namespace crs

#endif // CRSPHERE_INVARIANTS_HPP
