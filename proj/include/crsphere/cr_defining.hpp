#ifndef CRSPHERE_CR_DEFINING_HPP
#define CRSPHERE_CR_DEFINING_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gauss_rat.hpp"
#include "implicit_solve.hpp"
#include "trunc_series.hpp"

namespace crs {

// Formal variables. zb and wb stand for the conjugates of z and w after
// complexification; they are independent variables and never conjugated
// implicitly.
inline const VarList& thetaVars() {
    static const VarList v{"z", "zb", "wb"};
    return v;
}
inline const VarList& holoVars() {
    static const VarList v{"z", "w"};
    return v;
}
inline const VarList& realGraphVars() {
    static const VarList v{"x", "y", "v"};
    return v;
}
inline const VarList& rigidVars() {
    static const VarList v{"z", "zb"};
    return v;
}
/// Space of the reality residual Theta(z, zb, conj(Theta)(zb, z, w)) - w.
inline const VarList& realityVars() {
    static const VarList v{"z", "zb", "w"};
    return v;
}

/// Relabeling that turns Theta(z, zb, wb) into conj(Theta)(zb, z, w).
inline const std::map<std::string, std::string>& crConjugation() {
    static const std::map<std::string, std::string> m{{"z", "zb"}, {"zb", "z"}, {"wb", "w"}, {"w", "wb"}};
    return m;
}

/// Real hypersurface u = phi(x, y, v) with z = x + i*y, w = u + i*v.
struct RealGraph {
    TruncSeries phi;

    explicit RealGraph(TruncSeries p) : phi(std::move(p)) {
        if (phi.arity() != 3) throw DomainError("real graph: phi must be a series in (x, y, v)");
        phi = phi.renamed({{phi.vars()[0], "x"}, {phi.vars()[1], "y"}, {phi.vars()[2], "v"}});
        for (const auto& t : phi.terms()) {
            if (!t.coeff.isReal()) throw DomainError("real graph: phi has a non-real coefficient");
            if (t.index.degree() < 2)
                throw DomainError("real graph: phi must vanish at the origin together with its first derivatives");
        }
    }
};

/// Complex defining equation w = Theta(z, zb, wb).
struct ComplexDefining {
    TruncSeries theta;
    std::optional<int> realityChecked;
    std::optional<bool> leviNondegenerate;
    bool rigid = false;

    /// Validates Theta = -wb + (terms of degree >= 2) and detects rigidity.
    static ComplexDefining fromTheta(TruncSeries theta);
};

/// Origin-fixing holomorphic map (z, w) -> (f(z, w), g(z, w)).
struct Biholo {
    TruncSeries f;
    TruncSeries g;

    Biholo(TruncSeries fz, TruncSeries gw) : f(std::move(fz)), g(std::move(gw)) {
        if (f.arity() != 2 || g.arity() != 2) throw DomainError("biholomorphism components must be series in (z, w)");
        f = f.renamed({{f.vars()[0], "z"}, {f.vars()[1], "w"}});
        g = g.renamed({{g.vars()[0], "z"}, {g.vars()[1], "w"}});
        if (!f.constantTerm().isZero() || !g.constantTerm().isZero())
            throw DomainError("biholomorphism must fix the origin");
        GaussRat det = f.coefficient({1, 0}) * g.coefficient({0, 1}) - f.coefficient({0, 1}) * g.coefficient({1, 0});
        if (det.isZero()) throw DomainError("biholomorphism has a singular Jacobian at the origin");
    }

    static Biholo identity() {
        return Biholo(TruncSeries::variable(holoVars(), "z"), TruncSeries::variable(holoVars(), "w"));
    }
};

/// h2 o h1.
inline Biholo compose(const Biholo& h2, const Biholo& h1) {
    std::map<std::string, TruncSeries> images{{"z", h1.f}, {"w", h1.g}};
    return Biholo(substitute(h2.f, images, holoVars()), substitute(h2.g, images, holoVars()));
}

inline bool detectRigid(const ComplexDefining& d) {
    std::size_t wb = d.theta.indexOf("wb");
    for (const auto& t : d.theta.terms()) {
        if (t.index.exponent(wb) == 0) continue;
        if (t.index.degree() == 1 && t.coeff == GaussRat(-1)) continue;
        return false;
    }
    return true;
}

inline ComplexDefining ComplexDefining::fromTheta(TruncSeries theta) {
    if (theta.arity() != 3) throw DomainError("Theta must be a series in (z, zb, wb)");
    theta = theta.renamed({{theta.vars()[0], "z"}, {theta.vars()[1], "zb"}, {theta.vars()[2], "wb"}});
    if (theta.knownOrder() < 2) throw DomainError("Theta must be known at least through degree 1");
    if (!theta.constantTerm().isZero()) throw DomainError("Theta must vanish at the origin");
    if (!theta.coefficient({1, 0, 0}).isZero() || !theta.coefficient({0, 1, 0}).isZero() ||
        theta.coefficient({0, 0, 1}) != GaussRat(-1))
        throw DomainError("Theta must have the form -wb + (terms of degree >= 2)");
    ComplexDefining d{std::move(theta), std::nullopt, std::nullopt, false};
    d.rigid = detectRigid(d);
    return d;
}

/// Theta = -wb + Xi(z, zb).
inline ComplexDefining rigidDefining(const TruncSeries& xi) {
    if (xi.arity() != 2) throw DomainError("Xi must be a series in (z, zb)");
    TruncSeries x = xi.renamed({{xi.vars()[0], "z"}, {xi.vars()[1], "zb"}}).embedded(thetaVars());
    TruncSeries wb = TruncSeries::variable(thetaVars(), "wb");
    return ComplexDefining::fromTheta(x - wb);
}

/// Xi(z, zb) = Theta + wb of a rigid Theta.
inline TruncSeries rigidXi(const ComplexDefining& d) {
    if (!d.rigid) throw DomainError("Theta is not rigid");
    TruncSeries xi = d.theta + TruncSeries::variable(thetaVars(), "wb");
    std::vector<TruncSeries::Term> terms;
    terms.reserve(xi.size());
    for (const auto& t : xi.terms())
        terms.push_back({MultiIndex::fromExponents({t.index.exponent(0), t.index.exponent(1)}), t.coeff});
    return TruncSeries::fromTerms(rigidVars(), xi.knownOrder(), std::move(terms));
}

struct RealityCheck {
    bool pass = false;
    TruncSeries residual;
    std::optional<TruncSeries::Term> witness;
};

/// Residual Theta(z, zb, conj(Theta)(zb, z, w)) - w over (z, zb, w), to order K.
inline TruncSeries realityResidual(const TruncSeries& theta, int order) {
    TruncSeries conj = reorder(conjugateSeries(theta, crConjugation()), realityVars());
    TruncSeries composed = substitute(theta, {{"wb", conj}}, realityVars());
    return (composed - TruncSeries::variable(realityVars(), "w")).truncated(order);
}

inline RealityCheck verifyReality(const ComplexDefining& d, int order) {
    RealityCheck r;
    r.residual = realityResidual(d.theta, order);
    r.pass = r.residual.isZero();
    r.witness = r.residual.lowestTerm();
    return r;
}

struct LeviResult {
    TruncSeries delta;
    bool nondegenerate = false;
};

/// delta = Theta_zb*Theta_{z wb} - Theta_wb*Theta_{z zb}. Its value at the
/// origin is the 2x2 Jacobian determinant of (zb, wb) -> (Theta_z, Theta) at
/// the origin, so nonvanishing is Levi nondegeneracy in any coordinates.
inline LeviResult leviDelta(const ComplexDefining& d) {
    const TruncSeries& t = d.theta;
    TruncSeries tz = t.derive(0);
    TruncSeries delta = t.derive(1) * tz.derive(2) - t.derive(2) * tz.derive(1);
    bool nondeg = !delta.constantTerm().isZero();
    return {std::move(delta), nondeg};
}

/// Converts u = phi(x, y, v) into w = Theta(z, zb, wb) by solving
/// (w + wb)/2 = phi((z + zb)/2, (z - zb)/(2i), (w - wb)/(2i)) for w.
inline ComplexDefining toComplexDefining(const RealGraph& m, int order) {
    const VarList space{"z", "zb", "wb", "w"};
    auto var = [&](const char* n) { return TruncSeries::variable(space, n); };
    GaussRat half = GaussRat::ratio(1, 2);
    GaussRat minusHalfI = GaussRat::ratio(0, 1, -1, 2);
    std::map<std::string, TruncSeries> images{
        {"x", (var("z") + var("zb")) * half},
        {"y", (var("z") - var("zb")) * minusHalfI},
        {"v", (var("w") - var("wb")) * minusHalfI},
    };
    TruncSeries eq = substitute(m.phi.truncated(order), images, space) - (var("w") + var("wb")) * half;
    auto sol = implicitSolve({eq}, {"w"}, order);
    ComplexDefining d = ComplexDefining::fromTheta(sol.at("w"));
    RealityCheck rc = verifyReality(d, d.theta.knownOrder());
    if (!rc.pass) throw InternalError("toComplexDefining: converted Theta fails the reality identity");
    d.realityChecked = d.theta.knownOrder();
    d.leviNondegenerate = leviDelta(d).nondegenerate;
    return d;
}

/// Image of M under h. On the complexified graph {w = Theta(z, zb, wb)} the
/// map acts as (z, w, zb, wb) -> (f(z,w), g(z,w), conj(f)(zb,wb), conj(g)(zb,wb));
/// inverting (z, zb, wb) -> (z', zb', wb') and composing with g gives Theta'.
inline ComplexDefining transformDefining(const ComplexDefining& d, const Biholo& h, int order) {
    const VarList& src = thetaVars();
    TruncSeries theta = d.theta.truncated(order);
    std::map<std::string, TruncSeries> holo{{"z", TruncSeries::variable(src, "z")}, {"w", theta}};
    TruncSeries zImg = substitute(h.f, holo, src);
    TruncSeries wImg = substitute(h.g, holo, src);
    std::map<std::string, std::string> bar{{"z", "zb"}, {"w", "wb"}};
    TruncSeries zbImg = conjugateSeries(h.f, bar).embedded(src).truncated(order);
    TruncSeries wbImg = conjugateSeries(h.g, bar).embedded(src).truncated(order);

    const VarList joint{"zp", "zbp", "wbp", "z", "zb", "wb"};
    auto jv = [&](const char* n) { return TruncSeries::variable(joint, n); };
    std::vector<TruncSeries> eqs{zImg.embedded(joint) - jv("zp"), zbImg.embedded(joint) - jv("zbp"),
                                 wbImg.embedded(joint) - jv("wbp")};
    std::map<std::string, TruncSeries> inv;
    try {
        inv = implicitSolve(eqs, {"z", "zb", "wb"}, order);
    } catch (const NotSolvable&) {
        throw NotSolvable("transformDefining: image hypersurface is not graphed over (z', zb', wb')");
    }
    TruncSeries thetaNew = substitute(wImg, inv, VarList{"zp", "zbp", "wbp"});
    thetaNew = thetaNew.renamed({{"zp", "z"}, {"zbp", "zb"}, {"wbp", "wb"}});
    return ComplexDefining::fromTheta(std::move(thetaNew));
}

} // namespace crs

#endif // CRSPHERE_CR_DEFINING_HPP
