#ifndef CRSPHERE_ODE_TRANSFER_HPP
#define CRSPHERE_ODE_TRANSFER_HPP

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cr_defining.hpp"
#include "errors.hpp"
#include "implicit_solve.hpp"
#include "third_jet_table.hpp"
#include "trunc_series.hpp"

namespace crs {

/// Graph y = Q(x, a, b) of a two-parameter family of curves. Q is addressed
/// positionally: variable 0 is x, 1 is a, 2 is b. `odeVars` names the jet
/// coordinates (x, y, y_x) of the associated ODE; its first entry must be
/// the name of x.
struct SolutionManifold {
    TruncSeries q;
    VarList odeVars;
    bool solvable = false;

    static SolutionManifold fromQ(TruncSeries q, VarList odeVars = {"x", "y", "yx"}) {
        if (q.arity() != 3) throw DomainError("solution manifold: Q must be a series in three variables");
        if (odeVars.size() != 3 || odeVars[0] != q.vars()[0])
            throw DomainError("solution manifold: ODE variables must be (x, y, y_x) with x shared with Q");
        for (std::size_t i = 1; i < 3; ++i)
            if (q.hasVar(odeVars[i])) throw DomainError("solution manifold: ODE variable '" + odeVars[i] + "' clashes with Q");
        // Linear part of (a, b) -> (Q(0,a,b), Q_x(0,a,b)).
        GaussRat qa = q.coefficient({0, 1, 0});
        GaussRat qb = q.coefficient({0, 0, 1});
        GaussRat qxa = q.coefficient({1, 1, 0});
        GaussRat qxb = q.coefficient({1, 0, 1});
        bool solvable = !(qa * qxb - qb * qxa).isZero();
        return {std::move(q), std::move(odeVars), solvable};
    }

    /// Q := Theta with (x, a, b) := (z, zb, wb); the ODE lives in (z, w, w_z).
    static SolutionManifold fromDefining(const ComplexDefining& d) {
        return fromQ(d.theta, {"z", "w", "wz"});
    }

    const std::string& x() const { return q.vars()[0]; }
    const std::string& a() const { return q.vars()[1]; }
    const std::string& b() const { return q.vars()[2]; }
};

/// y_xx = F(x, y, y_x), F over the ODE variables.
struct OdeRhs {
    TruncSeries f;
};

/// Lazily built partial derivatives of Q, addressed by strings over {x, a, b}
/// ("xab" = Q_{xab}). Intended as a short-lived local helper.
class QJet {
public:
    explicit QJet(TruncSeries q) : q_(std::move(q)) {}

    const TruncSeries& q() const noexcept { return q_; }

    const TruncSeries& d(std::string_view spec) const {
        std::array<int, 3> n{0, 0, 0};
        for (char c : spec) {
            switch (c) {
            case 'x': ++n[0]; break;
            case 'a': ++n[1]; break;
            case 'b': ++n[2]; break;
            default: throw InternalError("QJet: bad derivative spec");
            }
        }
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        TruncSeries s = q_.derive(std::vector<int>(n.begin(), n.end()));
        return cache_.emplace(n, std::move(s)).first->second;
    }

    /// D(u|v) = Q_u Q_{xv} - Q_v Q_{xu}.
    const TruncSeries& det(std::string_view u, std::string_view v) const {
        auto key = std::make_pair(std::string(u), std::string(v));
        auto it = dets_.find(key);
        if (it != dets_.end()) return it->second;
        std::string xu = "x" + key.first;
        std::string xv = "x" + key.second;
        TruncSeries s = d(u) * d(xv) - d(v) * d(xu);
        return dets_.emplace(std::move(key), std::move(s)).first->second;
    }

private:
    TruncSeries q_;
    mutable std::map<std::array<int, 3>, TruncSeries> cache_;
    mutable std::map<std::pair<std::string, std::string>, TruncSeries> dets_;
};

inline std::map<std::string, TruncSeries> solveParameters(const SolutionManifold& m, int order) {
    if (!m.solvable) throw NotSolvable("solution manifold is not solvable with respect to the parameters");
    const VarList space{m.odeVars[0], m.odeVars[1], m.odeVars[2], m.a(), m.b()};
    TruncSeries q = m.q.truncated(order);
    TruncSeries y = TruncSeries::variable(space, m.odeVars[1]);
    TruncSeries yx = TruncSeries::variable(space, m.odeVars[2]);
    std::vector<TruncSeries> eqs{q.embedded(space) - y, q.derive(0).embedded(space) - yx};
    auto sol = implicitSolve(eqs, {m.a(), m.b()}, order);

    // a = A(x, Q, Q_x) and b = B(x, Q, Q_x).
    std::map<std::string, TruncSeries> back{{m.odeVars[1], q}, {m.odeVars[2], q.derive(0)}};
    for (const char* p : {"a", "b"}) {
        const std::string& name = p[0] == 'a' ? m.a() : m.b();
        TruncSeries lhs = substitute(sol.at(name), back, m.q.vars());
        TruncSeries rhs = TruncSeries::variable(m.q.vars(), name);
        if (!(lhs - rhs).isZero()) throw InternalError("solveParameters: parameter residual does not vanish");
    }
    return sol;
}

/// F = Q_xx(x, A, B).
inline OdeRhs associatedOde(const SolutionManifold& m, int order) {
    auto ab = solveParameters(m, order);
    TruncSeries qxx = m.q.truncated(order).derive(0).derive(0);
    return {substitute(qxx, ab, m.odeVars)};
}

/// Coefficients of the three jet derivations pushed to (x, a, b):
///   d/dx    -> d_x + coefA_x d_a + coefB_x d_b
///   d/dy    ->       coefA_y d_a + coefB_y d_b
///   d/dy_x  ->      coefA_yx d_a + coefB_yx d_b
struct TransferOps {
    TruncSeries delta;
    TruncSeries coefA_x, coefB_x;
    TruncSeries coefA_y, coefB_y;
    TruncSeries coefA_yx, coefB_yx;
};

inline TruncSeries requireUnitDelta(const QJet& j) {
    TruncSeries delta = j.d("a") * j.d("xb") - j.d("b") * j.d("xa");
    if (!delta.isUnit()) throw LeviDegenerate();
    return delta;
}

inline TransferOps firstJetTransfer(const SolutionManifold& m) {
    QJet j(m.q);
    TruncSeries delta = requireUnitDelta(j);
    TruncSeries inv = reciprocal(delta);
    const auto &qx = j.d("x"), &qa = j.d("a"), &qb = j.d("b");
    const auto &qxx = j.d("xx"), &qxa = j.d("xa"), &qxb = j.d("xb");
    return {
        delta,
        (qb * qxx - qx * qxb) * inv,
        (qx * qxa - qa * qxx) * inv,
        qxb * inv,
        -qxa * inv,
        -qb * inv,
        qa * inv,
    };
}

namespace detail {
inline TruncSeries applyPair(const TruncSeries& ca, const TruncSeries& cb, const TruncSeries& t) {
    return ca * t.derive(1) + cb * t.derive(2);
}
} // namespace detail

inline TruncSeries applyDyx(const TransferOps& ops, const TruncSeries& t) {
    return detail::applyPair(ops.coefA_yx, ops.coefB_yx, t);
}
inline TruncSeries applyDy(const TransferOps& ops, const TruncSeries& t) {
    return detail::applyPair(ops.coefA_y, ops.coefB_y, t);
}
inline TruncSeries applyDx(const TransferOps& ops, const TruncSeries& t) {
    return t.derive(0) + detail::applyPair(ops.coefA_x, ops.coefB_x, t);
}

inline TruncSeries applyDyx(const SolutionManifold& m, const TruncSeries& t) {
    return applyDyx(firstJetTransfer(m), t);
}
inline TruncSeries applyDy(const SolutionManifold& m, const TruncSeries& t) {
    return applyDy(firstJetTransfer(m), t);
}
inline TruncSeries applyDx(const SolutionManifold& m, const TruncSeries& t) {
    return applyDx(firstJetTransfer(m), t);
}

struct IdentityCheck {
    std::string name;
    bool pass = false;
    std::optional<TruncSeries::Term> witness;
};

inline IdentityCheck checkZero(std::string name, const TruncSeries& residual) {
    return {std::move(name), residual.isZero(), residual.lowestTerm()};
}

/// D = d_x + y_x d_y + F d_{y_x} must become plain d_x on (x, a, b).
inline IdentityCheck totalDerivCheck(const SolutionManifold& m, const TransferOps& ops, const TruncSeries& t) {
    TruncSeries lhs = applyDx(ops, t) + m.q.derive(0) * applyDy(ops, t) + m.q.derive(0).derive(0) * applyDyx(ops, t);
    return checkZero("total derivative", lhs - t.derive(0));
}
inline IdentityCheck totalDerivCheck(const SolutionManifold& m, const TruncSeries& t) {
    return totalDerivCheck(m, firstJetTransfer(m), t);
}

/// The six chain-rule relations obtained by differentiating y = Q and
/// y_x = Q_x with respect to x, y and y_x.
inline std::vector<IdentityCheck> cramerIdentities(const SolutionManifold& m, const TransferOps& ops) {
    QJet j(m.q);
    const auto &qx = j.d("x"), &qa = j.d("a"), &qb = j.d("b");
    const auto &qxx = j.d("xx"), &qxa = j.d("xa"), &qxb = j.d("xb");
    const TruncSeries one = TruncSeries::constant(m.q.vars(), GaussRat(1));
    return {
        checkZero("0 = Q_x + Q_a A_x + Q_b B_x", qx + qa * ops.coefA_x + qb * ops.coefB_x),
        checkZero("0 = Q_xx + Q_xa A_x + Q_xb B_x", qxx + qxa * ops.coefA_x + qxb * ops.coefB_x),
        checkZero("1 = Q_a A_y + Q_b B_y", qa * ops.coefA_y + qb * ops.coefB_y - one),
        checkZero("0 = Q_xa A_y + Q_xb B_y", qxa * ops.coefA_y + qxb * ops.coefB_y),
        checkZero("0 = Q_a A_yx + Q_b B_yx", qa * ops.coefA_yx + qb * ops.coefB_yx),
        checkZero("1 = Q_xa A_yx + Q_xb B_yx", qxa * ops.coefA_yx + qxb * ops.coefB_yx - one),
    };
}

/// d/da and d/db of the six determinants D(b|bb), D(b|ab), D(b|aa),
/// D(a|bb), D(a|ab), D(a|aa), each checked against D(uz|v) + D(u|vz),
/// followed by the four repeated-column determinants that must vanish.
inline std::vector<IdentityCheck> determinantDerivativeIdentities(const SolutionManifold& m) {
    QJet j(m.q);
    std::vector<IdentityCheck> out;
    const std::array<std::pair<std::string, std::string>, 6> dets{
        {{"b", "bb"}, {"b", "ab"}, {"b", "aa"}, {"a", "bb"}, {"a", "ab"}, {"a", "aa"}}};
    auto sorted = [](std::string s) {
        std::sort(s.begin(), s.end());
        return s;
    };
    for (const auto& [u, v] : dets) {
        for (const char* z : {"b", "a"}) {
            std::size_t var = z[0] == 'a' ? 1 : 2;
            TruncSeries lhs = j.det(u, v).derive(var);
            TruncSeries rhs = j.det(sorted(u + z), v) + j.det(u, sorted(v + z));
            out.push_back(checkZero("d/d" + std::string(z) + " D(" + u + "|" + v + ")", lhs - rhs));
        }
    }
    for (const char* c : {"bb", "ab", "ab", "aa"})
        out.push_back(checkZero(std::string("D(") + c + "|" + c + ") = 0", j.det(c, c)));
    return out;
}

struct SecondJet {
    TruncSeries gyxyx;
    TruncSeries gyyx;
    TruncSeries gyy;
};

/// Closed second-order formulas in the second jet of T and the D(.|.)
/// determinants. Each has the shape
///   (c1 T_aa + c2 T_ab + c3 T_bb) / delta^2
///     + T_a (c1 D(b|aa) + c2 D(b|ab) + c3 D(b|bb)) / delta^3
///     - T_b (c1 D(a|aa) + c2 D(a|ab) + c3 D(a|bb)) / delta^3
/// with (c1, c2, c3) the symmetric product of the two operator coefficient
/// pairs.
inline SecondJet secondJetClosedForm(const SolutionManifold& m, const TruncSeries& t) {
    QJet j(m.q);
    TruncSeries delta = requireUnitDelta(j);
    const auto &qa = j.d("a"), &qb = j.d("b"), &qxa = j.d("xa"), &qxb = j.d("xb");
    TruncSeries taa = t.derive(std::vector<int>{0, 2, 0});
    TruncSeries tab = t.derive(std::vector<int>{0, 1, 1});
    TruncSeries tbb = t.derive(std::vector<int>{0, 0, 2});
    TruncSeries ta = t.derive(1), tb = t.derive(2);
    TruncSeries inv2 = reciprocal(delta * delta);
    TruncSeries inv3 = reciprocal(delta * delta * delta);

    // G_{yx yx}
    TruncSeries gyxyx = (qb * qb * taa - GaussRat(2) * qa * qb * tab + qa * qa * tbb) * inv2 +
                        ta * inv3 *
                            (qa * qa * j.det("b", "bb") - GaussRat(2) * qa * qb * j.det("b", "ab") +
                             qb * qb * j.det("b", "aa")) +
                        tb * inv3 *
                            (-qa * qa * j.det("a", "bb") + GaussRat(2) * qa * qb * j.det("a", "ab") -
                             qb * qb * j.det("a", "aa"));

    // G_{y yx}
    TruncSeries mixed = qa * qxb + qb * qxa;
    TruncSeries gyyx = (-qb * qxb * taa + mixed * tab - qa * qxa * tbb) * inv2 +
                       ta * inv3 *
                           (-qa * qxa * j.det("b", "bb") + mixed * j.det("b", "ab") - qb * qxb * j.det("b", "aa")) +
                       tb * inv3 *
                           (qa * qxa * j.det("a", "bb") - mixed * j.det("a", "ab") + qb * qxb * j.det("a", "aa"));

    // G_{yy}
    TruncSeries gyy = (qxb * qxb * taa - GaussRat(2) * qxa * qxb * tab + qxa * qxa * tbb) * inv2 +
                      ta * inv3 *
                          (qxa * qxa * j.det("b", "bb") - GaussRat(2) * qxa * qxb * j.det("b", "ab") +
                           qxb * qxb * j.det("b", "aa")) +
                      tb * inv3 *
                          (-qxa * qxa * j.det("a", "bb") + GaussRat(2) * qxa * qxb * j.det("a", "ab") -
                           qxb * qxb * j.det("a", "aa"));
    return {gyxyx, gyyx, gyy};
}

/// Closed formulas, checked against repeated application of the first-order
/// operators. A disagreement is an implementation bug.
inline SecondJet secondJetTransfer(const SolutionManifold& m, const TruncSeries& t) {
    SecondJet closed = secondJetClosedForm(m, t);
    TransferOps ops = firstJetTransfer(m);
    TruncSeries lyx = applyDyx(ops, t);
    TruncSeries ly = applyDy(ops, t);
    if (!(closed.gyxyx - applyDyx(ops, lyx)).isZero())
        throw InternalError("secondJetTransfer: closed G_{yx yx} disagrees with the operator form");
    if (!(closed.gyyx - applyDy(ops, lyx)).isZero())
        throw InternalError("secondJetTransfer: closed G_{y yx} disagrees with the operator form");
    if (!(closed.gyy - applyDy(ops, ly)).isZero())
        throw InternalError("secondJetTransfer: closed G_{yy} disagrees with the operator form");
    return closed;
}

/// delta^5 * G_{yx yx yx} from a collected term table.
inline TruncSeries thirdJetExpanded(const SolutionManifold& m, const TruncSeries& t,
                                    std::span<const ThirdJetTerm> table = kThirdJetTable) {
    QJet j(m.q);
    requireUnitDelta(j);
    std::map<std::string, TruncSeries> tDerivs;
    auto tDeriv = [&](std::string_view spec) -> const TruncSeries& {
        std::string key(spec);
        auto it = tDerivs.find(key);
        if (it != tDerivs.end()) return it->second;
        std::vector<int> n{0, 0, 0};
        for (char c : spec) ++n[c == 'a' ? 1 : 2];
        return tDerivs.emplace(key, t.derive(n)).first->second;
    };
    std::optional<TruncSeries> sum;
    for (const auto& row : table) {
        TruncSeries term = tDeriv(row.tDeriv) * GaussRat(row.coeff);
        for (auto q : row.q) term = term * j.d(q);
        for (const auto& [u, v] : row.d) term = term * j.det(u, v);
        sum = sum ? *sum + term : term;
    }
    return sum ? *sum : TruncSeries::zero(m.q, kExactOrder);
}

/// delta^5 * L[G_{yx yx}], L the transferred d/dy_x.
inline TruncSeries thirdJetOperator(const SolutionManifold& m, const TruncSeries& t) {
    TransferOps ops = firstJetTransfer(m);
    return ops.delta.pow(5) * applyDyx(ops, secondJetTransfer(m, t).gyxyx);
}

/// Pulls a series in the ODE variables back to (x, a, b) via y = Q, y_x = Q_x.
inline TruncSeries transferToSolutionSpace(const SolutionManifold& m, const TruncSeries& g) {
    std::map<std::string, TruncSeries> images{{m.odeVars[1], m.q}, {m.odeVars[2], m.q.derive(0)}};
    return substitute(g, images, m.q.vars());
}

} // namespace crs

#endif // CRSPHERE_ODE_TRANSFER_HPP
