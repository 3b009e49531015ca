#ifndef CRSPHERE_IMPLICIT_SOLVE_HPP
#define CRSPHERE_IMPLICIT_SOLVE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gauss_rat.hpp"
#include "trunc_series.hpp"

namespace crs {

using Matrix = std::vector<std::vector<GaussRat>>;

/// Exact inverse by Gauss-Jordan elimination; throws NotSolvable when singular.
inline Matrix invertMatrix(Matrix m) {
    const std::size_t n = m.size();
    Matrix inv(n, std::vector<GaussRat>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = GaussRat(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].isZero()) ++pivot;
        if (pivot == n) throw NotSolvable("not solvable: Jacobian with respect to the unknowns is singular at the origin");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        GaussRat p = m[col][col].inv();
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] *= p;
            inv[col][j] *= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].isZero()) continue;
            GaussRat f = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

/// Solves eqs(knowns, unknowns) = 0 for the unknowns as power series in the
/// knowns (the remaining variables, in their original order).
///
/// Degree-by-degree jet Newton: with the solution exact below degree d, the
/// degree-d part of the residual equals J0 * u_d plus already known data, so
/// one exact linear solve per degree fixes u_d. J0 is the Jacobian with
/// respect to the unknowns at the origin.
///
/// The result knownOrder is min(K, knownOrder of every equation). The
/// substituted residual is checked to vanish to that order before returning.
inline std::map<std::string, TruncSeries> implicitSolve(const std::vector<TruncSeries>& eqs,
                                                        const std::vector<std::string>& unknowns, int order) {
    if (eqs.empty() || eqs.size() != unknowns.size())
        throw DomainError("implicitSolve: need as many equations as unknowns");
    const VarList& all = eqs.front().vars();
    for (const auto& e : eqs)
        if (e.vars() != all) throw DomainError("implicitSolve: equations live over different variable spaces");
    for (const auto& u : unknowns)
        if (std::find(all.begin(), all.end(), u) == all.end())
            throw DomainError("implicitSolve: unknown '" + u + "' is not a variable of the equations");
    VarList knowns;
    for (const auto& v : all)
        if (std::find(unknowns.begin(), unknowns.end(), v) == unknowns.end()) knowns.push_back(v);

    int k = order;
    for (const auto& e : eqs) {
        if (!e.constantTerm().isZero()) throw DomainError("implicitSolve: equation does not vanish at the origin");
        k = std::min(k, e.knownOrder());
    }
    k = std::max(k, 1);

    const std::size_t n = unknowns.size();
    Matrix jac(n, std::vector<GaussRat>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t nv = all.size();
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<int> exps(nv, 0);
            exps[eqs[i].indexOf(unknowns[j])] = 1;
            jac[i][j] = eqs[i].coefficient(exps);
        }
    }
    Matrix jinv = invertMatrix(jac);

    std::vector<TruncSeries> sol(n, TruncSeries(knowns, k));
    auto residuals = [&](int cap) {
        std::map<std::string, TruncSeries> images;
        for (std::size_t j = 0; j < n; ++j) images.emplace(unknowns[j], sol[j].truncated(cap).withKnownOrder(cap));
        std::vector<TruncSeries> r;
        r.reserve(n);
        for (const auto& e : eqs) r.push_back(substitute(e.truncated(cap), images, knowns));
        return r;
    };
    for (int d = 1; d < k; ++d) {
        std::vector<TruncSeries> r = residuals(d + 1);
        std::vector<TruncSeries> parts;
        parts.reserve(n);
        for (const auto& ri : r) parts.push_back(ri.homogeneousPart(d));
        for (std::size_t j = 0; j < n; ++j) {
            TruncSeries delta(knowns, k);
            for (std::size_t i = 0; i < n; ++i)
                if (!jinv[j][i].isZero()) delta = delta - parts[i].withKnownOrder(k) * jinv[j][i];
            sol[j] = sol[j] + delta;
        }
    }
    for (const auto& r : residuals(k))
        if (!r.isZero()) throw InternalError("implicitSolve: residual does not vanish to the requested order");

    std::map<std::string, TruncSeries> out;
    for (std::size_t j = 0; j < n; ++j) out.emplace(unknowns[j], sol[j]);
    return out;
}

} // namespace crs

#endif // CRSPHERE_IMPLICIT_SOLVE_HPP
