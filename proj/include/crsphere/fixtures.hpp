#ifndef CRSPHERE_FIXTURES_HPP
#define CRSPHERE_FIXTURES_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cr_defining.hpp"
#include "expr_parser.hpp"
#include "trunc_series.hpp"

namespace crs::fixtures {

struct CrFixture {
    std::string name;
    ComplexDefining defining;
    bool spherical = true;
    /// Pinned lowest term of aj6 for the non-spherical fixtures.
    std::optional<std::vector<int>> witnessMonomial;
    std::optional<GaussRat> witnessCoefficient;
};

inline ComplexDefining heisenberg(int order) {
    return ComplexDefining::fromTheta(parseSeries("-wb + z*zb", thetaVars(), order));
}

struct BiholoSpec {
    const char* f;
    const char* g;
};

inline const std::vector<BiholoSpec>& sphericalMaps() {
    static const std::vector<BiholoSpec> maps{{"z", "w + w^2"}, {"z + z^2", "w"}, {"z + z*w", "w + w^2"}};
    return maps;
}

inline Biholo biholo(const BiholoSpec& s, int order) {
    return Biholo(parseSeries(s.f, holoVars(), order), parseSeries(s.g, holoVars(), order));
}

inline const char* kCanonicalXi = "z*zb + z^4*zb^2 + z^2*zb^4";
inline const char* kImaginaryXi = "z*zb + i*z^2*zb^4 - i*z^4*zb^2";

/// Heisenberg, its three biholomorphic images, and two non-spherical rigid
/// hypersurfaces.
inline std::vector<CrFixture> corpus(int order) {
    std::vector<CrFixture> out;
    out.push_back({"heisenberg", heisenberg(order), true, std::nullopt, std::nullopt});
    for (const auto& m : sphericalMaps()) {
        std::string name = std::string("heisenberg under (") + m.f + ", " + m.g + ")";
        out.push_back({name, transformDefining(heisenberg(order), biholo(m, order), order), true, std::nullopt,
                       std::nullopt});
    }
    out.push_back({"rigid " + std::string(kCanonicalXi), rigidDefining(parseSeries(kCanonicalXi, rigidVars(), order)),
                   false, std::vector<int>{0, 0, 0}, GaussRat(48)});
    out.push_back({"rigid " + std::string(kImaginaryXi), rigidDefining(parseSeries(kImaginaryXi, rigidVars(), order)),
                   false, std::vector<int>{0, 0, 0}, GaussRat(0, 48)});
    return out;
}

// ---- seeded random inputs -------------------------------------------------
// Only raw engine output is used, so the streams are identical on every
// standard library.

inline long smallInt(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline GaussRat smallGauss(std::mt19937_64& rng, bool complex) {
    long re = smallInt(rng, -3, 3);
    long im = complex && rng() % 3 == 0 ? smallInt(rng, -2, 2) : 0;
    long den = smallInt(rng, 1, 2);
    return GaussRat::ratio(re, den, im, den);
}

/// Random polynomial with terms of total degree in [minDeg, maxDeg]; each
/// candidate monomial is kept with probability 1/2.
inline TruncSeries randomPoly(std::mt19937_64& rng, const VarList& vars, int minDeg, int maxDeg, int order,
                              bool complex = true) {
    std::vector<TruncSeries::Term> terms;
    std::vector<int> e(vars.size(), 0);
    auto rec = [&](auto&& self, std::size_t v, int left) -> void {
        if (v + 1 == vars.size()) {
            e[v] = left;
            int deg = 0;
            for (int x : e) deg += x;
            if (deg >= minDeg && rng() % 2 == 0) {
                GaussRat c = smallGauss(rng, complex);
                if (!c.isZero()) terms.push_back({MultiIndex::fromExponents(e), c});
            }
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[v] = k;
            self(self, v + 1, left - k);
        }
    };
    for (int d = minDeg; d <= maxDeg; ++d) rec(rec, 0, d);
    return TruncSeries::fromTerms(vars, order, std::move(terms));
}

/// Q = -b + x*a + (random terms of degree 2..maxDeg), redrawn until the
/// manifold is solvable and the dual solve for b is possible.
inline TruncSeries randomQ(std::mt19937_64& rng, int maxDeg, int order) {
    const VarList v{"x", "a", "b"};
    for (;;) {
        TruncSeries q = parseSeries("-b + x*a", v, order) + randomPoly(rng, v, 2, maxDeg, order);
        GaussRat delta = q.coefficient({0, 1, 0}) * q.coefficient({1, 0, 1}) -
                         q.coefficient({0, 0, 1}) * q.coefficient({1, 1, 0});
        if (!delta.isZero() && !q.coefficient({0, 0, 1}).isZero()) return q;
    }
}

/// Every monomial of total degree in [minDeg, maxDeg] with a random nonzero
/// coefficient.
inline TruncSeries densePoly(std::mt19937_64& rng, const VarList& vars, int minDeg, int maxDeg, int order) {
    std::vector<TruncSeries::Term> terms;
    std::vector<int> e(vars.size(), 0);
    auto rec = [&](auto&& self, std::size_t v, int left) -> void {
        if (v + 1 == vars.size()) {
            e[v] = left;
            GaussRat c;
            while (c.isZero()) c = smallGauss(rng, true);
            terms.push_back({MultiIndex::fromExponents(e), c});
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[v] = k;
            self(self, v + 1, left - k);
        }
    };
    for (int d = minDeg; d <= maxDeg; ++d) rec(rec, 0, d);
    return TruncSeries::fromTerms(vars, order, std::move(terms));
}

/// Dense Q of degree 1..maxDeg, redrawn until delta(0) != 0. No factor of the
/// third-jet table vanishes at the origin, so every table row contributes at
/// low order.
inline TruncSeries randomGenericQ(std::mt19937_64& rng, int maxDeg, int order) {
    for (;;) {
        TruncSeries q = densePoly(rng, {"x", "a", "b"}, 1, maxDeg, order);
        GaussRat delta = q.coefficient({0, 1, 0}) * q.coefficient({1, 0, 1}) -
                         q.coefficient({0, 0, 1}) * q.coefficient({1, 1, 0});
        if (!delta.isZero()) return q;
    }
}

inline TruncSeries randomDenseT(std::mt19937_64& rng, int maxDeg, int order) {
    return densePoly(rng, {"x", "a", "b"}, 0, maxDeg, order);
}

inline TruncSeries randomT(std::mt19937_64& rng, int maxDeg, int order) {
    return randomPoly(rng, {"x", "a", "b"}, 0, maxDeg, order);
}

/// Xi = z*zb + sum c z^i zb^j + conj(c) z^j zb^i over 2 <= i + j <= maxDeg,
/// (i, j) != (1, 1); diagonal coefficients are real.
inline TruncSeries randomHermitianXi(std::mt19937_64& rng, int maxDeg, int order) {
    const VarList& v = rigidVars();
    std::vector<TruncSeries::Term> terms{{MultiIndex::fromExponents({1, 1}), GaussRat(1)}};
    for (int d = 2; d <= maxDeg; ++d) {
        for (int i = 0; 2 * i <= d; ++i) {
            int j = d - i;
            if ((i == 1 && j == 1) || rng() % 2) continue;
            GaussRat c = smallGauss(rng, i != j);
            if (c.isZero()) continue;
            terms.push_back({MultiIndex::fromExponents({i, j}), c});
            if (i != j) terms.push_back({MultiIndex::fromExponents({j, i}), c.conj()});
        }
    }
    return TruncSeries::fromTerms(v, order, std::move(terms));
}

/// Real phi(x, y, v) = x^2 + y^2 + (random terms of degree 2..maxDeg).
inline TruncSeries randomRealPhi(std::mt19937_64& rng, int maxDeg, int order) {
    const VarList& v = realGraphVars();
    return parseSeries("x^2 + y^2", v, order) + randomPoly(rng, v, 2, maxDeg, order, false);
}

} // namespace crs::fixtures

#endif // CRSPHERE_FIXTURES_HPP
