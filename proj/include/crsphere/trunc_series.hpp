#ifndef CRSPHERE_TRUNC_SERIES_HPP
#define CRSPHERE_TRUNC_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gauss_rat.hpp"
#include "multi_index.hpp"

namespace crs {

using VarList = std::vector<std::string>;

/// Order used for series that are exact polynomials (constants, variables).
/// Every representable monomial has degree below it.
inline constexpr int kExactOrder = 255;

/// Sparse truncated multivariate power series over the Gaussian rationals.
///
/// A series carries an ordered list of variable names and a known order K:
/// every coefficient of total degree < K is exact, nothing of degree >= K is
/// stored. Terms are kept sorted by graded-lex MultiIndex and never hold a
/// zero coefficient, so structural equality is mathematical equality of the
/// truncations. Values are immutable once built.
class TruncSeries {
public:
    struct Term {
        MultiIndex index;
        GaussRat coeff;

        friend bool operator==(const Term&, const Term&) = default;
    };

    TruncSeries() : TruncSeries(VarList{}, kExactOrder) {}

    /// Zero series.
    TruncSeries(VarList vars, int knownOrder)
        : vars_(std::make_shared<const VarList>(std::move(vars))), order_(clampOrder(knownOrder)) {
        checkArity();
    }

    static TruncSeries zero(const TruncSeries& like, int knownOrder) {
        return TruncSeries(like.vars_, {}, knownOrder);
    }
    static TruncSeries constant(VarList vars, const GaussRat& c, int knownOrder = kExactOrder) {
        TruncSeries s(std::move(vars), knownOrder);
        if (!c.isZero() && s.order_ > 0) s.terms_.push_back({MultiIndex{}, c});
        return s;
    }
    static TruncSeries variable(VarList vars, const std::string& name, int knownOrder = kExactOrder) {
        TruncSeries s(std::move(vars), knownOrder);
        std::size_t idx = s.indexOf(name);
        if (s.order_ > 1) s.terms_.push_back({MultiIndex::unit(idx), GaussRat(1)});
        return s;
    }
    static TruncSeries monomial(VarList vars, const GaussRat& c, const std::vector<int>& exps,
                                int knownOrder = kExactOrder) {
        TruncSeries s(std::move(vars), knownOrder);
        if (exps.size() != s.arity()) throw DomainError("monomial exponent count does not match arity");
        MultiIndex m = MultiIndex::fromExponents(exps);
        if (!c.isZero() && m.degree() < s.order_) s.terms_.push_back({m, c});
        return s;
    }
    /// Builds a series from arbitrary (possibly repeated, unsorted, zero) terms.
    static TruncSeries fromTerms(VarList vars, int knownOrder, std::vector<Term> terms) {
        TruncSeries s(std::move(vars), knownOrder);
        s.terms_ = std::move(terms);
        s.normalize();
        return s;
    }

    std::size_t arity() const noexcept { return vars_->size(); }
    const VarList& vars() const noexcept { return *vars_; }
    int knownOrder() const noexcept { return order_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool isZero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    std::size_t indexOf(const std::string& name) const {
        auto it = std::find(vars_->begin(), vars_->end(), name);
        if (it == vars_->end()) throw DomainError("unknown variable '" + name + "'");
        return static_cast<std::size_t>(it - vars_->begin());
    }
    bool hasVar(const std::string& name) const {
        return std::find(vars_->begin(), vars_->end(), name) != vars_->end();
    }

    /// Minimum total degree of a stored term, or K when empty.
    int valuation() const noexcept { return terms_.empty() ? order_ : terms_.front().index.degree(); }

    GaussRat coefficient(MultiIndex m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, MultiIndex k) { return t.index < k; });
        if (it != terms_.end() && it->index == m) return it->coeff;
        return GaussRat{};
    }
    GaussRat coefficient(const std::vector<int>& exps) const {
        if (exps.size() != arity()) throw DomainError("exponent count does not match arity");
        return coefficient(MultiIndex::fromExponents(exps));
    }
    GaussRat constantTerm() const { return coefficient(MultiIndex{}); }
    bool isUnit() const { return !constantTerm().isZero(); }

    /// Lowest graded-lex term, if any.
    std::optional<Term> lowestTerm() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.front();
    }

    bool sameSpace(const TruncSeries& o) const noexcept {
        return vars_ == o.vars_ || *vars_ == *o.vars_;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.sameSpace(b) && a.order_ == b.order_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    // ---- ring operations ---------------------------------------------------

    friend TruncSeries operator+(const TruncSeries& f, const TruncSeries& g) { return f.addScaled(g, false); }
    friend TruncSeries operator-(const TruncSeries& f, const TruncSeries& g) { return f.addScaled(g, true); }
    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend TruncSeries operator*(const TruncSeries& f, const GaussRat& c) { return f.scaled(c); }
    friend TruncSeries operator*(const GaussRat& c, const TruncSeries& f) { return f.scaled(c); }

    /// knownOrder = min(K_f + val(g), K_g + val(f), K_f + K_g).
    friend TruncSeries operator*(const TruncSeries& f, const TruncSeries& g) { return f.multiply(g, kExactOrder); }

    /// Product computed only below `cap` (the result order is min(rule, cap)).
    TruncSeries multiply(const TruncSeries& g, int cap) const {
        requireSameSpace(g);
        int k = std::min({sat(order_ + g.valuation()), sat(g.order_ + valuation()), sat(order_ + g.order_), cap});
        k = std::max(k, 0);
        std::unordered_map<MultiIndex, GaussRat, MultiIndexHash> acc;
        acc.reserve(std::min<std::size_t>(terms_.size() * g.terms_.size() + 1, 1u << 16));
        for (const auto& a : terms_) {
            int room = k - a.index.degree();
            if (room <= 0) break;
            for (const auto& b : g.terms_) {
                if (b.index.degree() >= room) break;
                acc[a.index * b.index].addProduct(a.coeff, b.coeff);
            }
        }
        std::vector<Term> out;
        out.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!c.isZero()) out.push_back({m, std::move(c)});
        std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
        return TruncSeries(vars_, std::move(out), k, Sorted{});
    }

    TruncSeries pow(unsigned e, int cap = kExactOrder) const {
        TruncSeries result(vars_, {{MultiIndex{}, GaussRat(1)}}, kExactOrder, Sorted{});
        result = result.truncated(cap);
        TruncSeries base = truncated(cap);
        while (e > 0) {
            if (e & 1u) result = result.multiply(base, cap);
            e >>= 1u;
            if (e > 0) base = base.multiply(base, cap);
        }
        return result;
    }

    /// Drops every term of degree >= k; knownOrder becomes min(K, k).
    TruncSeries truncated(int k) const {
        k = std::max(0, std::min(k, order_));
        if (k == order_) return *this;
        std::vector<Term> out;
        for (const auto& t : terms_) {
            if (t.index.degree() >= k) break;
            out.push_back(t);
        }
        return TruncSeries(vars_, std::move(out), k, Sorted{});
    }

    /// Homogeneous component of degree d.
    TruncSeries homogeneousPart(int d) const {
        std::vector<Term> out;
        for (const auto& t : terms_)
            if (t.index.degree() == d) out.push_back(t);
        return TruncSeries(vars_, std::move(out), order_, Sorted{});
    }

    /// Formal partial derivative; knownOrder drops by one (floor 0).
    TruncSeries derive(std::size_t var) const {
        if (var >= arity()) throw DomainError("derivative variable index out of range");
        int k = order_ >= kExactOrder ? kExactOrder : std::max(order_ - 1, 0);
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            int e = t.index.exponent(var);
            if (e == 0) continue;
            MultiIndex m = t.index.lowered(var);
            if (m.degree() >= k) continue;
            out.push_back({m, t.coeff * GaussRat(e)});
        }
        // Lowering one exponent can reorder keys within a degree class.
        std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
        return TruncSeries(vars_, std::move(out), k, Sorted{});
    }
    TruncSeries derive(const std::string& name) const { return derive(indexOf(name)); }

    /// Repeated derivative: counts[i] times with respect to variable i.
    TruncSeries derive(const std::vector<int>& counts) const {
        TruncSeries r = *this;
        for (std::size_t i = 0; i < counts.size(); ++i)
            for (int c = 0; c < counts[i]; ++c) r = r.derive(i);
        return r;
    }

    /// Same terms and order over renamed variables (position preserved).
    TruncSeries renamed(const std::map<std::string, std::string>& relabel) const {
        return TruncSeries(std::make_shared<const VarList>(relabeledVars(relabel)), terms_, order_, Sorted{});
    }

    /// Re-expresses this series over `target`, which must contain every
    /// variable of this series (extra target variables simply do not occur).
    TruncSeries embedded(const VarList& target) const {
        std::vector<std::size_t> pos(arity());
        for (std::size_t i = 0; i < arity(); ++i) {
            auto it = std::find(target.begin(), target.end(), (*vars_)[i]);
            if (it == target.end())
                throw DomainError("variable-space mismatch: '" + (*vars_)[i] + "' missing from target");
            pos[i] = static_cast<std::size_t>(it - target.begin());
        }
        std::vector<Term> out;
        out.reserve(terms_.size());
        std::vector<int> exps(target.size());
        for (const auto& t : terms_) {
            std::fill(exps.begin(), exps.end(), 0);
            for (std::size_t i = 0; i < arity(); ++i) exps[pos[i]] = t.index.exponent(i);
            out.push_back({MultiIndex::fromExponents(exps), t.coeff});
        }
        std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
        return TruncSeries(std::make_shared<const VarList>(target), std::move(out), order_, Sorted{});
    }

    /// Same series with knownOrder replaced by `k`. Raising the order asserts
    /// that the stored terms are already exact below `k`.
    TruncSeries withKnownOrder(int k) const {
        if (k <= order_) return truncated(k);
        return TruncSeries(vars_, terms_, k, Sorted{});
    }

    /// Shares the variable-list storage of `like` (cheap equality checks).
    const std::shared_ptr<const VarList>& varHandle() const noexcept { return vars_; }

    void requireSameSpace(const TruncSeries& g) const {
        if (!sameSpace(g)) throw DomainError("arity mismatch: series live over different variable lists");
    }

    VarList relabeledVars(const std::map<std::string, std::string>& relabel) const {
        VarList out = *vars_;
        for (auto& v : out) {
            auto it = relabel.find(v);
            if (it != relabel.end()) v = it->second;
        }
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = i + 1; j < out.size(); ++j)
                if (out[i] == out[j]) throw DomainError("relabeling is not a bijection: '" + out[i] + "' repeated");
        return out;
    }

    TruncSeries(std::shared_ptr<const VarList> vars, std::vector<Term> terms, int knownOrder)
        : vars_(std::move(vars)), terms_(std::move(terms)), order_(clampOrder(knownOrder)) {
        normalize();
    }

private:
    struct Sorted {};
    TruncSeries(std::shared_ptr<const VarList> vars, std::vector<Term> terms, int knownOrder, Sorted)
        : vars_(std::move(vars)), terms_(std::move(terms)), order_(clampOrder(knownOrder)) {}

    static int clampOrder(int k) { return std::clamp(k, 0, kExactOrder); }
    static int sat(int k) { return std::min(k, kExactOrder); }

    void checkArity() const {
        if (vars_->size() > kMaxArity) throw DomainError("too many variables");
    }

    void normalize() {
        checkArity();
        std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (t.index.degree() >= order_) continue;
            if (!out.empty() && out.back().index == t.index)
                out.back().coeff += t.coeff;
            else
                out.push_back(std::move(t));
        }
        std::erase_if(out, [](const Term& t) { return t.coeff.isZero(); });
        terms_ = std::move(out);
    }

    TruncSeries scaled(const GaussRat& c) const {
        if (c.isZero()) return TruncSeries(vars_, {}, order_, Sorted{});
        std::vector<Term> out = terms_;
        for (auto& t : out) t.coeff *= c;
        return TruncSeries(vars_, std::move(out), order_, Sorted{});
    }

    TruncSeries addScaled(const TruncSeries& g, bool negate) const {
        requireSameSpace(g);
        int k = std::min(order_, g.order_);
        std::vector<Term> out;
        out.reserve(terms_.size() + g.terms_.size());
        auto i = terms_.begin();
        auto j = g.terms_.begin();
        auto push = [&](MultiIndex m, GaussRat c) {
            if (m.degree() < k && !c.isZero()) out.push_back({m, std::move(c)});
        };
        while (i != terms_.end() || j != g.terms_.end()) {
            if (j == g.terms_.end() || (i != terms_.end() && i->index < j->index)) {
                push(i->index, i->coeff);
                ++i;
            } else if (i == terms_.end() || j->index < i->index) {
                push(j->index, negate ? -j->coeff : j->coeff);
                ++j;
            } else {
                push(i->index, negate ? i->coeff - j->coeff : i->coeff + j->coeff);
                ++i;
                ++j;
            }
        }
        return TruncSeries(vars_, std::move(out), k, Sorted{});
    }

    std::shared_ptr<const VarList> vars_;
    std::vector<Term> terms_;
    int order_ = kExactOrder;
};

inline TruncSeries derive(const TruncSeries& f, const std::string& var) { return f.derive(var); }

/// Partial derivative applied repeatedly: derive(f, "z", "z", "zb").
template <typename... Names>
TruncSeries derive(const TruncSeries& f, const std::string& first, const Names&... rest) {
    TruncSeries r = f.derive(first);
    ((r = r.derive(std::string(rest))), ...);
    return r;
}

/// Conjugates every coefficient and renames the variables position-wise
/// through `relabel` (variables without an entry keep their name). Entries
/// for names the series does not carry are ignored.
inline TruncSeries conjugateSeries(const TruncSeries& f, const std::map<std::string, std::string>& relabel) {
    VarList vars = f.relabeledVars(relabel);
    std::vector<TruncSeries::Term> terms = f.terms();
    for (auto& t : terms) t.coeff = t.coeff.conj();
    return TruncSeries(std::make_shared<const VarList>(std::move(vars)), std::move(terms), f.knownOrder());
}

/// Permutes the variables of `f` into the order given by `names`, which must
/// be a permutation of f's variables.
inline TruncSeries reorder(const TruncSeries& f, const VarList& names) {
    if (names.size() != f.arity()) throw DomainError("reorder: not a permutation of the variables");
    return f.embedded(names);
}

/// Truncated quotient h = f / g for a unit g, computed degree by degree from
/// g0*h_d = f_d - sum_{j>=1} g_j*h_{d-j}. knownOrder = min(K_f, K_g).
inline TruncSeries divide(const TruncSeries& f, const TruncSeries& g) {
    f.requireSameSpace(g);
    GaussRat g0 = g.constantTerm();
    if (g0.isZero()) throw DomainError("divide: divisor is not a unit (zero constant term)");
    GaussRat g0inv = g0.inv();
    int k = std::min(f.knownOrder(), g.knownOrder());
    if (k >= kExactOrder) {
        if (g.size() == 1) return f * g0inv;
        throw DomainError("divide: quotient of exact polynomials by a non-constant unit needs a finite order");
    }
    // Bucket terms by degree.
    std::vector<std::vector<const TruncSeries::Term*>> gByDeg(static_cast<std::size_t>(k));
    for (const auto& t : g.terms())
        if (t.index.degree() > 0 && t.index.degree() < k) gByDeg[static_cast<std::size_t>(t.index.degree())].push_back(&t);
    std::vector<std::vector<TruncSeries::Term>> hByDeg(static_cast<std::size_t>(k));
    std::vector<TruncSeries::Term> all;
    for (int d = 0; d < k; ++d) {
        std::unordered_map<MultiIndex, GaussRat, MultiIndexHash> acc;
        for (const auto& t : f.terms()) {
            if (t.index.degree() > d) break;
            if (t.index.degree() == d) acc[t.index] += t.coeff;
        }
        for (int j = 1; j <= d; ++j) {
            for (const auto* gt : gByDeg[static_cast<std::size_t>(j)])
                for (const auto& ht : hByDeg[static_cast<std::size_t>(d - j)])
                    acc[gt->index * ht.index].addProduct(-gt->coeff, ht.coeff);
        }
        for (auto& [m, c] : acc) {
            if (c.isZero()) continue;
            GaussRat q = c * g0inv;
            hByDeg[static_cast<std::size_t>(d)].push_back({m, q});
            all.push_back({m, std::move(q)});
        }
    }
    return TruncSeries(f.varHandle(), std::move(all), k);
}

/// 1 / g for a unit g.
inline TruncSeries reciprocal(const TruncSeries& g) {
    return divide(TruncSeries::constant(g.vars(), GaussRat(1), g.knownOrder()).withKnownOrder(g.knownOrder()), g);
}

namespace detail {

/// Horner-style evaluation of `terms` with the variables from `var` onwards
/// replaced by their images, computed below degree `cap`.
inline TruncSeries substituteRec(const std::vector<const TruncSeries::Term*>& terms, std::size_t var,
                                 std::size_t arity, std::vector<std::vector<TruncSeries>>& powers,
                                 const std::vector<TruncSeries>& images, const TruncSeries& zero, int cap) {
    if (cap <= 0 || terms.empty()) return zero.truncated(std::max(cap, 0));
    auto powerOf = [&](std::size_t v, int e) -> const TruncSeries& {
        auto& p = powers[v];
        while (static_cast<int>(p.size()) <= e) p.push_back(p.back().multiply(images[v], zero.knownOrder()));
        return p[static_cast<std::size_t>(e)];
    };
    // Group by exponent of `var`.
    std::map<int, std::vector<const TruncSeries::Term*>> groups;
    for (const auto* t : terms) groups[t->index.exponent(var)].push_back(t);
    TruncSeries result = zero.truncated(cap);
    int imgVal = std::max(images[var].valuation(), 1);
    for (auto& [e, group] : groups) {
        int innerCap = cap - e * imgVal;
        if (innerCap <= 0) continue;
        TruncSeries inner = zero.truncated(innerCap);
        if (var + 1 == arity) {
            std::vector<TruncSeries::Term> constTerms;
            for (const auto* t : group) constTerms.push_back({MultiIndex{}, t->coeff});
            inner = TruncSeries(zero.varHandle(), std::move(constTerms), innerCap);
        } else {
            inner = substituteRec(group, var + 1, arity, powers, images, zero, innerCap);
        }
        if (e == 0)
            result = result + inner;
        else
            result = result + powerOf(var, e).multiply(inner, cap);
    }
    return result.truncated(cap);
}

} // namespace detail

/// Composition f(images). `images` maps variable names of f to series over a
/// common target space; variables without an image map to the target
/// variable of the same name. The target space is `target` when given, else
/// the space of the images, else f's own space. Every image must have zero
/// constant term. knownOrder = min(K_f, K of every image).
inline TruncSeries substitute(const TruncSeries& f, const std::map<std::string, TruncSeries>& images,
                              std::optional<VarList> target = std::nullopt) {
    VarList space;
    if (target)
        space = *target;
    else if (!images.empty())
        space = images.begin()->second.vars();
    else
        space = f.vars();
    auto spaceHandle = std::make_shared<const VarList>(space);
    std::vector<TruncSeries> imgs;
    imgs.reserve(f.arity());
    int k = f.knownOrder();
    for (const auto& v : f.vars()) {
        auto it = images.find(v);
        if (it != images.end()) {
            const TruncSeries& img = it->second;
            if (img.vars() != space) throw DomainError("substitute: image of '" + v + "' lives over a different variable space");
            if (!img.constantTerm().isZero())
                throw DomainError("substitute: image of '" + v + "' has a nonzero constant term");
            imgs.emplace_back(spaceHandle, img.terms(), img.knownOrder());
            k = std::min(k, img.knownOrder());
        } else {
            if (std::find(space.begin(), space.end(), v) == space.end())
                throw DomainError("substitute: variable '" + v + "' has no image and is absent from the target space");
            auto idx = static_cast<std::size_t>(std::find(space.begin(), space.end(), v) - space.begin());
            imgs.emplace_back(spaceHandle, std::vector<TruncSeries::Term>{{MultiIndex::unit(idx), GaussRat(1)}},
                              kExactOrder);
        }
    }
    for (const auto& [name, img] : images)
        if (!f.hasVar(name)) throw DomainError("substitute: unknown variable '" + name + "'");
    TruncSeries zero(spaceHandle, {}, k);
    if (f.arity() == 0) {
        std::vector<TruncSeries::Term> c;
        for (const auto& t : f.terms()) c.push_back({MultiIndex{}, t.coeff});
        return TruncSeries(spaceHandle, std::move(c), k);
    }
    std::vector<std::vector<TruncSeries>> powers(f.arity());
    for (std::size_t v = 0; v < f.arity(); ++v)
        powers[v] = {TruncSeries(spaceHandle, {{MultiIndex{}, GaussRat(1)}}, kExactOrder), imgs[v].truncated(k)};
    std::vector<const TruncSeries::Term*> all;
    all.reserve(f.size());
    for (const auto& t : f.terms()) all.push_back(&t);
    return detail::substituteRec(all, 0, f.arity(), powers, imgs, zero, k);
}

inline std::ostream& operator<<(std::ostream& os, const TruncSeries& f) {
    os << "[K=" << f.knownOrder() << "] ";
    if (f.isZero()) return os << "0";
    bool first = true;
    for (const auto& t : f.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.coeff << ")";
        for (std::size_t i = 0; i < f.arity(); ++i) {
            int e = t.index.exponent(i);
            if (e == 1) os << "*" << f.vars()[i];
            if (e > 1) os << "*" << f.vars()[i] << "^" << e;
        }
    }
    return os;
}

} // namespace crs

#endif // CRSPHERE_TRUNC_SERIES_HPP
