#ifndef CRSPHERE_MULTI_INDEX_HPP
#define CRSPHERE_MULTI_INDEX_HPP

#include <array>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace crs {

/// Maximum number of formal variables a series may carry.
inline constexpr std::size_t kMaxArity = 7;

/// Exponent vector packed into one 64-bit word: the top byte holds the total
/// degree, the following bytes hold the exponents of variables 0, 1, ... in
/// that order. Integer comparison of the packed word is therefore the graded
/// lexicographic order (total degree first, then the exponent of variable 0,
/// then variable 1, ... all ascending), and monomial multiplication is
/// integer addition. Exponents and degrees must stay below 256.
class MultiIndex {
public:
    constexpr MultiIndex() = default;

    static MultiIndex fromExponents(std::span<const int> exps) {
        assert(exps.size() <= kMaxArity);
        std::uint64_t packed = 0;
        int degree = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            assert(exps[i] >= 0 && exps[i] < 256);
            degree += exps[i];
            packed |= static_cast<std::uint64_t>(exps[i]) << shift(i);
        }
        assert(degree < 256);
        packed |= static_cast<std::uint64_t>(degree) << 56;
        return MultiIndex(packed);
    }
    static MultiIndex fromExponents(std::initializer_list<int> exps) {
        return fromExponents(std::span<const int>(exps.begin(), exps.size()));
    }

    /// x_var^power
    static MultiIndex unit(std::size_t var, int power = 1) {
        assert(var < kMaxArity && power >= 0 && power < 256);
        return MultiIndex((static_cast<std::uint64_t>(power) << 56) |
                          (static_cast<std::uint64_t>(power) << shift(var)));
    }

    constexpr int degree() const noexcept { return static_cast<int>(packed_ >> 56); }
    constexpr int exponent(std::size_t var) const noexcept {
        return static_cast<int>((packed_ >> shift(var)) & 0xFF);
    }
    constexpr std::uint64_t packed() const noexcept { return packed_; }

    std::vector<int> exponents(std::size_t arity) const {
        std::vector<int> out(arity);
        for (std::size_t i = 0; i < arity; ++i) out[i] = exponent(i);
        return out;
    }

    /// Product of monomials. Caller guarantees the degree stays below 256.
    friend constexpr MultiIndex operator*(MultiIndex a, MultiIndex b) noexcept {
        return MultiIndex(a.packed_ + b.packed_);
    }

    /// Lowers the exponent of `var` by one; requires exponent(var) > 0.
    constexpr MultiIndex lowered(std::size_t var) const noexcept {
        return MultiIndex(packed_ - (std::uint64_t{1} << 56) - (std::uint64_t{1} << shift(var)));
    }

    friend constexpr auto operator<=>(MultiIndex, MultiIndex) = default;

private:
    constexpr explicit MultiIndex(std::uint64_t packed) : packed_(packed) {}
    static constexpr unsigned shift(std::size_t var) { return static_cast<unsigned>(48 - 8 * var); }

    std::uint64_t packed_ = 0;
};

struct MultiIndexHash {
    std::size_t operator()(MultiIndex m) const noexcept {
        std::uint64_t x = m.packed();
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

} // namespace crs

#endif // CRSPHERE_MULTI_INDEX_HPP
