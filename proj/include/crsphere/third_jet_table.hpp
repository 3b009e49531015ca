#ifndef CRSPHERE_THIRD_JET_TABLE_HPP
#define CRSPHERE_THIRD_JET_TABLE_HPP

#include <array>
#include <string_view>
#include <utility>

namespace crs {

/// One summand of the collected expansion of Delta^5 * G_{yx yx yx}:
///   coeff * T_{tDeriv} * Q_{q[0]} Q_{q[1]} Q_{q[2]} * D(d[0]) * D(d[1])
/// where D(u|v) = Q_u Q_{xv} - Q_v Q_{xu}. Subscripts are strings over {a, b}.
struct ThirdJetTerm {
    int coeff;
    std::string_view tDeriv;
    std::array<std::string_view, 3> q;
    std::array<std::pair<std::string_view, std::string_view>, 2> d;
};

// Grouped by T-derivative, highest order first. The D(aa|aa) and D(ab|ab)
// rows vanish identically; they stay in for a line-by-line audit.
inline constexpr std::array<ThirdJetTerm, 88> kThirdJetTable{{
    // T_aaa
    {-1, "aaa", {"b", "b", "b"}, {{{"a", "b"}, {"a", "b"}}}},
    // T_aab
    {3, "aab", {"a", "b", "b"}, {{{"a", "b"}, {"a", "b"}}}},
    // T_abb
    {-3, "abb", {"a", "a", "b"}, {{{"a", "b"}, {"a", "b"}}}},
    // T_bbb
    {1, "bbb", {"a", "a", "a"}, {{{"a", "b"}, {"a", "b"}}}},
    // T_aa
    {-2, "aa", {"b", "b", "ab"}, {{{"a", "b"}, {"a", "b"}}}},
    {2, "aa", {"a", "b", "bb"}, {{{"a", "b"}, {"a", "b"}}}},
    {3, "aa", {"b", "b", "b"}, {{{"a", "b"}, {"aa", "b"}}}},
    {2, "aa", {"b", "b", "b"}, {{{"a", "b"}, {"a", "ab"}}}},
    {-4, "aa", {"a", "b", "b"}, {{{"a", "b"}, {"ab", "b"}}}},
    {-2, "aa", {"a", "b", "b"}, {{{"a", "b"}, {"a", "bb"}}}},
    {-1, "aa", {"a", "a", "b"}, {{{"a", "b"}, {"b", "bb"}}}},
    // T_ab
    {-2, "ab", {"a", "a", "bb"}, {{{"a", "b"}, {"a", "b"}}}},
    {2, "ab", {"b", "b", "aa"}, {{{"a", "b"}, {"a", "b"}}}},
    {1, "ab", {"a", "a", "a"}, {{{"a", "b"}, {"b", "bb"}}}},
    {6, "ab", {"a", "a", "b"}, {{{"a", "b"}, {"ab", "b"}}}},
    {1, "ab", {"b", "b", "b"}, {{{"a", "b"}, {"a", "aa"}}}},
    {-6, "ab", {"a", "b", "b"}, {{{"a", "b"}, {"a", "ab"}}}},
    {5, "ab", {"a", "a", "b"}, {{{"a", "b"}, {"a", "bb"}}}},
    {-5, "ab", {"a", "b", "b"}, {{{"a", "b"}, {"aa", "b"}}}},
    // T_bb
    {-2, "bb", {"a", "b", "aa"}, {{{"a", "b"}, {"a", "b"}}}},
    {2, "bb", {"a", "a", "ab"}, {{{"a", "b"}, {"a", "b"}}}},
    {-3, "bb", {"a", "a", "a"}, {{{"a", "b"}, {"a", "bb"}}}},
    {-2, "bb", {"a", "a", "a"}, {{{"a", "b"}, {"ab", "b"}}}},
    {4, "bb", {"a", "a", "b"}, {{{"a", "b"}, {"a", "ab"}}}},
    {2, "bb", {"a", "a", "b"}, {{{"a", "b"}, {"aa", "b"}}}},
    {-1, "bb", {"a", "b", "b"}, {{{"a", "b"}, {"a", "aa"}}}},
    // T_a
    {3, "a", {"a", "a", "b"}, {{{"aa", "b"}, {"b", "bb"}}}},
    {3, "a", {"a", "a", "b"}, {{{"a", "ab"}, {"b", "bb"}}}},
    {-3, "a", {"a", "a", "a"}, {{{"ab", "b"}, {"b", "bb"}}}},
    {-3, "a", {"a", "a", "a"}, {{{"a", "bb"}, {"b", "bb"}}}},
    {-6, "a", {"a", "b", "b"}, {{{"aa", "b"}, {"b", "ab"}}}},
    {-6, "a", {"a", "b", "b"}, {{{"a", "ab"}, {"b", "ab"}}}},
    {6, "a", {"a", "a", "b"}, {{{"ab", "b"}, {"b", "ab"}}}},
    {6, "a", {"a", "a", "b"}, {{{"a", "bb"}, {"b", "ab"}}}},
    {3, "a", {"b", "b", "b"}, {{{"aa", "b"}, {"b", "aa"}}}},
    {3, "a", {"b", "b", "b"}, {{{"a", "ab"}, {"b", "aa"}}}},
    {-3, "a", {"a", "b", "b"}, {{{"ab", "b"}, {"b", "aa"}}}},
    {-3, "a", {"a", "b", "b"}, {{{"a", "bb"}, {"b", "aa"}}}},
    {-2, "a", {"a", "b", "aa"}, {{{"a", "b"}, {"b", "bb"}}}},
    {2, "a", {"b", "b", "aa"}, {{{"a", "b"}, {"b", "ab"}}}},
    {2, "a", {"a", "b", "ab"}, {{{"a", "b"}, {"b", "ab"}}}},
    {-2, "a", {"b", "b", "ab"}, {{{"a", "b"}, {"b", "aa"}}}},
    {-1, "a", {"a", "a", "b"}, {{{"a", "b"}, {"ab", "bb"}}}},
    {-1, "a", {"a", "a", "b"}, {{{"a", "b"}, {"b", "abb"}}}},
    {2, "a", {"a", "b", "b"}, {{{"a", "b"}, {"b", "aab"}}}},
    {-1, "a", {"b", "b", "b"}, {{{"a", "b"}, {"ab", "aa"}}}},
    {-1, "a", {"b", "b", "b"}, {{{"a", "b"}, {"b", "aaa"}}}},
    {2, "a", {"a", "a", "ab"}, {{{"a", "b"}, {"b", "bb"}}}},
    {-2, "a", {"a", "b", "ab"}, {{{"a", "b"}, {"b", "ab"}}}},
    {-2, "a", {"a", "a", "bb"}, {{{"a", "b"}, {"b", "ab"}}}},
    {2, "a", {"a", "b", "bb"}, {{{"a", "b"}, {"b", "aa"}}}},
    {1, "a", {"a", "a", "a"}, {{{"a", "b"}, {"b", "bbb"}}}},
    {-2, "a", {"a", "a", "b"}, {{{"a", "b"}, {"bb", "ab"}}}},
    {-2, "a", {"a", "a", "b"}, {{{"a", "b"}, {"b", "abb"}}}},
    {1, "a", {"a", "b", "b"}, {{{"a", "b"}, {"bb", "aa"}}}},
    {1, "a", {"a", "b", "b"}, {{{"a", "b"}, {"b", "aab"}}}},
    // T_b
    {-3, "b", {"a", "a", "b"}, {{{"a", "bb"}, {"aa", "b"}}}},
    {-3, "b", {"a", "a", "b"}, {{{"a", "bb"}, {"a", "ab"}}}},
    {3, "b", {"a", "a", "a"}, {{{"a", "bb"}, {"ab", "b"}}}},
    {3, "b", {"a", "a", "a"}, {{{"a", "bb"}, {"a", "bb"}}}},
    {6, "b", {"a", "b", "b"}, {{{"a", "ab"}, {"aa", "b"}}}},
    {6, "b", {"a", "b", "b"}, {{{"a", "ab"}, {"a", "ab"}}}},
    {-6, "b", {"a", "a", "b"}, {{{"a", "ab"}, {"ab", "b"}}}},
    {-6, "b", {"a", "a", "b"}, {{{"a", "ab"}, {"a", "bb"}}}},
    {-3, "b", {"b", "b", "b"}, {{{"a", "aa"}, {"aa", "b"}}}},
    {-3, "b", {"b", "b", "b"}, {{{"a", "aa"}, {"a", "ab"}}}},
    {3, "b", {"a", "b", "b"}, {{{"a", "aa"}, {"ab", "b"}}}},
    {3, "b", {"a", "b", "b"}, {{{"a", "aa"}, {"a", "bb"}}}},
    {2, "b", {"a", "b", "aa"}, {{{"a", "b"}, {"a", "bb"}}}},
    {-2, "b", {"b", "b", "aa"}, {{{"a", "b"}, {"a", "ab"}}}},
    {-2, "b", {"a", "b", "ab"}, {{{"a", "b"}, {"a", "ab"}}}},
    {2, "b", {"b", "b", "ab"}, {{{"a", "b"}, {"a", "aa"}}}},
    {1, "b", {"a", "a", "b"}, {{{"a", "b"}, {"aa", "bb"}}}},
    {1, "b", {"a", "a", "b"}, {{{"a", "b"}, {"a", "abb"}}}},
    {-2, "b", {"a", "b", "b"}, {{{"a", "b"}, {"a", "aab"}}}},
    {1, "b", {"b", "b", "b"}, {{{"a", "b"}, {"aa", "aa"}}}},
    {1, "b", {"b", "b", "b"}, {{{"a", "b"}, {"a", "aaa"}}}},
    {-2, "b", {"a", "a", "ab"}, {{{"a", "b"}, {"a", "bb"}}}},
    {2, "b", {"a", "b", "ab"}, {{{"a", "b"}, {"a", "ab"}}}},
    {2, "b", {"a", "a", "bb"}, {{{"a", "b"}, {"a", "ab"}}}},
    {-2, "b", {"a", "b", "bb"}, {{{"a", "b"}, {"a", "aa"}}}},
    {-1, "b", {"a", "a", "a"}, {{{"a", "b"}, {"a", "bbb"}}}},
    {2, "b", {"a", "a", "b"}, {{{"a", "b"}, {"ab", "ab"}}}},
    {2, "b", {"a", "a", "b"}, {{{"a", "b"}, {"a", "abb"}}}},
    {-1, "b", {"a", "b", "b"}, {{{"a", "b"}, {"ab", "aa"}}}},
    {-1, "b", {"a", "b", "b"}, {{{"a", "b"}, {"a", "aab"}}}},
    {-1, "b", {"a", "a", "a"}, {{{"a", "b"}, {"ab", "bb"}}}},
    {-2, "b", {"a", "b", "b"}, {{{"a", "b"}, {"aa", "ab"}}}},
}};

} // namespace crs

#endif // CRSPHERE_THIRD_JET_TABLE_HPP
