#ifndef CRSPHERE_REPORT_HPP
#define CRSPHERE_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gauss_rat.hpp"
#include "multi_index.hpp"

namespace crs {

enum class Verdict { SphericalToOrder, NonSpherical, LeviDegenerate, RealityViolated, Error };

inline const char* verdictName(Verdict v) {
    switch (v) {
    case Verdict::SphericalToOrder: return "spherical-to-order";
    case Verdict::NonSpherical: return "non-spherical";
    case Verdict::LeviDegenerate: return "levi-degenerate";
    case Verdict::RealityViolated: return "reality-violated";
    case Verdict::Error: return "error";
    }
    return "error";
}

struct Report {
    Verdict verdict = Verdict::Error;
    int testedOrder = 0;
    std::optional<std::vector<int>> witnessMonomial;
    std::optional<GaussRat> witnessCoefficient;
    GaussRat deltaAtOrigin;
    /// stage name -> milliseconds; ordered so rendering is deterministic.
    std::map<std::string, double> timings;
    /// Optional named series (canonical text) emitted after the schema keys.
    std::vector<std::pair<std::string, std::string>> series;
    /// Free-form diagnostic message (errors, notes), emitted last when set.
    std::optional<std::string> message;

    friend bool operator==(const Report&, const Report&) = default;
};

namespace detail {
inline nlohmann::ordered_json gaussJson(const GaussRat& q) {
    nlohmann::ordered_json j;
    j["re"] = rationalString(q.re());
    j["im"] = rationalString(q.im());
    return j;
}
} // namespace detail

inline nlohmann::ordered_json reportJson(const Report& r) {
    nlohmann::ordered_json j;
    j["verdict"] = verdictName(r.verdict);
    j["tested_order"] = r.testedOrder;
    j["witness_monomial"] = r.witnessMonomial ? nlohmann::ordered_json(*r.witnessMonomial) : nullptr;
    j["witness_coefficient"] = r.witnessCoefficient ? detail::gaussJson(*r.witnessCoefficient) : nullptr;
    j["delta_at_origin"] = detail::gaussJson(r.deltaAtOrigin);
    nlohmann::ordered_json t = nlohmann::ordered_json::object();
    for (const auto& [stage, ms] : r.timings) t[stage] = ms;
    j["timings"] = t;
    if (!r.series.empty()) {
        nlohmann::ordered_json s = nlohmann::ordered_json::object();
        for (const auto& [name, text] : r.series) s[name] = text;
        j["series"] = s;
    }
    if (r.message) j["message"] = *r.message;
    return j;
}

/// Deterministic JSON text; keys in the fixed order verdict, tested_order,
/// witness_monomial, witness_coefficient, delta_at_origin, timings.
inline std::string renderReport(const Report& r, bool pretty = false) {
    return reportJson(r).dump(pretty ? 2 : -1);
}

} // namespace crs

#endif // CRSPHERE_REPORT_HPP
