#ifndef CRSPHERE_JOB_HPP
#define CRSPHERE_JOB_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cr_defining.hpp"
#include "errors.hpp"
#include "expr_parser.hpp"
#include "fixtures.hpp"
#include "invariants.hpp"
#include "ode_transfer.hpp"
#include "report.hpp"
#include "third_jet_table.hpp"

namespace crs {

enum class Command { Check, ToComplex, VerifyReality, DeriveOde, Invariants, RigidCheck, Dual, SelfTest };

inline const std::map<std::string, Command>& commandNames() {
    static const std::map<std::string, Command> m{
        {"check", Command::Check},           {"to-complex", Command::ToComplex},
        {"verify-reality", Command::VerifyReality}, {"derive-ode", Command::DeriveOde},
        {"invariants", Command::Invariants}, {"rigid-check", Command::RigidCheck},
        {"dual", Command::Dual},             {"self-test", Command::SelfTest},
    };
    return m;
}

inline constexpr int kDefaultOrder = 10;
inline constexpr int kMinOrder = 4;
/// aj6 loses six orders to differentiation.
inline constexpr int kMinVerdictOrder = 7;
inline constexpr int kDefaultMaxOrder = 16;

struct JobConfig {
    Command command = Command::Check;
    std::optional<std::string> inputPath;
    std::optional<std::string> theta;
    std::optional<std::string> xi;
    std::optional<std::string> phi;
    std::optional<VarList> vars;
    std::optional<int> order;
    std::optional<std::string> outputPath;
    bool pretty = false;
    bool timings = false;
    /// self-test only: flip the sign of this row of the third-jet table.
    std::optional<int> flipTerm;
};

struct JobResult {
    int exitCode = 0;
    std::string output;      // report text, newline terminated
    std::string diagnostic;  // for stderr; empty when clean
};

/// CRS_MAX_ORDER, default 16.
inline int maxOrderFromEnv() {
    const char* v = std::getenv("CRS_MAX_ORDER");
    if (!v || !*v) return kDefaultMaxOrder;
    try {
        std::size_t used = 0;
        int n = std::stoi(v, &used);
        if (used == std::string(v).size() && n > 0) return n;
    } catch (const std::exception&) {
    }
    throw DomainError("CRS_MAX_ORDER must be a positive integer");
}

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline VarList splitVars(const std::string& s) {
    VarList out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw DomainError("empty name in variable list");
        out.push_back(item);
    }
    return out;
}

/// key = value lines; '#' starts a comment line; values may be double-quoted.
inline void mergeInputFile(JobConfig& cfg) {
    std::ifstream in(*cfg.inputPath);
    if (!in) throw DomainError("cannot open input file '" + *cfg.inputPath + "'");
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw DomainError("input line " + std::to_string(lineNo) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        // Command-line values win over the file.
        if (key == "theta") {
            if (!cfg.theta) cfg.theta = value;
        } else if (key == "xi") {
            if (!cfg.xi) cfg.xi = value;
        } else if (key == "phi") {
            if (!cfg.phi) cfg.phi = value;
        } else if (key == "vars") {
            if (!cfg.vars) cfg.vars = splitVars(value);
        } else if (key == "order") {
            if (!cfg.order) {
                try {
                    cfg.order = std::stoi(value);
                } catch (const std::exception&) {
                    throw DomainError("input line " + std::to_string(lineNo) + ": order must be an integer");
                }
            }
        } else {
            throw DomainError("input line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
        }
    }
}

/// Parses `text` over the user's names (if any) and renames positionally to
/// the canonical ones.
inline TruncSeries parseInput(const std::string& text, const std::optional<VarList>& declared,
                              const VarList& canonical, int order, const char* what) {
    VarList names = declared ? *declared : canonical;
    if (names.size() != canonical.size())
        throw DomainError(std::string(what) + " needs " + std::to_string(canonical.size()) + " variables");
    TruncSeries s = parseSeries(text, names, order);
    std::map<std::string, std::string> relabel;
    for (std::size_t i = 0; i < names.size(); ++i) relabel[names[i]] = canonical[i];
    return s.renamed(relabel);
}

inline const std::string& require(const std::optional<std::string>& v, const char* flag) {
    if (!v) throw DomainError(std::string("missing required input: ") + flag);
    return *v;
}

/// The full verdict, refusing orders at which aj6 would carry no information.
inline Report verdictFor(const ComplexDefining& cd, int order, bool timings) {
    if (order < kMinVerdictOrder) {
        ComplexDefining t = cd;
        t.theta = t.theta.truncated(order);
        if (verifyReality(t, order).pass && leviDelta(t).nondegenerate)
            throw DomainError("order too small for the requested pipeline: aj6 needs order >= " +
                              std::to_string(kMinVerdictOrder));
    }
    return sphericalityVerdict(cd, order, timings);
}

inline bool reachedAj6(const Report& r) {
    return r.verdict == Verdict::SphericalToOrder || r.verdict == Verdict::NonSpherical;
}

inline Report rigidCheck(const TruncSeries& xi, int order, bool timings) {
    ComplexDefining cd = rigidDefining(xi);
    TruncSeries mirror = reorder(conjugateSeries(xi, {{"z", "zb"}, {"zb", "z"}}), rigidVars());
    TruncSeries asym = xi - mirror;
    TruncSeries xzzb = xi.derive(std::vector<int>{1, 1});
    Report r;
    r.deltaAtOrigin = xzzb.constantTerm();
    auto widen = [](std::vector<int> e) {
        e.push_back(0);
        return e;
    };
    if (!asym.isZero()) {
        r.verdict = Verdict::RealityViolated;
        r.testedOrder = asym.knownOrder();
        auto w = asym.lowestTerm();
        r.witnessMonomial = widen(w->index.exponents(2));
        r.witnessCoefficient = w->coeff;
        return r;
    }
    if (!xzzb.isUnit()) {
        r.verdict = Verdict::LeviDegenerate;
        r.testedOrder = xzzb.knownOrder();
        return r;
    }
    if (order < kMinVerdictOrder)
        throw DomainError("order too small for the requested pipeline: the rigid invariant needs order >= " +
                          std::to_string(kMinVerdictOrder));
    auto start = std::chrono::steady_clock::now();
    TruncSeries rigid = rigidInvariant(xi);
    if (timings)
        r.timings["rigid"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.testedOrder = rigid.knownOrder();
    if (rigid.isZero()) {
        r.verdict = Verdict::SphericalToOrder;
    } else {
        r.verdict = Verdict::NonSpherical;
        auto w = rigid.lowestTerm();
        r.witnessMonomial = widen(w->index.exponents(2));
        r.witnessCoefficient = w->coeff;
    }
    // Cross-check against the general pipeline: aj6 = X^7 * rigid invariant,
    // so the lowest terms agree after scaling by X(0)^7.
    Report general = sphericalityVerdict(cd, order, timings);
    for (const auto& [k, v] : general.timings) r.timings[k] = v;
    bool agree = general.verdict == r.verdict;
    if (agree && r.witnessMonomial) {
        GaussRat scale(1);
        for (int i = 0; i < 7; ++i) scale *= r.deltaAtOrigin;
        agree = general.witnessMonomial == r.witnessMonomial && *general.witnessCoefficient == *r.witnessCoefficient * scale;
    }
    if (!agree) throw InternalError("rigid formula and aj6 disagree on " + toText(xi));
    return r;
}

// ---- self-test ----------------------------------------------------------------

struct SelfCheck {
    std::string name;
    bool pass;
};

inline std::vector<SelfCheck> selfTestChecks(std::optional<int> flipTerm) {
    std::vector<SelfCheck> out;
    auto check = [&](std::string name, const std::function<bool()>& body) {
        bool pass = false;
        try {
            pass = body();
        } catch (const std::exception&) {
            pass = false;
        }
        out.push_back({std::move(name), pass});
    };

    // Sphericality verdicts.
    for (const auto& fx : fixtures::corpus(10)) {
        if (!fx.spherical) continue;
        check("verdict " + fx.name, [&] {
            Report r = sphericalityVerdict(fx.defining, 10);
            return verifyReality(fx.defining, 10).pass && r.verdict == Verdict::SphericalToOrder && r.testedOrder >= 4;
        });
    }
    for (const auto& fx : fixtures::corpus(12)) {
        if (fx.spherical) continue;
        check("verdict " + fx.name, [&] {
            Report r = sphericalityVerdict(fx.defining, 12);
            return r.verdict == Verdict::NonSpherical && r.witnessMonomial == fx.witnessMonomial &&
                   r.witnessCoefficient == fx.witnessCoefficient;
        });
        check("rigid formula " + fx.name, [&] {
            TruncSeries lhs = rigidInvariant(rigidXi(fx.defining)).embedded(thetaVars());
            TruncSeries rhs = aj6Rational(fx.defining, aj4(fx.defining));
            return (lhs - rhs).isZero();
        });
    }

    // Transferred I1 equals aj6 / delta^7.
    for (const auto& fx : fixtures::corpus(8)) {
        check("pipeline equivalence " + fx.name, [&] {
            TruncSeries delta7 = leviDelta(fx.defining).delta.pow(7);
            TruncSeries lhs = transferredI1(fx.defining, 8);
            return (lhs - divide(aj6(fx.defining), delta7)).isZero();
        });
    }

    // Third-jet table regression on seeded random (Q, T).
    std::vector<ThirdJetTerm> table(kThirdJetTable.begin(), kThirdJetTable.end());
    if (flipTerm) {
        if (*flipTerm < 0 || *flipTerm >= static_cast<int>(table.size()))
            throw DomainError("--flip-term must lie in [0, " + std::to_string(table.size()) + ")");
        table[static_cast<std::size_t>(*flipTerm)].coeff = -table[static_cast<std::size_t>(*flipTerm)].coeff;
    }
    for (std::uint64_t seed : {11u, 22u, 33u}) {
        check("third-jet table seed " + std::to_string(seed), [&] {
            std::mt19937_64 rng(seed);
            TruncSeries q = fixtures::randomGenericQ(rng, 3, 6);
            TruncSeries t = fixtures::randomDenseT(rng, 3, 6);
            SolutionManifold m = SolutionManifold::fromQ(q);
            return (thirdJetExpanded(m, t, table) - thirdJetOperator(m, t)).isZero();
        });
    }

    // Duality.
    check("dual of heisenberg is its conjugate", [&] {
        ComplexDefining h = fixtures::heisenberg(8);
        SolutionManifold dual = dualManifold(SolutionManifold::fromDefining(h), 8);
        return dual.q == reorder(conjugateSeries(h.theta, crConjugation()), {"zb", "z", "w"});
    });
    for (const auto& fx : fixtures::corpus(8)) {
        check("koppisch " + fx.name, [&] {
            return koppischCheck(SolutionManifold::fromDefining(fx.defining), 8).equivalencesHold();
        });
    }
    return out;
}

inline JobResult runSelfTest(const JobConfig& cfg) {
    std::vector<SelfCheck> checks = selfTestChecks(cfg.flipTerm);
    nlohmann::ordered_json j;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    int failed = 0;
    for (const auto& c : checks) {
        list.push_back({{"check", c.name}, {"pass", c.pass}});
        if (!c.pass) ++failed;
    }
    j["self_test"] = list;
    j["passed"] = static_cast<int>(checks.size()) - failed;
    j["failed"] = failed;
    JobResult res;
    res.output = j.dump(cfg.pretty ? 2 : -1) + "\n";
    res.exitCode = failed == 0 ? 0 : 2;
    if (failed) res.diagnostic = std::to_string(failed) + " self-test check(s) failed";
    return res;
}

inline Report runCommand(const JobConfig& cfg, int order) {
    const bool timings = cfg.timings;
    switch (cfg.command) {
    case Command::Check:
    case Command::VerifyReality:
    case Command::DeriveOde:
    case Command::Invariants:
    case Command::Dual: {
        TruncSeries theta = parseInput(require(cfg.theta, "--theta"), cfg.vars, thetaVars(), order, "theta");
        ComplexDefining cd = ComplexDefining::fromTheta(theta);
        Report r = verdictFor(cd, order, timings);
        if (cfg.command == Command::VerifyReality && r.verdict == Verdict::RealityViolated)
            r.series.emplace_back("residual", toText(realityResidual(cd.theta, order)));
        if (!reachedAj6(r)) return r;
        SolutionManifold m = SolutionManifold::fromDefining(cd);
        if (cfg.command == Command::DeriveOde) {
            r.series.emplace_back("F", toText(associatedOde(m, order).f));
        } else if (cfg.command == Command::Invariants) {
            TruncSeries a4 = aj4(cd);
            TruncSeries a6 = aj6(cd, a4);
            InvariantPair ip = tresseInvariants(associatedOde(m, order));
            TruncSeries i1t = transferToSolutionSpace(m, ip.i1);
            if (!(i1t - divide(a6, leviDelta(cd).delta.pow(7))).isZero())
                throw InternalError("transferred I1 disagrees with aj6 / delta^7");
            r.series.emplace_back("aj4", toText(a4));
            r.series.emplace_back("aj6", toText(a6));
            r.series.emplace_back("I1", toText(ip.i1));
            r.series.emplace_back("I2", toText(ip.i2));
        } else if (cfg.command == Command::Dual) {
            SolutionManifold dual = dualManifold(m, order);
            TruncSeries conj = reorder(conjugateSeries(cd.theta.truncated(order), crConjugation()), dual.q.vars());
            if (!(dual.q - conj).isZero()) throw InternalError("dual manifold differs from the conjugate equation");
            r.series.emplace_back("dual", toText(dual.q));
            KoppischResult k = koppischCheck(m, order);
            if (!k.equivalencesHold()) throw InternalError("Koppisch vanishing equivalences fail");
            auto flag = [](bool b) { return b ? "0" : "nonzero"; };
            r.message = std::string("I1 ") + flag(k.i1Vanishes) + ", I2 " + flag(k.i2Vanishes) + ", dual I1 " +
                        flag(k.dualI1Vanishes) + ", dual I2 " + flag(k.dualI2Vanishes) + " to order " +
                        std::to_string(k.testedOrder);
        }
        return r;
    }
    case Command::ToComplex: {
        TruncSeries phi = parseInput(require(cfg.phi, "--phi"), cfg.vars, realGraphVars(), order, "phi");
        ComplexDefining cd = toComplexDefining(RealGraph(phi), order);
        Report r = verdictFor(cd, order, timings);
        r.series.emplace_back("theta", toText(cd.theta));
        return r;
    }
    case Command::RigidCheck: {
        TruncSeries xi = parseInput(require(cfg.xi, "--xi"), cfg.vars, rigidVars(), order, "xi");
        return rigidCheck(xi, order, timings);
    }
    case Command::SelfTest: break;
    }
    throw InternalError("unhandled command");
}

inline JobResult errorResult(int code, const std::string& what, bool pretty) {
    Report r;
    r.verdict = Verdict::Error;
    r.message = what;
    return {code, renderReport(r, pretty) + "\n", what};
}

} // namespace detail

/// Runs the job and returns the rendered output; nothing is written.
inline JobResult executeJob(JobConfig cfg) {
    try {
        if (cfg.command == Command::SelfTest) return detail::runSelfTest(cfg);
        if (cfg.inputPath) detail::mergeInputFile(cfg);
        int order = cfg.order.value_or(kDefaultOrder);
        if (order < kMinOrder) throw DomainError("order must be at least " + std::to_string(kMinOrder));
        int cap = maxOrderFromEnv();
        if (order > cap)
            throw DomainError("order " + std::to_string(order) + " exceeds CRS_MAX_ORDER = " + std::to_string(cap));
        Report r = detail::runCommand(cfg, order);
        return {0, renderReport(r, cfg.pretty) + "\n", ""};
    } catch (const DomainError& e) {
        return detail::errorResult(1, e.what(), cfg.pretty);
    } catch (const InternalError& e) {
        return detail::errorResult(2, std::string("internal error: ") + e.what(), cfg.pretty);
    } catch (const std::exception& e) {
        return detail::errorResult(2, std::string("internal error: ") + e.what(), cfg.pretty);
    }
}

/// Executes the job and writes the report to stdout or, atomically, to the
/// output path. Returns the exit status.
inline int runJob(const JobConfig& cfg) {
    JobResult res = executeJob(cfg);
    if (!res.diagnostic.empty()) std::cerr << "crsphere: " << res.diagnostic << "\n";
    if (!cfg.outputPath) {
        std::cout << res.output << std::flush;
        return res.exitCode;
    }
    namespace fs = std::filesystem;
    fs::path target(*cfg.outputPath);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "crsphere: cannot write '" << tmp.string() << "'\n";
            return 1;
        }
        out << res.output;
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::cerr << "crsphere: cannot write '" << target.string() << "': " << ec.message() << "\n";
        return 1;
    }
    return res.exitCode;
}

} // namespace crs

#endif // CRSPHERE_JOB_HPP
