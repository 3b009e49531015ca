#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <crsphere/job.hpp>

namespace {

void addCommon(CLI::App* sub, crs::JobConfig& cfg, std::string& varsText) {
    sub->add_option("--input", cfg.inputPath, "Input file of key = value lines");
    sub->add_option("--vars", varsText, "Comma-separated names for the input variables, in canonical order");
    sub->add_option("--order", cfg.order, "Truncation order K (default 10)");
    sub->add_option("--output", cfg.outputPath, "Write the report here instead of stdout");
    sub->add_flag("--pretty", cfg.pretty, "Indented JSON");
    sub->add_flag("--json", "Compact JSON (default)");
    sub->add_flag("--timings", cfg.timings, "Fill the timings object (makes output nondeterministic)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact sphericality test for real analytic hypersurfaces in C^2"};
    app.require_subcommand(1);
    crs::JobConfig cfg;
    std::string varsText;

    struct Spec {
        const char* name;
        const char* help;
        const char* input; // "theta", "xi", "phi" or nullptr
    };
    const Spec specs[] = {
        {"check", "Sphericality verdict for w = Theta(z, zb, wb)", "theta"},
        {"to-complex", "Convert u = phi(x, y, v) to Theta and check it", "phi"},
        {"verify-reality", "Reality identity of Theta, then the verdict", "theta"},
        {"derive-ode", "Associated ODE w_zz = F(z, w, wz)", "theta"},
        {"invariants", "AJ4, AJ6 and the Tresse invariants", "theta"},
        {"rigid-check", "Rigid formula for w = -wb + Xi(z, zb)", "xi"},
        {"dual", "Dual solution manifold and Koppisch check", "theta"},
    };
    for (const auto& s : specs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        addCommon(sub, cfg, varsText);
        std::string in = s.input;
        if (in == "theta") sub->add_option("--theta", cfg.theta, "Theta(z, zb, wb) as a polynomial expression");
        if (in == "xi") sub->add_option("--xi", cfg.xi, "Xi(z, zb) as a polynomial expression");
        if (in == "phi") sub->add_option("--phi", cfg.phi, "phi(x, y, v) as a polynomial expression");
        sub->callback([&cfg, name = std::string(s.name)] { cfg.command = crs::commandNames().at(name); });
    }
    CLI::App* self = app.add_subcommand("self-test", "Run the pinned fixture corpus");
    self->add_flag("--pretty", cfg.pretty, "Indented JSON");
    self->add_flag("--json", "Compact JSON (default)");
    self->add_option("--flip-term", cfg.flipTerm, "Fault injection: negate one row of the third-jet table");
    self->callback([&cfg] { cfg.command = crs::Command::SelfTest; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (!varsText.empty()) {
        try {
            cfg.vars = crs::detail::splitVars(varsText);
        } catch (const crs::DomainError& e) {
            std::cerr << "crsphere: " << e.what() << "\n";
            return 1;
        }
    }
    return crs::runJob(cfg);
}
