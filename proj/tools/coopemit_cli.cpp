// coopemit: command-line front end.
//
//   coopemit <couplings|evolve|two-qubit|modes|sweep|run> [--config FILE] [--out DIR]
//            [--workers N] [--t-end T] [--rtol R]
//
// "run" takes the mode from the config file. Exit status: 0 on success, 2 for
// configuration errors, 3 when a resource cap is exceeded, 1 otherwise.

#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "coopemit/errors.hpp"
#include "coopemit/run_config.hpp"
#include "coopemit/runner.hpp"

using namespace coopemit;

namespace {

struct Flags {
    std::string config;
    std::string out;
    unsigned workers{0};
    std::optional<double> t_end;
    std::optional<double> rtol;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON run configuration (or a metadata.json from an earlier run)");
    sub->add_option("--out", f.out, "output directory (overrides the config)");
    sub->add_option("--workers", f.workers, "concurrent sweep points (default: available cores)");
    sub->add_option("--t-end", f.t_end, "integration horizon in 1/gamma0 (overrides the config)");
    sub->add_option("--rtol", f.rtol, "relative tolerance (overrides the config)");
}

int execute(std::optional<RunMode> mode, const Flags& f) {
    nlohmann::json doc = nlohmann::json::object();
    RunConfig c = f.config.empty() ? parse_config(doc, mode) : load_config(f.config, mode);
    if (!f.out.empty()) c.output = f.out;
    if (f.t_end || f.rtol) {
        // Re-validate through the parser so overrides get the same field checks.
        nlohmann::json resolved = resolved_config_json(c);
        if (f.t_end) resolved["integrator"]["t_end"] = *f.t_end;
        if (f.rtol) resolved["integrator"]["rtol"] = *f.rtol;
        c = parse_config(resolved, c.mode);
    }
    const SweepSummary s = run(c, {f.workers, &std::cerr});
    if (c.mode == RunMode::sweep) {
        std::cout << "argmax |delta_1N| at " << s.variable << " = " << s.argmax_abs_delta << "\n";
        std::cout << "burst last present at " << s.burst_last_present << ", absent from " << s.burst_vanishes_at
                  << "\n";
    }
    std::cout << "wrote " << c.output << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collective emission of qubit arrays coupled through a shared bath"};
    app.require_subcommand(1);
    Flags flags;
    std::optional<RunMode> mode;

    struct Entry {
        const char* name;
        const char* help;
        std::optional<RunMode> mode;
    };
    const Entry entries[] = {
        {"couplings", "generate and validate coupling matrices", RunMode::couplings},
        {"evolve", "evolve the fully excited array and record emission rates", RunMode::evolve},
        {"two-qubit", "solve the two-qubit collective-mode model", RunMode::two_qubit},
        {"modes", "collective jump modes of the decoherence matrix", RunMode::modes},
        {"sweep", "sweep k0 or N and summarize asymmetry and bursts", RunMode::sweep},
        {"run", "run the mode named in the config", std::nullopt},
    };
    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_flags(sub, flags);
        sub->callback([&mode, m = e.mode] { mode = m; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    if (std::string(app.get_subcommands().front()->get_name()) == "run" && flags.config.empty()) {
        std::cerr << "error: run needs --config\n";
        return 2;
    }

    try {
        return execute(mode, flags);
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
