// braggsim — single-photon scattering spectra for waveguide-coupled atom
// arrays. Subcommands read a JSON scenario file and write CSV/JSON tables.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "braggsim/cli.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::string out;
    std::string format;
    int grid = 0;
    std::string span;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config, "scenario file (JSON)")->required();
    cmd->add_option("--out", flags.out, "output path (overrides config)");
    cmd->add_option("--format", flags.format, "csv or json (overrides config)");
    cmd->add_option("--grid", flags.grid, "probe-grid points (overrides config)");
    cmd->add_option("--span", flags.span, "probe span lo,hi (overrides config)");
}

braggsim::RunConfig load(const CommonFlags& flags) {
    braggsim::RunConfig rc = braggsim::parse_config(flags.config);
    if (!flags.out.empty()) rc.out = flags.out;
    if (!flags.format.empty()) {
        if (flags.format != "csv" && flags.format != "json")
            throw braggsim::ValidationError("format must be 'csv' or 'json'");
        rc.format = flags.format;
    }
    if (flags.grid > 0) rc.grid = flags.grid;
    if (!flags.span.empty()) {
        const auto comma = flags.span.find(',');
        if (comma == std::string::npos)
            throw braggsim::ValidationError("--span expects lo,hi");
        braggsim::Span s{braggsim::parse_double(flags.span.substr(0, comma)),
                         braggsim::parse_double(flags.span.substr(comma + 1))};
        if (!(s.hi > s.lo)) throw braggsim::ValidationError("--span must satisfy lo < hi");
        rc.span = s;
    }
    return rc;
}

int fail(const braggsim::Error& e) {
    std::cerr << "{\"error\":{\"code\":\"" << e.tag
              << "\",\"exit\":" << static_cast<int>(e.code) << ",\"message\":\""
              << e.what() << "\"}}\n";
    return static_cast<int>(e.code);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-photon scattering spectra for waveguide-coupled atom arrays"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {"spectrum", "eigs",     "absorption",
                                               "extrema",  "decaymap", "comb",
                                               "cia-search"};
    const std::vector<std::string> blurbs = {
        "transmission/reflection/absorption sweep with transparency windows",
        "biorthogonal eigenmodes with interaction spectra and classes",
        "absorption operating points versus free-space dissipation",
        "the three stationary points of the two-atom absorption",
        "subradiant decay rates over a two-shift grid",
        "equal-difference shift array spectrum (frequency-comb transparency)",
        "equal-difference shift scan for multi-frequency absorption"};

    std::vector<CommonFlags> flags(commands.size());
    std::vector<CLI::App*> subs;
    for (size_t k = 0; k < commands.size(); ++k) {
        CLI::App* sub = app.add_subcommand(commands[k], blurbs[k]);
        add_common(sub, flags[k]);
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    for (size_t k = 0; k < commands.size(); ++k) {
        if (!subs[k]->parsed()) continue;
        try {
            braggsim::run_command(commands[k], load(flags[k]));
            return 0;
        } catch (const braggsim::Error& e) {
            return fail(e);
        } catch (const std::exception& e) {
            std::cerr << "{\"error\":{\"code\":\"Internal\",\"exit\":3,\"message\":\""
                      << e.what() << "\"}}\n";
            return 3;
        }
    }
    return 2;
}
