// cli.hpp — run configuration (JSON ingestion with strict validation) and
// subcommand dispatch. The CLI works in the ω₀ = 0 frame: every output is
// keyed by the probe detuning Δ = ω − ω₀.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include "braggsim/analysis.hpp"
#include "braggsim/output.hpp"

namespace braggsim {

struct Span {
    double lo;
    double hi;
};

struct RunConfig {
    ArrayConfig scenario;

    // equal-difference step when the scenario came from a shift_pattern;
    // required by the comb command
    std::optional<double> pattern_delta;

    Span span{-2.0, 2.0};
    int grid = 2001;
    double threshold = 0.99;

    Span gf_span{0.0, 2.5};
    int gf_grid = 51;

    std::pair<int, int> shift_atoms{0, 1};  // 0-based (1-based in config files)
    Span d1_span{-0.5, 0.5};
    int d1_grid = 41;
    Span d2_span{-0.5, 0.5};
    int d2_grid = 41;

    Span delta_span{0.05, 2.0};
    int delta_grid = 41;

    std::string out = "out.csv";
    std::string format = "csv";  // "csv" | "json"

    std::string regime() const;  // "bragg" or "general"
};

// Strict JSON ingestion: unknown keys are rejected, invariants checked with
// field diagnostics, defaults applied (Γ=1, Γ_f=0, ω₀=0, Bragg spacing λ₀/2).
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

// lossless round-trip companion to parse_config_text
std::string run_config_to_json(const RunConfig& rc);

// Executes one subcommand of {spectrum, eigs, absorption, extrema, decaymap,
// comb, cia-search} and writes the output (and a .features sibling where the
// command detects features). Throws Error subclasses; exit-code mapping is
// the caller's job.
void run_command(const std::string& command, const RunConfig& rc);

}  // namespace braggsim
