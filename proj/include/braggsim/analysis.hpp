// analysis.hpp — probe-frequency sweeps, transparency-window and absorption-peak
// detection, subradiant decay maps over shift grids, and CIA operating-point
// searches.

#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "braggsim/scatter.hpp"

namespace braggsim {

struct TransparencyWindow {
    double delta_probe;   // refined peak position Δ*
    double transmission;  // T at the refined peak
};

struct AbsorptionPeak {
    double delta_probe;
    double eta;
};

struct SweepResult {
    ArrayConfig config;
    std::vector<double> grid;  // Δ values, strictly increasing
    std::vector<ScatteringResult> points;
    std::vector<int> gaps;  // grid indices where the resolvent solve failed
    std::vector<TransparencyWindow> windows;
    std::vector<AbsorptionPeak> absorption_peaks;
};

// Uniform Δ grid evaluated by the resolvent. Per-point solve failures are
// recorded as gaps (NaN point) and never abort the sweep.
SweepResult sweep_spectrum(const ArrayConfig& config, double delta_min,
                           double delta_max, int npts);

// Local maxima of T refined by golden-section search on the continuous
// resolvent model (position accuracy 1e−8·Γ), filtered to refined T ≥
// threshold. Every sampled local maximum is refined before thresholding:
// windows can be narrower than the grid spacing. Results are stored in
// sweep.windows and returned.
std::vector<TransparencyWindow> find_transparency_windows(SweepResult& sweep,
                                                          double threshold = 0.99);

// Same machinery for absorption maxima; peaks below the floor are noise and
// dropped. Stored in sweep.absorption_peaks.
std::vector<AbsorptionPeak> find_absorption_peaks(SweepResult& sweep,
                                                  double floor = 1e-3);

// Δω between the transparency window Δ* = (1−1/N)δ and the subradiant level
// Re(E₁) − ω₀ of the single-shift closed form. Zero for N = 2 inside the
// anti-PT-protected regime.
double transparency_vs_subradiant_offset(int n, double delta, double gamma);

struct DecayMap {
    int n = 0;
    std::pair<int, int> shift_atoms{0, 1};  // 0-based
    std::vector<double> delta1_grid, delta2_grid;
    // row-major [i1*delta2_grid.size() + i2]
    std::vector<double> gamma_mode1;  // vanishes where the two shifts coincide
    std::vector<double> gamma_mode2;  // vanishes where either shift is zero
    std::vector<std::uint8_t> ambiguous;  // tracking-ambiguity cell flags

    std::size_t index(std::size_t i1, std::size_t i2) const {
        return i1 * delta2_grid.size() + i2;
    }
};

// Decay rates of the two shift-induced subradiant modes over a (δ₁, δ₂) grid.
// Mode 1 is identified per cell as the best overlap with the shifted-pair
// state orthogonal to the probe vector (exactly dark when δ₁ = δ₂ in a Bragg
// array); mode 2 is the largest remaining non-superradiant decay. Overlap
// continuity |⟨ψ_prev^L|ψ_next^R⟩| against the previous grid cell validates
// the assignment; disagreements and degenerate clusters set the cell flag.
DecayMap subradiant_decay_map(int n, std::pair<int, int> shift_atoms,
                              const std::vector<double>& d1_grid,
                              const std::vector<double>& d2_grid, double gamma);

// Bragg config with arithmetic shifts (0, δ, 2δ, …, (N−1)δ).
ArrayConfig comb_config(int n, double delta, double gamma = 1.0, double gamma_f = 0.0);

struct CiaPoint {
    double gamma_f;
    double eta_max;      // refined global absorption maximum over the sweep
    double delta_peak;   // its probe detuning Δ*
};

struct CiaScan {
    std::vector<CiaPoint> points;      // one per grid Γ_f
    std::vector<CiaPoint> stationary;  // refined stationary operating points
};

// For each Γ_f, sweep Δ and record the refined absorption maximum; stationary
// points of η_max(Γ_f) are bracketed by discrete sign changes and refined by
// golden-section search.
CiaScan cia_operating_points(const ArrayConfig& config,
                             const std::vector<double>& gf_grid);

struct ShiftSearchResult {
    double delta_star;  // equal-difference shift maximizing the weakest peak
    std::vector<std::pair<double, double>> profile;  // (δ, min over subradiant peaks of η)
};

// Scan the equal-difference shift δ at fixed Γ_f: for each δ, locate the
// absorption peak at every subradiant frequency and score by the smallest of
// them. The optimum meets the CIA condition by tuning δ instead of Γ_f.
ShiftSearchResult cia_shift_search(int n, double gamma_f,
                                   const std::vector<double>& delta_grid);

// golden-section maximization on [lo, hi]; returns (x*, f(x*))
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double lo, double hi, double tol);

}  // namespace braggsim
