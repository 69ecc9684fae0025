// scatter.hpp — single-photon transmission/reflection amplitudes and photon
// absorption. The resolvent linear solve is the canonical path; the modal sum
// exists as a diagnostic that exposes the interaction spectra Ξ_j.

#pragma once

#include "braggsim/eig.hpp"
#include "braggsim/model.hpp"

namespace braggsim {

struct Amplitudes {
    Complex t;
    Complex r;
};

struct ScatteringResult {
    double omega = 0.0;
    double delta_probe = 0.0;  // Δ = ω − ω₀
    Complex t{0.0, 0.0};
    Complex r{0.0, 0.0};
    double transmission = 0.0;  // T = |t|²
    double reflection = 0.0;    // R = |r|²
    double eta = 0.0;           // η = 1 − T − R
};

// t = 1 − iΓ·V†(ωI−H)⁻¹V, r = −iΓ·Vᵀ(ωI−H)⁻¹V via one linear solve.
// Falls back to a minimum-norm least-squares solve when the probe sits on a
// lossless eigenvalue; throws SingularSystem if the residual still exceeds
// 1e−8·‖V‖.
Amplitudes amplitudes_resolvent(const EffectiveHamiltonian& h, const Vector& v,
                                double omega);

// t = 1 − iΓ Σ_j Ξ_j/(ω−E_j) and the Ξ̃ sum for r. Requires spectra filled.
// Terms whose spectral weight is pure roundoff (|Ξ| < 1e−12·N) are dropped;
// they vanish identically for dark modes but would otherwise divide noise by
// a vanishing gap at exactly-degenerate dark poles.
// Throws EPUnreliable when the eigensystem is flagged exceptional-point
// adjacent.
Amplitudes amplitudes_modal(const Eigensystem& es, double omega, double gamma);

// Closed forms for Bragg arrays, Γ_f = 0. Δ is the probe detuning ω − ω₀.
// Removable 0/0 points return the limit value 0.
Complex transmission_two_atom(double delta_probe, double delta, double gamma);
Complex transmission_n_atom(double delta_probe, double delta, double gamma, int n);

inline double absorption(Complex t, Complex r) {
    return 1.0 - std::norm(t) - std::norm(r);
}

// η at the transparency probe Δ = δ/2 for two atoms with free-space loss:
// η = 16ΓΓ_f(4Γ_f²+δ²)/(4Γ_f²+8ΓΓ_f+δ²)².
double absorption_resonance_two_atom(double gamma, double gamma_f, double delta);

// Stationary points of η(Γ_f), ordered I < II < III:
//   I   Γ_f = Γ − √(4Γ²−δ²)/2   (matches the subradiant decay rate, η = 1/2)
//   II  Γ_f = |δ|/2             (minimum)
//   III Γ_f = Γ + √(4Γ²−δ²)/2   (matches the superradiant decay rate, η = 1/2)
struct AbsorptionExtrema {
    double gf_subradiant;   // case I
    double gf_minimum;      // case II
    double gf_superradiant; // case III
};

// Requires 0 < |δ| < 2Γ, otherwise NoRealExtrema. Each value is verified
// stationary by Richardson-extrapolated central differences (base step
// 1e−6·Γ, tolerance |η'| < 1e−6).
AbsorptionExtrema absorption_extrema(double gamma, double delta);

// convenience: full record at one probe frequency via the resolvent
ScatteringResult scatter_at(const EffectiveHamiltonian& h, const Vector& v, double omega);

}  // namespace braggsim
