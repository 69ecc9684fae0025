// model.hpp — array scenarios, effective non-Hermitian Hamiltonian, probe vector.
//
// Units: all rates and frequencies are in units of the single-atom waveguide
// decay rate Γ (gamma, default 1); positions are in units of the resonant
// wavelength λ₀. Atom i has frequency ω₀ + δ_i and total on-site loss Γ + Γ_f.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "braggsim/errors.hpp"

namespace braggsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Physical scenario: N two-level atoms along a 1D waveguide.
struct ArrayConfig {
    int n = 1;
    double omega0 = 0.0;   // reference atomic frequency (working frame uses 0)
    double gamma = 1.0;    // waveguide-induced decay Γ, > 0
    double gamma_f = 0.0;  // free-space dissipation Γ_f, ≥ 0
    std::vector<double> shifts;     // δ_i, length n
    std::vector<double> positions;  // x_i in units of λ₀, strictly increasing

    // Bragg chain x_i = i·spacing with spacing in units of λ₀ (default λ₀/2).
    static ArrayConfig bragg(int n, std::vector<double> shifts, double gamma = 1.0,
                             double gamma_f = 0.0, double omega0 = 0.0,
                             double spacing = 0.5);

    void validate() const;  // throws ValidationError

    // true when all positions sit on the λ₀/2 lattice (up to tol), i.e. the
    // couplings reduce to the alternating-sign dissipative form
    bool is_bragg(double tol = 1e-9) const;
};

struct Coupling {
    double g;        // coherent coupling g_ij
    double gamma_c;  // dissipative coupling γ_ij
};

// g_ij = Γ sin(2π d_ij/λ₀), γ_ij = Γ cos(2π d_ij/λ₀), d_ij = |x_i − x_j|.
// Indices are 0-based.
Coupling coupling_coefficients(const ArrayConfig& config, int i, int j);

struct EffectiveHamiltonian {
    Matrix matrix;  // complex symmetric N×N
    ArrayConfig config;
};

// H_ii = ω₀ + δ_i − i(Γ+Γ_f); H_ij = g_ij − iγ_ij for i ≠ j.
EffectiveHamiltonian build_effective_hamiltonian(const ArrayConfig& config);

// V_i = e^{ik₀x_i} with the gauge fixed to v₀ = 1 (phases measured from the
// first atom), so spectra are reproducible bit-for-bit.
Vector probe_vector(const ArrayConfig& config);

}  // namespace braggsim
