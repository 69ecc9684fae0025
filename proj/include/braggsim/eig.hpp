// eig.hpp — biorthogonal eigensystem of the effective Hamiltonian, interaction
// spectra, mode classification, and the two/N-atom closed-form solutions.
//
// H is complex symmetric, so left eigenvectors coincide with transposed right
// ones up to scale for simple eigenvalues. The decomposition does not rely on
// that: left vectors are the rows of the inverse eigenvector matrix, which
// keeps the biorthogonal system exact for degenerate (but diagonalizable)
// spectra and exposes defective cases through the eigenvalue condition number.

#pragma once

#include <complex>
#include <vector>

#include "braggsim/model.hpp"

namespace braggsim {

enum class ModeClass { superradiant, subradiant, dark };

const char* to_string(ModeClass c);

struct EigenMode {
    Complex energy;  // E_j; decay rate Γ_j = −Im(E_j)
    Vector right;    // |ψ_j^R⟩, unit norm, largest-magnitude entry real positive
    Vector left;     // ⟨ψ_j^L| entries, scaled so Σ_i left_i·right_i = 1
    Complex xi{0.0, 0.0};        // Ξ_j  = V†|ψ^R⟩⟨ψ^L|V
    Complex xi_tilde{0.0, 0.0};  // Ξ̃_j = Vᵀ|ψ^R⟩⟨ψ^L|V
    ModeClass cls = ModeClass::dark;

    double decay() const { return -energy.imag(); }
};

struct Eigensystem {
    std::vector<EigenMode> modes;  // sorted by decreasing decay, then Re(E)
    double gamma = 1.0;
    double min_gap = 0.0;        // min pairwise |E_j − E_k|
    double max_condition = 1.0;  // max_j ‖ψ_j^L‖·‖ψ_j^R‖ (eigenvalue condition)
    bool ep_adjacent = false;    // min_gap < 1e−6·Γ and max_condition > 1e6
    double max_right_residual = 0.0;  // max_j ‖Hψ^R − Eψ^R‖/‖H‖_F, unit vectors
    double max_left_residual = 0.0;
};

// Dense decomposition. Throws ConvergenceFailure when the QR iteration fails
// and DefectiveMatrix when biorthogonal normalization is impossible
// (reciprocal eigenvalue condition below 1e−12, e.g. at exceptional points).
Eigensystem eigendecompose(const EffectiveHamiltonian& h);

// Fill Ξ_j, Ξ̃_j. Completeness: Σ_j Ξ_j = V†V and Σ_j Ξ̃_j = VᵀV.
void interaction_spectra(Eigensystem& es, const Vector& v);

// dark: Γ_j < 1e−9·Γ; superradiant: Γ_j equals the maximum decay;
// subradiant otherwise.
void classify_modes(Eigensystem& es, double gamma);

// decompose + spectra + classify in one step
Eigensystem solve_modes(const ArrayConfig& config);

// Closed-form non-dark pair for the Bragg array with a single shifted atom.
struct ClosedFormPair {
    Complex e1;  // subradiant branch (δ → 0 gives E₁ → ω₀)
    Complex e2;  // superradiant branch (δ → 0 gives E₂ → ω₀ − iNΓ)
    Complex mu;
    Complex xi1, xi2;
    Complex norm1, norm2;    // normalization factors 𝒩₁, 𝒩₂
    Complex alpha1, alpha2;  // first right-vector components α_k
    int n = 2;
    double delta = 0.0, gamma = 1.0, omega0 = 0.0;
};

// Branch convention: μ = i√(4Γ²−δ²) for |δ| < 2Γ (E₁ subradiant),
// μ = sign(δ)√(δ²−4Γ²) for |δ| > 2Γ. Throws ExceptionalPoint when
// ||δ| − 2Γ| < 1e−12·Γ (μ → 0, spectra diverge).
ClosedFormPair two_atom_closed_form(double delta, double gamma, double omega0 = 0.0);

// N-atom generalization, shift pattern (δ, 0, …, 0). Branch: Im(μ) ≥ 0.
// No exceptional points for N ≥ 3; N = 2 delegates to two_atom_closed_form.
ClosedFormPair n_atom_single_shift_closed_form(int n, double delta, double gamma,
                                               double omega0 = 0.0);

}  // namespace braggsim
