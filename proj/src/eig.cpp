#include "braggsim/eig.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace braggsim {

namespace {

constexpr Complex I{0.0, 1.0};

constexpr double ep_gap_factor = 1e-6;    // spectral-gap part of the EP flag
constexpr double ep_condition_cap = 1e6;  // condition-number part of the EP flag
constexpr double defective_rcond = 1e-12;

}  // namespace

const char* to_string(ModeClass c) {
    switch (c) {
        case ModeClass::superradiant: return "superradiant";
        case ModeClass::subradiant: return "subradiant";
        case ModeClass::dark: return "dark";
    }
    return "unknown";
}

Eigensystem eigendecompose(const EffectiveHamiltonian& h) {
    const Eigen::Index n = h.matrix.rows();
    if (n < 1 || h.matrix.cols() != n) throw ValidationError("matrix must be square and nonempty");
    if (n > 4096) throw ValidationError("dense eigensolver limited to N <= 4096");
    if (!h.matrix.allFinite()) throw ValidationError("matrix must be finite");

    Eigen::ComplexEigenSolver<Matrix> ces(h.matrix, /*computeEigenvectors=*/true);
    if (ces.info() != Eigen::Success)
        throw ConvergenceFailure("complex eigensolver did not converge");

    Matrix right = ces.eigenvectors();
    const Vector values = ces.eigenvalues();

    // unit right vectors, left vectors from the inverse so that W·right = I
    for (Eigen::Index j = 0; j < n; ++j) right.col(j).normalize();
    const Eigen::PartialPivLU<Matrix> lu(right);
    Matrix left = lu.solve(Matrix::Identity(n, n));
    if (!left.allFinite())
        throw DefectiveMatrix("eigenvector matrix is numerically singular");

    Eigensystem es;
    es.gamma = h.config.gamma;

    double max_cond = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double cond = left.row(j).norm();  // ‖l_j‖·‖r_j‖ with ‖r_j‖ = 1
        max_cond = std::max(max_cond, cond);
        if (1.0 / cond < defective_rcond)
            throw DefectiveMatrix("biorthogonal normalization impossible (|<L|R>| < 1e-12)");
    }
    es.max_condition = max_cond;

    double min_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = j + 1; k < n; ++k)
            min_gap = std::min(min_gap, std::abs(values(j) - values(k)));
    es.min_gap = (n > 1) ? min_gap : std::numeric_limits<double>::infinity();
    es.ep_adjacent = n > 1 && es.min_gap < ep_gap_factor * es.gamma &&
                     es.max_condition > ep_condition_cap;

    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (values(a).imag() != values(b).imag()) return values(a).imag() < values(b).imag();
        return values(a).real() < values(b).real();
    });

    const double hnorm = h.matrix.norm();
    es.modes.reserve(static_cast<size_t>(n));
    for (Eigen::Index idx : order) {
        EigenMode m;
        m.energy = values(idx);
        m.right = right.col(idx);
        m.left = left.row(idx).transpose();

        // phase: largest-magnitude right component real positive
        Eigen::Index kmax = 0;
        double amax = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double a = std::abs(m.right(i));
            if (a > amax) { amax = a; kmax = i; }
        }
        const Complex phase = m.right(kmax) / amax;
        m.right *= std::conj(phase);
        m.left *= phase;

        const double rres = (h.matrix * m.right - m.energy * m.right).norm() / hnorm;
        const double lnorm = m.left.norm();
        const double lres =
            (m.left.transpose() * h.matrix - m.energy * m.left.transpose()).norm() /
            (hnorm * lnorm);
        es.max_right_residual = std::max(es.max_right_residual, rres);
        es.max_left_residual = std::max(es.max_left_residual, lres);

        es.modes.push_back(std::move(m));
    }
    return es;
}

void interaction_spectra(Eigensystem& es, const Vector& v) {
    for (EigenMode& m : es.modes) {
        const Complex lv = m.left.cwiseProduct(v).sum();  // ⟨ψ^L|V (no conjugation)
        m.xi = v.dot(m.right) * lv;                       // V†|ψ^R⟩⟨ψ^L|V
        m.xi_tilde = v.cwiseProduct(m.right).sum() * lv;  // Vᵀ|ψ^R⟩⟨ψ^L|V
    }
}

void classify_modes(Eigensystem& es, double gamma) {
    if (es.modes.empty()) return;
    const double eps_dark = 1e-9 * gamma;
    const double max_decay = es.modes.front().decay();  // sorted
    for (EigenMode& m : es.modes) {
        if (m.decay() >= max_decay - 1e-12 * gamma)
            m.cls = ModeClass::superradiant;
        else if (m.decay() < eps_dark)
            m.cls = ModeClass::dark;
        else
            m.cls = ModeClass::subradiant;
    }
}

Eigensystem solve_modes(const ArrayConfig& config) {
    Eigensystem es = eigendecompose(build_effective_hamiltonian(config));
    interaction_spectra(es, probe_vector(config));
    classify_modes(es, config.gamma);
    return es;
}

ClosedFormPair two_atom_closed_form(double delta, double gamma, double omega0) {
    if (!(gamma > 0.0)) throw ValidationError("gamma must be > 0");
    if (std::abs(std::abs(delta) - 2.0 * gamma) < 1e-12 * gamma)
        throw ExceptionalPoint("two-atom spectrum is defective at |delta| = 2*gamma");

    ClosedFormPair p;
    p.n = 2;
    p.delta = delta;
    p.gamma = gamma;
    p.omega0 = omega0;
    if (std::abs(delta) < 2.0 * gamma)
        p.mu = I * std::sqrt(4.0 * gamma * gamma - delta * delta);
    else
        p.mu = (delta > 0 ? 1.0 : -1.0) * std::sqrt(delta * delta - 4.0 * gamma * gamma);

    p.e1 = omega0 - I * gamma + 0.5 * (delta + p.mu);
    p.e2 = omega0 - I * gamma + 0.5 * (delta - p.mu);
    p.xi1 = (p.mu - 2.0 * I * gamma) / p.mu;
    p.xi2 = (p.mu + 2.0 * I * gamma) / p.mu;
    p.norm1 = 2.0 * p.mu / (p.mu - delta);
    p.norm2 = 2.0 * p.mu / (p.mu + delta);
    p.alpha1 = -I * (delta + p.mu) / (2.0 * gamma);
    p.alpha2 = I * (p.mu - delta) / (2.0 * gamma);
    return p;
}

ClosedFormPair n_atom_single_shift_closed_form(int n, double delta, double gamma,
                                               double omega0) {
    if (n < 2) throw ValidationError("closed form requires n >= 2");
    if (!(gamma > 0.0)) throw ValidationError("gamma must be > 0");
    if (n == 2) return two_atom_closed_form(delta, gamma, omega0);

    ClosedFormPair p;
    p.n = n;
    p.delta = delta;
    p.gamma = gamma;
    p.omega0 = omega0;

    const double ng = n * gamma;
    Complex mu = std::sqrt(Complex(delta * delta - ng * ng, 2.0 * (n - 2) * gamma * delta));
    if (mu.imag() < 0.0) mu = -mu;  // δ → 0 gives μ → iNΓ, E₁ → ω₀ dark
    p.mu = mu;

    p.e1 = omega0 + 0.5 * delta - 0.5 * (I * ng - mu);
    p.e2 = omega0 + 0.5 * delta - 0.5 * (I * ng + mu);
    p.xi1 = (mu * double(n) - (n - 2.0) * delta - I * double(n) * ng) / (2.0 * mu);
    p.xi2 = (mu * double(n) + (n - 2.0) * delta + I * double(n) * ng) / (2.0 * mu);
    p.norm1 = 2.0 * (n - 1.0) * mu / (mu - delta - I * (n - 2.0) * gamma);
    p.norm2 = 2.0 * (n - 1.0) * mu / (mu + delta + I * (n - 2.0) * gamma);
    p.alpha1 = ((n - 2.0) * gamma - I * delta - I * mu) / (2.0 * gamma);
    p.alpha2 = ((n - 2.0) * gamma - I * delta + I * mu) / (2.0 * gamma);
    return p;
}

}  // namespace braggsim
