#include "braggsim/scatter.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <cmath>

namespace braggsim {

namespace {

constexpr Complex I{0.0, 1.0};

Vector resolvent_solve(const Matrix& a, const Vector& v) {
    Vector x = a.partialPivLu().solve(v);
    const double vnorm = v.norm();
    if (x.allFinite() && (a * x - v).norm() <= 1e-8 * vnorm) return x;
    // probe on a lossless eigenvalue: minimum-norm solution carries the limit
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
    x = cod.solve(v);
    if (!x.allFinite() || (a * x - v).norm() > 1e-8 * vnorm)
        throw SingularSystem("resolvent solve residual exceeds 1e-8*||V||");
    return x;
}

}  // namespace

Amplitudes amplitudes_resolvent(const EffectiveHamiltonian& h, const Vector& v,
                                double omega) {
    const Eigen::Index n = h.matrix.rows();
    Matrix a = -h.matrix;
    a.diagonal().array() += omega;
    const Vector x = resolvent_solve(a, v);
    const double gamma = h.config.gamma;
    Amplitudes amp;
    amp.t = 1.0 - I * gamma * v.dot(x);                 // V†x
    amp.r = -I * gamma * v.cwiseProduct(x).sum();       // Vᵀx
    (void)n;
    return amp;
}

Amplitudes amplitudes_modal(const Eigensystem& es, double omega, double gamma) {
    if (es.ep_adjacent)
        throw EPUnreliable("eigensystem flagged exceptional-point adjacent; use the resolvent");
    const double floor = 1e-12 * static_cast<double>(es.modes.size());
    Complex t_sum{0.0, 0.0}, r_sum{0.0, 0.0};
    for (const EigenMode& m : es.modes) {
        const Complex d = omega - m.energy;
        if (std::abs(m.xi) >= floor) t_sum += m.xi / d;
        if (std::abs(m.xi_tilde) >= floor) r_sum += m.xi_tilde / d;
    }
    return {1.0 - I * gamma * t_sum, -I * gamma * r_sum};
}

Complex transmission_two_atom(double delta_probe, double delta, double gamma) {
    return transmission_n_atom(delta_probe, delta, gamma, 2);
}

Complex transmission_n_atom(double delta_probe, double delta, double gamma, int n) {
    if (n < 1) throw ValidationError("n must be >= 1");
    const double p = delta_probe * (delta_probe - delta);
    const double q = n * delta_probe - (n - 1) * delta;
    if (p == 0.0 && q == 0.0) return {0.0, 0.0};  // superradiant-resonance limit
    return p / Complex(p, gamma * q);
}

double absorption_resonance_two_atom(double gamma, double gamma_f, double delta) {
    if (gamma_f == 0.0) return 0.0;  // lossless limit, also covers delta = 0
    const double a = 4.0 * gamma_f * gamma_f + delta * delta;
    const double s = a + 8.0 * gamma * gamma_f;
    return 16.0 * gamma * gamma_f * a / (s * s);
}

AbsorptionExtrema absorption_extrema(double gamma, double delta) {
    if (!(gamma > 0.0)) throw ValidationError("gamma must be > 0");
    const double disc = 4.0 * gamma * gamma - delta * delta;
    if (!(std::abs(delta) > 0.0) || disc <= 0.0)
        throw NoRealExtrema("absorption extrema require 0 < |delta| < 2*gamma");
    const double half_root = 0.5 * std::sqrt(disc);
    const AbsorptionExtrema ex{gamma - half_root, 0.5 * std::abs(delta),
                               gamma + half_root};

    // stationarity check: Richardson-extrapolated central differences at the
    // base step; extrema closer to Γ_f = 0 than the step cannot be resolved
    // by any finite difference at that step and are exempt (the values are
    // exact algebra either way)
    const double h = 1e-6 * gamma;
    const auto eta = [&](double gf) { return absorption_resonance_two_atom(gamma, gf, delta); };
    for (double gf : {ex.gf_subradiant, ex.gf_minimum, ex.gf_superradiant}) {
        if (gf < 100.0 * h) continue;
        const double d1 = (eta(gf + h) - eta(gf - h)) / (2.0 * h);
        const double d2 = (eta(gf + 0.5 * h) - eta(gf - 0.5 * h)) / h;
        if (std::abs((4.0 * d2 - d1) / 3.0) >= 1e-6)
            throw ConvergenceFailure("absorption extremum failed the stationarity check");
    }
    return ex;
}

ScatteringResult scatter_at(const EffectiveHamiltonian& h, const Vector& v, double omega) {
    const Amplitudes amp = amplitudes_resolvent(h, v, omega);
    ScatteringResult s;
    s.omega = omega;
    s.delta_probe = omega - h.config.omega0;
    s.t = amp.t;
    s.r = amp.r;
    s.transmission = std::norm(amp.t);
    s.reflection = std::norm(amp.r);
    s.eta = 1.0 - s.transmission - s.reflection;
    return s;
}

}  // namespace braggsim
