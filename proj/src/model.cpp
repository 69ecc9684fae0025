#include "braggsim/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace braggsim {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// sin/cos of 2πx with the argument reduced to one period first; keeps the
// evaluation exact-to-roundoff for half-integer x (Bragg lattices)
double sin2pi(double x) { return std::sin(two_pi * (x - std::nearbyint(x))); }
double cos2pi(double x) { return std::cos(two_pi * (x - std::nearbyint(x))); }

}  // namespace

ArrayConfig ArrayConfig::bragg(int n, std::vector<double> shifts, double gamma,
                               double gamma_f, double omega0, double spacing) {
    ArrayConfig c;
    c.n = n;
    c.omega0 = omega0;
    c.gamma = gamma;
    c.gamma_f = gamma_f;
    c.shifts = std::move(shifts);
    if (c.shifts.empty()) c.shifts.assign(static_cast<size_t>(std::max(n, 0)), 0.0);
    c.positions.resize(static_cast<size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) c.positions[static_cast<size_t>(i)] = i * spacing;
    c.validate();
    return c;
}

void ArrayConfig::validate() const {
    if (n < 1) throw ValidationError("n must be >= 1");
    if (!(gamma > 0.0)) throw ValidationError("gamma must be > 0");
    if (!(gamma_f >= 0.0)) throw ValidationError("gamma_f must be >= 0");
    if (shifts.size() != static_cast<size_t>(n))
        throw ValidationError("shifts must have length n = " + std::to_string(n));
    if (positions.size() != static_cast<size_t>(n))
        throw ValidationError("positions must have length n = " + std::to_string(n));
    for (int i = 1; i < n; ++i) {
        if (!(positions[static_cast<size_t>(i)] > positions[static_cast<size_t>(i - 1)]))
            throw ValidationError("positions must be strictly increasing");
    }
    for (double s : shifts)
        if (!std::isfinite(s)) throw ValidationError("shifts must be finite");
    for (double x : positions)
        if (!std::isfinite(x)) throw ValidationError("positions must be finite");
}

bool ArrayConfig::is_bragg(double tol) const {
    for (int i = 0; i < n; ++i) {
        const double rel = 2.0 * (positions[static_cast<size_t>(i)] - positions[0]);
        if (std::abs(rel - std::nearbyint(rel)) > 2.0 * tol) return false;
    }
    return true;
}

Coupling coupling_coefficients(const ArrayConfig& config, int i, int j) {
    if (i < 0 || i >= config.n || j < 0 || j >= config.n)
        throw ValidationError("atom index out of range");
    const double d = std::abs(config.positions[static_cast<size_t>(i)] -
                              config.positions[static_cast<size_t>(j)]);
    return {config.gamma * sin2pi(d), config.gamma * cos2pi(d)};
}

EffectiveHamiltonian build_effective_hamiltonian(const ArrayConfig& config) {
    config.validate();
    const int n = config.n;
    Matrix h(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = Complex(config.omega0 + config.shifts[static_cast<size_t>(i)],
                          -(config.gamma + config.gamma_f));
        for (int j = i + 1; j < n; ++j) {
            const Coupling c = coupling_coefficients(config, i, j);
            h(i, j) = Complex(c.g, -c.gamma_c);
            h(j, i) = h(i, j);  // g, γ depend on |x_i − x_j| only
        }
    }
    return {std::move(h), config};
}

Vector probe_vector(const ArrayConfig& config) {
    config.validate();
    Vector v(config.n);
    for (int i = 0; i < config.n; ++i) {
        const double rel = config.positions[static_cast<size_t>(i)] - config.positions[0];
        v(i) = Complex(cos2pi(rel), sin2pi(rel));
    }
    return v;
}

}  // namespace braggsim
