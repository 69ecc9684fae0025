#include "braggsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace braggsim {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

ScatteringResult nan_point(double omega, double omega0) {
    ScatteringResult s;
    s.omega = omega;
    s.delta_probe = omega - omega0;
    s.t = s.r = Complex(nan_v, nan_v);
    s.transmission = s.reflection = s.eta = nan_v;
    return s;
}

// interior sample local maxima; NaN neighbors act as -inf
template <typename Value>
std::vector<int> local_maxima(const std::vector<ScatteringResult>& pts, Value value) {
    std::vector<int> out;
    const auto val = [&](int k) {
        const double x = value(pts[static_cast<size_t>(k)]);
        return std::isnan(x) ? -std::numeric_limits<double>::infinity() : x;
    };
    for (int k = 1; k + 1 < static_cast<int>(pts.size()); ++k) {
        if (std::isnan(value(pts[static_cast<size_t>(k)]))) continue;
        if (val(k) > val(k - 1) && val(k) >= val(k + 1)) out.push_back(k);
    }
    return out;
}

}  // namespace

std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

SweepResult sweep_spectrum(const ArrayConfig& config, double delta_min,
                           double delta_max, int npts) {
    config.validate();
    if (npts < 2) throw ValidationError("sweep requires npts >= 2");
    if (!(delta_max > delta_min)) throw ValidationError("sweep span must be increasing");

    const EffectiveHamiltonian h = build_effective_hamiltonian(config);
    const Vector v = probe_vector(config);

    SweepResult sweep;
    sweep.config = config;
    sweep.grid.resize(static_cast<size_t>(npts));
    sweep.points.reserve(static_cast<size_t>(npts));
    const double step = (delta_max - delta_min) / (npts - 1);
    for (int k = 0; k < npts; ++k) {
        const double delta_probe = delta_min + k * step;
        sweep.grid[static_cast<size_t>(k)] = delta_probe;
        const double omega = config.omega0 + delta_probe;
        try {
            sweep.points.push_back(scatter_at(h, v, omega));
        } catch (const SingularSystem&) {
            sweep.gaps.push_back(k);
            sweep.points.push_back(nan_point(omega, config.omega0));
        }
    }
    return sweep;
}

std::vector<TransparencyWindow> find_transparency_windows(SweepResult& sweep,
                                                          double threshold) {
    const EffectiveHamiltonian h = build_effective_hamiltonian(sweep.config);
    const Vector v = probe_vector(sweep.config);
    const auto t_of = [&](double delta_probe) -> double {
        try {
            return std::norm(amplitudes_resolvent(h, v, sweep.config.omega0 + delta_probe).t);
        } catch (const SingularSystem&) {
            return -1.0;
        }
    };
    const double tol = 1e-9 * sweep.config.gamma;

    std::vector<TransparencyWindow> found;
    for (int k : local_maxima(sweep.points, [](const ScatteringResult& s) { return s.transmission; })) {
        const auto [x, tx] = golden_max(t_of, sweep.grid[static_cast<size_t>(k - 1)],
                                        sweep.grid[static_cast<size_t>(k + 1)], tol);
        if (tx >= threshold) found.push_back({x, tx});
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.delta_probe < b.delta_probe; });
    std::vector<TransparencyWindow> windows;
    for (const auto& w : found) {
        if (!windows.empty() && std::abs(w.delta_probe - windows.back().delta_probe) < 100 * tol) {
            if (w.transmission > windows.back().transmission) windows.back() = w;
        } else {
            windows.push_back(w);
        }
    }
    sweep.windows = windows;
    return windows;
}

std::vector<AbsorptionPeak> find_absorption_peaks(SweepResult& sweep, double floor) {
    const EffectiveHamiltonian h = build_effective_hamiltonian(sweep.config);
    const Vector v = probe_vector(sweep.config);
    const auto eta_of = [&](double delta_probe) -> double {
        try {
            return scatter_at(h, v, sweep.config.omega0 + delta_probe).eta;
        } catch (const SingularSystem&) {
            return -1.0;
        }
    };
    const double tol = 1e-9 * sweep.config.gamma;

    std::vector<AbsorptionPeak> found;
    for (int k : local_maxima(sweep.points, [](const ScatteringResult& s) { return s.eta; })) {
        if (sweep.points[static_cast<size_t>(k)].eta < floor) continue;
        const auto [x, ex] = golden_max(eta_of, sweep.grid[static_cast<size_t>(k - 1)],
                                        sweep.grid[static_cast<size_t>(k + 1)], tol);
        if (ex >= floor) found.push_back({x, ex});
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.delta_probe < b.delta_probe; });
    std::vector<AbsorptionPeak> peaks;
    for (const auto& p : found) {
        if (!peaks.empty() && std::abs(p.delta_probe - peaks.back().delta_probe) < 100 * tol) {
            if (p.eta > peaks.back().eta) peaks.back() = p;
        } else {
            peaks.push_back(p);
        }
    }
    sweep.absorption_peaks = peaks;
    return peaks;
}

double transparency_vs_subradiant_offset(int n, double delta, double gamma) {
    const double window = (1.0 - 1.0 / n) * delta;
    const ClosedFormPair cf = n_atom_single_shift_closed_form(n, delta, gamma);
    return window - (cf.e1.real() - cf.omega0);
}

ArrayConfig comb_config(int n, double delta, double gamma, double gamma_f) {
    if (n < 2) throw ValidationError("comb config requires n >= 2");
    std::vector<double> shifts(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) shifts[static_cast<size_t>(i)] = i * delta;
    return ArrayConfig::bragg(n, std::move(shifts), gamma, gamma_f);
}

namespace {

struct CellModes {
    Eigensystem es;
    int mode1 = -1;
    int mode2 = -1;
};

// decay recorded as the minimum over the degenerate cluster of the selected
// eigenvalue; returns true when the cluster has more than one member
bool cluster_min_decay(const Eigensystem& es, int sel, double gamma, double* decay) {
    const Complex e = es.modes[static_cast<size_t>(sel)].energy;
    double dmin = std::numeric_limits<double>::infinity();
    int count = 0;
    for (const EigenMode& m : es.modes) {
        if (std::abs(m.energy - e) < 1e-6 * gamma) {
            dmin = std::min(dmin, m.decay());
            ++count;
        }
    }
    *decay = dmin;
    return count > 1;
}

}  // namespace

DecayMap subradiant_decay_map(int n, std::pair<int, int> shift_atoms,
                              const std::vector<double>& d1_grid,
                              const std::vector<double>& d2_grid, double gamma) {
    if (n < 3) throw ValidationError("decay map requires n >= 3");
    const auto [ia, ib] = shift_atoms;
    if (ia < 0 || ia >= n || ib < 0 || ib >= n || ia == ib)
        throw ValidationError("shift atoms must be two distinct indices in [0, n)");
    if (d1_grid.empty() || d2_grid.empty()) throw ValidationError("decay map grids must be nonempty");

    const size_t n1 = d1_grid.size(), n2 = d2_grid.size();
    DecayMap map;
    map.n = n;
    map.shift_atoms = shift_atoms;
    map.delta1_grid = d1_grid;
    map.delta2_grid = d2_grid;
    map.gamma_mode1.assign(n1 * n2, 0.0);
    map.gamma_mode2.assign(n1 * n2, 0.0);
    map.ambiguous.assign(n1 * n2, 0);

    // shifted-pair state orthogonal to the probe vector: exactly dark on the
    // δ₁ = δ₂ line of a Bragg array
    const ArrayConfig base = ArrayConfig::bragg(n, std::vector<double>(static_cast<size_t>(n), 0.0), gamma);
    const Vector v = probe_vector(base);
    Vector tau = Vector::Zero(n);
    tau(ia) = v(ib);
    tau(ib) = -v(ia);
    tau.normalize();

    struct Ref {
        Vector l1, l2;  // unit-normalized left vectors of the tracked modes
        bool valid = false;
    };
    std::vector<Ref> col_ref(n2);

    for (size_t i1 = 0; i1 < n1; ++i1) {
        Ref row_ref;
        for (size_t i2 = 0; i2 < n2; ++i2) {
            ArrayConfig cfg = base;
            cfg.shifts[static_cast<size_t>(ia)] = d1_grid[i1];
            cfg.shifts[static_cast<size_t>(ib)] = d2_grid[i2];
            const Eigensystem es = eigendecompose(build_effective_hamiltonian(cfg));
            const int nm = static_cast<int>(es.modes.size());

            // index 0 is the superradiant mode (sorted by decay)
            int m1 = -1;
            double best = -1.0;
            for (int j = 1; j < nm; ++j) {
                const double ovl = std::abs(tau.dot(es.modes[static_cast<size_t>(j)].right));
                if (ovl > best) { best = ovl; m1 = j; }
            }
            int m2 = (m1 == 1) ? 2 : 1;  // largest remaining decay

            bool amb = false;
            double g1 = 0.0, g2 = 0.0;
            amb |= cluster_min_decay(es, m1, gamma, &g1);
            amb |= cluster_min_decay(es, m2, gamma, &g2);

            // overlap continuity against the previous cell; a weak best match
            // means the tracked pair lost its identity (degeneracy crossing)
            const Ref* ref = row_ref.valid ? &row_ref : (col_ref[i2].valid ? &col_ref[i2] : nullptr);
            if (ref != nullptr) {
                const auto match_quality = [&](const Vector& lhat) {
                    double q = -1.0;
                    for (int j = 1; j < nm; ++j) {
                        const Complex ovl =
                            lhat.cwiseProduct(es.modes[static_cast<size_t>(j)].right).sum();
                        q = std::max(q, std::abs(ovl));
                    }
                    return q;
                };
                if (std::min(match_quality(ref->l1), match_quality(ref->l2)) < 0.70)
                    amb = true;
            }

            map.gamma_mode1[map.index(i1, i2)] = g1;
            map.gamma_mode2[map.index(i1, i2)] = g2;
            map.ambiguous[map.index(i1, i2)] = amb ? 1 : 0;
            if (!amb) {
                Ref nr;
                nr.l1 = es.modes[static_cast<size_t>(m1)].left.normalized();
                nr.l2 = es.modes[static_cast<size_t>(m2)].left.normalized();
                nr.valid = true;
                row_ref = nr;
                col_ref[i2] = std::move(nr);
            }
        }
    }
    return map;
}

namespace {

// refined global absorption maximum of one sweep
CiaPoint peak_absorption(const ArrayConfig& config, double gf,
                         double lo, double hi, int npts) {
    ArrayConfig cfg = config;
    cfg.gamma_f = gf;
    const EffectiveHamiltonian h = build_effective_hamiltonian(cfg);
    const Vector v = probe_vector(cfg);
    const auto eta_of = [&](double dp) -> double {
        try {
            return scatter_at(h, v, cfg.omega0 + dp).eta;
        } catch (const SingularSystem&) {
            return -1.0;
        }
    };
    const double step = (hi - lo) / (npts - 1);
    int kbest = 0;
    double ebest = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < npts; ++k) {
        const double e = eta_of(lo + k * step);
        if (e > ebest) { ebest = e; kbest = k; }
    }
    const double a = lo + std::max(0, kbest - 1) * step;
    const double b = lo + std::min(npts - 1, kbest + 1) * step;
    const auto [x, e] = golden_max(eta_of, a, b, 1e-9 * cfg.gamma);
    return {gf, e, x};
}

}  // namespace

CiaScan cia_operating_points(const ArrayConfig& config,
                             const std::vector<double>& gf_grid) {
    config.validate();
    if (gf_grid.empty()) throw ValidationError("gamma_f grid must be nonempty");
    for (double gf : gf_grid)
        if (!(gf >= 0.0)) throw ValidationError("gamma_f grid must be nonnegative");

    const auto [smin, smax] = std::minmax_element(config.shifts.begin(), config.shifts.end());
    const double lo = *smin - 2.0 * config.gamma;
    const double hi = *smax + 2.0 * config.gamma;
    const int npts = 4001;

    CiaScan scan;
    scan.points.reserve(gf_grid.size());
    for (double gf : gf_grid) scan.points.push_back(peak_absorption(config, gf, lo, hi, npts));

    // stationary operating points: discrete extrema of η_max(Γ_f), refined
    const auto eta_max_of = [&](double gf) { return peak_absorption(config, gf, lo, hi, npts).eta_max; };
    for (size_t k = 1; k + 1 < scan.points.size(); ++k) {
        const double dl = scan.points[k].eta_max - scan.points[k - 1].eta_max;
        const double dr = scan.points[k + 1].eta_max - scan.points[k].eta_max;
        const bool is_max = dl > 0.0 && dr < 0.0;
        const bool is_min = dl < 0.0 && dr > 0.0;
        if (!is_max && !is_min) continue;
        const double a = scan.points[k - 1].gamma_f;
        const double b = scan.points[k + 1].gamma_f;
        const auto f = [&](double gf) { return is_max ? eta_max_of(gf) : -eta_max_of(gf); };
        const auto [gf_star, val] = golden_max(f, a, b, 1e-9 * config.gamma);
        (void)val;
        scan.stationary.push_back(peak_absorption(config, gf_star, lo, hi, npts));
    }
    return scan;
}

ShiftSearchResult cia_shift_search(int n, double gamma_f,
                                   const std::vector<double>& delta_grid) {
    if (n < 2) throw ValidationError("shift search requires n >= 2");
    if (!(gamma_f >= 0.0)) throw ValidationError("gamma_f must be >= 0");
    if (delta_grid.empty()) throw ValidationError("delta grid must be nonempty");

    ShiftSearchResult result;
    result.profile.reserve(delta_grid.size());
    double best = -std::numeric_limits<double>::infinity();
    result.delta_star = delta_grid.front();

    for (double delta : delta_grid) {
        const ArrayConfig cfg = comb_config(n, delta, 1.0, gamma_f);
        Eigensystem es = solve_modes(cfg);

        std::vector<double> freqs;
        for (const EigenMode& m : es.modes)
            if (m.cls == ModeClass::subradiant) freqs.push_back(m.energy.real() - cfg.omega0);
        std::sort(freqs.begin(), freqs.end());

        double score = 0.0;
        if (!freqs.empty()) {
            double gap = cfg.gamma;
            for (size_t j = 1; j < freqs.size(); ++j)
                gap = std::min(gap, freqs[j] - freqs[j - 1]);
            const double w = 0.5 * gap;

            const EffectiveHamiltonian h = build_effective_hamiltonian(cfg);
            const Vector v = probe_vector(cfg);
            const auto eta_of = [&](double dp) -> double {
                try {
                    return scatter_at(h, v, cfg.omega0 + dp).eta;
                } catch (const SingularSystem&) {
                    return -1.0;
                }
            };
            score = std::numeric_limits<double>::infinity();
            for (double f0 : freqs) {
                const auto [x, e] = golden_max(eta_of, f0 - w, f0 + w, 1e-9 * cfg.gamma);
                (void)x;
                score = std::min(score, e);
            }
        }
        result.profile.emplace_back(delta, score);
        if (score > best) {
            best = score;
            result.delta_star = delta;
        }
    }
    return result;
}

}  // namespace braggsim
