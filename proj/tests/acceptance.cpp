// acceptance — one PASS/FAIL line per acceptance criterion; nonzero exit if any fails

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "support.hpp"

using namespace tavis;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& what) {
    std::printf("[%s] %s %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void info(const char* id, const std::string& what) {
    std::printf("[INFO] %s %s\n", id, what.c_str());
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ObservableSeries preset_series(const char* name) {
    const auto c = *preset(name);
    return series(c.init, c.params, c.time_grid());
}

void appendix_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    testing_support::Sampler rng(20240601);
    const auto grid = uniform_grid(30.0, 301);
    double worst = 0.0;
    int draws = 0, redraws = 0;
    while (draws < 1000) {
        const ModelParams p{rng.uniform(0.5, 2.0), rng.uniform(0.0, 0.5), rng.uniform(0.0, 5.0),
                            rng.uniform(0.0, 5.0), 0.0};
        const int n = rng.integer(0, 4);
        AnalyticCoefficients c;
        try {
            c = compute_coefficients(p, n);
        } catch (const DegenerateParameters&) {
            ++redraws;
            continue;
        }
        ++draws;
        const auto sd = jacobi_eigen(sector_hamiltonian(build_sector(n + 2), p));
        std::vector<double> times(grid.begin(), grid.end());
        times.push_back(rng.uniform(0.0, 30.0));
        for (const double t : times) {
            double r;
            try {
                r = testing_support::max_abs(analytic_matrix(c, t).entries - spectral_propagator(sd, t));
            } catch (const BranchInconsistency&) {
                r = std::numeric_limits<double>::infinity();
            }
            worst = std::isnan(r) ? std::numeric_limits<double>::infinity() : std::max(worst, r);
        }
    }
    const double secs = seconds_since(t0);
    report("AC1", worst <= 1e-6 && secs < 60.0,
           "appendix equivalence: worst |A_analytic - A_spectral| = " + fmt("%.3g", worst) +
               fmt(" over 1000 draws x 302 times (%g degenerate redraws), %.1f s", redraws, secs));
}

void jcm_entropy() {
    const auto s = preset_series("fig1a");
    const double lambda1 = preset("fig1a")->params.lambda1;
    double err = 0.0;
    for (const auto& r : s.records)
        err = std::max(err, std::abs(r.S - 0.5 * std::pow(std::sin(2.0 * std::sqrt(2.0) * lambda1 * r.t), 2)));

    // Period from successive minima of S, each refined by a parabola through
    // the three neighbouring samples.
    std::vector<double> minima;
    const auto& rec = s.records;
    for (std::size_t i = 1; i + 1 < rec.size(); ++i) {
        if (rec[i].S < rec[i - 1].S && rec[i].S <= rec[i + 1].S) {
            const double h = rec[i + 1].t - rec[i].t;
            const double denom = rec[i - 1].S - 2 * rec[i].S + rec[i + 1].S;
            minima.push_back(rec[i].t + 0.5 * h * (rec[i - 1].S - rec[i + 1].S) / denom);
        }
    }
    const double period = minima.size() > 1 ? (minima.back() - minima.front()) / (minima.size() - 1) : 0.0;
    const double expected = std::numbers::pi / (2.0 * std::sqrt(2.0) * lambda1);
    const double rel = std::abs(period - expected) / expected;
    report("AC2", err <= 1e-8 && rel <= 1e-3,
           fmt("JCM entropy: max |S - sin^2(2 sqrt2 t)/2| = %.3g; period %.6f vs %.6f", err, period, expected) +
               fmt(" (rel. dev %.2g)", rel));
}

void jcm_negativity() {
    const auto s = preset_series("fig3a");
    const auto c = *preset("fig3a");
    double err = 0.0;
    for (const auto& r : s.records)
        err = std::max(err, std::abs(r.negativity - std::abs(std::sin(2.0 * c.params.lambda1 * r.t))));
    const double t_peak = std::numbers::pi / (4.0 * c.params.lambda1);
    const double peak = negativity(atom_field_density(evolve(prepare_ensemble(c.init), c.params, t_peak)));
    report("AC3", err <= 1e-8 && std::abs(peak - 1.0) <= 1e-8,
           fmt("JCM negativity: max |N - |sin 2t|| = %.3g; N(pi/4) = %.15f", err, peak));
}

void squeezing() {
    const auto min_s1 = [](const ObservableSeries& s, double from) {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& r : s.records)
            if (r.t >= from && r.squeezing.s1) m = std::min(m, *r.squeezing.s1);
        return m;
    };
    const auto a = preset_series("fig2a"), b = preset_series("fig2b"), c = preset_series("fig2c");
    const double ma = min_s1(a, 0.0), mb = min_s1(b, 0.0), mc = min_s1(c, 0.0);
    report("AC4", ma < 1.0 && mb >= 1.0 && mc < 1.0,
           fmt("squeezing over t in [0, 25]: min s1 fig2a = %.4f (need < 1), fig2b = %.4f (need >= 1), ", ma, mb) +
               fmt("fig2c = %.4f (need < 1)", mc));
    info("AC4", fmt("s1(0) = |cos 1.2| = %.4f for every fig2 preset: the initial atomic state is squeezed",
                    std::abs(std::cos(1.2))));
    const double window = 0.5;
    info("AC4", fmt("after the initial window (t >= %.1f): min s1 fig2a = %.4f, fig2b = %.4f", window,
                    min_s1(a, window), min_s1(b, window)) +
                    fmt(", fig2c = %.4f", min_s1(c, window)));
}

void coherence_trend() {
    const auto ref = preset_series("fig1a");
    std::vector<double> rms;
    for (const auto* name : {"fig1b", "fig1c", "fig1d"}) {
        const auto s = preset_series(name);
        double acc = 0.0;
        for (std::size_t i = 0; i < s.records.size(); ++i) acc += std::pow(s.records[i].S - ref.records[i].S, 2);
        rms.push_back(std::sqrt(acc / static_cast<double>(s.records.size())));
    }
    report("AC5", rms[0] > rms[1] && rms[1] > rms[2],
           fmt("RMS(S - S_ref) at delta2 = 0, 1, 5: %.4g, %.4g, %.4g", rms[0], rms[1], rms[2]));
}

struct ConservationStats {
    double norm{0}, energy{0}, trace{0}, min_eig{0}, s_lo{0}, s_hi{0}, n_lo{0}, n_hi{0};
};

void check_conservation(const ScenarioConfig& c, ConservationStats& st) {
    const auto grid = c.time_grid();
    const auto states = trajectory(c.init, c.params, grid, EvolveOptions{});
    const auto initial = prepare_ensemble(c.init);
    for (const auto& e : states) {
        for (std::size_t b = 0; b < e.branches.size(); ++b) {
            st.norm = std::max(st.norm, std::abs(branch_norm(e.branches[b]) - branch_norm(initial.branches[b])));
            st.energy = std::max(st.energy, std::abs(branch_energy(e.branches[b], c.params) -
                                                     branch_energy(initial.branches[b], c.params)));
        }
        const auto a1 = atom1_reduce(e);
        st.trace = std::max(st.trace, std::abs(a1.density().trace().real() - 1.0));
        const auto rho = atom_field_density(e);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix, Eigen::EigenvaluesOnly);
        st.min_eig = std::min(st.min_eig, es.eigenvalues().minCoeff());
        // trace of the full atom-field matrix as well
        st.trace = std::max(st.trace, std::abs(rho.matrix.trace().real() - 1.0));
        const double S = linear_entropy(a1);
        st.s_lo = std::min(st.s_lo, S);
        st.s_hi = std::max(st.s_hi, S);
        const double n = negativity(rho);
        st.n_lo = std::min(st.n_lo, n);
        st.n_hi = std::max(st.n_hi, n);
    }
}

void conservation() {
    ConservationStats st;
    for (const auto& p : presets()) check_conservation(p.config, st);
    testing_support::Sampler rng(777);
    for (int i = 0; i < 100; ++i) {
        ScenarioConfig c;
        c.params = rng.params();
        c.init = rng.init();
        c.t_steps = 200;
        check_conservation(c, st);
    }
    // Bounds on S and N get a 1e-12 rounding allowance.
    const bool ok = st.norm <= 1e-9 && st.energy <= 1e-9 && st.trace <= 1e-10 && st.min_eig >= -1e-10 &&
                    st.s_lo >= -1e-12 && st.s_hi <= 0.5 + 1e-12 && st.n_lo >= -1e-12 && st.n_hi <= 1.0 + 1e-12;
    report("AC6", ok,
           fmt("conservation on 12 presets + 100 random configs: norm drift %.2g, energy drift %.2g, ", st.norm,
               st.energy) +
               fmt("trace error %.2g, min eigenvalue %.2g, ", st.trace, st.min_eig) +
               fmt("S in [%.3g, %.6f], ", st.s_lo, st.s_hi) + fmt("N in [%.3g, %.6f]", st.n_lo, st.n_hi));
}

void closed_form_regression() {
    using testing_support::amplitude;
    double worst_n = 0.0, worst_clamped = 0.0;
    int positive_a2 = 0;
    for (const auto* name : {"fig3a", "fig3b", "fig3c", "fig3d"}) {
        const auto c = *preset(name);
        const auto p = c.params;
        const auto grid = c.time_grid();
        const auto s = series(c.init, p, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double t = grid[i];
            const auto C = [&](int j, int n, int k) { return amplitude(p, j, n, k, t); };
            const double r11 = 0.5 * std::norm(C(3, -1, 2));
            const double r22 = 0.5 * (std::norm(C(3, 0, 1)) + std::norm(C(4, -1, 2)));
            const double r55 = 0.5 * std::norm(C(2, 0, 1));
            const cplx r35 = 0.5 * std::conj(C(2, 0, 1)) * C(4, 0, 1);
            const cplx r24 = 0.5 * (std::conj(C(1, 0, 1)) * C(3, 0, 1) + std::conj(C(2, -1, 2)) * C(4, -1, 2));
            const double a1 = 0.5 * (r22 - std::sqrt(r22 * r22 + 4 * std::norm(r35)));
            const double a2 = 0.5 * (r11 + r55 - std::sqrt((r11 - r55) * (r11 - r55) + 4 * std::norm(r24)));
            worst_n = std::max(worst_n, std::abs(s.records[i].negativity - 2 * (std::abs(a1) + std::abs(a2))));
            worst_clamped = std::max(worst_clamped, std::abs(s.records[i].negativity +
                                                             2 * (std::min(a1, 0.0) + std::min(a2, 0.0))));
            if (a2 > 0.0) ++positive_a2;
        }
    }

    double worst_s = 0.0;
    testing_support::Sampler rng(888);
    std::vector<ScenarioConfig> configs;
    for (const auto& p : presets()) configs.push_back(p.config);
    for (int i = 0; i < 100; ++i) {
        ScenarioConfig c;
        c.params = rng.params();
        c.init = rng.init();
        c.t_steps = 200;
        configs.push_back(c);
    }
    for (const auto& c : configs) {
        for (const auto& e : trajectory(c.init, c.params, c.time_grid(), EvolveOptions{})) {
            const auto rho = atom_field_density(e);
            Eigen::Matrix2cd r1 = Eigen::Matrix2cd::Zero();
            for (const Level a : {Level::ground, Level::excited})
                for (const Level b : {Level::ground, Level::excited})
                    for (int k = 0; k <= rho.max_photons; ++k)
                        r1(excitation(a), excitation(b)) += rho.matrix(rho.index(a, k), rho.index(b, k));
            worst_s = std::max(worst_s, std::abs(linear_entropy(atom1_reduce(e)) - (1.0 - (r1 * r1).trace().real())));
        }
    }
    report("AC7", worst_n <= 1e-9 && worst_s <= 1e-12,
           fmt("closed-form regression: |N - 2(|a1| + |a2|)| <= %.3g on fig3a-d; ", worst_n) +
               fmt("|2(alpha - alpha^2 - |gamma|^2) - (1 - Tr rho_a1^2)| <= %.3g", worst_s));
    info("AC7", fmt("a2 > 0 at %g of 8000 grid points; counting only negative a_i gives deviation %.3g",
                    positive_a2, worst_clamped));
}

}  // namespace

int main() {
    appendix_equivalence();
    jcm_entropy();
    jcm_negativity();
    squeezing();
    coherence_trend();
    conservation();
    closed_form_regression();
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
