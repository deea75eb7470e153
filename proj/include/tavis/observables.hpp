// observables.hpp — atom-1 purity, dipole squeezing and atom-1/field negativity
//
// All reductions are generic partial traces over the ensemble amplitudes, so
// they hold for any initial condition, not only the preset ones.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tavis/errors.hpp"
#include "tavis/evolve.hpp"
#include "tavis/model.hpp"
#include "tavis/oracle.hpp"

namespace tavis {

inline cplx amplitude_of(const Branch& branch, const BasisState& s) {
    if (s.photons < 0) return {};
    const int M = s.total_excitation();
    const auto it = branch.sectors.find(M);
    if (it == branch.sectors.end()) return {};
    const auto idx = build_sector(M).index_of(s);
    return idx ? it->second(static_cast<Eigen::Index>(*idx)) : cplx{};
}

// rho_a1 = alpha |g><g| + (1 - alpha) |e><e| + gamma |g><e| + gamma* |e><g|
struct Atom1State {
    double alpha{0.0};
    cplx gamma{};

    Eigen::Matrix2cd density() const {
        Eigen::Matrix2cd rho;
        rho << alpha, gamma, std::conj(gamma), 1.0 - alpha;
        return rho;
    }
};

inline Atom1State atom1_reduce(const EnsembleState& ensemble) {
    Atom1State out;
    for (const auto& branch : ensemble.branches) {
        double alpha = 0.0;
        cplx gamma{};
        for_each_amplitude(branch, [&](const BasisState& s, cplx c) {
            if (s.atom1 != Level::ground) return;
            alpha += std::norm(c);
            // partner with atom 1 excited, same atom 2 level and photon number
            gamma += c * std::conj(amplitude_of(branch, {Level::excited, s.atom2, s.photons}));
        });
        out.alpha += branch.weight * alpha;
        out.gamma += branch.weight * gamma;
    }
    return out;
}

// S = 1 - Tr rho^2 for the atom-1 qubit, in [0, 1/2].
inline double linear_entropy(const Atom1State& a) {
    return 2.0 * (a.alpha - a.alpha * a.alpha - std::norm(a.gamma));
}

// Undefined (empty) when the inversion |1 - 2 alpha| is below eps.
struct SqueezingIndices {
    std::optional<double> s1;
    std::optional<double> s2;

    bool defined() const noexcept { return s1.has_value(); }
    bool squeezed() const noexcept { return (s1 && *s1 < 1.0) || (s2 && *s2 < 1.0); }
};

// gamma is stored in the interaction picture; the slowly varying dipole frame
// rotates it by omega1 * t here.
inline SqueezingIndices squeezing_indices(const Atom1State& a, double omega1, double t, double eps = 1e-9) {
    const double inversion = std::abs(1.0 - 2.0 * a.alpha);
    if (inversion < eps) return {};
    const double c = std::cos(omega1 * t), s = std::sin(omega1 * t);
    const double x = a.gamma.real() * c - a.gamma.imag() * s;
    const double y = a.gamma.real() * s + a.gamma.imag() * c;
    return {(1.0 - 4.0 * x * x) / inversion, (1.0 - 4.0 * y * y) / inversion};
}

// Atom 1 x field density matrix. Rows are ordered |g,0>..|g,n_max>,
// |e,0>..|e,n_max>.
struct AtomFieldDensity {
    Eigen::MatrixXcd matrix;
    int max_photons{0};

    Eigen::Index index(Level atom1, int photons) const noexcept {
        return (atom1 == Level::excited ? max_photons + 1 : 0) + photons;
    }

    std::string label(Eigen::Index i) const {
        const bool excited = i > max_photons;
        const auto k = excited ? i - max_photons - 1 : i;
        return std::string(excited ? "|e1," : "|g1,") + std::to_string(k) + ">";
    }
};

inline AtomFieldDensity atom_field_density(const EnsembleState& ensemble) {
    AtomFieldDensity rho;
    // photons never exceed the excitation number
    rho.max_photons = ensemble.max_excitation();
    const Eigen::Index dim = 2 * (rho.max_photons + 1);
    rho.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& branch : ensemble.branches) {
        for (const Level atom2 : {Level::ground, Level::excited}) {
            Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(dim);
            for (const Level atom1 : {Level::ground, Level::excited})
                for (int k = 0; k <= rho.max_photons; ++k)
                    phi(rho.index(atom1, k)) = amplitude_of(branch, {atom1, atom2, k});
            rho.matrix += branch.weight * phi * phi.adjoint();
        }
    }
    return rho;
}

struct DensityTolerances {
    double hermiticity{1e-12};
    double trace{1e-10};
    double positivity{1e-10};
};

inline void check_density(const AtomFieldDensity& rho, const DensityTolerances& tol = {}) {
    const auto& m = rho.matrix;
    if (m.rows() != m.cols() || m.rows() != 2 * (rho.max_photons + 1))
        throw NotADensityMatrix("density matrix has inconsistent dimensions");
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.hermiticity)
        throw NotADensityMatrix("density matrix is not Hermitian (deviation " + detail::sci(herm) + ")");
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol.trace)
        throw NotADensityMatrix("density matrix trace is " + detail::sci(tr));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol.positivity)
        throw NotADensityMatrix("density matrix has eigenvalue " + detail::sci(es.eigenvalues().minCoeff()));
}

// Transpose on the atom-1 factor.
inline Eigen::MatrixXcd partial_transpose_atom1(const AtomFieldDensity& rho) {
    const Eigen::Index f = rho.max_photons + 1;
    Eigen::MatrixXcd pt(rho.matrix.rows(), rho.matrix.cols());
    for (Eigen::Index a = 0; a < 2; ++a)
        for (Eigen::Index b = 0; b < 2; ++b)
            pt.block(a * f, b * f, f, f) = rho.matrix.block(b * f, a * f, f, f);
    return pt;
}

// Twice the magnitude sum of the negative eigenvalues of the partial
// transpose, so a maximally entangled qubit pair scores 1.
inline double negativity(const AtomFieldDensity& rho, const DensityTolerances& tol = {}) {
    check_density(rho, tol);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(partial_transpose_atom1(rho), Eigen::EigenvaluesOnly);
    double sum = 0.0;
    for (const double ev : es.eigenvalues())
        if (ev < 0.0) sum -= ev;
    return 2.0 * sum;
}

struct ObservableRecord {
    double t{0.0};
    double alpha{0.0};
    cplx gamma{};
    double S{0.0};
    SqueezingIndices squeezing{};
    double negativity{0.0};
};

struct ObservableSeries {
    std::vector<double> times;
    std::vector<ObservableRecord> records;
    std::vector<std::string> notices;  // backend fallbacks, deduplicated
};

inline ObservableRecord observe(const EnsembleState& state, const ModelParams& params, double eps = 1e-9) {
    ObservableRecord r;
    r.t = state.time;
    const auto a1 = atom1_reduce(state);
    r.alpha = a1.alpha;
    r.gamma = a1.gamma;
    r.S = linear_entropy(a1);
    r.squeezing = squeezing_indices(a1, params.omega1(), state.time, eps);
    r.negativity = negativity(atom_field_density(state));
    return r;
}

// Evolved ensembles on a time grid, sharing one propagator per sector.
inline std::vector<EnsembleState> trajectory(const InitialCondition& init, const ModelParams& params,
                                            std::span<const double> t_grid, const EvolveOptions& opts,
                                            std::vector<std::string>* notices = nullptr) {
    params.validate();
    const auto initial = prepare_ensemble(init);

    std::set<std::string> seen;
    EvolveOptions local = opts;
    local.notice = [&](const std::string& msg) {
        if (seen.insert(msg).second) {
            if (notices) notices->push_back(msg);
            if (opts.notice) opts.notice(msg);
        }
    };

    std::vector<EnsembleState> states(t_grid.size(), initial);
    for (std::size_t i = 0; i < t_grid.size(); ++i) states[i].time = t_grid[i];

    std::map<int, SectorPropagator> cache;
    for (std::size_t b = 0; b < initial.branches.size(); ++b) {
        for (const auto& [M, c0] : initial.branches[b].sectors) {
            if (opts.method == Method::rk) {
                const auto path = rk_integrate(sector_hamiltonian(build_sector(M), params), c0, t_grid, opts.dt_max);
                for (std::size_t i = 0; i < t_grid.size(); ++i) states[i].branches[b].sectors[M] = path[i];
                continue;
            }
            auto it = cache.find(M);
            if (it == cache.end()) it = cache.emplace(M, SectorPropagator(params, M, local)).first;
            for (std::size_t i = 0; i < t_grid.size(); ++i)
                states[i].branches[b].sectors[M] = it->second.matrix(t_grid[i]) * c0;
        }
    }
    return states;
}

inline ObservableSeries series(const InitialCondition& init, const ModelParams& params,
                               std::span<const double> t_grid, const EvolveOptions& opts = {}) {
    ObservableSeries out;
    out.times.assign(t_grid.begin(), t_grid.end());
    const auto states = trajectory(init, params, t_grid, opts, &out.notices);
    out.records.reserve(states.size());
    for (const auto& s : states) out.records.push_back(observe(s, params));
    return out;
}

inline std::vector<double> uniform_grid(double t_max, int steps) {
    if (steps < 2) throw InvalidInput("uniform_grid: need at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) g[static_cast<std::size_t>(i)] = t_max * i / (steps - 1);
    return g;
}

}  // namespace tavis
