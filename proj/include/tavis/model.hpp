// model.hpp — two-atom Tavis-Cummings parameters, excitation sectors and initial states
//
// The Hamiltonian conserves the total excitation number M = photons + (atom 1
// excited) + (atom 2 excited), so the dynamics splits into independent blocks
// of dimension 1 (M = 0), 3 (M = 1) and 4 (M >= 2). Everything here is in the
// interaction picture with respect to the conserved part; the remaining block
// Hamiltonian carries the detunings and the couplings only.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tavis/errors.hpp"

namespace tavis {

using cplx = std::complex<double>;

struct ModelParams {
    double lambda1{1.0};  // atom 1 coupling, sets the time unit
    double lambda2{0.0};  // atom 2 coupling; 0 is the Jaynes-Cummings limit
    double delta1{0.0};   // omega1 - omega
    double delta2{0.0};   // omega2 - omega
    double omega{0.0};    // field frequency, enters only the dipole rotation phase

    double omega1() const noexcept { return omega + delta1; }
    double omega2() const noexcept { return omega + delta2; }

    void validate() const {
        if (!std::isfinite(lambda1) || !std::isfinite(lambda2) || !std::isfinite(delta1) ||
            !std::isfinite(delta2) || !std::isfinite(omega))
            throw InvalidInput("ModelParams: all parameters must be finite");
        if (!(lambda1 > 0.0)) throw InvalidInput("ModelParams: lambda1 must be > 0");
        if (lambda2 < 0.0) throw InvalidInput("ModelParams: lambda2 must be >= 0");
    }

    bool operator==(const ModelParams&) const = default;
};

enum class Level : std::uint8_t { ground, excited };

inline int excitation(Level l) noexcept { return l == Level::excited ? 1 : 0; }
inline double inversion(Level l) noexcept { return l == Level::excited ? 1.0 : -1.0; }

struct BasisState {
    Level atom1{Level::ground};
    Level atom2{Level::ground};
    int photons{0};

    int total_excitation() const noexcept { return photons + excitation(atom1) + excitation(atom2); }

    std::string label() const {
        std::string s = "|";
        s += atom1 == Level::excited ? "e1," : "g1,";
        s += atom2 == Level::excited ? "e2," : "g2,";
        return s + std::to_string(photons) + ">";
    }

    bool operator==(const BasisState&) const = default;
};

// Basis of a fixed-M block, ordered |e1,e2,M-2>, |e1,g2,M-1>, |g1,e2,M-1>,
// |g1,g2,M> with negative-photon states dropped. For full blocks the index
// j = 0..3 matches the amplitude C_{j+1,n} with n = M - 2.
struct ExcitationSector {
    int M{0};
    std::vector<BasisState> basis;

    std::size_t dim() const noexcept { return basis.size(); }
    int ansatz_index() const noexcept { return M - 2; }
    bool is_full() const noexcept { return basis.size() == 4; }

    std::optional<std::size_t> index_of(const BasisState& s) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == s) return i;
        return std::nullopt;
    }
};

inline ExcitationSector build_sector(int M) {
    if (M < 0) throw InvalidInput("build_sector: M must be >= 0");
    ExcitationSector sector{M, {}};
    const BasisState candidates[] = {
        {Level::excited, Level::excited, M - 2},
        {Level::excited, Level::ground, M - 1},
        {Level::ground, Level::excited, M - 1},
        {Level::ground, Level::ground, M},
    };
    for (const auto& s : candidates)
        if (s.photons >= 0) sector.basis.push_back(s);
    return sector;
}

// Block of the interaction Hamiltonian on one sector. Real symmetric.
inline Eigen::MatrixXd sector_hamiltonian(const ExcitationSector& sector, const ModelParams& p) {
    const auto d = static_cast<Eigen::Index>(sector.dim());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto& a = sector.basis[static_cast<std::size_t>(i)];
        h(i, i) = 0.5 * (p.delta1 * inversion(a.atom1) + p.delta2 * inversion(a.atom2));
        for (Eigen::Index j = i + 1; j < d; ++j) {
            const auto& b = sector.basis[static_cast<std::size_t>(j)];
            // One atom flips and one photon is exchanged; the coupling is
            // lambda * sqrt(larger photon number).
            const int k = std::max(a.photons, b.photons);
            double v = 0.0;
            if (a.atom2 == b.atom2 && a.atom1 != b.atom1 && std::abs(a.photons - b.photons) == 1)
                v = p.lambda1 * std::sqrt(static_cast<double>(k));
            else if (a.atom1 == b.atom1 && a.atom2 != b.atom2 && std::abs(a.photons - b.photons) == 1)
                v = p.lambda2 * std::sqrt(static_cast<double>(k));
            h(i, j) = v;
            h(j, i) = v;
        }
    }
    return h;
}

// Atom 1 in cos(theta/2)|g> + sin(theta/2) e^{i phi}|e>, field in Fock |N>,
// atom 2 in the mixture p|e><e| + (1 - p)|g><g|.
struct InitialCondition {
    double theta{0.0};
    double phi{0.0};
    int fock_n{0};
    double p{0.5};

    void validate() const {
        if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(p))
            throw InvalidInput("InitialCondition: values must be finite");
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("InitialCondition: p must lie in [0, 1]");
        if (!(theta >= 0.0 && theta <= std::numbers::pi))
            throw InvalidInput("InitialCondition: theta must lie in [0, pi]");
        if (fock_n < 0) throw InvalidInput("InitialCondition: fock_n must be >= 0");
    }

    bool operator==(const InitialCondition&) const = default;
};

// One pure trajectory of the classical atom-2 mixture.
struct Branch {
    double weight{1.0};
    Level atom2_initial{Level::ground};
    std::map<int, Eigen::VectorXcd> sectors;  // M -> amplitudes in build_sector(M) order
};

struct EnsembleState {
    std::vector<Branch> branches;
    double time{0.0};

    int max_excitation() const {
        int m = 0;
        for (const auto& b : branches)
            for (const auto& [M, c] : b.sectors) m = std::max(m, M);
        return m;
    }
};

template <typename F>
void for_each_amplitude(const Branch& branch, F&& f) {
    for (const auto& [M, c] : branch.sectors) {
        const auto sector = build_sector(M);
        for (std::size_t j = 0; j < sector.dim(); ++j)
            f(sector.basis[j], c(static_cast<Eigen::Index>(j)));
    }
}

inline double branch_norm(const Branch& branch) {
    double s = 0.0;
    for (const auto& [M, c] : branch.sectors) s += c.squaredNorm();
    return std::sqrt(s);
}

// <psi| H |psi> summed over the sectors of one branch.
inline double branch_energy(const Branch& branch, const ModelParams& params) {
    double e = 0.0;
    for (const auto& [M, c] : branch.sectors) {
        const Eigen::MatrixXcd h = sector_hamiltonian(build_sector(M), params).cast<cplx>();
        e += (c.adjoint() * h * c)(0, 0).real();
    }
    return e;
}

inline EnsembleState prepare_ensemble(const InitialCondition& init) {
    init.validate();
    // Amplitudes below this are rounding residue (cos(pi/2) and friends).
    constexpr double negligible = 1e-15;

    const cplx ground_amp{std::cos(0.5 * init.theta), 0.0};
    const cplx excited_amp = std::sin(0.5 * init.theta) * std::polar(1.0, init.phi);

    EnsembleState state;
    for (const auto& [atom2, weight] : {std::pair{Level::excited, init.p}, std::pair{Level::ground, 1.0 - init.p}}) {
        if (weight == 0.0) continue;
        Branch branch{weight, atom2, {}};
        for (const auto& [atom1, amp] : {std::pair{Level::ground, ground_amp}, std::pair{Level::excited, excited_amp}}) {
            if (std::abs(amp) < negligible) continue;
            const BasisState s{atom1, atom2, init.fock_n};
            const auto sector = build_sector(s.total_excitation());
            auto& c = branch.sectors[sector.M];
            if (c.size() == 0) c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector.dim()));
            c(static_cast<Eigen::Index>(*sector.index_of(s))) = amp;
        }
        state.branches.push_back(std::move(branch));
    }
    return state;
}

}  // namespace tavis
