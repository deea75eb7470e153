// support.hpp — independent oracles and helpers shared by the test binaries

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

#include "tavis/tavis.hpp"

namespace testing_support {

using tavis::cplx;

// exp(-i H t) through Eigen's own symmetric eigensolver.
inline Eigen::MatrixXcd eigen_propagator(const Eigen::MatrixXd& h, double t) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::MatrixXcd v = es.eigenvectors().cast<cplx>();
    Eigen::VectorXcd ph(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k) ph(k) = std::exp(cplx{0.0, -es.eigenvalues()(k) * t});
    return v * ph.asDiagonal() * v.adjoint();
}

// exp(-i H t) by scaled Taylor series and repeated squaring.
inline Eigen::MatrixXcd taylor_propagator(const Eigen::MatrixXd& h, double t) {
    const Eigen::MatrixXcd a = h.cast<cplx>() * cplx{0.0, -t};
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::ldexp(1.0, squarings) > 0.25) ++squarings;
    const Eigen::MatrixXcd b = a / std::ldexp(1.0, squarings);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(h.rows(), h.cols());
    Eigen::MatrixXcd term = sum;
    for (int k = 1; k <= 30; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

// Basis state behind the amplitude C_{j,n} (j = 1..4).
inline tavis::BasisState ansatz_state(int j, int n) {
    using tavis::Level;
    switch (j) {
        case 1: return {Level::excited, Level::excited, n};
        case 2: return {Level::excited, Level::ground, n + 1};
        case 3: return {Level::ground, Level::excited, n + 1};
        default: return {Level::ground, Level::ground, n + 2};
    }
}

// C_{j,n}(t) given C_i(0) = 1 and all other amplitudes of that sector zero.
// Zero when either state does not exist (negative photon number).
inline cplx amplitude(const tavis::ModelParams& p, int j, int n, int i, double t) {
    const auto sector = tavis::build_sector(n + 2);
    const auto row = sector.index_of(ansatz_state(j, n));
    const auto col = sector.index_of(ansatz_state(i, n));
    if (!row || !col) return {};
    const auto u = eigen_propagator(tavis::sector_hamiltonian(sector, p), t);
    return u(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(*col));
}

struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    tavis::ModelParams params() {
        return {uniform(0.5, 2.0), uniform(0.0, 0.5), uniform(0.0, 5.0), uniform(0.0, 5.0), uniform(0.0, 3.0)};
    }

    tavis::InitialCondition init() {
        return {uniform(0.0, 3.141592653589793), uniform(0.0, 6.283185307179586), integer(0, 4), uniform(0.0, 1.0)};
    }
};

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing_support
