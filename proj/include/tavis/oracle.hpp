// oracle.hpp — exact sector propagation by eigendecomposition, plus an RK4 witness
//
// Sector blocks are real symmetric and at most 4x4, so a cyclic Jacobi sweep
// converges to machine precision in a handful of iterations.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "tavis/errors.hpp"
#include "tavis/model.hpp"

namespace tavis {

enum class ConditionFlag { ok, near_degenerate };

inline const char* to_string(ConditionFlag f) noexcept {
    return f == ConditionFlag::ok ? "ok" : "near_degenerate";
}

// C(t) = entries * C(0) on one sector.
struct PropagatorMatrix {
    Eigen::MatrixXcd entries;
    double t{0.0};
    int n{0};  // M - 2
    ConditionFlag condition_flag{ConditionFlag::ok};
};

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // columns, orthonormal
};

inline SpectralDecomposition jacobi_eigen(const Eigen::MatrixXd& h, int max_sweeps = 64) {
    if (h.rows() != h.cols()) throw InvalidInput("jacobi_eigen: matrix must be square");
    const Eigen::Index d = h.rows();
    Eigen::MatrixXd a = 0.5 * (h + h.transpose());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(d, d);

    const double scale = std::max(a.cwiseAbs().maxCoeff(), 1.0);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < d; ++p)
            for (Eigen::Index q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= 1e-17 * scale) break;

        for (Eigen::Index p = 0; p < d; ++p) {
            for (Eigen::Index q = p + 1; q < d; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < d; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < d; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < d; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });

    SpectralDecomposition out{Eigen::VectorXd(d), Eigen::MatrixXd(d, d)};
    for (Eigen::Index k = 0; k < d; ++k) {
        out.eigenvalues(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
        out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

// V exp(-i E t) V^T
inline Eigen::MatrixXcd spectral_propagator(const SpectralDecomposition& sd, double t) {
    const Eigen::VectorXcd phases =
        (sd.eigenvalues.cast<cplx>() * cplx{0.0, -t}).array().exp().matrix();
    const Eigen::MatrixXcd v = sd.eigenvectors.cast<cplx>();
    return v * phases.asDiagonal() * v.transpose();
}

inline PropagatorMatrix oracle_matrix(const Eigen::MatrixXd& h, double t, int n = 0) {
    return {spectral_propagator(jacobi_eigen(h), t), t, n, ConditionFlag::ok};
}

// Classical fourth-order Runge-Kutta for i dC/dt = H C, with C(0) = c0 and
// outputs at each (ascending, non-negative) grid time. Steps never exceed
// dt_max; each grid interval is split into equal steps.
inline std::vector<Eigen::VectorXcd> rk_integrate(const Eigen::MatrixXd& h,
                                                  const Eigen::VectorXcd& c0,
                                                  std::span<const double> t_grid,
                                                  double dt_max = 1e-3,
                                                  double drift_budget = 1e-6) {
    if (!(dt_max > 0.0)) throw InvalidInput("rk_integrate: dt_max must be > 0");
    if (h.rows() != c0.size()) throw InvalidInput("rk_integrate: dimension mismatch");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] < 0.0 || (i > 0 && t_grid[i] < t_grid[i - 1]))
            throw InvalidInput("rk_integrate: time grid must be ascending and non-negative");
    }

    const Eigen::MatrixXcd minus_i_h = h.cast<cplx>() * cplx{0.0, -1.0};
    const auto rhs = [&](const Eigen::VectorXcd& c) -> Eigen::VectorXcd { return minus_i_h * c; };

    const double norm0 = c0.norm();
    std::vector<Eigen::VectorXcd> out;
    out.reserve(t_grid.size());
    Eigen::VectorXcd c = c0;
    double now = 0.0;
    for (const double target : t_grid) {
        const double span = target - now;
        if (span > 0.0) {
            const auto steps = static_cast<long>(std::ceil(span / dt_max));
            const double dt = span / static_cast<double>(steps);
            for (long s = 0; s < steps; ++s) {
                const Eigen::VectorXcd k1 = rhs(c);
                const Eigen::VectorXcd k2 = rhs(c + 0.5 * dt * k1);
                const Eigen::VectorXcd k3 = rhs(c + 0.5 * dt * k2);
                const Eigen::VectorXcd k4 = rhs(c + dt * k3);
                c += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            now = target;
        }
        if (std::abs(c.norm() - norm0) > drift_budget)
            throw StepTooLarge("rk_integrate: norm drift " + detail::sci(std::abs(c.norm() - norm0)) +
                               " exceeds budget; reduce dt_max");
        out.push_back(c);
    }
    return out;
}

}  // namespace tavis
