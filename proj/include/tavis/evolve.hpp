// evolve.hpp — advance an ensemble with the analytic, spectral or Runge-Kutta backend

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tavis/analytic.hpp"
#include "tavis/errors.hpp"
#include "tavis/model.hpp"
#include "tavis/oracle.hpp"

namespace tavis {

enum class Method { analytic, spectral, rk };

inline const char* to_string(Method m) noexcept {
    switch (m) {
        case Method::analytic: return "analytic";
        case Method::spectral: return "spectral";
        case Method::rk: return "rk";
    }
    return "?";
}

inline std::optional<Method> method_from_string(std::string_view s) {
    if (s == "analytic") return Method::analytic;
    if (s == "spectral") return Method::spectral;
    if (s == "rk") return Method::rk;
    return std::nullopt;
}

struct EvolveOptions {
    Method method{Method::spectral};
    AnalyticOptions analytic{};
    double dt_max{1e-3};
    // Called once per sector that could not use the requested backend.
    std::function<void(const std::string&)> notice{};
};

// Time-independent propagator for one sector. Closed-form coefficients or the
// eigendecomposition are computed once; matrix(t) is then cheap.
class SectorPropagator {
public:
    SectorPropagator(const ModelParams& params, int M, const EvolveOptions& opts)
        : sector_(build_sector(M)),
          h_(sector_hamiltonian(sector_, params)),
          method_(opts.method == Method::rk ? Method::spectral : opts.method),
          analytic_opts_(opts.analytic) {
        if (method_ == Method::analytic) {
            if (!sector_.is_full()) {
                fallback(opts, "sector M=" + std::to_string(M) + " has dimension " +
                                   std::to_string(sector_.dim()) + "; closed form needs 4");
            } else {
                try {
                    coeffs_ = compute_coefficients(params, sector_.ansatz_index(), opts.analytic);
                    if (!(coeffs_->identity_residual <= opts.analytic.identity_tol))
                        throw BranchInconsistency("A(0) deviates from identity");
                } catch (const NumericalError& e) {
                    coeffs_.reset();
                    fallback(opts, "sector M=" + std::to_string(M) + ": " + e.what());
                }
            }
        }
        if (method_ == Method::spectral) spectral_ = jacobi_eigen(h_);
    }

    const ExcitationSector& sector() const noexcept { return sector_; }
    const Eigen::MatrixXd& hamiltonian() const noexcept { return h_; }
    Method method() const noexcept { return method_; }

    Eigen::MatrixXcd matrix(double t) const {
        if (method_ == Method::analytic) {
            auto a = analytic_matrix(*coeffs_, t, analytic_opts_);
            if (a.condition_flag == ConditionFlag::ok) return std::move(a.entries);
            // Precision loss at this time: use the exact route for it.
            return spectral_propagator(jacobi_eigen(h_), t);
        }
        return spectral_propagator(*spectral_, t);
    }

private:
    void fallback(const EvolveOptions& opts, const std::string& why) {
        method_ = Method::spectral;
        if (opts.notice) opts.notice("analytic backend unavailable, using spectral: " + why);
    }

    ExcitationSector sector_;
    Eigen::MatrixXd h_;
    Method method_;
    AnalyticOptions analytic_opts_;
    std::optional<AnalyticCoefficients> coeffs_;
    std::optional<SpectralDecomposition> spectral_;
};

namespace detail {

// RK witness for a signed time step: C(-tau) solves i dC/dtau = -H C.
inline Eigen::VectorXcd rk_advance(const Eigen::MatrixXd& h, const Eigen::VectorXcd& c, double dt,
                                   double dt_max) {
    if (dt == 0.0) return c;
    const double grid[] = {std::abs(dt)};
    const Eigen::MatrixXd hs = dt > 0.0 ? h : Eigen::MatrixXd(-h);
    return rk_integrate(hs, c, grid, dt_max).back();
}

}  // namespace detail

// Advance every branch and sector from ensemble.time to t. Weights are
// untouched; each sector evolves independently.
inline EnsembleState evolve(const EnsembleState& ensemble, const ModelParams& params, double t,
                            const EvolveOptions& opts = {}) {
    params.validate();
    const double dt = t - ensemble.time;
    EnsembleState out = ensemble;
    out.time = t;
    if (dt == 0.0) return out;

    std::map<int, SectorPropagator> cache;
    for (auto& branch : out.branches) {
        for (auto& [M, c] : branch.sectors) {
            if (opts.method == Method::rk) {
                const Eigen::MatrixXd h = sector_hamiltonian(build_sector(M), params);
                c = detail::rk_advance(h, c, dt, opts.dt_max);
                continue;
            }
            auto it = cache.find(M);
            if (it == cache.end()) it = cache.emplace(M, SectorPropagator(params, M, opts)).first;
            c = it->second.matrix(dt) * c;
        }
    }
    return out;
}

}  // namespace tavis
