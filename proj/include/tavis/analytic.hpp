// analytic.hpp — closed-form propagator for full (4-dimensional) excitation sectors
//
// The Laplace-domain solution reduces to the roots of the depressed quartic
//
//     s^4 + A s^2 - i B s + F = 0,       s = -i E,
//
// whose roots are written through Ferrari's construction as
// s = -(sqrt(X) -+ sqrt(Y1)) / 2 and s = (sqrt(X) -+ sqrt(Y2)) / 2, with X a
// root of the resolvent cubic (Cardano, through Gamma). The diagonal entries
// additionally need the cubic characteristic polynomial of each 3x3 principal
// minor,  E^3 - k_i E^2 - a_i E + b_i,  handled through J_i and D_i.
//
// Two formula sets are provided. `corrected` is the one validated against the
// spectral oracle. `as_printed` reproduces the closed form exactly as it was
// originally typeset; it differs in four places:
//   * F carries (d1^2 - d2^2)^2 instead of (d1^2 - d2^2) inside the bracket;
//   * a_3, a_4, b_3, b_4 are taken as a_2, a_1, -b_2, -b_1, which holds only
//     with (n + 1) and (n + 2) exchanged;
//   * A_23 applies lambda1 lambda2 to the detuning term only, not to the whole
//     numerator.
// The printed set still satisfies A(0) = I, so only the residual report
// exposes the difference.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "tavis/errors.hpp"
#include "tavis/model.hpp"
#include "tavis/oracle.hpp"

namespace tavis {

enum class ClosedFormVariant { corrected, as_printed };

struct AnalyticOptions {
    double degeneracy_tol{1e-7};
    ClosedFormVariant variant{ClosedFormVariant::corrected};
    double identity_tol{1e-6};   // A(0) = I check, BranchInconsistency beyond
    double unitarity_tol{1e-8};  // ||A A^dagger - I||_max, near_degenerate beyond
};

struct AnalyticCoefficients {
    ModelParams params;
    int n{0};
    ClosedFormVariant variant{ClosedFormVariant::corrected};

    double A{0}, B{0}, F{0}, G{0}, H{0};
    cplx Gamma, X, Y1, Y2;
    cplx sqrt_X, sqrt_Y1, sqrt_Y2;
    std::array<double, 4> a{}, b{}, k{};
    std::array<cplx, 4> J{}, D{};

    // Partial-fraction denominators, one per exponential.
    std::array<cplx, 4> q{};

    double identity_residual{0.0};

    // Exponential rates r_j in A_jm(t) = sum_j (...) exp(r_j t). Purely
    // imaginary for a Hermitian sector block; r_j = -i E_j.
    std::array<cplx, 4> rates() const {
        return {-0.5 * (sqrt_X - sqrt_Y1), -0.5 * (sqrt_X + sqrt_Y1), 0.5 * (sqrt_X - sqrt_Y2),
                0.5 * (sqrt_X + sqrt_Y2)};
    }
};

namespace detail {

// Signed zeros in the imaginary part would flip the principal branch of
// negative reals; normalise them away.
inline cplx canonical(cplx z) { return {z.real() + 0.0, z.imag() + 0.0}; }
inline cplx csqrt(cplx z) { return std::sqrt(canonical(z)); }
inline cplx ccbrt(cplx z) {
    z = canonical(z);
    if (z == cplx{0.0, 0.0}) return z;
    return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

inline Eigen::MatrixXcd closed_form_entries(const AnalyticCoefficients& c, double t) {
    constexpr cplx I{0.0, 1.0};
    const double s3 = std::numbers::sqrt3;
    const auto& p = c.params;
    const double n = c.n;
    const double l1 = p.lambda1, l2 = p.lambda2, d1 = p.delta1, d2 = p.delta2;
    const cplx sX = c.sqrt_X, sY1 = c.sqrt_Y1, sY2 = c.sqrt_Y2;

    const auto r = c.rates();
    const cplx e1 = std::exp(r[0] * t), e2 = std::exp(r[1] * t);
    const cplx e3 = std::exp(r[2] * t), e4 = std::exp(r[3] * t);
    const cplx q1 = c.q[0], q2 = c.q[1], q3 = c.q[2], q4 = c.q[3];

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        const cplx Di = c.D[static_cast<std::size_t>(i)], Ji = c.J[static_cast<std::size_t>(i)];
        const double ki = c.k[static_cast<std::size_t>(i)];
        const cplx u1 = 2.0 * I * ki - 3.0 * sX + 3.0 * sY1;
        const cplx u2 = 2.0 * ki + 3.0 * I * (sX + sY1);
        const cplx u3 = -2.0 * I * ki - 3.0 * sX + 3.0 * sY2;
        const cplx u4 = 2.0 * ki - 3.0 * I * (sX + sY2);
        const cplx DJ = Di * Ji, D3 = Di * Di * Di, J3 = Ji * Ji * Ji;
        const cplx t1 = e1 * (18.0 * (s3 + I) * DJ * (-u1) - 432.0 * D3 - 4.0 * I * J3 + u1 * u1 * u1) / q1;
        const cplx t2 = e2 * (18.0 * (s3 + I) * I * DJ * u2 + 432.0 * D3 + I * (4.0 * J3 + u2 * u2 * u2)) / q2;
        const cplx t3 = e3 * (18.0 * (s3 + I) * DJ * (-u3) + 432.0 * D3 + 4.0 * I * J3 + u3 * u3 * u3) / q3;
        const cplx t4 = e4 * (18.0 * (1.0 - I * s3) * DJ * u4 - 432.0 * D3 - I * (4.0 * J3 + u4 * u4 * u4)) / q4;
        m(i, i) = (t1 + t2 + t3 + t4) / 54.0;
    }

    const double rn1 = std::sqrt(n + 1.0), rn2 = std::sqrt(n + 2.0);

    m(0, 3) = -4.0 * l1 * l2 * rn1 * rn2 *
              ((sY1 - sX) * e1 / q1 + (sX + sY1) * e2 / q2 + (sY2 - sX) * e3 / q3 + (sX + sY2) * e4 / q4);

    {
        const double m3 = 2.0 * n + 3.0;
        const bool printed = c.variant == ClosedFormVariant::as_printed;
        const double dd = printed ? (d1 + d2) * l1 * l2 : (d1 + d2);
        const double pre = printed ? 1.0 : l1 * l2;
        m(1, 2) = pre * (-2.0 * e4 * (I * dd + m3 * sX + m3 * sY2) / q4 +
                         e2 * (2.0 * I * dd - 2.0 * m3 * sX - 2.0 * m3 * sY1) / q2 +
                         e3 * (2.0 * I * dd + 2.0 * m3 * sX - 2.0 * m3 * sY2) / q3 +
                         e1 * (2.0 * m3 * sX - 2.0 * (m3 * sY1 + I * dd)) / q1);
    }

    const double G = c.G, H = c.H;
    const cplx xm1 = sX - sY1, xp1 = sX + sY1, xm2 = sX - sY2, xp2 = sX + sY2;

    m(0, 2) = -I * l1 * rn1 *
              (-e3 * (G + xm2 * (-2.0 * I * d2 + xm2)) / q3 + e4 * (G + xp2 * (-2.0 * I * d2 + xp2)) / q4 +
               e1 * (G + xm1 * (2.0 * I * d2 + xm1)) / q1 + e2 * (-G - xp1 * (2.0 * I * d2 + xp1)) / q2);

    m(0, 1) = -I * rn1 * l2 *
              (e3 * (G - xm2 * (-2.0 * I * d1 + xm2)) / q3 + e4 * (-G + xp2 * (-2.0 * I * d1 + xp2)) / q4 +
               e1 * (-G + xm1 * (2.0 * I * d1 + xm1)) / q1 + e2 * (G - xp1 * (2.0 * I * d1 + xp1)) / q2);

    m(1, 3) = -I * rn2 * l1 *
              (e1 * (H + xm1 * (-2.0 * I * d2 + xm1)) / q1 + e2 * (-H - xp1 * (-2.0 * I * d2 + xp1)) / q2 +
               e4 * (H + xp2 * (2.0 * I * d2 + xp2)) / q4 - e3 * (H + xm2 * (2.0 * I * d2 + xm2)) / q3);

    m(2, 3) = -I * rn2 * l2 *
              (e1 * (-H + xm1 * (-2.0 * I * d1 + xm1)) / q1 + e2 * (H - xp1 * (-2.0 * I * d1 + xp1)) / q2 +
               e3 * (H - xm2 * (2.0 * I * d1 + xm2)) / q3 + e4 * (-H + xp2 * (2.0 * I * d1 + xp2)) / q4);

    // Only the upper triangle has explicit expressions; the block is real
    // symmetric, so its exponential is complex symmetric.
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) m(j, i) = m(i, j);
    return m;
}

inline double identity_deviation(const Eigen::MatrixXcd& m) {
    return (m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

}  // namespace detail

inline AnalyticCoefficients compute_coefficients(const ModelParams& params, int n,
                                                 const AnalyticOptions& opts = {}) {
    if (n < 0) throw InvalidInput("compute_coefficients: closed form covers full sectors only (n >= 0)");
    params.validate();
    using detail::ccbrt;
    using detail::csqrt;
    constexpr cplx I{0.0, 1.0};

    AnalyticCoefficients c;
    c.params = params;
    c.n = n;
    c.variant = opts.variant;
    const bool printed = opts.variant == ClosedFormVariant::as_printed;

    const double nn = n;
    const double l1s = params.lambda1 * params.lambda1, l2s = params.lambda2 * params.lambda2;
    const double d1 = params.delta1, d2 = params.delta2;
    const double dsq = d1 * d1 - d2 * d2;
    const double lsq = l1s - l2s;

    c.A = 0.5 * (d1 * d1 + d2 * d2 + 2.0 * (2.0 * nn + 3.0) * (l1s + l2s));
    c.B = d1 * l2s + d2 * l1s;
    c.F = ((printed ? dsq * dsq : dsq) * dsq + 4.0 * (3.0 + 2.0 * nn) * lsq * dsq +
           16.0 * (nn * nn + 3.0 * nn + 2.0) * lsq * lsq) / 16.0;
    c.G = dsq + 4.0 * (nn + 2.0) * lsq;
    c.H = dsq + 4.0 * (nn + 1.0) * lsq;

    const double delta0 = c.A * c.A + 12.0 * c.F;
    const double delta1 = 2.0 * c.A * c.A * c.A - 27.0 * c.B * c.B - 72.0 * c.A * c.F;
    const double cbrt2 = std::cbrt(2.0);
    c.Gamma = ccbrt(delta1 + csqrt(-4.0 * delta0 * delta0 * delta0 + delta1 * delta1));
    if (std::abs(c.Gamma) < opts.degeneracy_tol)
        throw DegenerateParameters("compute_coefficients: |Gamma| below tolerance");
    c.X = -2.0 * c.A / 3.0 + cbrt2 * delta0 / (3.0 * c.Gamma) + c.Gamma / (3.0 * cbrt2);
    if (std::abs(c.X) < opts.degeneracy_tol)
        throw DegenerateParameters("compute_coefficients: |X| = " + detail::sci(std::abs(c.X)) +
                                   " below tolerance");
    c.sqrt_X = csqrt(c.X);
    c.Y1 = -2.0 * c.A - c.X + 2.0 * I * c.B / c.sqrt_X;
    c.Y2 = -2.0 * c.A - c.X - 2.0 * I * c.B / c.sqrt_X;
    if (std::abs(c.Y1 - c.Y2) < opts.degeneracy_tol)
        throw DegenerateParameters("compute_coefficients: |Y1 - Y2| below tolerance");
    c.sqrt_Y1 = csqrt(c.Y1);
    c.sqrt_Y2 = csqrt(c.Y2);

    const cplx sX = c.sqrt_X, sY1 = c.sqrt_Y1, sY2 = c.sqrt_Y2, X = c.X, Y1 = c.Y1, Y2 = c.Y2;
    c.q = {sY1 * (-4.0 * sX * sY1 + 4.0 * X + Y1 - Y2), sY1 * (4.0 * sX * sY1 + 4.0 * X + Y1 - Y2),
           sY2 * (-4.0 * sX * sY2 + 4.0 * X - Y1 + Y2), sY2 * (4.0 * sX * sY2 + 4.0 * X - Y1 + Y2)};
    for (const auto& qi : c.q)
        if (std::abs(qi) < opts.degeneracy_tol)
            throw DegenerateParameters("compute_coefficients: coincident rates (vanishing denominator)");

    // Cubic characteristic polynomial of the 3x3 minor that omits state i.
    const double a1 = ((d1 - d2) * (d1 - d2) + 4.0 * (nn + 2.0) * (l1s + l2s)) / 4.0;
    const double a2 = ((d1 + d2) * (d1 + d2) + 4.0 * ((nn + 1.0) * l1s + (nn + 2.0) * l2s)) / 4.0;
    const double b1 = -(d1 - d2) / 8.0 * (dsq + 4.0 * (nn + 2.0) * lsq);
    const double b2 = -(d1 + d2) / 8.0 * (dsq + 4.0 * ((nn + 1.0) * l1s - (nn + 2.0) * l2s));
    const double k1 = -(d1 + d2) / 2.0;
    const double k2 = -(d1 - d2) / 2.0;
    if (printed) {
        c.a = {a1, a2, a2, a1};
        c.b = {b1, b2, -b2, -b1};
    } else {
        const double a3 = ((d1 + d2) * (d1 + d2) + 4.0 * ((nn + 2.0) * l1s + (nn + 1.0) * l2s)) / 4.0;
        const double a4 = ((d1 - d2) * (d1 - d2) + 4.0 * (nn + 1.0) * (l1s + l2s)) / 4.0;
        const double b3 = (d1 + d2) / 8.0 * (dsq + 4.0 * ((nn + 2.0) * l1s - (nn + 1.0) * l2s));
        const double b4 = (d1 - d2) / 8.0 * (dsq + 4.0 * (nn + 1.0) * lsq);
        c.a = {a1, a2, a3, a4};
        c.b = {b1, b2, b3, b4};
    }
    c.k = {k1, k2, -k2, -k1};

    const cplx minus_one_5_6 = std::polar(1.0, 5.0 * std::numbers::pi / 6.0);
    for (std::size_t i = 0; i < 4; ++i) {
        const double ai = c.a[i], bi = c.b[i], ki = c.k[i];
        const double disc = 4.0 * ai * ai * ai - 27.0 * bi * bi + 18.0 * ai * bi * ki + ai * ai * ki * ki +
                            4.0 * bi * ki * ki * ki;
        c.J[i] = ccbrt(-27.0 * bi + 9.0 * ai * ki + 2.0 * ki * ki * ki - 3.0 * I * std::numbers::sqrt3 * csqrt(disc));
        if (std::abs(c.J[i]) < opts.degeneracy_tol)
            throw DegenerateParameters("compute_coefficients: |J_" + std::to_string(i + 1) + "| below tolerance");
        c.D[i] = minus_one_5_6 * (3.0 * ai + ki * ki) / (3.0 * c.J[i]);
    }

    c.identity_residual = detail::identity_deviation(detail::closed_form_entries(c, 0.0));
    return c;
}

inline PropagatorMatrix analytic_matrix(const AnalyticCoefficients& c, double t,
                                        const AnalyticOptions& opts = {}) {
    if (!(c.identity_residual <= opts.identity_tol))
        throw BranchInconsistency("analytic_matrix: A(0) deviates from identity by " +
                                  detail::sci(c.identity_residual));
    PropagatorMatrix out{detail::closed_form_entries(c, t), t, c.n, ConditionFlag::ok};
    const Eigen::MatrixXcd u = out.entries * out.entries.adjoint();
    if (!(detail::identity_deviation(u) <= opts.unitarity_tol)) out.condition_flag = ConditionFlag::near_degenerate;
    return out;
}

inline PropagatorMatrix analytic_matrix(const ModelParams& params, int n, double t,
                                        const AnalyticOptions& opts = {}) {
    return analytic_matrix(compute_coefficients(params, n, opts), t, opts);
}

}  // namespace tavis
