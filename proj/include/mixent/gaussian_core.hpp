#pragma once

// Covariance-matrix algebra for zero-mean two-mode states.
//
// Quadrature order is (x1, p1, x2, p2) and the vacuum covariance is the
// identity (shot noise has unit variance).

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mixent/errors.hpp"
#include "mixent/mixture_spec.hpp"

namespace mixent {

using Matrix4 = Eigen::Matrix4d;

class CovarianceState {
public:
    static constexpr double kSymmetryTolerance = 1e-9;
    static constexpr double kPhysicalityTolerance = 1e-9;

    CovarianceState() : matrix_(Matrix4::Identity()) {}

    // Rejects inputs whose asymmetry exceeds kSymmetryTolerance, then stores (V + V^T) / 2.
    explicit CovarianceState(const Matrix4& v) {
        if (!v.allFinite()) throw InvalidParameter("covariance matrix has non-finite entries");
        const double asym = (v - v.transpose()).cwiseAbs().maxCoeff();
        if (asym > kSymmetryTolerance)
            throw InvalidParameter("covariance matrix not symmetric (max |Vij - Vji| = " + std::to_string(asym) + ")");
        matrix_ = 0.5 * (v + v.transpose());
    }

    static CovarianceState vacuum() { return CovarianceState(); }

    const Matrix4& matrix() const noexcept { return matrix_; }
    double operator()(int i, int j) const { return matrix_(i, j); }

    // Uncertainty relation; see is_physical() below.
    bool is_physical() const;

private:
    Matrix4 matrix_;
};

struct SymplecticSpectrum {
    std::array<double, 2> values;  // ascending

    double min() const noexcept { return values[0]; }
    double max() const noexcept { return values[1]; }
};

inline Matrix4 symplectic_form() {
    Matrix4 omega = Matrix4::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

inline CovarianceState tmsv_covariance(double r) {
    detail::require_squeeze(r);
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    Matrix4 v = Matrix4::Zero();
    v.diagonal().setConstant(c);
    v(0, 2) = v(2, 0) = -s;
    v(1, 3) = v(3, 1) = s;
    return CovarianceState(v);
}

// All components are zero-mean, so second moments combine convexly.
inline CovarianceState mixture_covariance(const MixtureSpec& spec) {
    Matrix4 v = Matrix4::Zero();
    for (const auto& c : spec.components()) v += c.weight * tmsv_covariance(c.r).matrix();
    return CovarianceState(v);
}

// Equal loss eta on both modes with vacuum entering the loss ports.
inline CovarianceState apply_continuous_loss(const CovarianceState& state, double eta) {
    detail::require_probability(eta, "eta");
    return CovarianceState(eta * state.matrix() + (1.0 - eta) * Matrix4::Identity());
}

// 1/4 Var(X+_1 + X+_2) + 1/4 Var(X-_1 - X-_2). Below 1 implies entanglement
// for states in standard form.
inline double duan_inseparability(const CovarianceState& state) {
    const Matrix4& v = state.matrix();
    return 0.25 * ((v(0, 0) + v(2, 2) + 2.0 * v(0, 2)) + (v(1, 1) + v(3, 3) - 2.0 * v(1, 3)));
}

// Momentum of mode 2 flipped: V -> L V L with L = diag(1, 1, 1, -1).
inline CovarianceState pt_covariance(const CovarianceState& state) {
    Matrix4 v = state.matrix();
    for (int k = 0; k < 3; ++k) {
        v(3, k) = -v(3, k);
        v(k, 3) = -v(k, 3);
    }
    return CovarianceState(v);
}

// Moduli of the eigenvalues of i*Omega*V. These come in +/- pairs, so the
// four moduli collapse to two values.
inline SymplecticSpectrum symplectic_eigenvalues(const CovarianceState& state) {
    const Matrix4 m = symplectic_form() * state.matrix();
    Eigen::EigenSolver<Matrix4> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NumericalFailure("symplectic eigensolve did not converge");

    std::array<double, 4> moduli{};
    for (int i = 0; i < 4; ++i) moduli[i] = std::abs(solver.eigenvalues()[i]);
    std::sort(moduli.begin(), moduli.end());

    const double scale = std::max(1.0, moduli[3]);
    if (std::abs(moduli[0] - moduli[1]) > 1e-8 * scale || std::abs(moduli[2] - moduli[3]) > 1e-8 * scale)
        throw NumericalFailure("symplectic eigenvalues did not pair up");

    SymplecticSpectrum spectrum{{0.5 * (moduli[0] + moduli[1]), 0.5 * (moduli[2] + moduli[3])}};
    if (!(spectrum.values[0] > 0.0)) throw NumericalFailure("non-positive symplectic eigenvalue");
    return spectrum;
}

inline bool CovarianceState::is_physical() const {
    Eigen::SelfAdjointEigenSolver<Matrix4> pd(matrix_, Eigen::EigenvaluesOnly);
    if (pd.info() != Eigen::Success || pd.eigenvalues().minCoeff() <= 0.0) return false;
    return symplectic_eigenvalues(*this).min() >= 1.0 - kPhysicalityTolerance;
}

// ||rho^{T_A}||_1 = prod_i max(1, 1/nu_i) over the partially transposed
// symplectic spectrum; negativity = (||.||_1 - 1) / 2.
inline double gaussian_negativity_from_cm(const CovarianceState& state) {
    const SymplecticSpectrum nu = symplectic_eigenvalues(pt_covariance(state));
    double trace_norm = 1.0;
    for (double v : nu.values) trace_norm *= std::max(1.0, 1.0 / v);
    return 0.5 * (trace_norm - 1.0);
}

}  // namespace mixent
