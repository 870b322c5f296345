#pragma once

// Truncated two-mode Fock-space oracle. Builds density matrices for the
// TMSV / vacuum mixture family, partially transposes them in the number
// basis and reads the negativity off a dense eigensolve. Nothing here
// uses the block structure of the partial transpose; that belongs to the
// tests.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mixent/errors.hpp"

namespace mixent {

using DenseMatrix = Eigen::MatrixXd;

inline constexpr int kMaxAutoCutoff = 64;
inline constexpr double kAutoCutoffAmplitudeTail = 1e-9;
inline constexpr double kMaxTruncationDeficit = 1e-6;
inline constexpr double kNegativityTailLimit = 1e-8;

// Real symmetric matrix over |n1, n2>, n_i <= cutoff, flat index n1*(cutoff+1)+n2.
class FockDensityOp {
public:
    FockDensityOp(int cutoff, DenseMatrix matrix, double trace_deficit)
        : cutoff_(cutoff), matrix_(std::move(matrix)), trace_deficit_(trace_deficit) {
        detail::require(cutoff_ >= 0, "cutoff must be >= 0");
        const Eigen::Index d = dimension();
        detail::require(matrix_.rows() == d && matrix_.cols() == d, "matrix dimension must be (cutoff+1)^2");
    }

    int cutoff() const noexcept { return cutoff_; }
    Eigen::Index dimension() const noexcept { return static_cast<Eigen::Index>(cutoff_ + 1) * (cutoff_ + 1); }
    Eigen::Index index(int n1, int n2) const noexcept { return static_cast<Eigen::Index>(n1) * (cutoff_ + 1) + n2; }

    const DenseMatrix& matrix() const noexcept { return matrix_; }
    double operator()(int m1, int m2, int n1, int n2) const { return matrix_(index(m1, m2), index(n1, n2)); }

    double trace() const { return matrix_.trace(); }
    double trace_deficit() const noexcept { return trace_deficit_; }

    bool is_symmetric(double tol = 1e-12) const { return (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() <= tol; }

private:
    int cutoff_;
    DenseMatrix matrix_;
    double trace_deficit_;
};

struct EigenSpectrum {
    std::vector<double> values;  // ascending
};

struct JacobiOptions {
    double off_diagonal_tolerance = 1e-11;
    int max_sweeps = 100;
};

// Cyclic Jacobi rotations on a dense real symmetric matrix. The spectrum is
// validated against the trace and Frobenius-norm identities before return.
inline EigenSpectrum hermitian_eigenvalues(const DenseMatrix& input, JacobiOptions opts = {}) {
    detail::require(input.rows() == input.cols(), "matrix must be square");
    detail::require(input.allFinite(), "matrix has non-finite entries");
    const Eigen::Index n = input.rows();
    if (n > 0)
        detail::require((input - input.transpose()).cwiseAbs().maxCoeff() <= 1e-10, "matrix must be symmetric to 1e-10");

    DenseMatrix a = 0.5 * (input + input.transpose());
    const double skip = 0.01 * opts.off_diagonal_tolerance / std::max<double>(1.0, double(n));

    auto off_norm = [&] {
        double sum = 0.0;
        for (Eigen::Index q = 0; q < n; ++q)
            for (Eigen::Index p = 0; p < q; ++p) sum += a(p, q) * a(p, q);
        return std::sqrt(2.0 * sum);
    };

    bool converged = false;
    for (int sweep = 0; sweep <= opts.max_sweeps; ++sweep) {
        if (off_norm() <= opts.off_diagonal_tolerance) {
            converged = true;
            break;
        }
        if (sweep == opts.max_sweeps) break;
        for (Eigen::Index q = 1; q < n; ++q) {
            for (Eigen::Index p = 0; p < q; ++p) {
                const double apq = a(p, q);
                if (std::abs(apq) <= skip) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    if (akp == 0.0 && akq == 0.0) continue;
                    const double new_kp = c * akp - s * akq;
                    const double new_kq = s * akp + c * akq;
                    a(k, p) = a(p, k) = new_kp;
                    a(k, q) = a(q, k) = new_kq;
                }
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
            }
        }
    }
    if (!converged)
        throw NumericalFailure("Jacobi eigensolve did not converge within " + std::to_string(opts.max_sweeps) +
                               " sweeps");

    EigenSpectrum spectrum;
    spectrum.values.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) spectrum.values[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(spectrum.values.begin(), spectrum.values.end());

    double sum = 0.0, sum_sq = 0.0;
    for (double v : spectrum.values) {
        sum += v;
        sum_sq += v * v;
    }
    const double frob_sq = input.squaredNorm();
    const double scale = std::max(1.0, frob_sq);
    if (std::abs(sum - input.trace()) > 1e-9 * scale || std::abs(sum_sq - frob_sq) > 1e-9 * scale)
        throw NumericalFailure("eigenvalues fail trace / Frobenius identities");
    return spectrum;
}

// Smallest cutoff c with tanh(r)^(c+1) < 1e-9, capped at 64. The
// negativity is linear in the Schmidt amplitudes, so its truncation error
// follows the amplitude tail tanh(r)^(c+1), not the trace tail
// tanh(r)^(2(c+1)) (which this rule keeps below 1e-18).
inline int auto_cutoff(double r) {
    detail::require_squeeze(r);
    const double lambda = std::tanh(r);
    if (lambda == 0.0) return 0;
    int c = 0;
    double tail = lambda;
    while (tail >= kAutoCutoffAmplitudeTail && c < kMaxAutoCutoff) {
        ++c;
        tail *= lambda;
    }
    return c;
}

// Normalized amplitudes sqrt(1 - lambda^2) lambda^n on |n, n>, lambda = tanh r.
inline FockDensityOp tmsv_fock_density(double r, std::optional<int> cutoff = std::nullopt) {
    detail::require_squeeze(r);
    const int c = cutoff.value_or(auto_cutoff(r));
    detail::require(c >= 0, "cutoff must be >= 0");

    const double lambda = std::tanh(r);
    const double deficit = std::pow(lambda * lambda, c + 1);
    if (deficit > kMaxTruncationDeficit) {
        const int required = static_cast<int>(std::ceil(std::log(kMaxTruncationDeficit) / std::log(lambda * lambda))) - 1;
        throw TruncationError("cutoff " + std::to_string(c) + " leaves trace deficit " + std::to_string(deficit) +
                                  "; need cutoff >= " + std::to_string(required),
                              required);
    }

    const int d1 = c + 1;
    std::vector<double> amp(static_cast<std::size_t>(d1));
    const double norm = std::sqrt(1.0 - lambda * lambda);
    for (int n = 0; n < d1; ++n) amp[n] = norm * std::pow(lambda, n);

    DenseMatrix m = DenseMatrix::Zero(d1 * d1, d1 * d1);
    for (int a = 0; a < d1; ++a)
        for (int b = 0; b < d1; ++b) m(a * d1 + a, b * d1 + b) = amp[a] * amp[b];
    return FockDensityOp(c, std::move(m), deficit);
}

// p * gamma(r) + (1 - p) |0,0><0,0|
inline FockDensityOp mixture_density(double p, double r, std::optional<int> cutoff = std::nullopt) {
    detail::require_probability(p);
    const FockDensityOp squeezed = tmsv_fock_density(r, cutoff);
    DenseMatrix m = p * squeezed.matrix();
    m(0, 0) += 1.0 - p;
    return FockDensityOp(squeezed.cutoff(), std::move(m), p * squeezed.trace_deficit());
}

// <m1,m2| rho^{T_A} |n1,n2> = <n1,m2| rho |m1,n2>. The result may have
// negative eigenvalues.
inline FockDensityOp partial_transpose_fock(const FockDensityOp& rho) {
    const int d1 = rho.cutoff() + 1;
    DenseMatrix out(rho.dimension(), rho.dimension());
    const DenseMatrix& in = rho.matrix();
    for (int m1 = 0; m1 < d1; ++m1)
        for (int m2 = 0; m2 < d1; ++m2)
            for (int n1 = 0; n1 < d1; ++n1)
                for (int n2 = 0; n2 < d1; ++n2)
                    out(m1 * d1 + m2, n1 * d1 + n2) = in(n1 * d1 + m2, m1 * d1 + n2);
    return FockDensityOp(rho.cutoff(), std::move(out), rho.trace_deficit());
}

// Both readings of the negativity: the sum of negative eigenvalue moduli
// of rho^{T_A}, and (||rho^{T_A}||_1 - tr rho) / 2.
struct NegativityReadings {
    double negative_sum;
    double trace_norm_form;
    double min_eigenvalue;
};

inline NegativityReadings negativity_readings(const FockDensityOp& rho) {
    if (!(rho.trace_deficit() < kNegativityTailLimit))
        throw TruncationError("trace deficit " + std::to_string(rho.trace_deficit()) +
                                  " too large for a negativity estimate (limit 1e-8)",
                              rho.cutoff() + 1);
    const FockDensityOp pt = partial_transpose_fock(rho);
    const EigenSpectrum spectrum = hermitian_eigenvalues(pt.matrix());
    double negative = 0.0, abs_sum = 0.0;
    for (double v : spectrum.values) {
        if (v < 0.0) negative -= v;
        abs_sum += std::abs(v);
    }
    return {negative, 0.5 * (abs_sum - pt.trace()),
            spectrum.values.empty() ? 0.0 : spectrum.values.front()};
}

inline double negativity_numeric(const FockDensityOp& rho) {
    const NegativityReadings readings = negativity_readings(rho);
    if (std::abs(readings.negative_sum - readings.trace_norm_form) > 1e-9)
        throw InternalConsistencyError("negativity readings disagree: " + std::to_string(readings.negative_sum) +
                                       " vs " + std::to_string(readings.trace_norm_form));
    return readings.negative_sum;
}

// On-demand physicality check (eigenvalues >= -1e-10).
inline bool is_positive_semidefinite(const FockDensityOp& rho, double tol = 1e-10) {
    const EigenSpectrum spectrum = hermitian_eigenvalues(rho.matrix());
    return spectrum.values.empty() || spectrum.values.front() >= -tol;
}

}  // namespace mixent
