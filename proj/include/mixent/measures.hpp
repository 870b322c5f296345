#pragma once

// Closed-form entanglement and teleportation quantities for the mixture
// p * gamma(r) + (1 - p) * gamma(0), in both the (p, r) parameterization
// and the (p, I) parameterization where I is the common inseparability
// value shared with a pure TMSV of squeeze s, e^{-2s} = I.

#include <algorithm>
#include <cmath>
#include <string>

#include "mixent/errors.hpp"
#include "mixent/mixture_spec.hpp"

namespace mixent {

struct ComparisonPoint {
    double p;
    double I;
    double mixed;
    double pure;
    double gap;  // mixed - pure
};

namespace detail {

// 1 - p < I <= 1 with p in (0, 1].
inline void require_feasible(double p, double I) {
    require(std::isfinite(p) && p > 0.0 && p <= 1.0, "p must lie in (0, 1], got " + std::to_string(p));
    require(std::isfinite(I), "I must be finite");
    if (!(I > 1.0 - p && I <= 1.0))
        throw InfeasibleParameters("inseparability value " + std::to_string(I) + " outside (1 - p, 1] for p = " +
                                   std::to_string(p));
}

}  // namespace detail

inline double pure_negativity(double r) {
    detail::require_squeeze(r);
    return 0.5 * std::expm1(2.0 * r);
}

inline double mixture_negativity(double p, double r) {
    detail::require_probability(p);
    return p * pure_negativity(r);
}

inline double inseparability_mixture(double p, double r) {
    detail::require_probability(p);
    detail::require_squeeze(r);
    return p * std::exp(-2.0 * r) + (1.0 - p);
}

// Pure-state squeeze s with e^{-2s} = I.
inline double matched_squeeze(double I) {
    detail::require(std::isfinite(I) && I > 0.0 && I <= 1.0, "I must lie in (0, 1], got " + std::to_string(I));
    return -0.5 * std::log(I);
}

// Mixture squeeze r with p e^{-2r} + (1 - p) = I.
inline double mixture_squeeze_for(double p, double I) {
    detail::require_feasible(p, I);
    return -0.5 * std::log((I - (1.0 - p)) / p);
}

inline ComparisonPoint negativity_vs_I(double p, double I) {
    detail::require_feasible(p, I);
    // p^2 / (2(I+p-1)) - p/2 and (1/I - 1)/2, rearranged to avoid cancellation
    // near I = 1; I - (1 - p) is exact close to the pole.
    const double mixed = p * (1.0 - I) / (2.0 * (I - (1.0 - p)));
    const double pure = (1.0 - I) / (2.0 * I);
    return {p, I, mixed, pure, mixed - pure};
}

// (I - 1)^2 (1 - p) / (2 I (I - 1 + p)); nonnegative on the feasible region.
inline double negativity_gap(double p, double I) {
    detail::require_feasible(p, I);
    return (I - 1.0) * (I - 1.0) * (1.0 - p) / (2.0 * I * (I - (1.0 - p)));
}

inline double fidelity_pure(double r) {
    detail::require_squeeze(r);
    return 1.0 / (1.0 + std::exp(-2.0 * r));
}

inline double fidelity_mixture(double p, double r) {
    detail::require_probability(p);
    return p * fidelity_pure(r) + 0.5 * (1.0 - p);
}

inline ComparisonPoint fidelity_vs_I(double p, double I) {
    detail::require_feasible(p, I);
    const double pure = 1.0 / (1.0 + I);
    const double mixed = p * p / ((I - (1.0 - p)) + p) + 0.5 * (1.0 - p);
    return {p, I, mixed, pure, mixed - pure};
}

// (I - 1)^2 (1 - p) / (2 (I + 1)(I - 1 + 2p))
inline double fidelity_gap(double p, double I) {
    detail::require_feasible(p, I);
    return (I - 1.0) * (I - 1.0) * (1.0 - p) / (2.0 * (I + 1.0) * ((I - (1.0 - p)) + p));
}

struct FidelityGapMaximum {
    double gap;
    double p_star;
    double I_star;
};

struct GridSearchOptions {
    int p_steps = 1000;           // p = k / p_steps, k = 1..p_steps
    double I_step = 1e-3;
    double boundary_shrink = 1e-6;  // first I sample sits this far above 1 - p
};

// Brute-force maximum of fidelity_gap over p in (0, 1], I in (1 - p, 1].
inline FidelityGapMaximum fidelity_gap_grid_search(const GridSearchOptions& opts = {}) {
    detail::require(opts.p_steps >= 1 && opts.I_step > 0.0 && opts.boundary_shrink > 0.0, "invalid grid options");
    FidelityGapMaximum best{-1.0, 0.0, 0.0};
    for (int k = 1; k <= opts.p_steps; ++k) {
        const double p = double(k) / opts.p_steps;
        const double I_lo = 1.0 - p + opts.boundary_shrink;
        const int I_count = static_cast<int>(std::floor((1.0 - I_lo) / opts.I_step)) + 1;
        for (int j = 0; j < I_count; ++j) {
            const double I = std::min(1.0, I_lo + j * opts.I_step);
            const double g = fidelity_gap(p, I);
            if (g > best.gap) best = {g, p, I};
        }
    }
    return best;
}

// Zooms a coarse grid around the running best. The supremum sits on the
// infeasible edge I = 1 - p, so the I window is expressed as an offset
// above that edge and shrinks towards it.
inline FidelityGapMaximum fidelity_gap_refined_search(int levels = 12, int samples = 41) {
    detail::require(levels >= 1 && samples >= 3, "invalid refinement options");
    double p_lo = 0.0, p_hi = 1.0;
    double d_lo = 0.0, d_hi = 1.0;  // I = 1 - p + d, d in (0, p]
    FidelityGapMaximum best{-1.0, 0.0, 0.0};
    double best_d = 0.0;
    for (int level = 0; level < levels; ++level) {
        for (int i = 0; i < samples; ++i) {
            const double p = p_lo + (p_hi - p_lo) * (i + 1) / samples;
            if (p <= 0.0 || p > 1.0) continue;
            for (int j = 0; j < samples; ++j) {
                const double d = d_lo + (d_hi - d_lo) * (j + 1) / samples;
                if (d <= 0.0 || d > p) continue;
                const double I = 1.0 - p + d;
                if (!(I > 1.0 - p) || I > 1.0) continue;
                const double g = fidelity_gap(p, I);
                if (g > best.gap) {
                    best = {g, p, I};
                    best_d = d;
                }
            }
        }
        const double p_half = 2.0 * (p_hi - p_lo) / samples;
        p_lo = std::max(0.0, best.p_star - p_half);
        p_hi = std::min(1.0, best.p_star + p_half);
        d_lo = 0.0;
        d_hi = std::max({best_d, 2.0 * (d_hi - d_lo) / samples, 1e-9});
    }
    return best;
}

// Supremum of fidelity_gap: ((3 - 2 sqrt 2) / 2) reached in the limit
// I -> 1 - p at p = 2 - sqrt 2. Cross-checked against the refined grid
// search; a larger grid value means the analytic maximum is wrong.
inline FidelityGapMaximum max_fidelity_gap() {
    const double sqrt2 = std::sqrt(2.0);
    const FidelityGapMaximum analytic{0.5 * (3.0 - 2.0 * sqrt2), 2.0 - sqrt2, sqrt2 - 1.0};
    const FidelityGapMaximum grid = fidelity_gap_refined_search();
    if (grid.gap > analytic.gap + 1e-12)
        throw InternalConsistencyError("grid search exceeded analytic fidelity-gap maximum");
    if (analytic.gap - grid.gap > 1e-5)
        throw InternalConsistencyError("grid search failed to approach analytic fidelity-gap maximum");
    return analytic;
}

// Continuous (beamsplitter) loss eta on both arms of gamma(r). With
// I = 1 + eta (e^{-2r} - 1) this is (1/I - 1) / 2.
inline double lossy_negativity(double r, double eta) {
    detail::require_squeeze(r);
    detail::require_probability(eta, "eta");
    const double I = 1.0 + eta * std::expm1(-2.0 * r);
    return 0.5 * (1.0 / I - 1.0);
}

}  // namespace mixent
