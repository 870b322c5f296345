#pragma once

// Reverse-reconciliation key-rate difference for coherent-state CV-QKD
// under an entangling-cloner attack, and the mixed-state variant of the
// attack where Eve camouflages a squeezed/vacuum mixture as thermal noise.
// Rates are in bits per channel use.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixent/errors.hpp"

namespace mixent {

struct QkdParams {
    double A;    // Alice's modulation variance, shot-noise units
    double eta;  // channel transmission
    double N;    // thermal variance entering the loss mode
    double N_p;  // variance of the squeezed component of Eve's mixture

    // A > 1, N >= 1, N_p > N, 0 < eta < 1.
    void validate() const {
        detail::require(std::isfinite(A) && A > 1.0, "A must be > 1, got " + std::to_string(A));
        detail::require(std::isfinite(eta) && eta > 0.0 && eta < 1.0, "eta must lie in (0, 1), got " + std::to_string(eta));
        detail::require(std::isfinite(N) && N >= 1.0, "N must be >= 1, got " + std::to_string(N));
        detail::require(std::isfinite(N_p), "N_p must be finite");
        if (!(N_p > N))
            throw InfeasibleParameters("camouflage needs N_p > N, got N = " + std::to_string(N) +
                                       ", N_p = " + std::to_string(N_p));
    }
};

struct RateBreakdown {
    double delta_gaussian;  // Delta I(A, eta, N)
    double delta_mix;
    double delta_vacuum;    // Delta I(A, eta, 1)
    double delta_squeezed;  // Delta I(A, eta, N_p)
    double weight;          // (N - 1) / (N_p - 1)
};

inline double delta_I(double A, double eta, double N) {
    detail::require(std::isfinite(A) && A >= 1.0, "A must be >= 1, got " + std::to_string(A));
    detail::require(std::isfinite(eta) && eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1], got " + std::to_string(eta));
    detail::require(std::isfinite(N) && N >= 1.0, "N must be >= 1, got " + std::to_string(N));
    const double noise = (1.0 - eta) * N;
    const double conditional = eta / A + noise;
    const double total = eta + noise;
    const double ratio = 1.0 / (conditional * total);
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw NumericalFailure("non-positive argument to log2 in delta_I");
    return 0.5 * std::log2(ratio);
}

// Weight p in N = p N_p + (1 - p) that matches the expected thermal variance.
inline double camouflage_probability(double N, double N_p) {
    detail::require(std::isfinite(N) && N >= 1.0, "N must be >= 1, got " + std::to_string(N));
    detail::require(std::isfinite(N_p), "N_p must be finite");
    if (!(N_p > N) || N_p == 1.0)
        throw InfeasibleParameters("camouflage needs N_p > N, got N = " + std::to_string(N) + ", N_p = " +
                                   std::to_string(N_p));
    return (N - 1.0) / (N_p - 1.0);
}

inline RateBreakdown delta_I_mix(double A, double eta, double N, double N_p) {
    QkdParams{A, eta, N, N_p}.validate();
    RateBreakdown out{};
    out.weight = camouflage_probability(N, N_p);
    out.delta_gaussian = delta_I(A, eta, N);
    out.delta_vacuum = delta_I(A, eta, 1.0);
    out.delta_squeezed = delta_I(A, eta, N_p);
    out.delta_mix = out.weight * out.delta_squeezed + (1.0 - out.weight) * out.delta_vacuum;
    return out;
}

// Positive would mean the mixed attack lowers the key rate below the
// Gaussian attack with the same second moments.
inline double advantage(double A, double eta, double N, double N_p) {
    const RateBreakdown b = delta_I_mix(A, eta, N, N_p);
    return b.delta_gaussian - b.delta_mix;
}

struct GridAxis {
    double lo;
    double hi;
    int steps;
    bool log_spaced = false;

    std::vector<double> values() const {
        detail::require(steps >= 1, "grid axis needs at least one step");
        detail::require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, "grid axis needs finite lo <= hi");
        if (log_spaced) detail::require(lo > 0.0, "log-spaced axis needs lo > 0");
        std::vector<double> v(static_cast<std::size_t>(steps));
        if (steps == 1) {
            v[0] = lo;
            return v;
        }
        for (int k = 0; k < steps; ++k) {
            const double t = double(k) / (steps - 1);
            v[k] = log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
        }
        v.front() = lo;
        v.back() = hi;
        return v;
    }
};

// N_p axis. Without an explicit lower bound it is laid out over (N, hi] for
// each N: N_p_k = N + (hi - N) k / steps, k = 1..steps. With one, it is a
// fixed linear axis [lo, hi] and cells with N_p <= N are skipped.
struct NpAxis {
    std::optional<double> lo;
    double hi;
    int steps;

    std::vector<double> values_for(double N) const {
        detail::require(steps >= 1, "N_p axis needs at least one step");
        detail::require(std::isfinite(hi), "N_p axis needs finite hi");
        if (lo) return GridAxis{*lo, hi, steps}.values();
        std::vector<double> v;
        if (!(hi > N)) return v;
        v.reserve(static_cast<std::size_t>(steps));
        for (int k = 1; k <= steps; ++k) v.push_back(k == steps ? hi : N + (hi - N) * double(k) / steps);
        return v;
    }
};

struct QkdGrid {
    GridAxis A{1.1, 100.0, 20, true};
    GridAxis eta{0.02, 0.98, 25};
    GridAxis N{1.01, 10.0, 20};
    NpAxis N_p{std::nullopt, 20.0, 20};
};

struct SearchResult {
    double max_advantage;
    QkdParams argmax;
    std::uint64_t feasible_cells;
    std::uint64_t skipped_cells;
};

// Exhaustive scan, A outermost and N_p innermost. Ties keep the first cell
// in that order, so the result is reproducible bit for bit.
inline SearchResult advantage_search(const QkdGrid& grid = {}) {
    const auto a_values = grid.A.values();
    const auto eta_values = grid.eta.values();
    const auto n_values = grid.N.values();

    std::optional<SearchResult> best;
    std::uint64_t feasible = 0, skipped = 0;
    for (double A : a_values) {
        for (double eta : eta_values) {
            for (double N : n_values) {
                const auto np_values = grid.N_p.values_for(N);
                skipped += static_cast<std::uint64_t>(grid.N_p.steps) - np_values.size();
                for (double N_p : np_values) {
                    if (!(N_p > N)) {
                        ++skipped;
                        continue;
                    }
                    const QkdParams cell{A, eta, N, N_p};
                    cell.validate();
                    const double adv = advantage(A, eta, N, N_p);
                    ++feasible;
                    if (!best || adv > best->max_advantage) best = SearchResult{adv, cell, 0, 0};
                }
            }
        }
    }
    if (!best) throw EmptySearchError("QKD search grid has no feasible cells (every N_p <= N)");
    best->feasible_cells = feasible;
    best->skipped_cells = skipped;
    return *best;
}

}  // namespace mixent
