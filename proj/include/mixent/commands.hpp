#pragma once

// Sweep drivers behind the command-line tool. Each returns a finished
// table; sign properties of the emitted comparison columns are re-checked
// here and a violation raises ClaimViolation.

#include <algorithm>
#include <cmath>
#include <string>

#include "mixent/errors.hpp"
#include "mixent/gaussian_core.hpp"
#include "mixent/measures.hpp"
#include "mixent/qkd.hpp"
#include "mixent/sweep.hpp"

namespace mixent {

class ClaimViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void check_claim(bool holds, const std::string& what, double at) {
    if (!holds) throw ClaimViolation(what + " violated at " + format_number(at));
}

inline void require_open_probability(double p) {
    require(std::isfinite(p) && p > 0.0 && p < 1.0, "p must lie in (0, 1), got " + std::to_string(p));
}

}  // namespace detail

struct NegativityFigureOptions {
    double p = 0.5;
    int steps = 101;
};

inline SweepTable figure_negativity(const NegativityFigureOptions& opt = {}) {
    detail::require_open_probability(opt.p);
    SweepTable table("mixent figure negativity", {"I", "mixed_negativity", "pure_negativity", "gap"});
    table.add_parameter("p", opt.p);
    table.add_parameter("steps", std::to_string(opt.steps));
    table.add_note("I sampled on (1-p, 1]; the pole at 1-p is replaced by 1-p+" + format_number(kOpenEndpointShrink));
    for (double I : sweep_points(1.0 - opt.p, 1.0, opt.steps, true, false)) {
        const ComparisonPoint c = negativity_vs_I(opt.p, I);
        detail::check_claim(c.gap >= 0.0, "negativity gap >= 0", I);
        table.add_row({I, c.mixed, c.pure, c.gap});
    }
    return table;
}

enum class FidelitySweep { squeeze, probability };

struct FidelityFigureOptions {
    double p = 0.5;
    int steps = 61;
    double r_max = 3.0;
    FidelitySweep sweep = FidelitySweep::squeeze;
};

// squeeze mode: rows (r, I, mixed, pure, gap) for r in [0, r_max] at fixed p.
// probability mode: rows (p, I, mixed, pure, gap) for p in (0, 1) at r = r_max.
inline SweepTable figure_fidelity(const FidelityFigureOptions& opt = {}) {
    detail::require(std::isfinite(opt.r_max) && opt.r_max > 0.0, "r-max must be > 0");
    const bool by_r = opt.sweep == FidelitySweep::squeeze;
    if (by_r) detail::require_open_probability(opt.p);

    SweepTable table("mixent figure fidelity",
                     {by_r ? "r" : "p", "I", "mixed_fidelity", "pure_equivalent_fidelity", "gap"});
    table.add_parameter("sweep", by_r ? "r" : "p");
    if (by_r) table.add_parameter("p", opt.p);
    table.add_parameter("r_max", opt.r_max);
    table.add_parameter("steps", std::to_string(opt.steps));
    if (!by_r)
        table.add_note("p sampled on (0, 1); endpoints moved inward by " + format_number(kOpenEndpointShrink));

    auto emit = [&](double abscissa, double p, double r) {
        const double I = inseparability_mixture(p, r);
        const double mixed = fidelity_mixture(p, r);
        const double pure = fidelity_pure(matched_squeeze(I));
        // Closed-form gap where I is representably above the pole; at extreme
        // squeezing I rounds onto 1 - p and only the difference is available.
        double gap = mixed - pure;
        if (I > 1.0 - p) {
            const double closed = fidelity_gap(p, I);
            if (std::abs(closed - gap) > 1e-12)
                throw InternalConsistencyError("fidelity gap routes disagree at " + format_number(abscissa));
            gap = closed;
        }
        detail::check_claim(gap >= 0.0, "fidelity gap >= 0", abscissa);
        table.add_row({abscissa, I, mixed, pure, gap});
    };

    if (by_r) {
        for (double r : sweep_points(0.0, opt.r_max, opt.steps, false, false)) emit(r, opt.p, r);
    } else {
        for (double p : sweep_points(0.0, 1.0, opt.steps, true, true)) emit(p, p, opt.r_max);
    }
    return table;
}

struct QkdFigureOptions {
    double A = 10.0;
    double N = 2.0;
    double N_p = 5.0;
    int steps = 99;
};

inline SweepTable figure_qkd(const QkdFigureOptions& opt = {}) {
    QkdParams{opt.A, 0.5, opt.N, opt.N_p}.validate();
    SweepTable table("mixent figure qkd", {"eta", "delta_gaussian", "delta_mix", "delta_vacuum", "delta_squeezed"});
    table.add_parameter("A", opt.A);
    table.add_parameter("N", opt.N);
    table.add_parameter("N_p", opt.N_p);
    table.add_parameter("steps", std::to_string(opt.steps));
    table.add_note("default A, N, N_p are illustrative choices, not measured values");
    table.add_note("eta sampled on (0, 1); endpoints moved inward by " + format_number(kOpenEndpointShrink));
    for (double eta : sweep_points(0.0, 1.0, opt.steps, true, true)) {
        const RateBreakdown b = delta_I_mix(opt.A, eta, opt.N, opt.N_p);
        detail::check_claim(b.delta_mix >= b.delta_gaussian, "delta_mix >= delta_gaussian", eta);
        detail::check_claim(b.delta_vacuum >= b.delta_mix && b.delta_mix >= b.delta_squeezed,
                            "delta_vacuum >= delta_mix >= delta_squeezed", eta);
        table.add_row({eta, b.delta_gaussian, b.delta_mix, b.delta_vacuum, b.delta_squeezed});
    }
    return table;
}

inline constexpr double kAdvantageThreshold = 1e-12;

struct QkdSearchReport {
    SearchResult result;
    SweepTable table;

    bool claim_holds() const noexcept { return result.max_advantage <= kAdvantageThreshold; }
};

inline std::string describe_axis(const GridAxis& a) {
    return "[" + format_number(a.lo) + ", " + format_number(a.hi) + "] x " + std::to_string(a.steps) +
           (a.log_spaced ? " log" : " linear");
}

inline QkdSearchReport search_qkd(const QkdGrid& grid = {}) {
    const SearchResult result = advantage_search(grid);
    SweepTable table("mixent search qkd",
                     {"max_advantage", "A", "eta", "N", "N_p", "feasible_cells", "skipped_cells"});
    table.add_parameter("A", describe_axis(grid.A));
    table.add_parameter("eta", describe_axis(grid.eta));
    table.add_parameter("N", describe_axis(grid.N));
    table.add_parameter("N_p", grid.N_p.lo ? describe_axis(GridAxis{*grid.N_p.lo, grid.N_p.hi, grid.N_p.steps})
                                           : "(N, " + format_number(grid.N_p.hi) + "] x " +
                                                 std::to_string(grid.N_p.steps) + " linear");
    table.add_parameter("threshold", kAdvantageThreshold);
    table.add_row({result.max_advantage, result.argmax.A, result.argmax.eta, result.argmax.N, result.argmax.N_p,
                   double(result.feasible_cells), double(result.skipped_cells)});
    return {result, std::move(table)};
}

struct LossCompareOptions {
    double r = 0.5;
    int steps = 101;
};

// Continuous loss eta on both arms (Greg) against random blocking with
// transmission probability p = eta (Nancy).
inline SweepTable compare_loss(const LossCompareOptions& opt = {}) {
    detail::require(std::isfinite(opt.r) && opt.r > 0.0, "r must be > 0");
    SweepTable table("mixent compare loss",
                     {"eta", "duan_common", "greg_negativity", "nancy_negativity", "cm_max_abs_diff"});
    table.add_parameter("r", opt.r);
    table.add_parameter("steps", std::to_string(opt.steps));
    table.add_note("eta sampled on (0, 1); endpoints moved inward by " + format_number(kOpenEndpointShrink));

    const CovarianceState pure = tmsv_covariance(opt.r);
    for (double eta : sweep_points(0.0, 1.0, opt.steps, true, true)) {
        const CovarianceState greg = apply_continuous_loss(pure, eta);
        const CovarianceState nancy = mixture_covariance(MixtureSpec::vacuum_mixture(eta, opt.r));
        const double cm_diff = (greg.matrix() - nancy.matrix()).cwiseAbs().maxCoeff();
        const double duan_greg = duan_inseparability(greg);
        const double duan_nancy = duan_inseparability(nancy);
        const double greg_neg = gaussian_negativity_from_cm(greg);
        const double nancy_neg = mixture_negativity(eta, opt.r);

        detail::check_claim(cm_diff < 1e-12, "covariance equivalence", eta);
        detail::check_claim(std::abs(duan_greg - duan_nancy) < 1e-12, "equal inseparability", eta);
        if (std::abs(greg_neg - lossy_negativity(opt.r, eta)) > 1e-9)
            throw InternalConsistencyError("symplectic and closed-form lossy negativity disagree at eta = " +
                                           format_number(eta));
        detail::check_claim(nancy_neg > greg_neg, "discrete loss keeps more negativity", eta);
        table.add_row({eta, duan_greg, greg_neg, nancy_neg, cm_diff});
    }
    return table;
}

}  // namespace mixent
