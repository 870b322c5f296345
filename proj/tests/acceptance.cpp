// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mixent/commands.hpp"
#include "mixent/fock_oracle.hpp"
#include "mixent/gaussian_core.hpp"
#include "mixent/measures.hpp"
#include "mixent/qkd.hpp"

using namespace mixent;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Worst disagreement between the two negativity readings over every Fock
// state evaluated in this run.
double g_worst_reading_gap = 0.0;
int g_reading_count = 0;

double checked_negativity(const FockDensityOp& rho) {
    const auto readings = negativity_readings(rho);
    g_worst_reading_gap = std::max(g_worst_reading_gap, std::abs(readings.negative_sum - readings.trace_norm_form));
    ++g_reading_count;
    return negativity_numeric(rho);
}

Outcome oracle_equivalence() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double r : {0.1, 0.25, 0.5, 0.75})
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0})
            worst = std::max(worst, std::abs(checked_negativity(mixture_density(p, r)) - mixture_negativity(p, r)));
    const double dt = seconds_since(t0);
    return {worst < 1e-6 && dt < 60.0, "max |fock - closed| = " + fmt(worst) + " (tol 1e-6), " + fmt(dt) + " s (limit 60)"};
}

Outcome triple_path() {
    double fock_worst = 0.0;
    for (double r : {0.1, 0.25, 0.5, 0.75}) {
        const double closed = pure_negativity(r);
        const double sympl = gaussian_negativity_from_cm(tmsv_covariance(r));
        const double fock = checked_negativity(tmsv_fock_density(r));
        fock_worst = std::max({fock_worst, std::abs(closed - sympl), std::abs(closed - fock), std::abs(sympl - fock)});
    }
    double sympl_worst = 0.0;
    for (int i = 0; i <= 30; ++i) {
        const double r = 0.05 * i;
        sympl_worst = std::max(sympl_worst, std::abs(gaussian_negativity_from_cm(tmsv_covariance(r)) - pure_negativity(r)));
        for (int k = 1; k <= 9; ++k) {
            const double eta = 0.1 * k;
            sympl_worst = std::max(sympl_worst, std::abs(gaussian_negativity_from_cm(apply_continuous_loss(tmsv_covariance(r), eta)) -
                                                         lossy_negativity(r, eta)));
        }
    }
    return {fock_worst < 1e-6 && sympl_worst < 1e-9,
            "pairwise (r<=0.75) " + fmt(fock_worst) + " (tol 1e-6); symplectic vs closed (r<=1.5) " + fmt(sympl_worst) +
                " (tol 1e-9)"};
}

Outcome duan_values() {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double r = 2.0 * i / 49.0;
        worst = std::max(worst, std::abs(duan_inseparability(tmsv_covariance(r)) - std::exp(-2 * r)));
        for (double p : {0.1, 0.35, 0.6, 0.85})
            worst = std::max(worst, std::abs(duan_inseparability(mixture_covariance(MixtureSpec::vacuum_mixture(p, r))) -
                                             inseparability_mixture(p, r)));
    }
    return {worst < 1e-12, "max deviation " + fmt(worst) + " (tol 1e-12)"};
}

Outcome gap_positivity() {
    constexpr int n = 200;
    int non_positive = 0;
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double p = double(i) / (n + 1);
        for (int j = 1; j <= n; ++j) {
            const double I = (1.0 - p) + p * double(j) / (n + 1);
            const auto neg = negativity_vs_I(p, I);
            const auto fid = fidelity_vs_I(p, I);
            if (!(neg.gap > 0.0) || !(fid.gap > 0.0)) ++non_positive;
            worst = std::max({worst, std::abs(neg.gap - negativity_gap(p, I)), std::abs(fid.gap - fidelity_gap(p, I))});
        }
    }
    return {non_positive == 0 && worst < 1e-10,
            std::to_string(non_positive) + " non-positive gaps of " + std::to_string(2 * n * n) +
                "; max |gap - closed form| = " + fmt(worst) + " (tol 1e-10)"};
}

Outcome fidelity_maximum() {
    const auto t0 = Clock::now();
    const auto refined = fidelity_gap_refined_search();
    const auto coarse = fidelity_gap_grid_search();
    const auto analytic = max_fidelity_gap();
    const double dt = seconds_since(t0);
    const double target = 0.5 * (3 - 2 * std::sqrt(2.0));
    const double dg = std::max(std::abs(refined.gap - target), std::abs(coarse.gap - target));
    const double dp = std::abs(refined.p_star - (2 - std::sqrt(2.0)));
    const double dI = std::abs(refined.I_star - (std::sqrt(2.0) - 1));
    const bool ok = dg < 1e-5 && dp < 1e-5 && dI < 1e-5 && std::abs(analytic.gap - target) < 1e-15 && dt < 5.0;
    return {ok, "gap " + fmt(refined.gap) + " (|d| " + fmt(dg) + "), |dp| " + fmt(dp) + ", |dI| " + fmt(dI) +
                    " (tol 1e-5), " + fmt(dt) + " s (limit 5)"};
}

Outcome loss_equivalence() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ur(0.05, 1.5), ue(0.01, 0.99);
    double cm = 0.0, duan = 0.0;
    int violations = 0;
    for (int k = 0; k < 20; ++k) {
        const double r = ur(rng), eta = ue(rng);
        const auto greg = apply_continuous_loss(tmsv_covariance(r), eta);
        const auto nancy = mixture_covariance(MixtureSpec::vacuum_mixture(eta, r));
        cm = std::max(cm, (greg.matrix() - nancy.matrix()).cwiseAbs().maxCoeff());
        duan = std::max(duan, std::abs(duan_inseparability(greg) - duan_inseparability(nancy)));
        if (!(mixture_negativity(eta, r) > gaussian_negativity_from_cm(greg))) ++violations;
    }
    return {cm < 1e-12 && duan < 1e-12 && violations == 0,
            "cm diff " + fmt(cm) + ", duan diff " + fmt(duan) + " (tol 1e-12), " + std::to_string(violations) +
                " negativity-order violations"};
}

Outcome qkd_no_advantage() {
    const auto t0 = Clock::now();
    const auto res = advantage_search();
    const double dt = seconds_since(t0);
    int order_violations = 0;
    const auto fig = figure_qkd();
    for (const auto& row : fig.rows())
        if (!(row[2] >= row[1] && row[3] >= row[2] && row[2] >= row[4])) ++order_violations;
    const bool ok = res.feasible_cells >= 100000 && res.max_advantage <= 1e-12 && dt < 120.0 && order_violations == 0;
    return {ok, std::to_string(res.feasible_cells) + " cells, max advantage " + fmt(res.max_advantage) +
                    " (limit 1e-12), " + fmt(dt) + " s (limit 120); " + std::to_string(order_violations) +
                    " ordering violations over " + std::to_string(fig.rows().size()) + " eta rows"};
}

Outcome internal_consistency() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> up(0.0, 1.0), ur(0.0, 0.75);
    double pt_worst = 0.0;
    bool involution = true;
    for (int k = 0; k < 100; ++k) {
        const auto rho = mixture_density(up(rng), ur(rng));
        const auto pt = partial_transpose_fock(rho);
        pt_worst = std::max(pt_worst, std::abs(pt.trace() - rho.trace()));
        involution = involution && partial_transpose_fock(pt).matrix() == rho.matrix();
        checked_negativity(rho);
    }
    const bool ok = g_worst_reading_gap < 1e-9 && involution && pt_worst < 1e-14;
    return {ok, "readings agree to " + fmt(g_worst_reading_gap) + " over " + std::to_string(g_reading_count) +
                    " states (tol 1e-9); involution " + (involution ? "exact" : "BROKEN") + ", trace drift " + fmt(pt_worst)};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MIXENT_CLI_PATH) + " " + args + " 2>/dev/null >/dev/null";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> lines;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

Outcome cli_determinism() {
    const fs::path dir = fs::temp_directory_path() / "mixent_acceptance";
    fs::create_directories(dir);
    const std::pair<const char*, const char*> figures[] = {{"figure_negativity", "figure negativity"},
                                                           {"figure_fidelity", "figure fidelity"},
                                                           {"figure_qkd", "figure qkd"},
                                                           {"compare_loss", "compare loss"}};
    int mismatches = 0, golden_mismatches = 0;
    for (const auto& [name, args] : figures) {
        const fs::path a = dir / (std::string(name) + "_a.csv"), b = dir / (std::string(name) + "_b.csv");
        if (run_cli(std::string(args) + " --out " + a.string()) != 0 ||
            run_cli(std::string(args) + " --out " + b.string()) != 0) {
            ++mismatches;
            continue;
        }
        const std::string sa = slurp(a);
        if (sa.empty() || sa != slurp(b)) ++mismatches;
        const auto got = data_lines(sa);
        const auto golden = data_lines(slurp(fs::path(MIXENT_GOLDEN_DIR) / (std::string(name) + ".csv")));
        if (golden.size() != 3 || got.size() < 3 || got[0] != golden[0] || got[1] != golden[1] || got.back() != golden[2])
            ++golden_mismatches;
    }
    return {mismatches == 0 && golden_mismatches == 0,
            std::to_string(mismatches) + " non-identical reruns, " + std::to_string(golden_mismatches) +
                " golden mismatches over 4 commands"};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"1 oracle equivalence (negativity)", oracle_equivalence},
        {"2 triple-path agreement", triple_path},
        {"3 Duan values", duan_values},
        {"4 gap positivity", gap_positivity},
        {"5 maximum fidelity advantage", fidelity_maximum},
        {"6 loss equivalence", loss_equivalence},
        {"7 QKD no-advantage", qkd_no_advantage},
        {"8 internal consistency", internal_consistency},
        {"9 CLI determinism and golden rows", cli_determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
