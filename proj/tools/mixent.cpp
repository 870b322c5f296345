// mixent: CSV sweeps and searches over mixed non-Gaussian CV entangled states.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure,
// 3 a checked property failed (e.g. the QKD search found an advantage).

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "mixent/commands.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kClaimViolated = 3 };

void emit(const std::string& text, const std::string& out_path) {
    if (out_path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw mixent::InvalidParameter("cannot open output file " + out_path);
    f << text;
    f.close();
    if (!f) throw mixent::InvalidParameter("failed writing output file " + out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement, teleportation and CV-QKD sweeps for TMSV/vacuum mixtures"};
    app.require_subcommand(1);

    std::string out = "-";
    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out, "output path, '-' for stdout")->capture_default_str(); };

    std::function<int()> action;

    // figure
    auto* figure = app.add_subcommand("figure", "CSV data for the comparison figures");
    figure->require_subcommand(1);

    mixent::NegativityFigureOptions neg_opt;
    auto* fig_neg = figure->add_subcommand("negativity", "mixed vs equivalent-pure negativity over I");
    fig_neg->add_option("--p", neg_opt.p, "mixture probability in (0, 1)")->capture_default_str();
    fig_neg->add_option("--steps", neg_opt.steps, "number of I samples")->capture_default_str()->check(CLI::PositiveNumber);
    add_out(fig_neg);
    fig_neg->callback([&] { action = [&] { emit(mixent::figure_negativity(neg_opt).to_csv(), out); return int(kOk); }; });

    mixent::FidelityFigureOptions fid_opt;
    std::string sweep = "r";
    auto* fig_fid = figure->add_subcommand("fidelity", "teleportation fidelity of mixed vs equivalent-pure resource");
    fig_fid->add_option("--p", fid_opt.p, "mixture probability in (0, 1), squeeze sweep only")->capture_default_str();
    fig_fid->add_option("--r-max", fid_opt.r_max, "largest r (squeeze sweep) or fixed r (p sweep)")->capture_default_str();
    fig_fid->add_option("--steps", fid_opt.steps, "number of samples")->capture_default_str()->check(CLI::PositiveNumber);
    fig_fid->add_option("--sweep", sweep, "abscissa: r or p")->capture_default_str()->check(CLI::IsMember({"r", "p"}));
    add_out(fig_fid);
    fig_fid->callback([&] {
        action = [&] {
            fid_opt.sweep = sweep == "p" ? mixent::FidelitySweep::probability : mixent::FidelitySweep::squeeze;
            emit(mixent::figure_fidelity(fid_opt).to_csv(), out);
            return int(kOk);
        };
    });

    mixent::QkdFigureOptions qkd_opt;
    auto* fig_qkd = figure->add_subcommand("qkd", "key-rate differences vs channel transmission");
    fig_qkd->add_option("--a", qkd_opt.A, "modulation variance A")->capture_default_str();
    fig_qkd->add_option("--n", qkd_opt.N, "thermal variance N")->capture_default_str();
    fig_qkd->add_option("--np", qkd_opt.N_p, "squeezed-component variance N_p")->capture_default_str();
    fig_qkd->add_option("--steps", qkd_opt.steps, "number of eta samples")->capture_default_str()->check(CLI::PositiveNumber);
    add_out(fig_qkd);
    fig_qkd->callback([&] { action = [&] { emit(mixent::figure_qkd(qkd_opt).to_csv(), out); return int(kOk); }; });

    // search
    auto* search = app.add_subcommand("search", "exhaustive parameter searches");
    search->require_subcommand(1);
    mixent::QkdGrid grid;
    bool a_linear = false;
    std::optional<double> np_min;
    auto* search_qkd = search->add_subcommand("qkd", "maximize Delta I - Delta I_mix over a 4-D grid");
    search_qkd->add_option("--a-min", grid.A.lo)->capture_default_str();
    search_qkd->add_option("--a-max", grid.A.hi)->capture_default_str();
    search_qkd->add_option("--a-steps", grid.A.steps)->capture_default_str();
    search_qkd->add_flag("--a-linear", a_linear, "linear instead of log spacing in A");
    search_qkd->add_option("--eta-min", grid.eta.lo)->capture_default_str();
    search_qkd->add_option("--eta-max", grid.eta.hi)->capture_default_str();
    search_qkd->add_option("--eta-steps", grid.eta.steps)->capture_default_str();
    search_qkd->add_option("--n-min", grid.N.lo)->capture_default_str();
    search_qkd->add_option("--n-max", grid.N.hi)->capture_default_str();
    search_qkd->add_option("--n-steps", grid.N.steps)->capture_default_str();
    search_qkd->add_option("--np-min", np_min, "fixed N_p lower bound (default: just above each N)");
    search_qkd->add_option("--np-max", grid.N_p.hi)->capture_default_str();
    search_qkd->add_option("--np-steps", grid.N_p.steps)->capture_default_str();
    add_out(search_qkd);
    search_qkd->callback([&] {
        action = [&] {
            grid.A.log_spaced = !a_linear;
            grid.N_p.lo = np_min;
            const auto report = mixent::search_qkd(grid);
            emit(report.table.to_csv(), out);
            if (!report.claim_holds()) {
                std::cerr << "positive advantage " << mixent::format_number(report.result.max_advantage)
                          << " found for the mixed attack\n";
                return int(kClaimViolated);
            }
            return int(kOk);
        };
    });

    // compare
    auto* compare = app.add_subcommand("compare", "state comparisons");
    compare->require_subcommand(1);
    mixent::LossCompareOptions loss_opt;
    auto* cmp_loss = compare->add_subcommand("loss", "continuous loss vs random blocking at equal transmission");
    cmp_loss->add_option("--r", loss_opt.r, "initial squeeze parameter")->capture_default_str();
    cmp_loss->add_option("--steps", loss_opt.steps, "number of eta samples")->capture_default_str()->check(CLI::PositiveNumber);
    add_out(cmp_loss);
    cmp_loss->callback([&] { action = [&] { emit(mixent::compare_loss(loss_opt).to_csv(), out); return int(kOk); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        return action ? action() : int(kUsage);
    } catch (const mixent::ClaimViolation& e) {
        std::cerr << "claim violated: " << e.what() << '\n';
        return kClaimViolated;
    } catch (const mixent::EmptySearchError& e) {
        std::cerr << "empty search: " << e.what() << '\n';
        return kUsage;
    } catch (const mixent::InvalidParameter& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return kUsage;
    } catch (const mixent::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
}
