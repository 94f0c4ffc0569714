#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zetalab/experiments.hpp"
#include "zetalab/types.hpp"

namespace {

using zetalab::cli::ExperimentConfig;
using zetalab::cli::Format;
using zetalab::cli::Report;

int parse_tolerances(const std::vector<std::string>& specs, ExperimentConfig& cfg) {
    for (const std::string& s : specs) {
        auto eq = s.find('=');
        try {
            if (eq == std::string::npos) {
                cfg.tolerances["quadrature"] = std::stod(s);
            } else {
                cfg.tolerances[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
            }
        } catch (const std::exception&) {
            std::cerr << "bad --tol entry: " << s << "\n";
            return 4;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical experiments on the zeta integral-equation and exponential-sum "
                 "identities"};
    app.set_config("--config", "", "flat key=value config file");
    app.require_subcommand(1);
    app.fallthrough(true); // global flags may follow the subcommand

    ExperimentConfig cfg;
    std::vector<std::string> tol_specs;
    std::string format = "table";
    double t_single = 0.0;

    app.add_option("--sigma", cfg.sigma, "real part of s");
    app.add_option("--t", t_single, "single t value");
    app.add_option("--t-grid", cfg.t_grid, "comma/space separated t grid")->delimiter(',');
    app.add_option("--d1", cfg.deltas.d1, "window exponent d1");
    app.add_option("--d2", cfg.deltas.d2, "window exponent d2");
    app.add_option("--d3", cfg.deltas.d3, "window exponent d3");
    app.add_option("--d4", cfg.deltas.d4, "window exponent d4");
    app.add_option("--tol", tol_specs, "tolerance overrides, name=value or bare value");
    app.add_option("--threads", cfg.threads, "worker cap (THREADS env as fallback)");
    app.add_option("--format", format, "csv|json|table")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    app.add_option("--out", cfg.out_path, "output path (default stdout)");
    app.add_option("--seed", cfg.seed, "seed for randomized identity grids");

    auto* c_verify = app.add_subcommand("verify-ie", "windowed integral-equation residuals");
    auto* c_appa = app.add_subcommand("appendix-a", "closed form vs PV quadrature table");
    auto* c_appb = app.add_subcommand("appendix-b", "pole/steepest-descent sweep");
    auto* c_ident = app.add_subcommand("identities", "exact double-sum identities");
    auto* c_atk = app.add_subcommand("atkinson", "second moment vs main term");
    auto* c_j3 = app.add_subcommand("j3", "window-3 stationary phase convergence");
    auto* c_j4 = app.add_subcommand("j4", "window-4 kernel transform spot checks");
    auto* c_s7 = app.add_subcommand("section7", "generic phase example sums");
    auto* c_sums = app.add_subcommand("sums", "growth diagnostics for the headline sums");

    CLI11_PARSE(app, argc, argv);

    if (int rc = parse_tolerances(tol_specs, cfg); rc != 0) return rc;
    if (t_single > 0.0) cfg.t_grid = {t_single};
    if (cfg.threads == 0) {
        if (const char* env = std::getenv("THREADS")) cfg.threads = std::atoi(env);
    }
    cfg.format = format == "csv" ? Format::csv : format == "json" ? Format::json : Format::table;

    try {
        Report rep;
        if (c_verify->parsed()) rep = zetalab::cli::run_verify_ie(cfg);
        else if (c_appa->parsed()) rep = zetalab::cli::run_appendix_a(cfg);
        else if (c_appb->parsed()) rep = zetalab::cli::run_appendix_b(cfg);
        else if (c_ident->parsed()) rep = zetalab::cli::run_identities(cfg);
        else if (c_atk->parsed()) rep = zetalab::cli::run_atkinson(cfg);
        else if (c_j3->parsed()) rep = zetalab::cli::run_j3(cfg);
        else if (c_j4->parsed()) rep = zetalab::cli::run_j4(cfg);
        else if (c_s7->parsed()) rep = zetalab::cli::run_section7(cfg);
        else if (c_sums->parsed()) rep = zetalab::cli::run_sums(cfg);
        zetalab::cli::emit_report(rep, cfg);
        return rep.exit_code;
    } catch (const zetalab::quadrature_error& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "config/domain error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
