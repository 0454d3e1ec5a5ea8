// Command-line front end for the GOBM estimation pipeline.
//
// Subcommands: simulate, fit, scan, test, batch, mc, nonparam.
// Exit codes: 0 success, 1 runtime failure, 2 bad arguments,
//             3 quality-control rejection (fit).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gobm/data_io.hpp"
#include "gobm/mc_harness.hpp"
#include "gobm/model.hpp"
#include "gobm/nonparam.hpp"
#include "gobm/simulate.hpp"
#include "gobm/threshold.hpp"
#include "gobm/voltest.hpp"

namespace {

double env_default(const char* name, double fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        return fallback;
    }
}

struct CommonIo {
    std::string input;
    std::string date_column = "Date";
    std::string close_column = "Close";
    bool prefer_adjusted = false;
    double dt = 0.0; // resolved against GOBM_DT at parse time
};

void add_input_options(CLI::App* cmd, CommonIo& io) {
    cmd->add_option("--input,-i", io.input, "input price CSV (Date/Close header)")
        ->required();
    cmd->add_option("--date-column", io.date_column, "date column name");
    cmd->add_option("--close-column", io.close_column, "close column name");
    cmd->add_flag("--adjusted", io.prefer_adjusted, "prefer the 'Adj Close' column");
    cmd->add_option("--dt", io.dt, "observation step in years (default 1/252)");
}

gobm::LogSeries load_series(const CommonIo& io) {
    gobm::CsvConfig cfg;
    cfg.date_column = io.date_column;
    cfg.close_column = io.close_column;
    cfg.prefer_adjusted = io.prefer_adjusted;
    const gobm::PriceSeries prices = gobm::load_prices(io.input, cfg);
    if (prices.dropped_rows > 0)
        std::cerr << "warning: dropped " << prices.dropped_rows
                  << " rows with missing/non-positive prices\n";
    return gobm::to_log_series(prices, io.dt);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << text;
}

template <typename Fn>
void write_csv_file(const std::string& path, Fn&& writer) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    writer(os);
}

std::string sign_pair(double b_minus, double b_plus) {
    const auto sgn = [](double b) { return b > 0.0 ? '+' : (b < 0.0 ? '-' : '0'); };
    return std::string{sgn(b_minus), sgn(b_plus)};
}

// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& out, double sigma_minus, double sigma_plus,
                 double mu_minus, double mu_plus, double m, double s0, double years,
                 std::size_t obs_per_year, std::optional<std::size_t> steps,
                 double dt_opt, std::uint64_t seed, std::size_t substeps) {
    gobm::SimulationSpec spec;
    spec.params = gobm::GobmParams::from_mu(sigma_minus, sigma_plus, mu_minus, mu_plus, m);
    spec.x0 = std::log(s0);
    spec.dt = dt_opt > 0.0 ? dt_opt : 1.0 / static_cast<double>(obs_per_year);
    spec.n = steps ? *steps
                   : static_cast<std::size_t>(std::llround(
                         years * static_cast<double>(obs_per_year)));
    spec.seed = seed;
    const gobm::LogSeries path = gobm::simulate_logpath_refined(spec, substeps);
    if (out.empty())
        gobm::write_path_csv(std::cout, path);
    else
        write_csv_file(out, [&path](std::ostream& os) { gobm::write_path_csv(os, path); });
    return 0;
}

nlohmann::json fit_to_json_obj(const gobm::FitReport& fit) {
    return nlohmann::json::parse(gobm::fit_report_to_json(fit));
}

int cmd_fit(const CommonIo& io, std::optional<double> fixed_threshold, bool run_test,
            double alpha, const gobm::GridConfig& grid, double min_side_fraction,
            const std::string& out, const std::string& scan_csv,
            const std::string& ellipse_csv) {
    const gobm::LogSeries series = load_series(io);

    gobm::FitReport fit;
    nlohmann::json report;
    if (fixed_threshold) {
        fit = gobm::fit_at_threshold(series, *fixed_threshold);
    } else {
        const gobm::ThresholdScan scan = gobm::select_threshold(series, grid);
        fit = scan.best().fit;
        report["reference_loglik"] = scan.reference_loglik;
        if (!scan_csv.empty())
            write_csv_file(scan_csv,
                           [&scan](std::ostream& os) { gobm::write_scan_csv(os, scan); });
    }
    report.update(fit_to_json_obj(fit));

    if (run_test && fit.estimable()) {
        const gobm::EllipseTest test = gobm::test_equal_volatility(fit, alpha);
        report["equal_vol_test"] = nlohmann::json::parse(gobm::ellipse_test_to_json(test));
        if (!ellipse_csv.empty())
            write_csv_file(ellipse_csv, [&test](std::ostream& os) {
                gobm::write_ellipse_csv(os, test);
            });
    }

    const gobm::QcVerdict qc = gobm::qc_filter(fit, min_side_fraction);
    report["qc_accept"] = qc.accept;
    if (!qc.accept) report["qc_reject_reason"] = qc.reason;

    const std::string text = report.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    return qc.accept ? 0 : 3;
}

int cmd_scan(const CommonIo& io, const gobm::GridConfig& grid, const std::string& out,
             const std::string& summary_out) {
    const gobm::LogSeries series = load_series(io);
    const gobm::ThresholdScan scan = gobm::select_threshold(series, grid);
    if (out.empty())
        gobm::write_scan_csv(std::cout, scan);
    else
        write_csv_file(out, [&scan](std::ostream& os) { gobm::write_scan_csv(os, scan); });
    const std::string summary = gobm::scan_summary_json(scan) + "\n";
    if (summary_out.empty())
        std::cerr << summary;
    else
        write_file(summary_out, summary);
    return 0;
}

int cmd_test(const CommonIo& io, std::optional<double> fixed_threshold, double alpha,
             const gobm::GridConfig& grid, const std::string& out,
             const std::string& ellipse_csv) {
    const gobm::LogSeries series = load_series(io);
    const gobm::FitReport fit =
        fixed_threshold ? gobm::fit_at_threshold(series, *fixed_threshold)
                        : gobm::select_threshold(series, grid).best().fit;
    if (!fit.estimable())
        throw std::runtime_error("equal-volatility test unavailable: flagged fit (" +
                                 nlohmann::json(fit.flags.to_strings()).dump() + ")");
    const gobm::EllipseTest test = gobm::test_equal_volatility(fit, alpha);

    nlohmann::json report = fit_to_json_obj(fit);
    report["equal_vol_test"] = nlohmann::json::parse(gobm::ellipse_test_to_json(test));
    if (!ellipse_csv.empty())
        write_csv_file(ellipse_csv,
                       [&test](std::ostream& os) { gobm::write_ellipse_csv(os, test); });
    const std::string text = report.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    return 0;
}

int cmd_batch(const std::string& manifest_path, const CommonIo& io, double alpha,
              const gobm::GridConfig& grid, double min_side_fraction,
              const std::string& out) {
    const auto manifest = gobm::load_manifest(manifest_path);
    std::ostringstream table;
    table.precision(10);
    table << "ticker,m,sigma_minus,sigma_plus,mu_minus,mu_plus,b_minus,b_plus,signs,"
             "reject,excluded\n";
    for (const auto& entry : manifest) {
        table << entry.ticker << ',';
        try {
            CommonIo file_io = io;
            file_io.input = entry.path;
            const gobm::LogSeries series = load_series(file_io);
            const gobm::ThresholdScan scan = gobm::select_threshold(series, grid);
            const gobm::FitReport fit = scan.best().fit;
            const gobm::QcVerdict qc = gobm::qc_filter(fit, min_side_fraction);

            bool reject = false;
            if (fit.estimable()) reject = gobm::test_equal_volatility(fit, alpha).reject;

            const double mu_minus =
                fit.b_minus_hat + fit.var_minus_hat / 2.0;
            const double mu_plus = fit.b_plus_hat + fit.var_plus_hat / 2.0;
            table << fit.m() << ',' << fit.sigma_minus_hat << ',' << fit.sigma_plus_hat
                  << ',' << mu_minus << ',' << mu_plus << ',' << fit.b_minus_hat << ','
                  << fit.b_plus_hat << ',' << sign_pair(fit.b_minus_hat, fit.b_plus_hat)
                  << ',' << (reject ? 1 : 0) << ','
                  << (qc.accept ? "" : qc.reason) << '\n';
        } catch (const std::exception& e) {
            std::string reason = e.what();
            for (char& c : reason)
                if (c == ',' || c == '\n') c = ';';
            table << ",,,,,,,," << ',' << ',' << reason << '\n';
        }
    }
    if (out.empty())
        std::cout << table.str();
    else
        write_file(out, table.str());
    return 0;
}

int cmd_mc(int set, double sigma_minus, double sigma_plus, double mu_minus,
           double mu_plus, double m, std::size_t n_paths, double years,
           std::size_t obs_per_year, double alpha, std::uint64_t seed,
           std::optional<double> fixed_threshold, std::size_t substeps, unsigned threads,
           const gobm::GridConfig& grid, const std::string& out,
           const std::string& paths_csv, const std::string& density_prefix) {
    gobm::ExperimentSpec spec;
    spec.params = set > 0 ? gobm::study_set_params(set)
                          : gobm::GobmParams::from_mu(sigma_minus, sigma_plus, mu_minus,
                                                      mu_plus, m);
    spec.n_paths = n_paths;
    spec.years = years;
    spec.observations_per_year = obs_per_year;
    spec.alpha = alpha;
    spec.seed = seed;
    spec.grid = grid;
    spec.sim_substeps = substeps;
    spec.n_threads = threads;
    if (fixed_threshold) {
        spec.search_threshold = false;
        spec.fixed_r = *fixed_threshold;
    }

    const gobm::ExperimentSummary summary = gobm::run_experiment(spec);
    const std::string text = gobm::summary_to_json(summary) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);

    if (!paths_csv.empty())
        write_csv_file(paths_csv, [&summary](std::ostream& os) {
            gobm::write_paths_csv(os, summary);
        });

    if (!density_prefix.empty()) {
        try {
            const gobm::DensityExport dens = gobm::export_densities(summary);
            write_csv_file(density_prefix + "_sigma_minus.csv", [&](std::ostream& os) {
                gobm::write_density_csv(os, dens.sigma_minus);
            });
            write_csv_file(density_prefix + "_sigma_plus.csv", [&](std::ostream& os) {
                gobm::write_density_csv(os, dens.sigma_plus);
            });
            write_csv_file(density_prefix + "_m.csv", [&](std::ostream& os) {
                gobm::write_density_csv(os, dens.m_hat);
            });
        } catch (const std::exception& e) {
            std::cerr << "density export refused: " << e.what() << "\n";
        }
    }
    return 0;
}

int cmd_nonparam(const CommonIo& io, double bandwidth, std::size_t grid_points,
                 const std::string& out) {
    const gobm::LogSeries series = load_series(io);
    const double h =
        bandwidth > 0.0 ? bandwidth : gobm::normal_reference_bandwidth(series.values);
    const gobm::CurveEstimate curve =
        gobm::nw_estimate(series, h, gobm::default_curve_grid(series, grid_points));
    if (out.empty())
        gobm::write_curve_csv(std::cout, curve);
    else
        write_csv_file(out,
                       [&curve](std::ostream& os) { gobm::write_curve_csv(os, curve); });
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-regime (threshold) volatility and drift estimation for the "
                 "geometric oscillating Brownian motion"};
    app.require_subcommand(1);

    const double default_dt = env_default("GOBM_DT", 1.0 / 252.0);
    const double default_alpha = env_default("GOBM_ALPHA", 0.05);

    // --- simulate ---
    auto* sim = app.add_subcommand("simulate", "generate a path by the Euler scheme");
    double sim_sm = 0.8, sim_sp = 0.3, sim_mum = 0.0, sim_mup = 0.0, sim_m = 1.0,
           sim_s0 = 1.0, sim_years = 5.0, sim_dt = 0.0;
    std::size_t sim_opy = 252, sim_substeps = 1;
    std::optional<std::size_t> sim_steps;
    std::uint64_t sim_seed = 0;
    std::string sim_out;
    sim->add_option("--sigma-minus", sim_sm, "volatility below the threshold (/sqrt yr)");
    sim->add_option("--sigma-plus", sim_sp, "volatility above the threshold (/sqrt yr)");
    sim->add_option("--mu-minus", sim_mum, "appreciation rate below (/yr)");
    sim->add_option("--mu-plus", sim_mup, "appreciation rate above (/yr)");
    sim->add_option("--m", sim_m, "price threshold");
    sim->add_option("--s0", sim_s0, "initial price");
    sim->add_option("--years", sim_years, "horizon in years");
    sim->add_option("--observations-per-year", sim_opy, "observations per year");
    sim->add_option("--steps", sim_steps, "explicit number of steps (overrides years)");
    sim->add_option("--dt", sim_dt, "step in years (overrides observations-per-year)");
    sim->add_option("--seed", sim_seed, "reproducibility seed");
    sim->add_option("--substeps", sim_substeps, "Euler substeps per observation");
    sim->add_option("--out,-o", sim_out, "output CSV (stdout when omitted)");

    // --- shared fit/scan/test options ---
    CommonIo io_fit, io_scan, io_test, io_np, io_batch;
    gobm::GridConfig grid_fit, grid_scan, grid_test, grid_batch, grid_mc;
    double alpha_fit = default_alpha, alpha_test = default_alpha,
           alpha_batch = default_alpha, alpha_mc = default_alpha;
    double minside_fit = 0.05, minside_batch = 0.05;

    auto* fit = app.add_subcommand("fit", "threshold scan, estimation and test");
    add_input_options(fit, io_fit);
    std::optional<double> fit_threshold;
    bool fit_no_test = false;
    std::string fit_out, fit_scan_csv, fit_ellipse_csv;
    fit->add_option("--threshold", fit_threshold, "fixed log-price threshold (skips the scan)");
    fit->add_flag("--no-test", fit_no_test, "skip the equal-volatility test");
    fit->add_option("--alpha", alpha_fit, "test confidence parameter");
    fit->add_option("--grid-k", grid_fit.k, "candidate grid size");
    fit->add_option("--min-side-fraction", grid_fit.min_side_fraction,
                    "quantile floor per side");
    fit->add_option("--qc-min-side-fraction", minside_fit, "qc exclusion threshold");
    fit->add_option("--out,-o", fit_out, "report JSON (stdout when omitted)");
    fit->add_option("--scan-csv", fit_scan_csv, "also write the candidate scan CSV");
    fit->add_option("--ellipse-csv", fit_ellipse_csv, "also write the ellipse boundary CSV");

    auto* scan = app.add_subcommand("scan", "threshold scan export");
    add_input_options(scan, io_scan);
    std::string scan_out, scan_summary;
    scan->add_option("--grid-k", grid_scan.k, "candidate grid size");
    scan->add_option("--min-side-fraction", grid_scan.min_side_fraction,
                     "quantile floor per side");
    scan->add_option("--out,-o", scan_out, "scan CSV (stdout when omitted)");
    scan->add_option("--summary", scan_summary, "summary JSON path (stderr when omitted)");

    auto* test = app.add_subcommand("test", "equal-volatility hypothesis test");
    add_input_options(test, io_test);
    std::optional<double> test_threshold;
    std::string test_out, test_ellipse;
    test->add_option("--threshold", test_threshold, "fixed log-price threshold");
    test->add_option("--alpha", alpha_test, "test confidence parameter");
    test->add_option("--grid-k", grid_test.k, "candidate grid size");
    test->add_option("--min-side-fraction", grid_test.min_side_fraction,
                     "quantile floor per side");
    test->add_option("--out,-o", test_out, "report JSON (stdout when omitted)");
    test->add_option("--ellipse-csv", test_ellipse, "ellipse boundary CSV");

    auto* batch = app.add_subcommand("batch", "per-ticker table over a manifest");
    std::string batch_manifest, batch_out;
    batch->add_option("--manifest", batch_manifest, "CSV of ticker,path rows")->required();
    batch->add_option("--date-column", io_batch.date_column, "date column name");
    batch->add_option("--close-column", io_batch.close_column, "close column name");
    batch->add_flag("--adjusted", io_batch.prefer_adjusted, "prefer the 'Adj Close' column");
    batch->add_option("--dt", io_batch.dt, "observation step in years");
    batch->add_option("--alpha", alpha_batch, "test confidence parameter");
    batch->add_option("--grid-k", grid_batch.k, "candidate grid size");
    batch->add_option("--min-side-fraction", grid_batch.min_side_fraction,
                      "quantile floor per side");
    batch->add_option("--qc-min-side-fraction", minside_batch, "qc exclusion threshold");
    batch->add_option("--out,-o", batch_out, "table CSV (stdout when omitted)");

    auto* mc = app.add_subcommand("mc", "Monte Carlo simulation study");
    int mc_set = 0;
    double mc_sm = 0.3, mc_sp = 0.3, mc_mum = 0.0, mc_mup = 0.0, mc_m = 1.0,
           mc_years = 5.0;
    std::size_t mc_paths = 1000, mc_opy = 252, mc_substeps = 20;
    std::uint64_t mc_seed = 0;
    unsigned mc_threads = 0;
    std::optional<double> mc_fixed;
    std::string mc_out, mc_paths_csv, mc_density_prefix;
    mc->add_option("--set", mc_set, "parameter set 1, 2 or 3 (0: custom sigmas)");
    mc->add_option("--sigma-minus", mc_sm, "custom volatility below");
    mc->add_option("--sigma-plus", mc_sp, "custom volatility above");
    mc->add_option("--mu-minus", mc_mum, "custom appreciation rate below");
    mc->add_option("--mu-plus", mc_mup, "custom appreciation rate above");
    mc->add_option("--m", mc_m, "custom price threshold");
    mc->add_option("--paths", mc_paths, "number of Monte Carlo paths");
    mc->add_option("--years", mc_years, "horizon per path");
    mc->add_option("--observations-per-year", mc_opy, "observations per year");
    mc->add_option("--alpha", alpha_mc, "test confidence parameter");
    mc->add_option("--seed", mc_seed, "experiment seed");
    mc->add_option("--fixed-threshold", mc_fixed, "fit at this log threshold (no search)");
    mc->add_option("--substeps", mc_substeps, "Euler substeps per observation");
    mc->add_option("--threads", mc_threads, "worker threads (0: hardware)");
    mc->add_option("--grid-k", grid_mc.k, "candidate grid size");
    mc->add_option("--min-side-fraction", grid_mc.min_side_fraction,
                   "quantile floor per side");
    mc->add_option("--out,-o", mc_out, "summary JSON (stdout when omitted)");
    mc->add_option("--paths-csv", mc_paths_csv, "per-path CSV");
    mc->add_option("--density-prefix", mc_density_prefix,
                   "write <prefix>_{sigma_minus,sigma_plus,m}.csv density tables");

    auto* np = app.add_subcommand("nonparam", "Nadaraya-Watson curve estimates");
    add_input_options(np, io_np);
    double np_bandwidth = 0.0;
    std::size_t np_points = 101;
    std::string np_out;
    np->add_option("--bandwidth", np_bandwidth, "kernel bandwidth (default: normal rule)");
    np->add_option("--grid-points", np_points, "number of evaluation points");
    np->add_option("--out,-o", np_out, "curve CSV (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (CommonIo* io : {&io_fit, &io_scan, &io_test, &io_np, &io_batch})
        if (!(io->dt > 0.0)) io->dt = default_dt;

    try {
        if (sim->parsed())
            return cmd_simulate(sim_out, sim_sm, sim_sp, sim_mum, sim_mup, sim_m, sim_s0,
                                sim_years, sim_opy, sim_steps, sim_dt, sim_seed,
                                sim_substeps);
        if (fit->parsed())
            return cmd_fit(io_fit, fit_threshold, !fit_no_test, alpha_fit, grid_fit,
                           minside_fit, fit_out, fit_scan_csv, fit_ellipse_csv);
        if (scan->parsed()) return cmd_scan(io_scan, grid_scan, scan_out, scan_summary);
        if (test->parsed())
            return cmd_test(io_test, test_threshold, alpha_test, grid_test, test_out,
                            test_ellipse);
        if (batch->parsed())
            return cmd_batch(batch_manifest, io_batch, alpha_batch, grid_batch,
                             minside_batch, batch_out);
        if (mc->parsed())
            return cmd_mc(mc_set, mc_sm, mc_sp, mc_mum, mc_mup, mc_m, mc_paths, mc_years,
                          mc_opy, alpha_mc, mc_seed, mc_fixed, mc_substeps, mc_threads,
                          grid_mc, mc_out, mc_paths_csv, mc_density_prefix);
        if (np->parsed()) return cmd_nonparam(io_np, np_bandwidth, np_points, np_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
