#include "tsvar/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tsvar/error.hpp"
#include "tsvar/frame.hpp"
#include "tsvar/inference.hpp"
#include "tsvar/irf.hpp"
#include "tsvar/report.hpp"
#include "tsvar/simulate.hpp"
#include "tsvar/stationarity.hpp"
#include "tsvar/var.hpp"

namespace tsvar::cli {

namespace {

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot write '" + path + "'");
    file << text;
    if (!file) throw DataError("failed writing '" + path + "'");
}

SeriesFrame select_columns(const SeriesFrame& frame, const std::vector<std::string>& names) {
    if (names.empty()) return frame;
    std::vector<Column> cols;
    for (const auto& n : names) {
        if (!frame.find(n)) throw DataError("unknown column '" + n + "'");
        cols.push_back(frame.column(n));
    }
    return SeriesFrame(frame.start_date(), names, std::move(cols));
}

std::string single_column(const SeriesFrame& frame, const std::string& requested) {
    if (!requested.empty()) {
        if (!frame.find(requested)) throw DataError("unknown column '" + requested + "'");
        return requested;
    }
    if (frame.cols() != 1) throw std::invalid_argument("--column is required for a frame with several columns");
    return frame.names().front();
}

std::vector<double> dense(const SeriesFrame& frame, const std::string& name) {
    try {
        return frame.dense_column(name);
    } catch (const DataError& e) {
        throw DataError(std::string(e.what()) + " (run `ingest` with an imputation policy first)");
    }
}

std::string dump(const report::json& j) { return j.dump(2) + "\n"; }

struct Options {
    std::string input;
    std::string output;
    bool json = false;

    // ingest
    std::string oura, emood, impute = "forward_fill";
    std::size_t max_gap = 3;
    bool keep_absent_missing = false;

    // column selection
    std::vector<std::string> columns;
    std::string column;

    // stationarity
    std::string regression = "c";
    std::optional<std::size_t> max_lag;
    double alpha = 0.05;
    std::size_t period = 7;
    std::optional<std::size_t> pacf_lags;
    std::string svg;

    // var
    std::size_t max_lags = 15;
    std::optional<std::size_t> lags;

    // granger
    std::string causing;
    std::vector<std::string> caused;

    // irf
    std::size_t horizon = 10;
    double level = 0.95;
    std::size_t replications = 1000;
    std::uint64_t seed = 0;
    bool no_orth = false;
    std::string resampling = "parametric";
    std::size_t threads = 0;

    // simulate
    std::string spec;
    std::size_t t = 0;
};

void cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.oura.empty() && o.emood.empty()) throw std::invalid_argument("ingest needs --oura and/or --emood");
    std::vector<SeriesFrame> frames;
    if (!o.oura.empty()) frames.push_back(ingest_sleep_file(o.oura));
    if (!o.emood.empty()) frames.push_back(ingest_mood_file(o.emood, MoodIngestOptions{!o.keep_absent_missing}));
    const SeriesFrame merged = merge(frames);
    const ImputePolicy policy = parse_impute_policy(o.impute);
    ImputeReport rep;
    const SeriesFrame filled = impute(merged, policy, o.max_gap, &rep);
    err << fmt::format("ingest: {} rows x {} columns from {} to {}; imputation {} (max gap {}): {} cells filled, {} left missing\n",
                       filled.rows(), filled.cols(), format_iso_date(filled.start_date()), format_iso_date(filled.end_date()),
                       to_string(policy), o.max_gap, rep.filled, rep.left_missing);
    std::ostringstream csv;
    write_csv(filled, csv);
    write_text(csv.str(), o.output, out);
}

void cmd_describe(const Options& o, std::ostream& out) {
    const SeriesFrame frame = read_frame_csv_file(o.input);
    const std::vector<std::string> cols = o.columns.empty() ? frame.names() : o.columns;
    if (o.json) {
        report::json arr = report::json::array();
        for (const auto& c : cols) arr.push_back(report::summary_json(frame, c));
        write_text(dump(arr), o.output, out);
    } else {
        write_text(report::describe_table(frame, cols), o.output, out);
    }
}

void cmd_adf(const Options& o, std::ostream& out) {
    const SeriesFrame frame = read_frame_csv_file(o.input);
    std::vector<std::string> cols = o.columns;
    if (!o.column.empty()) cols.push_back(o.column);
    if (cols.empty()) cols = frame.names();
    const auto regression = stationarity::parse_adf_regression(o.regression);
    std::string text;
    report::json arr = report::json::array();
    for (const auto& c : cols) {
        const auto series = dense(frame, c);
        const auto r = stationarity::adf_test(series, regression, o.max_lag);
        if (o.json) {
            arr.push_back(report::adf_json(c, r, o.alpha));
        } else {
            if (!text.empty()) text += '\n';
            text += report::adf_block(c, r, o.alpha);
        }
    }
    write_text(o.json ? dump(arr) : text, o.output, out);
}

void cmd_decompose(const Options& o, std::ostream& out) {
    const SeriesFrame frame = read_frame_csv_file(o.input);
    const std::string name = single_column(frame, o.column);
    const auto series = dense(frame, name);
    const auto d = stationarity::classical_decompose(series, o.period);
    if (!o.svg.empty()) write_text(report::decomposition_svg(name, series, d), o.svg, out);
    write_text(o.json ? dump(report::decomposition_json(series, d)) : report::decomposition_csv(series, d), o.output, out);
}

void cmd_pacf(const Options& o, std::ostream& out) {
    const SeriesFrame frame = read_frame_csv_file(o.input);
    const std::string name = single_column(frame, o.column);
    const auto series = dense(frame, name);
    std::size_t lags = o.pacf_lags.value_or(std::min<std::size_t>(40, series.size() / 2 - 1));
    const auto r = stationarity::pacf(series, lags);
    if (!o.svg.empty()) write_text(report::pacf_svg(name, r), o.svg, out);
    write_text(o.json ? dump(report::pacf_json(r)) : report::pacf_csv(r), o.output, out);
}

void cmd_select_order(const Options& o, std::ostream& out) {
    const SeriesFrame frame = select_columns(read_frame_csv_file(o.input), o.columns);
    const auto sel = var::select_order(frame, o.max_lags, o.lags);
    write_text(o.json ? dump(report::order_selection_json(sel)) : report::order_selection_table(sel), o.output, out);
}

void cmd_fit(const Options& o, std::ostream& out) {
    const SeriesFrame frame = select_columns(read_frame_csv_file(o.input), o.columns);
    const auto fit = var::fit_var(frame, o.lags.value_or(2));
    if (!o.output.empty()) var::save_model_file(fit, o.output);
    if (o.json) {
        var::save_model(fit, out);
    } else {
        out << report::fit_report(fit);
    }
}

void cmd_granger(const Options& o, std::ostream& out) {
    const auto fit = var::load_model_file(o.input);
    std::vector<inference::GrangerResult> results;
    if (o.caused.empty()) {
        results = inference::granger_all_pairs(fit, o.causing, o.alpha);
    } else {
        results.push_back(inference::granger_test(fit, {o.causing}, o.caused, o.alpha));
    }
    if (o.json) {
        report::json arr = report::json::array();
        for (const auto& r : results) arr.push_back(report::granger_json(r));
        write_text(dump(arr), o.output, out);
    } else {
        write_text(report::granger_table(results), o.output, out);
    }
}

void cmd_irf(const Options& o, std::ostream& out, std::ostream& err) {
    const auto fit = var::load_model_file(o.input);
    irf::IrfOptions opts;
    opts.orthogonalized = !o.no_orth;
    opts.resampling = irf::parse_resampling(o.resampling);
    opts.threads = o.threads;
    const auto r = irf::irf_with_bands(fit, o.horizon, o.level, o.replications, o.seed, opts);
    if (r.failed_replications > 0) {
        err << fmt::format("irf: {} of {} bootstrap refits failed and were skipped\n", r.failed_replications,
                           r.replications);
    }
    if (!o.svg.empty()) write_text(report::irf_svg(r), o.svg, out);
    write_text(o.json ? dump(report::irf_json(r)) : report::irf_csv(r), o.output, out);
}

void cmd_simulate(const Options& o, std::ostream& out) {
    std::ifstream in(o.spec);
    if (!in) throw DataError("cannot open '" + o.spec + "'");
    const auto spec = simulate::read_spec(in);
    const auto frame = simulate::simulate_var(spec, o.t, o.seed);
    std::ostringstream csv;
    write_csv(frame, csv);
    write_text(csv.str(), o.output, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tsvar: VAR estimation, Granger causality and impulse responses for daily series", "tsvar"};
    app.set_version_flag("--version", std::string("tsvar ") + std::string(kVersion));
    app.require_subcommand(1);
    Options o;

    auto positional_input = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", o.input, what)->required()->check(CLI::ExistingFile);
    };
    auto output = [&](CLI::App* sub, const char* what) { sub->add_option("-o,--output", o.output, what); };
    auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Emit JSON instead of text"); };

    auto* ingest = app.add_subcommand("ingest", "Read the sleep and mood exports and write a merged daily CSV");
    ingest->add_option("--oura", o.oura, "Sleep export with header date,score")->check(CLI::ExistingFile);
    ingest->add_option("--emood", o.emood, "Mood export with header date,depressed,anxious,irritable,elevated")
        ->check(CLI::ExistingFile);
    ingest->add_option("--impute", o.impute, "forward_fill, linear or none")
        ->check(CLI::IsMember({"forward_fill", "linear", "none"}));
    ingest->add_option("--max-gap", o.max_gap, "Longest missing run to fill");
    ingest->add_flag("--keep-absent-missing", o.keep_absent_missing,
                     "Leave dates without mood rows missing instead of 0");
    output(ingest, "Merged CSV path (default: stdout)");

    auto* describe_cmd = app.add_subcommand("describe", "Summary statistics per column");
    positional_input(describe_cmd, "Merged CSV");
    describe_cmd->add_option("--columns", o.columns, "Columns to summarize")->delimiter(',');
    output(describe_cmd, "Output path");
    json_flag(describe_cmd);

    auto* adf = app.add_subcommand("adf", "Augmented Dickey-Fuller unit-root test");
    positional_input(adf, "Merged CSV");
    adf->add_option("--column", o.column, "Column to test (default: every column)");
    adf->add_option("--regression", o.regression, "c (constant) or ct (constant and trend)")
        ->check(CLI::IsMember({"c", "ct"}));
    adf->add_option("--maxlag", o.max_lag, "Largest augmentation lag searched");
    adf->add_option("--alpha", o.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    output(adf, "Output path");
    json_flag(adf);

    auto* decompose = app.add_subcommand("decompose", "Additive trend/seasonal/residual decomposition");
    positional_input(decompose, "Merged CSV");
    decompose->add_option("--column", o.column, "Column to decompose");
    decompose->add_option("--period", o.period, "Seasonal period in days")->check(CLI::PositiveNumber);
    decompose->add_option("--svg", o.svg, "Write a four-panel SVG plot");
    output(decompose, "CSV path (default: stdout)");
    json_flag(decompose);

    auto* pacf_cmd = app.add_subcommand("pacf", "Partial autocorrelation function");
    positional_input(pacf_cmd, "Merged CSV");
    pacf_cmd->add_option("--column", o.column, "Column to analyze");
    pacf_cmd->add_option("--lags", o.pacf_lags, "Number of lags (default: min(40, T/2 - 1))");
    pacf_cmd->add_option("--svg", o.svg, "Write a stem SVG plot");
    output(pacf_cmd, "CSV path (default: stdout)");
    json_flag(pacf_cmd);

    auto* select = app.add_subcommand("select-order", "Information criteria for lags 0..maxlags");
    positional_input(select, "Merged CSV");
    select->add_option("--maxlags", o.max_lags, "Largest lag considered");
    select->add_option("--lags", o.lags, "Override the selected lag");
    select->add_option("--columns", o.columns, "Columns entering the VAR")->delimiter(',');
    output(select, "Output path");
    json_flag(select);

    auto* fit = app.add_subcommand("fit", "Fit a VAR(p) by OLS and print per-equation results");
    positional_input(fit, "Merged CSV");
    fit->add_option("--lags", o.lags, "Lag order p (default 2)");
    fit->add_option("--columns", o.columns, "Columns entering the VAR")->delimiter(',');
    output(fit, "Model document path");
    fit->add_flag("--json", o.json, "Print the model document instead of the report");

    auto* granger = app.add_subcommand("granger", "Granger causality F tests on a saved model");
    positional_input(granger, "Model document");
    granger->add_option("--causing", o.causing, "Causing variable")->required();
    granger->add_option("--caused", o.caused, "Caused variables for one joint test (default: each other variable)")
        ->delimiter(',');
    granger->add_option("--alpha", o.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    output(granger, "Output path");
    json_flag(granger);

    auto* irf_cmd = app.add_subcommand("irf", "Impulse responses with bootstrap bands from a saved model");
    positional_input(irf_cmd, "Model document");
    irf_cmd->add_option("--horizon", o.horizon, "Largest horizon");
    irf_cmd->add_option("--level", o.level, "Band confidence level")->check(CLI::Range(0.0, 1.0));
    irf_cmd->add_option("--reps", o.replications, "Bootstrap replications");
    irf_cmd->add_option("--seed", o.seed, "Bootstrap seed");
    irf_cmd->add_flag("--no-orth", o.no_orth, "Non-orthogonalized responses");
    irf_cmd->add_option("--resampling", o.resampling, "parametric or residual")
        ->check(CLI::IsMember({"parametric", "residual"}));
    irf_cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    irf_cmd->add_option("--svg", o.svg, "Write a K x K grid SVG plot");
    output(irf_cmd, "CSV path (default: stdout)");
    json_flag(irf_cmd);

    auto* sim = app.add_subcommand("simulate", "Simulate a VAR process from a spec document");
    sim->add_option("--spec", o.spec, "Process spec JSON")->required()->check(CLI::ExistingFile);
    sim->add_option("--t", o.t, "Number of observations")->required()->check(CLI::PositiveNumber);
    sim->add_option("--seed", o.seed, "Seed");
    output(sim, "CSV path (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (ingest->parsed()) cmd_ingest(o, out, err);
        else if (describe_cmd->parsed()) cmd_describe(o, out);
        else if (adf->parsed()) cmd_adf(o, out);
        else if (decompose->parsed()) cmd_decompose(o, out);
        else if (pacf_cmd->parsed()) cmd_pacf(o, out);
        else if (select->parsed()) cmd_select_order(o, out);
        else if (fit->parsed()) cmd_fit(o, out);
        else if (granger->parsed()) cmd_granger(o, out);
        else if (irf_cmd->parsed()) cmd_irf(o, out, err);
        else if (sim->parsed()) cmd_simulate(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kSuccess;
}

}  // namespace tsvar::cli
