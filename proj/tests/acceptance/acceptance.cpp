// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <Eigen/Dense>

#include "test_support.hpp"
#include "tsvar/cli.hpp"
#include "tsvar/distributions.hpp"
#include "tsvar/error.hpp"
#include "tsvar/inference.hpp"
#include "tsvar/irf.hpp"
#include "tsvar/simulate.hpp"
#include "tsvar/stationarity.hpp"
#include "tsvar/var.hpp"

namespace fs = std::filesystem;
using namespace tsvar;
using namespace tsvar::testing;
using linalg::Matrix;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// VAR(2), K = 2 oracle process shared by criteria 1, 3 and 8.
simulate::VarProcessSpec var2_oracle() {
    return {{"y1", "y2"},
            {1.0, -0.5},
            {Matrix{{0.5, 0.1}, {0.2, 0.3}}, Matrix{{-0.25, 0.0}, {0.15, 0.2}}},
            Matrix{{1.0, 0.4}, {0.4, 2.0}},
            200};
}

Outcome estimator_recovery() {
    const auto start = Clock::now();
    const auto spec = var2_oracle();
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto fit = var::fit_var(simulate::simulate_var_matrix(spec, 2000, seed), spec.var_names, 2);
        bool all = true;
        for (std::size_t i = 0; i < 2; ++i) {
            all = all && std::abs(fit.intercept[i] - spec.intercept[i]) <= 3.0 * fit.coef_se.intercept[i];
            for (std::size_t l = 0; l < 2; ++l)
                for (std::size_t j = 0; j < 2; ++j)
                    all = all && std::abs(fit.coef[l](i, j) - spec.coef[l](i, j)) <= 3.0 * fit.coef_se.lags[l](i, j);
        }
        ok += all;
    }
    const double secs = seconds_since(start);
    return {ok >= 95 && secs < 10.0, fmt("%d/100 seeds within 3 SE (need >= 95); %.2f s (limit 10 s)", ok, secs)};
}

Outcome scalar_equivalence() {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t p = 1 + seed % 5;
        const auto y = lcg_ar2(seed * 31, 150 + 10 * seed, 0.5, 0.2);
        Matrix m(y.size(), 1);
        for (std::size_t i = 0; i < y.size(); ++i) m(i, 0) = y[i];
        const auto fit = var::fit_var(m, {"y"}, p);
        // Oracle: scalar AR(p) normal equations solved by Eigen.
        const std::size_t n = y.size() - p;
        Eigen::MatrixXd x(n, p + 1);
        Eigen::VectorXd t(n);
        for (std::size_t r = 0; r < n; ++r) {
            x(r, 0) = 1.0;
            for (std::size_t l = 1; l <= p; ++l) x(r, l) = y[p + r - l];
            t(r) = y[p + r];
        }
        const Eigen::VectorXd beta = (x.transpose() * x).ldlt().solve(x.transpose() * t);
        worst = std::max(worst, std::abs(fit.intercept[0] - beta(0)));
        for (std::size_t l = 0; l < p; ++l) worst = std::max(worst, std::abs(fit.coef[l](0, 0) - beta(l + 1)));
    }
    return {worst <= 1e-10, fmt("max |difference| %.3g over 20 samples (limit 1e-10)", worst)};
}

Outcome lag_selection() {
    const auto spec = var2_oracle();
    int aic_two = 0;
    int monotone = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto sel = var::select_order(simulate::simulate_var_matrix(spec, 2000, 1000 + seed), spec.var_names, 8);
        aic_two += sel.minimum(var::Criterion::aic) == 2;
        monotone += sel.minimum(var::Criterion::bic) <= sel.minimum(var::Criterion::aic);
    }
    return {aic_two >= 90 && monotone == 100,
            fmt("AIC argmin = 2 in %d/100 (need >= 90); BIC argmin <= AIC argmin in %d/100 (need 100)", aic_two,
                monotone)};
}

Outcome granger_power_and_calibration() {
    simulate::VarProcessSpec planted{{"x", "y"}, {0.0, 0.0}, {Matrix{{0.3, 0.0}, {0.5, 0.3}}}, Matrix::identity(2), 200};
    int forward = 0, backward = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto fit = var::fit_var(simulate::simulate_var_matrix(planted, 1000, 2000 + seed), {"x", "y"}, 1);
        forward += inference::granger_test(fit, {"x"}, {"y"}, 0.05).reject_null;
        backward += inference::granger_test(fit, {"y"}, {"x"}, 0.05).reject_null;
    }
    simulate::VarProcessSpec null_spec{{"x", "y"}, {0.0, 0.0}, {Matrix(2, 2)}, Matrix::identity(2), 200};
    int null_rejections = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto fit = var::fit_var(simulate::simulate_var_matrix(null_spec, 1000, 3000 + seed), {"x", "y"}, 1);
        null_rejections += inference::granger_test(fit, {"x"}, {"y"}, 0.05).reject_null;
    }
    const double rate = null_rejections / 500.0;
    return {forward >= 95 && backward <= 10 && rate >= 0.02 && rate <= 0.08,
            fmt("true direction %d/100 (need >= 95); false direction %d/100 (need <= 10); null rate %.3f (need "
                "[0.02, 0.08])",
                forward, backward, rate)};
}

Outcome f_distribution() {
    const double q = dist::f_quantile(0.95, 2.0, 1e6);
    return {std::abs(q - 2.996) < 0.01, fmt("F^-1(0.95; 2, 1e6) = %.6f (target 2.996 +- 0.01)", q)};
}

Outcome adf_calibration() {
    int walk_ok = 0, ar_ok = 0, no_diff = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto walk = simulate::random_walk(1000, 4000 + seed);
        walk_ok += stationarity::adf_test(walk).p_value > 0.05;
        const auto e = simulate::white_noise(500, 5000 + seed);
        std::vector<double> ar(500);
        ar[0] = e[0];
        for (std::size_t t = 1; t < ar.size(); ++t) ar[t] = 0.5 * ar[t - 1] + e[t];
        ar_ok += stationarity::adf_test(ar).p_value < 0.01;
        no_diff += !stationarity::recommend_differencing(ar, 0.05).needs_differencing;
    }
    return {walk_ok >= 90 && ar_ok >= 95 && no_diff == 100,
            fmt("random walk p > .05 in %d/100 (need >= 90); AR(1) p < .01 in %d/100 (need >= 95); no differencing "
                "advised for %d/100 stationary samples",
                walk_ok, ar_ok, no_diff)};
}

double companion_radius_oracle(const std::vector<Matrix>& coef) {
    const std::size_t k = coef[0].rows(), p = coef.size();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k * p, k * p);
    for (std::size_t l = 0; l < p; ++l) c.block(0, l * k, k, k) = to_eigen(coef[l]);
    if (p > 1) c.block(k, 0, k * (p - 1), k * (p - 1)).setIdentity();
    return c.eigenvalues().cwiseAbs().maxCoeff();
}

Outcome irf_exactness() {
    double worst = 0.0;
    bool chol_exact = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Lcg g(seed * 977);
        var::VarFit fit;
        const std::size_t k = 2 + seed % 3, p = 1 + seed % 3;
        for (std::size_t i = 0; i < k; ++i) fit.var_names.push_back("v" + std::to_string(i));
        fit.p = p;
        do {
            fit.coef.clear();
            for (std::size_t l = 0; l < p; ++l) fit.coef.push_back(random_matrix(g, k, k, 0.7 / static_cast<double>(l + 1)));
        } while (companion_radius_oracle(fit.coef) >= 0.95);
        fit.intercept.assign(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) fit.intercept[i] = g.next();
        const Matrix a = random_matrix(g, k, k);
        fit.sigma_u = linalg::transpose_times(a, a) + Matrix::identity(k);

        const auto phi = irf::ma_coefficients(fit, 10);
        // Oracle: noiseless recursion with and without a unit shock at h = 0.
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<std::vector<double>> base(p, std::vector<double>(k, 2.0)), shocked = base;
            for (std::size_t h = 0; h <= 10; ++h) {
                auto step = [&](std::vector<std::vector<double>>& path, bool shock) {
                    std::vector<double> next(fit.intercept);
                    for (std::size_t l = 1; l <= p; ++l)
                        for (std::size_t i = 0; i < k; ++i)
                            for (std::size_t c = 0; c < k; ++c) next[i] += fit.coef[l - 1](i, c) * path[path.size() - l][c];
                    if (shock) next[j] += 1.0;
                    path.push_back(next);
                };
                step(base, false);
                step(shocked, h == 0);
                for (std::size_t i = 0; i < k; ++i)
                    worst = std::max(worst, std::abs(phi[h](i, j) - (shocked.back()[i] - base.back()[i])));
            }
        }
        chol_exact = chol_exact && irf::orthogonalized_irf(fit, 0)[0] == linalg::cholesky_lower(fit.sigma_u);
    }
    return {worst <= 1e-10 && chol_exact,
            fmt("max |Phi_h - oracle| %.3g over 20 fits, h <= 10 (limit 1e-10); Theta_0 == chol(Sigma_u): %s", worst,
                chol_exact ? "exact" : "differs")};
}

Outcome irf_band_coverage() {
    const auto start = Clock::now();
    const auto spec = var2_oracle();
    constexpr std::size_t kHorizon = 10;
    var::VarFit truth;
    truth.var_names = spec.var_names;
    truth.p = 2;
    truth.coef = spec.coef;
    truth.sigma_u = spec.innovation_cov;
    const auto true_irf = irf::orthogonalized_irf(truth, kHorizon);

    double coverage_sum = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto fit = var::fit_var(simulate::simulate_var_matrix(spec, 500, 6000 + seed), spec.var_names, 2);
        const auto bands = irf::irf_with_bands(fit, kHorizon, 0.95, 1000, seed);
        std::size_t covered = 0, total = 0;
        for (std::size_t h = 0; h <= kHorizon; ++h) {
            for (std::size_t i = 0; i < 2; ++i) {
                for (std::size_t j = 0; j < 2; ++j) {
                    const double v = true_irf[h](i, j);
                    covered += bands.lower[h](i, j) <= v && v <= bands.upper[h](i, j);
                    ++total;
                }
            }
        }
        coverage_sum += static_cast<double>(covered) / static_cast<double>(total);
    }
    const double coverage = coverage_sum / 100.0;
    const double secs = seconds_since(start);
    return {coverage >= 0.90 && secs < 300.0,
            fmt("mean coverage %.4f over 100 outer seeds x 1000 replications (need >= 0.90); %.1f s (limit 300 s)",
                coverage, secs)};
}

Outcome decomposition_identity() {
    double worst = 0.0, worst_cycle = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t period = 2 + seed % 11;
        const auto y = simulate::white_noise(40 + 7 * seed, 7000 + seed, 1.0 + static_cast<double>(seed));
        const auto d = stationarity::classical_decompose(y, period);
        for (std::size_t t = 0; t < y.size(); ++t) {
            if (!d.trend[t]) continue;
            worst = std::max(worst, std::abs(*d.trend[t] + d.seasonal[t] + *d.residual[t] - y[t]));
        }
        double cycle = 0.0;
        for (std::size_t t = 0; t < period; ++t) cycle += d.seasonal[t];
        worst_cycle = std::max(worst_cycle, std::abs(cycle));
    }
    return {worst <= 1e-9 && worst_cycle <= 1e-9,
            fmt("max reconstruction error %.3g; max |seasonal cycle sum| %.3g (limit 1e-9)", worst, worst_cycle)};
}

Outcome pacf_calibration() {
    int calm = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto r = stationarity::pacf(simulate::white_noise(5000, 8000 + seed), 40);
        int outside = 0;
        for (std::size_t k = 1; k <= 40; ++k) outside += std::abs(r.values[k]) > r.band;
        calm += outside <= 3;
    }
    const auto e = simulate::white_noise(5000, 9000);
    std::vector<double> ar(5000);
    ar[0] = e[0];
    for (std::size_t t = 1; t < ar.size(); ++t) ar[t] = 0.6 * ar[t - 1] + e[t];
    const double lag1 = stationarity::pacf(ar, 40).values[1];
    return {calm >= 90 && std::abs(lag1 - 0.6) < 0.05,
            fmt("white noise: <= 3 of 40 lags outside band in %d/100 seeds (need >= 90); AR(1) pacf[1] = %.4f "
                "(need |x - 0.6| < 0.05)",
                calm, lag1)};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("tsvar_acceptance_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    [[nodiscard]] std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int cli_run(const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    if (out) *out = o.str();
    return code;
}

Outcome end_to_end_determinism() {
    TempDir dir;
    const std::string data = TSVAR_DATA_DIR;
    const std::vector<std::string> artifacts{"merged.csv", "model.json", "granger.txt", "irf.csv", "irf.svg"};
    for (int round = 0; round < 2; ++round) {
        const std::string r = std::to_string(round);
        int rc = cli_run({"ingest", "--oura", data + "/sleep.csv", "--emood", data + "/mood.csv", "-o", dir / (r + "merged.csv")});
        rc |= cli_run({"fit", dir / (r + "merged.csv"), "--lags", "2", "-o", dir / (r + "model.json")});
        rc |= cli_run({"granger", dir / (r + "model.json"), "--causing", "score", "-o", dir / (r + "granger.txt")});
        rc |= cli_run({"irf", dir / (r + "model.json"), "--reps", "1000", "--seed", "0", "--svg", dir / (r + "irf.svg"),
                       "-o", dir / (r + "irf.csv")});
        if (rc != 0) return {false, "pipeline command failed"};
    }
    std::size_t identical = 0;
    for (const auto& a : artifacts) identical += slurp(dir / ("0" + a)) == slurp(dir / ("1" + a)) && !slurp(dir / ("0" + a)).empty();
    return {identical == artifacts.size(),
            fmt("%zu/%zu artifacts byte-identical across runs (ingest, fit, granger, irf csv+svg)", identical,
                artifacts.size())};
}

Outcome layout_fidelity() {
    TempDir dir;
    const std::string data = TSVAR_DATA_DIR, golden = TSVAR_GOLDEN_DIR;
    std::string sel, fit, gr;
    int rc = cli_run({"ingest", "--oura", data + "/sleep.csv", "--emood", data + "/mood.csv", "-o", dir / "m.csv"});
    rc |= cli_run({"select-order", dir / "m.csv", "--maxlags", "15"}, &sel);
    rc |= cli_run({"fit", dir / "m.csv", "--lags", "2", "-o", dir / "model.json"}, &fit);
    rc |= cli_run({"granger", dir / "model.json", "--causing", "score"}, &gr);
    if (rc != 0) return {false, "report command failed"};

    const bool golden_ok = sel == slurp(golden + "/select_order.txt") && fit == slurp(golden + "/fit.txt") &&
                           gr == slurp(golden + "/granger.txt");
    auto has = [](const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; };
    // Criteria table: AIC/BIC/FPE/HQIC columns, 16 lag rows, one starred minimum per column.
    std::size_t stars = 0;
    for (char c : sel) stars += c == '*';
    const bool t3 = has(sel, "AIC") && has(sel, "BIC") && has(sel, "FPE") && has(sel, "HQIC") && has(sel, "\n15 ") &&
                    stars == 4 + 1;  // four minima plus the title marker
    const bool t4 = has(fit, "VAR results for equation score") && has(fit, "coefficient") && has(fit, "std. error") &&
                    has(fit, "t-stat") && has(fit, "prob") && has(fit, "\nL1.score ") && has(fit, "\nL2.elevated ");
    const bool t5 = has(gr, "Causal Variable") && has(gr, "Variable") && has(gr, "Test statistic") &&
                    has(gr, "Critical value") && has(gr, "p-value") && has(gr, "df") && has(gr, "(2, ");
    return {golden_ok && t3 && t4 && t5,
            fmt("golden files %s; criteria table %s; coefficient table %s; causality table %s",
                golden_ok ? "match" : "DIFFER", t3 ? "ok" : "BAD", t4 ? "ok" : "BAD", t5 ? "ok" : "BAD")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"estimator recovery", estimator_recovery},
        {"scalar equivalence", scalar_equivalence},
        {"lag selection", lag_selection},
        {"granger power and calibration", granger_power_and_calibration},
        {"F distribution", f_distribution},
        {"ADF calibration", adf_calibration},
        {"IRF exactness", irf_exactness},
        {"IRF band coverage", irf_band_coverage},
        {"decomposition identity", decomposition_identity},
        {"PACF calibration", pacf_calibration},
        {"end-to-end determinism", end_to_end_determinism},
        {"layout fidelity", layout_fidelity},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s  %2d %-30s %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
