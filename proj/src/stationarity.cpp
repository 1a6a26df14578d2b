#include "tsvar/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tsvar/distributions.hpp"
#include "tsvar/error.hpp"
#include "tsvar/linalg.hpp"

namespace tsvar::stationarity {

using linalg::Matrix;

namespace {

// MacKinnon (1994) single-series (N = 1) response-surface coefficients.
// Index 0 = constant, 1 = constant + trend.
struct PValueSurface {
    double tau_min;
    double tau_star;
    double tau_max;
    std::array<double, 3> small_p;  // polynomial in τ, ascending powers
    std::array<double, 4> large_p;
};

constexpr PValueSurface kSurfaces[2] = {
    {-18.83, -1.61, 2.74, {2.1659, 1.4412, 3.8269e-2}, {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2}},
    {-16.18, -2.89, 0.7, {3.2512, 1.6047, 4.9588e-2}, {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2}},
};

// MacKinnon (2010) critical-value response surfaces: b0 + b1/n + b2/n² + b3/n³.
constexpr double kCritSurfaces[2][3][4] = {
    {{-3.43035, -6.5393, -16.786, -79.433},
     {-2.86154, -2.8903, -4.234, -40.040},
     {-2.56677, -1.5384, -2.809, 0.0}},
    {{-3.95877, -9.0531, -28.428, -134.155},
     {-3.41049, -4.3904, -9.036, -45.374},
     {-3.12705, -2.5856, -3.925, -22.380}},
};

// Fuller's tabulated critical values at n = 25, used when the regression is shorter
// than the response surfaces were fitted for.
constexpr double kFullerSmallSample[2][3] = {
    {-3.75, -3.00, -2.63},
    {-4.38, -3.60, -3.24},
};

constexpr std::size_t kSurfaceMinObs = 25;

std::size_t surface_index(AdfRegression r) { return r == AdfRegression::constant ? 0 : 1; }
std::size_t trend_terms(AdfRegression r) { return r == AdfRegression::constant ? 1 : 2; }

void require_finite(std::span<const double> series, const char* who) {
    for (double v : series) {
        if (!std::isfinite(v)) throw DataError(std::string(who) + ": series contains missing or non-finite values");
    }
}

struct AdfRegressionFit {
    double level_coef = 0.0;
    double level_t = 0.0;
    double ssr = 0.0;
    double tss = 0.0;  // uncentered Σ(Δy)²
    std::size_t n = 0;
    std::size_t params = 0;
};

// Regresses Δy_t on [1, (trend), y_{t−1}, Δy_{t−1..t−lags}] using rows whose
// difference index runs from `first` to the end. Deterministic terms come first
// so a level collinear with them is reported at column `trend_terms`.
AdfRegressionFit fit_adf_regression(std::span<const double> y, std::span<const double> dy, std::size_t lags,
                                    std::size_t first, AdfRegression regression) {
    const std::size_t n = dy.size() - first;
    const std::size_t level = trend_terms(regression);
    const std::size_t params = level + 1 + lags;
    Matrix design(n, params);
    Matrix target(n, 1);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t t = first + r;  // dy[t] = y[t+1] − y[t]
        target(r, 0) = dy[t];
        design(r, 0) = 1.0;
        if (regression == AdfRegression::constant_and_trend) design(r, 1) = static_cast<double>(r + 1);
        design(r, level) = y[t];
        for (std::size_t l = 1; l <= lags; ++l) design(r, level + l) = dy[t - l];
    }
    const auto sol = linalg::solve_least_squares(design, target);
    AdfRegressionFit fit;
    fit.n = n;
    fit.params = params;
    for (std::size_t r = 0; r < n; ++r) {
        fit.ssr += sol.residuals(r, 0) * sol.residuals(r, 0);
        fit.tss += target(r, 0) * target(r, 0);
    }
    fit.level_coef = sol.coefficients(level, 0);
    if (n > params) {
        const double sigma2 = fit.ssr / static_cast<double>(n - params);
        fit.level_t = fit.level_coef / std::sqrt(sigma2 * sol.normal_matrix_inverse(level, level));
    } else {
        fit.level_t = std::numeric_limits<double>::quiet_NaN();
    }
    return fit;
}

double aic(const AdfRegressionFit& fit) {
    const auto n = static_cast<double>(fit.n);
    const double llf = -0.5 * n * (std::log(2.0 * std::numbers::pi) + std::log(fit.ssr / n) + 1.0);
    return -2.0 * llf + 2.0 * static_cast<double>(fit.params);
}

bool exact_fit(const AdfRegressionFit& fit) { return fit.ssr <= 1e-20 * std::max(fit.tss, 1e-300); }

AdfResult degenerate_result(AdfRegression regression, bool mean_reverting, std::size_t n_obs) {
    const auto& surface = kSurfaces[surface_index(regression)];
    AdfResult res;
    res.regression = regression;
    res.degenerate = true;
    res.used_lag = 0;
    res.n_obs = n_obs;
    res.statistic = mean_reverting ? surface.tau_min : surface.tau_max;
    res.p_value = mean_reverting ? 0.0 : 1.0;
    res.critical_values = adf_critical_values(n_obs, regression);
    return res;
}

}  // namespace

AdfRegression parse_adf_regression(std::string_view text) {
    if (text == "c" || text == "constant") return AdfRegression::constant;
    if (text == "ct" || text == "constant_and_trend") return AdfRegression::constant_and_trend;
    throw std::invalid_argument("unknown ADF regression '" + std::string(text) + "' (expected c or ct)");
}

std::string_view to_string(AdfRegression r) noexcept {
    return r == AdfRegression::constant ? "constant" : "constant_and_trend";
}

double adf_p_value(double statistic, AdfRegression regression) {
    const auto& s = kSurfaces[surface_index(regression)];
    if (std::isnan(statistic)) return statistic;
    if (statistic > s.tau_max) return 1.0;
    if (statistic < s.tau_min) return 0.0;
    double poly = 0.0;
    if (statistic <= s.tau_star) {
        for (std::size_t i = s.small_p.size(); i-- > 0;) poly = poly * statistic + s.small_p[i];
    } else {
        for (std::size_t i = s.large_p.size(); i-- > 0;) poly = poly * statistic + s.large_p[i];
    }
    return dist::normal_cdf(poly);
}

std::array<double, 3> adf_critical_values(std::size_t n_obs, AdfRegression regression) {
    const std::size_t idx = surface_index(regression);
    std::array<double, 3> out{};
    if (n_obs < kSurfaceMinObs) {
        for (std::size_t i = 0; i < 3; ++i) out[i] = kFullerSmallSample[idx][i];
        return out;
    }
    const double inv = 1.0 / static_cast<double>(n_obs);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& b = kCritSurfaces[idx][i];
        out[i] = b[0] + inv * (b[1] + inv * (b[2] + inv * b[3]));
    }
    return out;
}

std::size_t default_adf_max_lag(std::size_t t) {
    return static_cast<std::size_t>(std::floor(12.0 * std::pow(static_cast<double>(t) / 100.0, 0.25)));
}

AdfResult adf_test(std::span<const double> series, AdfRegression regression, std::optional<std::size_t> max_lag) {
    const std::size_t t = series.size();
    if (t < 15) throw DataError("adf_test: series too short (" + std::to_string(t) + " < 15)");
    require_finite(series, "adf_test");
    if (std::all_of(series.begin(), series.end(), [&](double v) { return v == series.front(); })) {
        throw DataError("adf_test: series is constant");
    }

    const std::size_t ntrend = trend_terms(regression);
    const long cap_signed = static_cast<long>(t / 2) - static_cast<long>(ntrend) - 1;
    if (cap_signed < 0) throw DataError("adf_test: series too short for the regression");
    const auto cap = static_cast<std::size_t>(cap_signed);
    std::size_t maxlag = std::min(default_adf_max_lag(t), cap);
    if (max_lag) {
        if (*max_lag > cap) {
            throw std::invalid_argument("adf_test: max_lag " + std::to_string(*max_lag) + " exceeds " +
                                        std::to_string(cap) + " for T = " + std::to_string(t));
        }
        maxlag = *max_lag;
    }

    const std::vector<double> dy = difference(series, 1);

    // Lag 0 on the full sample decides whether the input is degenerate (noiseless).
    try {
        const auto probe = fit_adf_regression(series, dy, 0, 0, regression);
        if (exact_fit(probe)) return degenerate_result(regression, probe.level_coef < 0.0, probe.n);
    } catch (const SingularDesignError& e) {
        // y_{t−1} lies in the span of the deterministic terms: a pure trend, trend-stationary.
        if (e.column() == ntrend) return degenerate_result(regression, true, dy.size());
        throw;
    }

    // AIC search on the common sample trimmed for maxlag.
    std::size_t best_lag = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    for (std::size_t lag = 0; lag <= maxlag; ++lag) {
        try {
            const auto fit = fit_adf_regression(series, dy, lag, maxlag, regression);
            if (exact_fit(fit)) continue;
            const double value = aic(fit);
            if (value < best_aic) {
                best_aic = value;
                best_lag = lag;
            }
        } catch (const SingularDesignError&) {
            // Collinear augmentation lags carry no information; skip this order.
        }
    }

    const auto fit = fit_adf_regression(series, dy, best_lag, best_lag, regression);
    if (exact_fit(fit)) return degenerate_result(regression, fit.level_coef < 0.0, fit.n);

    AdfResult res;
    res.regression = regression;
    res.statistic = fit.level_t;
    res.p_value = adf_p_value(res.statistic, regression);
    res.used_lag = best_lag;
    res.n_obs = fit.n;
    res.critical_values = adf_critical_values(fit.n, regression);
    return res;
}

DifferencingAdvice recommend_differencing(std::span<const double> series, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("recommend_differencing: alpha must be in [0, 1]");
    const AdfResult res = adf_test(series, AdfRegression::constant);
    return {res.p_value, res.p_value > alpha};
}

std::vector<double> difference(std::span<const double> series, std::size_t order) {
    if (order == 0) throw std::invalid_argument("difference: order must be >= 1");
    if (series.size() < order + 1) {
        throw DataError("difference: series of length " + std::to_string(series.size()) +
                        " is too short for order " + std::to_string(order));
    }
    std::vector<double> out(series.begin(), series.end());
    for (std::size_t o = 0; o < order; ++o) {
        for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = out[i + 1] - out[i];
        out.pop_back();
    }
    return out;
}

Decomposition classical_decompose(std::span<const double> series, std::size_t period) {
    if (period < 2) throw std::invalid_argument("classical_decompose: period must be >= 2");
    const std::size_t t = series.size();
    if (t < 2 * period) {
        throw DataError("classical_decompose: need at least " + std::to_string(2 * period) +
                        " observations, got " + std::to_string(t));
    }
    require_finite(series, "classical_decompose");

    // Centered moving average; even periods use the 2×period filter with half-weight ends.
    std::vector<double> weights;
    if (period % 2 == 1) {
        weights.assign(period, 1.0 / static_cast<double>(period));
    } else {
        weights.assign(period + 1, 1.0 / static_cast<double>(period));
        weights.front() *= 0.5;
        weights.back() *= 0.5;
    }
    const std::size_t half = weights.size() / 2;

    Decomposition d;
    d.period = period;
    d.trend.assign(t, std::nullopt);
    for (std::size_t i = half; i + half < t; ++i) {
        double s = 0.0;
        for (std::size_t w = 0; w < weights.size(); ++w) s += weights[w] * series[i - half + w];
        d.trend[i] = s;
    }

    std::vector<double> phase_sum(period, 0.0);
    std::vector<std::size_t> phase_count(period, 0);
    for (std::size_t i = 0; i < t; ++i) {
        if (!d.trend[i]) continue;
        phase_sum[i % period] += series[i] - *d.trend[i];
        ++phase_count[i % period];
    }
    std::vector<double> phase_mean(period);
    double grand = 0.0;
    for (std::size_t p = 0; p < period; ++p) {
        phase_mean[p] = phase_sum[p] / static_cast<double>(phase_count[p]);
        grand += phase_mean[p];
    }
    grand /= static_cast<double>(period);
    for (auto& m : phase_mean) m -= grand;

    d.seasonal.resize(t);
    d.residual.assign(t, std::nullopt);
    for (std::size_t i = 0; i < t; ++i) {
        d.seasonal[i] = phase_mean[i % period];
        if (d.trend[i]) d.residual[i] = series[i] - *d.trend[i] - d.seasonal[i];
    }
    return d;
}

PacfResult pacf(std::span<const double> series, std::size_t n_lags) {
    const std::size_t t = series.size();
    require_finite(series, "pacf");
    if (2 * n_lags >= t) {
        throw std::invalid_argument("pacf: n_lags " + std::to_string(n_lags) + " must be below T/2 = " +
                                    std::to_string(t / 2));
    }
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(t);

    std::vector<double> acov(n_lags + 1, 0.0);
    for (std::size_t k = 0; k <= n_lags; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i + k < t; ++i) s += (series[i] - mean) * (series[i + k] - mean);
        acov[k] = s / static_cast<double>(t - k);
    }
    if (!(acov[0] > 0.0)) throw DataError("pacf: series has zero variance");

    PacfResult res;
    res.band = 1.96 / std::sqrt(static_cast<double>(t));
    res.values.assign(n_lags + 1, 0.0);
    res.values[0] = 1.0;

    std::vector<double> r(n_lags + 1);
    for (std::size_t k = 0; k <= n_lags; ++k) r[k] = acov[k] / acov[0];

    std::vector<double> phi(n_lags + 1, 0.0);
    std::vector<double> prev(n_lags + 1, 0.0);
    for (std::size_t k = 1; k <= n_lags; ++k) {
        double num = r[k];
        double den = 1.0;
        for (std::size_t j = 1; j < k; ++j) {
            num -= prev[j] * r[k - j];
            den -= prev[j] * r[j];
        }
        const double pkk = num / den;
        phi[k] = pkk;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - pkk * prev[k - j];
        res.values[k] = pkk;
        prev = phi;
    }
    return res;
}

}  // namespace tsvar::stationarity
