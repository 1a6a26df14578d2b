#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace tsvar::stationarity {

/// Deterministic terms of the ADF test regression.
enum class AdfRegression {
    constant,            ///< Δy_t = α + γy_{t−1} + Σ δ_iΔy_{t−i} + ε_t
    constant_and_trend,  ///< adds βt
};

[[nodiscard]] AdfRegression parse_adf_regression(std::string_view text);
[[nodiscard]] std::string_view to_string(AdfRegression r) noexcept;

/**
 * Augmented Dickey-Fuller result. Null hypothesis: the series has a unit root.
 * A small p-value is evidence of stationarity.
 */
struct AdfResult {
    double statistic = 0.0;  ///< t-ratio on the y_{t−1} coefficient
    double p_value = 1.0;
    std::size_t used_lag = 0;
    std::size_t n_obs = 0;                   ///< observations in the final regression
    std::array<double, 3> critical_values{};  ///< at 1%, 5%, 10%
    AdfRegression regression = AdfRegression::constant;
    /// Set when the regression fits exactly (noiseless deterministic input);
    /// the statistic is then the edge of the p-value surface.
    bool degenerate = false;
};

inline constexpr std::array<double, 3> kAdfLevels{0.01, 0.05, 0.10};

/// MacKinnon (1994) response-surface p-value for a single-series ADF statistic.
[[nodiscard]] double adf_p_value(double statistic, AdfRegression regression);

/// MacKinnon (2010) finite-sample critical values at 1%, 5%, 10%.
[[nodiscard]] std::array<double, 3> adf_critical_values(std::size_t n_obs, AdfRegression regression);

/// floor(12·(T/100)^(1/4)).
[[nodiscard]] std::size_t default_adf_max_lag(std::size_t t);

/**
 * ADF test with the augmentation lag chosen by minimum AIC over 0..max_lag on a
 * common sample, then refit on every usable observation at the chosen lag.
 * Requires T >= 15, finite values and a non-constant series.
 */
[[nodiscard]] AdfResult adf_test(std::span<const double> series,
                                 AdfRegression regression = AdfRegression::constant,
                                 std::optional<std::size_t> max_lag = std::nullopt);

struct DifferencingAdvice {
    double p_value;
    bool needs_differencing;
};

/// Constant-only ADF; differencing is advised when p > alpha.
[[nodiscard]] DifferencingAdvice recommend_differencing(std::span<const double> series, double alpha = 0.05);

/// `order`-fold first differences; output length T − order.
[[nodiscard]] std::vector<double> difference(std::span<const double> series, std::size_t order = 1);

struct Decomposition {
    std::vector<std::optional<double>> trend;  ///< missing for period/2 points at each end
    std::vector<double> seasonal;
    std::vector<std::optional<double>> residual;
    std::size_t period = 0;
};

/// Additive decomposition: centered moving-average trend, per-phase mean seasonal.
[[nodiscard]] Decomposition classical_decompose(std::span<const double> series, std::size_t period = 7);

struct PacfResult {
    std::vector<double> values;  ///< lags 0..n_lags; values[0] == 1
    double band = 0.0;           ///< 1.96/√T white-noise band
};

/// Durbin-Levinson recursion on adjusted (1/(T−k)) sample autocovariances.
[[nodiscard]] PacfResult pacf(std::span<const double> series, std::size_t n_lags);

}  // namespace tsvar::stationarity
