#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "tsvar/var.hpp"

namespace tsvar::irf {

using linalg::Matrix;

/// Φ₀..Φ_H with Φ₀ = I and Φ_h = Σ_{i=1..min(h,p)} Φ_{h−i}·A_i.
[[nodiscard]] std::vector<Matrix> ma_coefficients(const var::VarFit& fit, std::size_t horizon);
[[nodiscard]] std::vector<Matrix> ma_coefficients(const std::vector<Matrix>& coef, std::size_t k,
                                                  std::size_t horizon);

/// Θ_h = Φ_h·P with P the lower Cholesky factor of Σ_u (impulse order = column order).
[[nodiscard]] std::vector<Matrix> orthogonalized_irf(const var::VarFit& fit, std::size_t horizon);

enum class Resampling {
    parametric,  ///< Gaussian innovations with covariance Σ_u
    residual,    ///< innovations drawn with replacement from the centered fit residuals
};

[[nodiscard]] Resampling parse_resampling(std::string_view text);
[[nodiscard]] std::string_view to_string(Resampling r) noexcept;

struct IrfOptions {
    bool orthogonalized = true;
    Resampling resampling = Resampling::parametric;
    std::size_t threads = 0;  ///< 0 = hardware concurrency
    std::size_t burn_in = 200;
};

struct IrfResult {
    std::vector<std::string> var_names;
    std::size_t horizon = 0;
    std::vector<Matrix> responses;  ///< [h](i, j): response of i at h to an impulse in j
    std::vector<Matrix> lower;
    std::vector<Matrix> upper;
    bool orthogonalized = true;
    double level = 0.95;
    std::size_t replications = 0;
    std::size_t failed_replications = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const IrfResult&, const IrfResult&) = default;
};

inline constexpr std::size_t kMinReplications = 100;
/// Share of bootstrap refits allowed to fail before the band computation aborts.
inline constexpr double kMaxRefitFailureRate = 0.01;

/**
 * Point IRF plus bootstrap percentile bands at (1 ± level)/2. Replication r
 * draws from CounterRng(seed, r): it simulates t_eff + p observations from
 * the fitted process, refits VAR(p) and records the IRF. Replications run on
 * worker threads but each one writes its own slot, so the result does not
 * depend on scheduling. Bands are widened where needed to contain the point
 * estimate.
 */
[[nodiscard]] IrfResult irf_with_bands(const var::VarFit& fit, std::size_t horizon, double level,
                                       std::size_t replications, std::uint64_t seed,
                                       const IrfOptions& options = {});

/// Linear-interpolated empirical quantile of `sorted` (ascending) at q in [0, 1].
[[nodiscard]] double sorted_quantile(const std::vector<double>& sorted, double q);

}  // namespace tsvar::irf
