#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tsvar/var.hpp"

namespace tsvar::inference {

/// Joint Wald test that the causing variables' lags are zero in the caused equations.
struct GrangerResult {
    std::vector<std::string> causing;
    std::vector<std::string> caused;
    double statistic = 0.0;  ///< F = W / df_num
    double critical_value = 0.0;
    double p_value = 1.0;
    std::size_t df_num = 0;
    std::size_t df_den = 0;
    double alpha = 0.05;
    bool reject_null = false;
};

/**
 * Wald/F Granger test on a fitted VAR. The coefficient covariance is
 * Σ_u ⊗ (ZᵀZ)⁻¹; df = (p·|causing|·|caused|, K·(t_eff − Kp − 1)).
 */
[[nodiscard]] GrangerResult granger_test(const var::VarFit& fit, const std::vector<std::string>& causing,
                                         const std::vector<std::string>& caused, double alpha = 0.05);

/// One single-variable test per other variable, in fit column order.
[[nodiscard]] std::vector<GrangerResult> granger_all_pairs(const var::VarFit& fit, const std::string& causing,
                                                           double alpha = 0.05);

}  // namespace tsvar::inference
