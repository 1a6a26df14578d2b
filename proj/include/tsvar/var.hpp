#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsvar/frame.hpp"
#include "tsvar/linalg.hpp"

namespace tsvar::var {

using linalg::Matrix;

struct LaggedDesign {
    Matrix design;   ///< rows [1, Y_{t−1}ᵀ, …, Y_{t−p}ᵀ]
    Matrix targets;  ///< rows Y_tᵀ
};

/**
 * Stacks the VAR(p) regression. Rows run over t = first_row..T−1 (first_row
 * defaults to p); column 0 is the constant, followed by the lag-1 block in
 * variable order, then lag 2, and so on.
 */
[[nodiscard]] LaggedDesign build_lagged_design(const Matrix& data, std::size_t p,
                                               std::optional<std::size_t> first_row = std::nullopt);
[[nodiscard]] LaggedDesign build_lagged_design(const SeriesFrame& frame, std::size_t p);

/// Label of design column `col`: "const" or "L<lag>.<name>".
[[nodiscard]] std::string design_column_name(const std::vector<std::string>& names, std::size_t col);

/// Intercept plus p lag matrices; shared shape for estimates and their inference.
struct CoefficientSet {
    std::vector<double> intercept;  ///< K
    std::vector<Matrix> lags;       ///< p matrices, K × K; [i][j] = lag of j in equation i

    friend bool operator==(const CoefficientSet&, const CoefficientSet&) = default;
};

/// A VAR(p) fitted by equation-wise OLS on a shared design.
struct VarFit {
    std::vector<std::string> var_names;
    std::size_t p = 0;
    std::vector<double> intercept;  ///< ν
    std::vector<Matrix> coef;       ///< A₁..A_p
    Matrix sigma_u;                 ///< UᵀU / (t_eff − Kp − 1)
    Matrix sigma_u_ml;              ///< UᵀU / t_eff
    CoefficientSet coef_se;
    CoefficientSet coef_t;  ///< NaN where the standard error is zero
    CoefficientSet coef_p;  ///< two-sided normal p-values
    std::size_t t_eff = 0;
    Matrix residuals;              ///< t_eff × K
    Matrix normal_matrix_inverse;  ///< (ZᵀZ)⁻¹, (Kp+1) × (Kp+1)

    [[nodiscard]] std::size_t k() const noexcept { return var_names.size(); }
    [[nodiscard]] std::size_t df_resid() const noexcept { return t_eff - (k() * p + 1); }
    [[nodiscard]] std::size_t index_of(std::string_view name) const;
    /// Coefficient on design column `col` in equation `eq` (col 0 = intercept).
    [[nodiscard]] double coefficient(std::size_t eq, std::size_t col) const;

    friend bool operator==(const VarFit&, const VarFit&) = default;
};

/// Fits on rows first_row..T−1 of `data` (default first_row = p).
[[nodiscard]] VarFit fit_var(const Matrix& data, std::vector<std::string> names, std::size_t p,
                             std::optional<std::size_t> first_row = std::nullopt);
[[nodiscard]] VarFit fit_var(const SeriesFrame& frame, std::size_t p);

/// Companion spectral radius of a fit; 0 for p = 0.
[[nodiscard]] double stability_radius(const VarFit& fit);

struct InfoCriteria {
    double aic = 0.0;
    double bic = 0.0;
    double fpe = 0.0;
    double hqic = 0.0;
};

enum class Criterion { aic, bic, fpe, hqic };
inline constexpr std::array<Criterion, 4> kCriteria{Criterion::aic, Criterion::bic, Criterion::fpe, Criterion::hqic};
[[nodiscard]] std::string_view to_string(Criterion c) noexcept;
[[nodiscard]] Criterion parse_criterion(std::string_view text);
[[nodiscard]] double value(const InfoCriteria& ic, Criterion c) noexcept;

/// Criteria of an existing fit, from ln det Σ̃_u and m = pK² + K free parameters.
[[nodiscard]] InfoCriteria information_criteria(const VarFit& fit);
[[nodiscard]] InfoCriteria information_criteria(const SeriesFrame& frame, std::size_t p);

struct OrderSelection {
    std::size_t max_lags = 0;
    std::vector<InfoCriteria> table;  ///< rows 0..max_lags
    std::array<std::size_t, 4> minima{};  ///< argmin per criterion, indexed like kCriteria
    std::size_t selected = 0;
    std::string selection_rule;

    [[nodiscard]] std::size_t minimum(Criterion c) const noexcept { return minima[static_cast<std::size_t>(c)]; }
};

/**
 * Fits lags 0..max_lags on the common sample trimmed for max_lags so every row
 * of the table scores the same targets. `selected` is the AIC argmin unless
 * `override_lag` is given.
 */
[[nodiscard]] OrderSelection select_order(const SeriesFrame& frame, std::size_t max_lags,
                                          std::optional<std::size_t> override_lag = std::nullopt);
[[nodiscard]] OrderSelection select_order(const Matrix& data, const std::vector<std::string>& names,
                                          std::size_t max_lags, std::optional<std::size_t> override_lag = std::nullopt);

inline constexpr int kModelVersion = 1;

/// JSON model document; doubles use shortest round-trip decimals (≤ 17 significant digits).
void save_model(const VarFit& fit, std::ostream& out);
[[nodiscard]] VarFit load_model(std::istream& in);
void save_model_file(const VarFit& fit, const std::string& path);
[[nodiscard]] VarFit load_model_file(const std::string& path);

}  // namespace tsvar::var
