#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tsvar/frame.hpp"
#include "tsvar/inference.hpp"
#include "tsvar/irf.hpp"
#include "tsvar/stationarity.hpp"
#include "tsvar/var.hpp"

namespace tsvar::report {

using nlohmann::json;

/// Plain-text table: first column left aligned, the rest right aligned.
struct TextTable {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string footer;

    [[nodiscard]] std::string render() const;
};

/// Summary rows (Total, Missing, Mean, SD, Max, Min, Non-zero) with one column per variable.
[[nodiscard]] std::string describe_table(const SeriesFrame& frame, const std::vector<std::string>& columns);
[[nodiscard]] std::string adf_block(std::string_view name, const stationarity::AdfResult& result, double alpha);
/// Lags 0..max_lags × {AIC, BIC, FPE, HQIC} at 4 significant digits, `*` on each column minimum.
[[nodiscard]] std::string order_selection_table(const var::OrderSelection& selection);
/// One coefficient table per equation: const, L1.<name>, ... with coefficient/std. error/t-stat/prob.
[[nodiscard]] std::string fit_report(const var::VarFit& fit);
[[nodiscard]] std::string granger_table(std::span<const inference::GrangerResult> results);

[[nodiscard]] std::string decomposition_csv(std::span<const double> observed, const stationarity::Decomposition& d);
[[nodiscard]] std::string pacf_csv(const stationarity::PacfResult& result);
[[nodiscard]] std::string irf_csv(const irf::IrfResult& result);

[[nodiscard]] std::string decomposition_svg(std::string_view name, std::span<const double> observed,
                                            const stationarity::Decomposition& d);
[[nodiscard]] std::string pacf_svg(std::string_view name, const stationarity::PacfResult& result);
[[nodiscard]] std::string irf_svg(const irf::IrfResult& result);

[[nodiscard]] json summary_json(const SeriesFrame& frame, const std::string& column);
[[nodiscard]] json adf_json(std::string_view name, const stationarity::AdfResult& result, double alpha);
[[nodiscard]] json order_selection_json(const var::OrderSelection& selection);
[[nodiscard]] json granger_json(const inference::GrangerResult& result);
[[nodiscard]] inference::GrangerResult granger_from_json(const json& doc);
[[nodiscard]] json irf_json(const irf::IrfResult& result);
[[nodiscard]] irf::IrfResult irf_from_json(const json& doc);
[[nodiscard]] json pacf_json(const stationarity::PacfResult& result);
[[nodiscard]] json decomposition_json(std::span<const double> observed, const stationarity::Decomposition& d);

}  // namespace tsvar::report
