#include "tsvar/var.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "json_util.hpp"
#include "tsvar/distributions.hpp"
#include "tsvar/error.hpp"
#include "tsvar/simulate.hpp"

namespace tsvar::var {

LaggedDesign build_lagged_design(const Matrix& data, std::size_t p, std::optional<std::size_t> first_row) {
    const std::size_t t = data.rows();
    const std::size_t k = data.cols();
    const std::size_t first = first_row.value_or(p);
    if (first < p) throw std::invalid_argument("build_lagged_design: first_row must be >= p");
    if (t <= k * p || first >= t) {
        throw DataError("insufficient observations: T = " + std::to_string(t) + " cannot support " +
                        std::to_string(k * p + 1) + " regressors per equation at lag " + std::to_string(p));
    }
    if (!data.all_finite()) throw DataError("build_lagged_design: data contains non-finite values");
    const std::size_t n = t - first;
    LaggedDesign out{Matrix(n, k * p + 1), Matrix(n, k)};
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t row = first + r;
        out.design(r, 0) = 1.0;
        for (std::size_t lag = 1; lag <= p; ++lag)
            for (std::size_t j = 0; j < k; ++j) out.design(r, 1 + (lag - 1) * k + j) = data(row - lag, j);
        for (std::size_t j = 0; j < k; ++j) out.targets(r, j) = data(row, j);
    }
    return out;
}

LaggedDesign build_lagged_design(const SeriesFrame& frame, std::size_t p) {
    return build_lagged_design(frame.to_matrix(), p);
}

std::string design_column_name(const std::vector<std::string>& names, std::size_t col) {
    if (col == 0) return "const";
    const std::size_t k = names.size();
    const std::size_t lag = (col - 1) / k + 1;
    return "L" + std::to_string(lag) + "." + names[(col - 1) % k];
}

std::size_t VarFit::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < var_names.size(); ++i)
        if (var_names[i] == name) return i;
    throw DataError("unknown variable '" + std::string(name) + "'");
}

double VarFit::coefficient(std::size_t eq, std::size_t col) const {
    if (col == 0) return intercept[eq];
    const std::size_t kk = k();
    return coef[(col - 1) / kk](eq, (col - 1) % kk);
}

namespace {

CoefficientSet empty_set(std::size_t k, std::size_t p) {
    return {std::vector<double>(k, 0.0), std::vector<Matrix>(p, Matrix(k, k))};
}

double& slot(CoefficientSet& set, std::size_t k, std::size_t eq, std::size_t col) {
    if (col == 0) return set.intercept[eq];
    return set.lags[(col - 1) / k](eq, (col - 1) % k);
}

}  // namespace

VarFit fit_var(const Matrix& data, std::vector<std::string> names, std::size_t p, std::optional<std::size_t> first_row) {
    const std::size_t k = data.cols();
    if (names.size() != k) throw std::invalid_argument("fit_var: one name per column required");
    const LaggedDesign lagged = build_lagged_design(data, p, first_row);
    const std::size_t n = lagged.design.rows();
    const std::size_t m = lagged.design.cols();
    if (n <= m) {
        throw DataError("insufficient observations: " + std::to_string(n) + " usable rows leave no residual degrees of freedom for " +
                        std::to_string(m) + " regressors per equation");
    }

    linalg::LeastSquaresSolution sol;
    try {
        sol = linalg::solve_least_squares(lagged.design, lagged.targets);
    } catch (const SingularDesignError& e) {
        throw SingularDesignError(e.column(), "design column " + design_column_name(names, e.column()) +
                                                  " is collinear with earlier columns (is a variable constant over the sample?)");
    }

    VarFit fit;
    fit.var_names = std::move(names);
    fit.p = p;
    fit.t_eff = n;
    fit.intercept.resize(k);
    fit.coef.assign(p, Matrix(k, k));
    for (std::size_t eq = 0; eq < k; ++eq) {
        fit.intercept[eq] = sol.coefficients(0, eq);
        for (std::size_t lag = 0; lag < p; ++lag)
            for (std::size_t j = 0; j < k; ++j) fit.coef[lag](eq, j) = sol.coefficients(1 + lag * k + j, eq);
    }

    const Matrix cross = linalg::transpose_times(sol.residuals, sol.residuals);
    fit.sigma_u_ml = (1.0 / static_cast<double>(n)) * cross;
    fit.sigma_u = (1.0 / static_cast<double>(n - m)) * cross;

    fit.coef_se = empty_set(k, p);
    fit.coef_t = empty_set(k, p);
    fit.coef_p = empty_set(k, p);
    for (std::size_t eq = 0; eq < k; ++eq) {
        for (std::size_t col = 0; col < m; ++col) {
            const double se = std::sqrt(fit.sigma_u(eq, eq) * sol.normal_matrix_inverse(col, col));
            const double estimate = sol.coefficients(col, eq);
            slot(fit.coef_se, k, eq, col) = se;
            const double t = se > 0.0 ? estimate / se : std::numeric_limits<double>::quiet_NaN();
            slot(fit.coef_t, k, eq, col) = t;
            slot(fit.coef_p, k, eq, col) = std::isnan(t) ? t : dist::normal_two_sided_p(t);
        }
    }
    fit.residuals = std::move(sol.residuals);
    fit.normal_matrix_inverse = std::move(sol.normal_matrix_inverse);
    return fit;
}

VarFit fit_var(const SeriesFrame& frame, std::size_t p) { return fit_var(frame.to_matrix(), frame.names(), p); }

double stability_radius(const VarFit& fit) {
    if (fit.p == 0) return 0.0;
    return linalg::spectral_radius(simulate::companion_matrix(fit.coef));
}

std::string_view to_string(Criterion c) noexcept {
    switch (c) {
        case Criterion::aic: return "aic";
        case Criterion::bic: return "bic";
        case Criterion::fpe: return "fpe";
        case Criterion::hqic: return "hqic";
    }
    return "aic";
}

Criterion parse_criterion(std::string_view text) {
    for (auto c : kCriteria)
        if (to_string(c) == text) return c;
    throw std::invalid_argument("unknown criterion '" + std::string(text) + "'");
}

double value(const InfoCriteria& ic, Criterion c) noexcept {
    switch (c) {
        case Criterion::aic: return ic.aic;
        case Criterion::bic: return ic.bic;
        case Criterion::fpe: return ic.fpe;
        case Criterion::hqic: return ic.hqic;
    }
    return ic.aic;
}

InfoCriteria information_criteria(const VarFit& fit) {
    const std::size_t k = fit.k();
    const auto n = static_cast<double>(fit.t_eff);
    const auto regressors = static_cast<double>(k * fit.p + 1);
    const auto free_params = static_cast<double>(fit.p * k * k + k);
    double log_det = 0.0;
    try {
        log_det = linalg::log_det_pd(fit.sigma_u_ml);
    } catch (const NotPositiveDefiniteError&) {
        throw DataError("ln det of the residual covariance is -inf (exact fit); criteria undefined");
    }
    if (!std::isfinite(log_det)) throw DataError("ln det of the residual covariance is not finite");

    InfoCriteria ic;
    ic.aic = log_det + 2.0 * free_params / n;
    ic.bic = log_det + free_params * std::log(n) / n;
    ic.hqic = log_det + 2.0 * free_params * std::log(std::log(n)) / n;
    ic.fpe = std::pow((n + regressors) / (n - regressors), static_cast<double>(k)) * std::exp(log_det);
    return ic;
}

InfoCriteria information_criteria(const SeriesFrame& frame, std::size_t p) {
    return information_criteria(fit_var(frame, p));
}

OrderSelection select_order(const Matrix& data, const std::vector<std::string>& names, std::size_t max_lags,
                            std::optional<std::size_t> override_lag) {
    if (override_lag && *override_lag > max_lags) {
        throw std::invalid_argument("select_order: override lag exceeds max_lags");
    }
    OrderSelection sel;
    sel.max_lags = max_lags;
    for (std::size_t p = 0; p <= max_lags; ++p) {
        sel.table.push_back(information_criteria(fit_var(data, names, p, max_lags)));
    }
    for (std::size_t c = 0; c < kCriteria.size(); ++c) {
        std::size_t best = 0;
        for (std::size_t p = 1; p <= max_lags; ++p) {
            if (value(sel.table[p], kCriteria[c]) < value(sel.table[best], kCriteria[c])) best = p;
        }
        sel.minima[c] = best;
    }
    if (override_lag) {
        sel.selected = *override_lag;
        sel.selection_rule = "override";
    } else {
        sel.selected = sel.minimum(Criterion::aic);
        sel.selection_rule = "aic";
    }
    return sel;
}

OrderSelection select_order(const SeriesFrame& frame, std::size_t max_lags, std::optional<std::size_t> override_lag) {
    return select_order(frame.to_matrix(), frame.names(), max_lags, override_lag);
}

namespace {

using detail::json;

json set_to_json(const CoefficientSet& set) {
    json lags = json::array();
    for (const auto& m : set.lags) lags.push_back(detail::matrix_to_json(m));
    return json{{"intercept", detail::vector_to_json(set.intercept)}, {"lags", std::move(lags)}};
}

CoefficientSet set_from_json(const json& j, const std::string& field, std::size_t k, std::size_t p) {
    if (!j.is_object()) throw ModelFormatError("field '" + field + "' must be an object");
    CoefficientSet set;
    set.intercept = detail::vector_from_json(detail::require(j, "intercept"), field + ".intercept", k);
    const json& lags = detail::require(j, "lags");
    if (!lags.is_array() || lags.size() != p) throw ModelFormatError("field '" + field + ".lags' must hold p matrices");
    for (std::size_t l = 0; l < p; ++l) set.lags.push_back(detail::matrix_from_json(lags[l], field + ".lags", k, k));
    return set;
}

}  // namespace

void save_model(const VarFit& fit, std::ostream& out) {
    json doc;
    doc["version"] = kModelVersion;
    doc["var_names"] = fit.var_names;
    doc["p"] = fit.p;
    doc["t_eff"] = fit.t_eff;
    doc["intercept"] = detail::vector_to_json(fit.intercept);
    json coef = json::array();
    for (const auto& a : fit.coef) coef.push_back(detail::matrix_to_json(a));
    doc["coef"] = std::move(coef);
    doc["sigma_u"] = detail::matrix_to_json(fit.sigma_u);
    doc["sigma_u_ml"] = detail::matrix_to_json(fit.sigma_u_ml);
    doc["coef_se"] = set_to_json(fit.coef_se);
    doc["coef_t"] = set_to_json(fit.coef_t);
    doc["coef_p"] = set_to_json(fit.coef_p);
    doc["normal_matrix_inverse"] = detail::matrix_to_json(fit.normal_matrix_inverse);
    doc["residuals"] = detail::matrix_to_json(fit.residuals);
    out << doc.dump(1) << '\n';
}

VarFit load_model(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ModelFormatError(std::string("model document is corrupted: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw ModelFormatError("model document must be a JSON object");
        const json& version = detail::require(doc, "version");
        if (!version.is_number_integer() || version.get<int>() != kModelVersion) {
            throw VersionError("model document version " + version.dump() + " is not supported (expected " +
                               std::to_string(kModelVersion) + ")");
        }
        VarFit fit;
        fit.var_names = detail::require(doc, "var_names").get<std::vector<std::string>>();
        fit.p = detail::require(doc, "p").get<std::size_t>();
        fit.t_eff = detail::require(doc, "t_eff").get<std::size_t>();
        const std::size_t k = fit.var_names.size();
        if (k == 0) throw ModelFormatError("field 'var_names' is empty");
        const std::size_t m = k * fit.p + 1;
        if (fit.t_eff <= m) throw ModelFormatError("field 't_eff' is too small for the model order");
        fit.intercept = detail::vector_from_json(detail::require(doc, "intercept"), "intercept", k);
        const json& coef = detail::require(doc, "coef");
        if (!coef.is_array() || coef.size() != fit.p) throw ModelFormatError("field 'coef' must hold p matrices");
        for (std::size_t l = 0; l < fit.p; ++l) fit.coef.push_back(detail::matrix_from_json(coef[l], "coef", k, k));
        fit.sigma_u = detail::matrix_from_json(detail::require(doc, "sigma_u"), "sigma_u", k, k);
        fit.sigma_u_ml = detail::matrix_from_json(detail::require(doc, "sigma_u_ml"), "sigma_u_ml", k, k);
        fit.coef_se = set_from_json(detail::require(doc, "coef_se"), "coef_se", k, fit.p);
        fit.coef_t = set_from_json(detail::require(doc, "coef_t"), "coef_t", k, fit.p);
        fit.coef_p = set_from_json(detail::require(doc, "coef_p"), "coef_p", k, fit.p);
        fit.normal_matrix_inverse =
            detail::matrix_from_json(detail::require(doc, "normal_matrix_inverse"), "normal_matrix_inverse", m, m);
        fit.residuals = detail::matrix_from_json(detail::require(doc, "residuals"), "residuals", fit.t_eff, k);
        return fit;
    } catch (const json::exception& e) {
        throw ModelFormatError(std::string("model document has a corrupted field: ") + e.what());
    }
}

void save_model_file(const VarFit& fit, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    save_model(fit, out);
}

VarFit load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return load_model(in);
}

}  // namespace tsvar::var
