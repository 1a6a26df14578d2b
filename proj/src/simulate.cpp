#include "tsvar/simulate.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "json_util.hpp"
#include "tsvar/error.hpp"
#include "tsvar/rng.hpp"

namespace tsvar::simulate {

using linalg::Matrix;

Matrix companion_matrix(const std::vector<Matrix>& coef) {
    if (coef.empty()) return Matrix();
    const std::size_t k = coef.front().rows();
    const std::size_t p = coef.size();
    Matrix c(k * p, k * p);
    for (std::size_t lag = 0; lag < p; ++lag)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) c(i, lag * k + j) = coef[lag](i, j);
    for (std::size_t i = k; i < k * p; ++i) c(i, i - k) = 1.0;
    return c;
}

std::vector<double> unconditional_mean(const std::vector<double>& intercept, const std::vector<Matrix>& coef) {
    const std::size_t k = intercept.size();
    Matrix lhs = Matrix::identity(k);
    for (const auto& a : coef) lhs -= a;
    const Matrix nu(k, 1, intercept);
    return linalg::solve_square(lhs, nu).column(0);
}

void validate(const VarProcessSpec& spec) {
    const std::size_t k = spec.k();
    if (k == 0) throw std::invalid_argument("process spec: no variables");
    if (spec.intercept.size() != k) throw std::invalid_argument("process spec: intercept length != K");
    for (const auto& a : spec.coef) {
        if (a.rows() != k || a.cols() != k) throw std::invalid_argument("process spec: coefficient matrix is not K x K");
    }
    if (spec.innovation_cov.rows() != k || spec.innovation_cov.cols() != k) {
        throw std::invalid_argument("process spec: innovation covariance is not K x K");
    }
    (void)linalg::cholesky_lower(spec.innovation_cov);
    if (!spec.coef.empty()) {
        const double rho = linalg::spectral_radius(companion_matrix(spec.coef));
        if (!(rho < 1.0)) {
            throw DataError("process spec is not stable: companion spectral radius " + std::to_string(rho));
        }
    }
}

Matrix simulate_var_matrix(const VarProcessSpec& spec, std::size_t t, std::uint64_t seed, std::uint64_t stream) {
    validate(spec);
    if (t == 0) throw std::invalid_argument("simulate_var: t must be >= 1");
    const std::size_t k = spec.k();
    const std::size_t p = spec.p();
    const Matrix chol = linalg::cholesky_lower(spec.innovation_cov);
    const std::vector<double> mean = unconditional_mean(spec.intercept, spec.coef);

    const std::size_t total = p + spec.burn_in + t;
    Matrix y(total, k);
    for (std::size_t r = 0; r < p; ++r)
        for (std::size_t i = 0; i < k; ++i) y(r, i) = mean[i];

    CounterRng rng(seed, stream);
    std::vector<double> z(k);
    for (std::size_t r = p; r < total; ++r) {
        for (auto& v : z) v = rng.normal();
        for (std::size_t i = 0; i < k; ++i) {
            double v = spec.intercept[i];
            for (std::size_t lag = 0; lag < p; ++lag) {
                const auto prev = y.row(r - lag - 1);
                for (std::size_t j = 0; j < k; ++j) v += spec.coef[lag](i, j) * prev[j];
            }
            for (std::size_t j = 0; j <= i; ++j) v += chol(i, j) * z[j];
            y(r, i) = v;
        }
    }
    Matrix out(t, k);
    for (std::size_t r = 0; r < t; ++r)
        for (std::size_t i = 0; i < k; ++i) out(r, i) = y(total - t + r, i);
    return out;
}

Date default_start_date() { return parse_iso_date("2019-02-01"); }

SeriesFrame simulate_var(const VarProcessSpec& spec, std::size_t t, std::uint64_t seed, std::uint64_t stream) {
    return frame_from_matrix(default_start_date(), spec.var_names, simulate_var_matrix(spec, t, seed, stream));
}

std::vector<double> white_noise(std::size_t t, std::uint64_t seed, double sd) {
    if (!(sd > 0.0)) throw std::invalid_argument("white_noise: sd must be > 0");
    CounterRng rng(seed);
    std::vector<double> out(t);
    for (auto& v : out) v = sd * rng.normal();
    return out;
}

std::vector<double> random_walk(std::size_t t, std::uint64_t seed) {
    std::vector<double> out = white_noise(t, seed, 1.0);
    for (std::size_t i = 1; i < out.size(); ++i) out[i] += out[i - 1];
    return out;
}

VarProcessSpec read_spec(std::istream& in) {
    using detail::json;
    using detail::require;
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ModelFormatError(std::string("process spec is not valid JSON: ") + e.what());
    }
    try {
        VarProcessSpec spec;
        spec.var_names = require(doc, "var_names").get<std::vector<std::string>>();
        const std::size_t k = spec.var_names.size();
        const auto p = require(doc, "p").get<std::size_t>();
        spec.intercept = detail::vector_from_json(require(doc, "intercept"), "intercept", k);
        const json& coef = require(doc, "coef");
        if (!coef.is_array() || coef.size() != p) throw ModelFormatError("field 'coef' must hold p matrices");
        for (std::size_t lag = 0; lag < p; ++lag) spec.coef.push_back(detail::matrix_from_json(coef[lag], "coef", k, k));
        spec.innovation_cov = detail::matrix_from_json(require(doc, "sigma_u"), "sigma_u", k, k);
        if (doc.contains("burn_in")) spec.burn_in = doc["burn_in"].get<std::size_t>();
        return spec;
    } catch (const json::exception& e) {
        throw ModelFormatError(std::string("process spec has a malformed field: ") + e.what());
    }
}

void write_spec(const VarProcessSpec& spec, std::ostream& out) {
    using detail::json;
    json doc;
    doc["var_names"] = spec.var_names;
    doc["p"] = spec.p();
    doc["intercept"] = detail::vector_to_json(spec.intercept);
    json coef = json::array();
    for (const auto& a : spec.coef) coef.push_back(detail::matrix_to_json(a));
    doc["coef"] = std::move(coef);
    doc["sigma_u"] = detail::matrix_to_json(spec.innovation_cov);
    doc["burn_in"] = spec.burn_in;
    out << doc.dump(2) << '\n';
}

}  // namespace tsvar::simulate
