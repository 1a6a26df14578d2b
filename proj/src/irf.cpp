#include "tsvar/irf.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "tsvar/error.hpp"
#include "tsvar/rng.hpp"
#include "tsvar/simulate.hpp"

namespace tsvar::irf {

std::vector<Matrix> ma_coefficients(const std::vector<Matrix>& coef, std::size_t k, std::size_t horizon) {
    std::vector<Matrix> phi;
    phi.reserve(horizon + 1);
    phi.push_back(Matrix::identity(k));
    for (std::size_t h = 1; h <= horizon; ++h) {
        Matrix next(k, k);
        for (std::size_t i = 1; i <= std::min(h, coef.size()); ++i) next += phi[h - i] * coef[i - 1];
        phi.push_back(std::move(next));
    }
    return phi;
}

std::vector<Matrix> ma_coefficients(const var::VarFit& fit, std::size_t horizon) {
    return ma_coefficients(fit.coef, fit.k(), horizon);
}

namespace {

std::vector<Matrix> orthogonalize(std::vector<Matrix> phi, const Matrix& sigma_u) {
    const Matrix chol = linalg::cholesky_lower(sigma_u);
    for (auto& m : phi) m = m * chol;
    return phi;
}

std::vector<Matrix> point_irf(const var::VarFit& fit, std::size_t horizon, bool orthogonalized) {
    auto phi = ma_coefficients(fit, horizon);
    return orthogonalized ? orthogonalize(std::move(phi), fit.sigma_u) : phi;
}

// Same recursion as simulate_var_matrix, with innovations resampled from rows
// of the centered residual matrix.
Matrix simulate_with_residuals(const simulate::VarProcessSpec& spec, const Matrix& centered, std::size_t t,
                               std::uint64_t seed, std::uint64_t stream) {
    const std::size_t k = spec.k();
    const std::size_t p = spec.p();
    const auto mean = simulate::unconditional_mean(spec.intercept, spec.coef);
    const std::size_t total = p + spec.burn_in + t;
    Matrix path(total, k);
    for (std::size_t r = 0; r < p; ++r)
        for (std::size_t j = 0; j < k; ++j) path(r, j) = mean[j];
    CounterRng rng(seed, stream);
    const std::size_t n_res = centered.rows();
    for (std::size_t r = p; r < total; ++r) {
        auto pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n_res));
        pick = std::min(pick, n_res - 1);
        for (std::size_t i = 0; i < k; ++i) {
            double v = spec.intercept[i] + centered(pick, i);
            for (std::size_t lag = 1; lag <= p; ++lag)
                for (std::size_t j = 0; j < k; ++j) v += spec.coef[lag - 1](i, j) * path(r - lag, j);
            path(r, i) = v;
        }
    }
    Matrix out(t, k);
    for (std::size_t r = 0; r < t; ++r)
        for (std::size_t j = 0; j < k; ++j) out(r, j) = path(total - t + r, j);
    return out;
}

}  // namespace

std::vector<Matrix> orthogonalized_irf(const var::VarFit& fit, std::size_t horizon) {
    return point_irf(fit, horizon, true);
}

Resampling parse_resampling(std::string_view text) {
    if (text == "parametric") return Resampling::parametric;
    if (text == "residual") return Resampling::residual;
    throw std::invalid_argument("unknown resampling scheme '" + std::string(text) + "'");
}

std::string_view to_string(Resampling r) noexcept {
    return r == Resampling::parametric ? "parametric" : "residual";
}

double sorted_quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("sorted_quantile: empty sample");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

IrfResult irf_with_bands(const var::VarFit& fit, std::size_t horizon, double level, std::size_t replications,
                         std::uint64_t seed, const IrfOptions& options) {
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("irf_with_bands: level must be in (0, 1)");
    if (replications < kMinReplications) {
        throw std::invalid_argument("irf_with_bands: at least " + std::to_string(kMinReplications) +
                                    " replications are required");
    }
    const std::size_t k = fit.k();
    const std::size_t p = fit.p;

    simulate::VarProcessSpec spec{fit.var_names, fit.intercept, fit.coef, fit.sigma_u, options.burn_in};
    simulate::validate(spec);

    IrfResult result;
    result.var_names = fit.var_names;
    result.horizon = horizon;
    result.orthogonalized = options.orthogonalized;
    result.level = level;
    result.replications = replications;
    result.seed = seed;
    result.responses = point_irf(fit, horizon, options.orthogonalized);

    Matrix centered = fit.residuals;
    if (options.resampling == Resampling::residual) {
        for (std::size_t j = 0; j < k; ++j) {
            double mean = 0.0;
            for (std::size_t r = 0; r < centered.rows(); ++r) mean += centered(r, j);
            mean /= static_cast<double>(centered.rows());
            for (std::size_t r = 0; r < centered.rows(); ++r) centered(r, j) -= mean;
        }
    }

    const std::size_t sample = fit.t_eff + p;
    std::vector<std::optional<std::vector<Matrix>>> draws(replications);
    std::vector<std::string> failure_messages(replications);

    auto run_one = [&](std::size_t r) {
        try {
            const Matrix data = options.resampling == Resampling::parametric
                                    ? simulate::simulate_var_matrix(spec, sample, seed, r)
                                    : simulate_with_residuals(spec, centered, sample, seed, r);
            const var::VarFit refit = var::fit_var(data, fit.var_names, p);
            draws[r] = point_irf(refit, horizon, options.orthogonalized);
        } catch (const Error& e) {
            failure_messages[r] = e.what();
        }
    };

    std::size_t threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
    threads = std::clamp<std::size_t>(threads, 1, replications);
    if (threads == 1) {
        for (std::size_t r = 0; r < replications; ++r) run_one(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t r = next++; r < replications; r = next++) run_one(r);
                } catch (...) {
                    errors[w] = std::current_exception();
                    next = replications;
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::size_t failed = 0;
    std::string first_failure;
    for (std::size_t r = 0; r < replications; ++r) {
        if (draws[r]) continue;
        if (failed == 0) first_failure = "replication " + std::to_string(r) + ": " + failure_messages[r];
        ++failed;
    }
    result.failed_replications = failed;
    if (static_cast<double>(failed) > kMaxRefitFailureRate * static_cast<double>(replications)) {
        throw ConvergenceError("irf_with_bands: " + std::to_string(failed) + " of " + std::to_string(replications) +
                               " bootstrap refits failed (first failure, " + first_failure + ")");
    }

    const double q_lo = (1.0 - level) / 2.0;
    const double q_hi = (1.0 + level) / 2.0;
    result.lower.assign(horizon + 1, Matrix(k, k));
    result.upper.assign(horizon + 1, Matrix(k, k));
    std::vector<double> values;
    values.reserve(replications);
    for (std::size_t h = 0; h <= horizon; ++h) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                values.clear();
                for (const auto& d : draws)
                    if (d) values.push_back((*d)[h](i, j));
                std::sort(values.begin(), values.end());
                const double estimate = result.responses[h](i, j);
                result.lower[h](i, j) = std::min(sorted_quantile(values, q_lo), estimate);
                result.upper[h](i, j) = std::max(sorted_quantile(values, q_hi), estimate);
            }
        }
    }
    return result;
}

}  // namespace tsvar::irf
