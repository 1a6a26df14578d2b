#include "tsvar/inference.hpp"

#include <algorithm>
#include <stdexcept>

#include "tsvar/distributions.hpp"
#include "tsvar/error.hpp"

namespace tsvar::inference {

namespace {

std::vector<std::size_t> resolve(const var::VarFit& fit, const std::vector<std::string>& names, const char* role) {
    if (names.empty()) throw std::invalid_argument(std::string("granger_test: the ") + role + " set is empty");
    std::vector<std::size_t> idx;
    for (const auto& n : names) {
        const std::size_t i = fit.index_of(n);
        if (std::find(idx.begin(), idx.end(), i) != idx.end()) {
            throw std::invalid_argument("granger_test: '" + n + "' listed twice in the " + role + " set");
        }
        idx.push_back(i);
    }
    return idx;
}

}  // namespace

GrangerResult granger_test(const var::VarFit& fit, const std::vector<std::string>& causing,
                           const std::vector<std::string>& caused, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("granger_test: alpha must be in (0, 1)");
    const auto cause_idx = resolve(fit, causing, "causing");
    const auto effect_idx = resolve(fit, caused, "caused");
    for (std::size_t i : cause_idx) {
        if (std::find(effect_idx.begin(), effect_idx.end(), i) != effect_idx.end()) {
            throw std::invalid_argument("granger_test: '" + fit.var_names[i] +
                                        "' appears in both the causing and caused sets");
        }
    }
    if (fit.p == 0) throw std::invalid_argument("granger_test: a VAR(0) has no lag coefficients to test");

    const std::size_t k = fit.k();
    // Each restriction is (equation, design column).
    struct Restriction {
        std::size_t eq;
        std::size_t col;
    };
    std::vector<Restriction> rs;
    for (std::size_t eq : effect_idx)
        for (std::size_t lag = 0; lag < fit.p; ++lag)
            for (std::size_t j : cause_idx) rs.push_back({eq, 1 + lag * k + j});

    const std::size_t q = rs.size();
    linalg::Matrix middle(q, q);
    linalg::Matrix beta(q, 1);
    for (std::size_t a = 0; a < q; ++a) {
        beta(a, 0) = fit.coefficient(rs[a].eq, rs[a].col);
        for (std::size_t b = 0; b < q; ++b) {
            middle(a, b) = fit.sigma_u(rs[a].eq, rs[b].eq) * fit.normal_matrix_inverse(rs[a].col, rs[b].col);
        }
    }
    linalg::Matrix solved;
    try {
        solved = linalg::solve_pd(middle, beta);
    } catch (const NotPositiveDefiniteError& e) {
        throw NotPositiveDefiniteError(e.pivot(), "granger_test: restricted covariance R·V·Rᵀ is singular");
    }
    double wald = 0.0;
    for (std::size_t a = 0; a < q; ++a) wald += beta(a, 0) * solved(a, 0);

    GrangerResult r;
    r.causing = causing;
    r.caused = caused;
    r.alpha = alpha;
    r.df_num = q;
    r.df_den = k * fit.df_resid();
    const auto d1 = static_cast<double>(r.df_num);
    const auto d2 = static_cast<double>(r.df_den);
    r.statistic = wald / d1;
    r.critical_value = dist::f_quantile(1.0 - alpha, d1, d2);
    r.p_value = dist::f_sf(r.statistic, d1, d2);
    r.reject_null = r.p_value < alpha;
    return r;
}

std::vector<GrangerResult> granger_all_pairs(const var::VarFit& fit, const std::string& causing, double alpha) {
    const std::size_t c = fit.index_of(causing);
    if (fit.k() < 2) throw std::invalid_argument("granger_all_pairs: needs at least two variables");
    std::vector<GrangerResult> out;
    for (std::size_t i = 0; i < fit.k(); ++i) {
        if (i == c) continue;
        out.push_back(granger_test(fit, {causing}, {fit.var_names[i]}, alpha));
    }
    return out;
}

}  // namespace tsvar::inference
