#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "test_support.hpp"
#include "tsvar/error.hpp"
#include "tsvar/frame.hpp"
#include "tsvar/simulate.hpp"
#include "tsvar/var.hpp"

using namespace tsvar;
using namespace tsvar::testing;
using linalg::Matrix;

namespace {

Matrix column_matrix(const std::vector<double>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

// Scalar AR(p) OLS through the normal equations, solved by Eigen.
Eigen::VectorXd scalar_ar_ols(const std::vector<double>& y, std::size_t p) {
    const std::size_t n = y.size() - p;
    Eigen::MatrixXd x(n, p + 1);
    Eigen::VectorXd target(n);
    for (std::size_t r = 0; r < n; ++r) {
        x(r, 0) = 1.0;
        for (std::size_t l = 1; l <= p; ++l) x(r, l) = y[p + r - l];
        target(r) = y[p + r];
    }
    return (x.transpose() * x).ldlt().solve(x.transpose() * target);
}

}  // namespace

TEST(LaggedDesign, HandExample) {
    const auto d = var::build_lagged_design(column_matrix({1, 2, 3, 4, 5}), 2);
    EXPECT_EQ(d.design, (Matrix{{1, 2, 1}, {1, 3, 2}, {1, 4, 3}}));
    EXPECT_EQ(d.targets, (Matrix{{3}, {4}, {5}}));
    const auto s = var::build_lagged_design(Matrix{{1, 2}, {3, 4}, {5, 6}}, 1);
    EXPECT_EQ(s.design.rows(), 2u);
    EXPECT_EQ(s.design.cols(), 3u);
    EXPECT_EQ(s.targets.cols(), 2u);
    EXPECT_EQ(s.design, (Matrix{{1, 1, 2}, {1, 3, 4}}));
}

TEST(LaggedDesign, Errors) {
    EXPECT_THROW((void)var::build_lagged_design(column_matrix({1, 2}), 2), DataError);
    EXPECT_THROW((void)var::build_lagged_design(Matrix{{1, 2}, {3, 4}}, 1), DataError);
    const SeriesFrame f(parse_iso_date("2020-01-01"), {"x"}, {Column{1.0, std::nullopt, 3.0, 4.0, 5.0}});
    EXPECT_THROW((void)var::build_lagged_design(f, 1), DataError);
}

TEST(LaggedDesign, ColumnNames) {
    const std::vector<std::string> names{"score", "depressed"};
    EXPECT_EQ(var::design_column_name(names, 0), "const");
    EXPECT_EQ(var::design_column_name(names, 1), "L1.score");
    EXPECT_EQ(var::design_column_name(names, 2), "L1.depressed");
    EXPECT_EQ(var::design_column_name(names, 3), "L2.score");
}

TEST(FitVar, NoiselessRecursion) {
    std::vector<double> y{1.0};
    for (int t = 1; t < 50; ++t) y.push_back(0.2 + 0.5 * y.back());
    // Perturb the start so the series is not already at its fixed point.
    const auto fit = var::fit_var(column_matrix(y), {"y"}, 1);
    EXPECT_NEAR(fit.intercept[0], 0.2, 1e-9);
    EXPECT_NEAR(fit.coef[0](0, 0), 0.5, 1e-9);
    EXPECT_LT(fit.residuals.max_abs(), 1e-9);
    EXPECT_EQ(fit.t_eff, 49u);
}

// Reference values: statsmodels VAR(Y).fit(2, trend="c") on lcg_var3().
TEST(FitVar, MatchesReferenceImplementation) {
    const Matrix y = lcg_var3();
    const auto fit = var::fit_var(y, {"y1", "y2", "y3"}, 2);
    // params are (1 + Kp) × K: row = design column, column = equation.
    const double params[] = {0.0903492131000509,   -0.2359113074979575,  0.011969212957230203, 0.4899683603024237,
                             0.15965905326683588,  0.012205306215131176, 0.13563299293886474,  0.2071575964600683,
                             0.18279531559204504,  -0.12149008630015491, -0.01801541967348087, 0.3597654002243373,
                             0.09559391185791266,  0.014360964831917898, 0.1046705538464013,   0.01790682571559673,
                             -0.05209289212447803, 0.013846797646816908, 0.08374135448906438,  -0.06356291973257258,
                             0.06759138567818473};
    const double stderr_[] = {0.027826401818662645, 0.026762279192849483, 0.026632273114864283, 0.05832686059161754,
                              0.05609635546010021,  0.05582385000157484,  0.060990770407464256, 0.05865839343758846,
                              0.05837344208435054,  0.06070863113149795,  0.058387043583450496, 0.05810341039635395,
                              0.059151789398375405, 0.056889737773219526, 0.0566133782138484,   0.061657598850466545,
                              0.05929972137792574,  0.05901165457515436,  0.05946170601493597,  0.05718780272149949,
                              0.05690999521912503};
    const double pvalues[] = {0.0011667425041581062, 1.196125775123107e-18, 0.6531250023701575,    4.4499927100571623e-17,
                              0.004425032618824366,  0.8269307750497339,    0.026160007769517806,  0.00041306392296680533,
                              0.0017392713316323424, 0.04537088768071351,   0.757662591433216,     5.947642489778515e-10,
                              0.10607742690917463,   0.8007047971376253,    0.06447715476000748,   0.771492142910533,
                              0.37968993805349194,   0.8144841748182807,    0.15903511816320737,   0.26636314247453563,
                              0.23495588731436323};
    auto se_at = [&](std::size_t eq, std::size_t col) {
        return col == 0 ? fit.coef_se.intercept[eq] : fit.coef_se.lags[(col - 1) / 3](eq, (col - 1) % 3);
    };
    auto p_at = [&](std::size_t eq, std::size_t col) {
        return col == 0 ? fit.coef_p.intercept[eq] : fit.coef_p.lags[(col - 1) / 3](eq, (col - 1) % 3);
    };
    for (std::size_t col = 0; col < 7; ++col) {
        for (std::size_t eq = 0; eq < 3; ++eq) {
            EXPECT_NEAR(fit.coefficient(eq, col), params[col * 3 + eq], 1e-12);
            EXPECT_NEAR(se_at(eq, col), stderr_[col * 3 + eq], 1e-12);
            EXPECT_NEAR(p_at(eq, col), pvalues[col * 3 + eq], 1e-10 + 1e-8 * pvalues[col * 3 + eq]);
        }
    }
    const double sigma_u[] = {0.09128550154119404,   -0.006147045215362888, -0.0010852402525698547,
                              -0.006147045215362888, 0.08443721410824023,   -0.003471019987854609,
                              -0.0010852402525698547, -0.003471019987854609, 0.08361884673240415};
    const double sigma_ml[] = {0.08914121123653512,  -0.006002651535807384, -0.001059748031871905,
                               -0.006002651535807384, 0.0824537896157648,    -0.003389485961294266,
                               -0.001059748031871905, -0.003389485961294266, 0.08165464563466311};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_NEAR(fit.sigma_u(i, j), sigma_u[i * 3 + j], 1e-14);
            EXPECT_NEAR(fit.sigma_u_ml(i, j), sigma_ml[i * 3 + j], 1e-14);
        }
    }
    const auto ic = var::information_criteria(fit);
    EXPECT_NEAR(ic.aic, -7.284226018378216, 1e-10);
    EXPECT_NEAR(ic.bic, -7.023692584765419, 1e-10);
    EXPECT_NEAR(ic.fpe, 0.0006862969944681405, 1e-14);
    EXPECT_NEAR(ic.hqic, -7.179936899364964, 1e-10);
}

// Reference values: statsmodels VAR(Y).select_order(6, trend="c").ics on lcg_var3().
TEST(SelectOrder, MatchesReferenceImplementation) {
    const auto sel = var::select_order(lcg_var3(), {"y1", "y2", "y3"}, 6);
    const double aic[] = {-6.64992079034704,   -7.300827120695598, -7.282731543915731, -7.247343627396264,
                          -7.196141858937573, -7.166597636767721, -7.124870157958379};
    const double bic[] = {-6.612333241700727, -7.150476926110346, -7.01961870339154,  -6.871468140933133,
                          -6.707503726535504, -6.565196858426711, -6.410706733678431};
    const double fpe[] = {0.0012941247104187395, 0.0006749836543368785, 0.0006873241521680731, 0.0007121194667030272,
                          0.0007496015594798535, 0.000772194035926435,  0.0008052731821722662};
    const double hqic[] = {-6.634868111266562, -7.240616404373687, -7.177362790352386, -7.0968168365914845,
                           -7.0004570308913605, -6.925754771480074, -6.838869255429298};
    ASSERT_EQ(sel.table.size(), 7u);
    for (std::size_t p = 0; p < 7; ++p) {
        EXPECT_NEAR(sel.table[p].aic, aic[p], 1e-10);
        EXPECT_NEAR(sel.table[p].bic, bic[p], 1e-10);
        EXPECT_NEAR(sel.table[p].fpe, fpe[p], 1e-14);
        EXPECT_NEAR(sel.table[p].hqic, hqic[p], 1e-10);
    }
    for (auto c : var::kCriteria) EXPECT_EQ(sel.minimum(c), 1u);
    EXPECT_EQ(sel.selected, 1u);
    EXPECT_EQ(sel.selection_rule, "aic");

    const auto forced = var::select_order(lcg_var3(), {"y1", "y2", "y3"}, 6, 2);
    EXPECT_EQ(forced.selected, 2u);
    EXPECT_EQ(forced.minimum(var::Criterion::aic), 1u);
}

TEST(SelectOrder, ZeroMaxLagsAndCommonSample) {
    const auto sel = var::select_order(lcg_var3(), {"a", "b", "c"}, 0);
    ASSERT_EQ(sel.table.size(), 1u);
    EXPECT_EQ(sel.selected, 0u);
    // Every row of a max_lags = 4 table scores the same T − 4 targets.
    const Matrix y = lcg_var3();
    const auto wide = var::select_order(y, {"a", "b", "c"}, 4);
    const auto fit1 = var::fit_var(y, {"a", "b", "c"}, 1, 4);
    EXPECT_EQ(fit1.t_eff, y.rows() - 4);
    EXPECT_DOUBLE_EQ(wide.table[1].aic, var::information_criteria(fit1).aic);
}

TEST(InformationCriteria, ScalarOracle) {
    const auto y = lcg_ar1(31, 20, 0.4);
    const auto fit = var::fit_var(column_matrix(y), {"y"}, 1);
    const auto beta = scalar_ar_ols(y, 1);
    double ssr = 0.0;
    for (std::size_t t = 1; t < 20; ++t) {
        const double e = y[t] - beta(0) - beta(1) * y[t - 1];
        ssr += e * e;
    }
    const double n = 19.0;
    const double l = std::log(ssr / n);
    const double m = 2.0;
    const auto ic = var::information_criteria(fit);
    EXPECT_NEAR(ic.aic, l + 2.0 * m / n, 1e-10);
    EXPECT_NEAR(ic.bic, l + m * std::log(n) / n, 1e-10);
    EXPECT_NEAR(ic.hqic, l + 2.0 * m * std::log(std::log(n)) / n, 1e-10);
    EXPECT_NEAR(ic.fpe, (n + 2.0) / (n - 2.0) * ssr / n, 1e-10);
}

TEST(InformationCriteria, FpeOfIdentityCovariance) {
    var::VarFit fit;
    fit.var_names = {"a", "b"};
    fit.p = 1;
    fit.t_eff = 100;
    fit.sigma_u_ml = Matrix::identity(2);
    fit.coef = {Matrix(2, 2)};
    EXPECT_NEAR(var::information_criteria(fit).fpe, std::pow(103.0 / 97.0, 2), 1e-12);
    EXPECT_NEAR(var::information_criteria(fit).fpe, 1.1275, 1e-4);
}

TEST(FitVar, ScalarEquivalence) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t p = 1 + seed % 4;
        const auto y = lcg_ar2(seed, 120, 0.4, 0.2);
        const auto fit = var::fit_var(column_matrix(y), {"y"}, p);
        const auto beta = scalar_ar_ols(y, p);
        EXPECT_NEAR(fit.intercept[0], beta(0), 1e-10);
        for (std::size_t l = 0; l < p; ++l) EXPECT_NEAR(fit.coef[l](0, 0), beta(l + 1), 1e-10);
    }
}

TEST(FitVar, ResidualsOrthogonalToDesign) {
    const Matrix y = lcg_var3(5, 200);
    const auto fit = var::fit_var(y, {"a", "b", "c"}, 3);
    const auto design = var::build_lagged_design(y, 3).design;
    EXPECT_LT(linalg::transpose_times(design, fit.residuals).max_abs(), 1e-8);
}

TEST(FitVar, Deterministic) {
    const Matrix y = lcg_var3(6, 200);
    EXPECT_EQ(var::fit_var(y, {"a", "b", "c"}, 2), var::fit_var(y, {"a", "b", "c"}, 2));
}

TEST(FitVar, TStatisticsAndCovarianceShape) {
    const auto fit = var::fit_var(lcg_var3(), {"a", "b", "c"}, 2);
    for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                EXPECT_NEAR(fit.coef_t.lags[l](i, j), fit.coef[l](i, j) / fit.coef_se.lags[l](i, j), 1e-14);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_GE(fit.sigma_u(i, i), 0.0);
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(fit.sigma_u(i, j), fit.sigma_u(j, i));
    }
    EXPECT_EQ(fit.t_eff, 298u);
}

TEST(FitVar, AffineRescalingOfOneVariable) {
    const Matrix y = lcg_var3(12, 250);
    Matrix z = y;
    const double a = 7.5, b = -3.0;
    for (std::size_t r = 0; r < z.rows(); ++r) z(r, 1) = a * z(r, 1) + b;
    const auto f = var::fit_var(y, {"a", "b", "c"}, 2);
    const auto g = var::fit_var(z, {"a", "b", "c"}, 2);
    for (std::size_t l = 0; l < 2; ++l) {
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                const double factor = (i == 1 ? a : 1.0) / (j == 1 ? a : 1.0);
                EXPECT_NEAR(g.coef[l](i, j), factor * f.coef[l](i, j), 1e-9 * std::max(1.0, std::abs(factor)));
                EXPECT_NEAR(g.coef_t.lags[l](i, j), f.coef_t.lags[l](i, j), 1e-8);
            }
        }
    }
}

TEST(FitVar, RankDeficiencyNamesColumn) {
    Matrix y = lcg_var3(3, 100);
    for (std::size_t r = 0; r < y.rows(); ++r) y(r, 2) = 0.0;
    try {
        (void)var::fit_var(y, {"score", "anxious", "elevated"}, 2);
        FAIL() << "expected SingularDesignError";
    } catch (const SingularDesignError& e) {
        EXPECT_EQ(e.column(), 3u);
        EXPECT_NE(std::string(e.what()).find("L1.elevated"), std::string::npos) << e.what();
    }
}

TEST(FitVar, StabilityOfSimulatedFits) {
    simulate::VarProcessSpec spec{{"a", "b"}, {0.1, 0.2}, {Matrix{{0.5, 0.1}, {0.0, 0.4}}}, Matrix::identity(2), 200};
    int stable = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto fit = var::fit_var(simulate::simulate_var_matrix(spec, 300, seed), {"a", "b"}, 1);
        stable += var::stability_radius(fit) < 1.0;
    }
    EXPECT_GE(stable, 99);
}

TEST(ModelDocument, RoundTripIsExact) {
    auto fit = var::fit_var(lcg_var3(), {"y1", "y2", "y3"}, 2);
    fit.coef_t.intercept[1] = std::nan("");
    fit.coef_p.intercept[1] = std::nan("");
    std::stringstream doc;
    var::save_model(fit, doc);
    const auto back = var::load_model(doc);
    EXPECT_EQ(back.var_names, fit.var_names);
    EXPECT_EQ(back.coef, fit.coef);
    EXPECT_EQ(back.intercept, fit.intercept);
    EXPECT_EQ(back.sigma_u, fit.sigma_u);
    EXPECT_EQ(back.sigma_u_ml, fit.sigma_u_ml);
    EXPECT_EQ(back.coef_se, fit.coef_se);
    EXPECT_EQ(back.coef_t.lags, fit.coef_t.lags);
    EXPECT_TRUE(std::isnan(back.coef_t.intercept[1]));
    EXPECT_EQ(back.residuals, fit.residuals);
    EXPECT_EQ(back.normal_matrix_inverse, fit.normal_matrix_inverse);
    EXPECT_EQ(back.t_eff, fit.t_eff);
}

TEST(ModelDocument, TruncatedAndVersionErrors) {
    const auto fit = var::fit_var(lcg_var3(), {"y1", "y2", "y3"}, 1);
    std::stringstream doc;
    var::save_model(fit, doc);
    const std::string text = doc.str();
    std::istringstream truncated(text.substr(0, text.size() / 2));
    EXPECT_THROW((void)var::load_model(truncated), ModelFormatError);

    std::string v2 = text;
    v2.replace(v2.find("\"version\": 1"), 12, "\"version\": 2");
    std::istringstream versioned(v2);
    EXPECT_THROW((void)var::load_model(versioned), VersionError);

    std::string broken = text;
    broken.replace(broken.find("\"sigma_u\""), 9, "\"sigma_x\"");
    std::istringstream missing(broken);
    EXPECT_THROW((void)var::load_model(missing), ModelFormatError);
}
