#pragma once

namespace tsvar::dist {

[[nodiscard]] double normal_cdf(double x) noexcept;

/// Two-sided p-value of a standard normal statistic.
[[nodiscard]] double normal_two_sided_p(double z) noexcept;

/// Regularized incomplete beta I_x(a, b), Lentz continued fraction.
[[nodiscard]] double incomplete_beta(double a, double b, double x);

[[nodiscard]] double f_cdf(double x, double df_num, double df_den);
[[nodiscard]] double f_sf(double x, double df_num, double df_den);

/// Quantile of F(df_num, df_den) at probability `p` in (0, 1).
[[nodiscard]] double f_quantile(double p, double df_num, double df_den);

}  // namespace tsvar::dist
