#include "tsvar/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tsvar/error.hpp"

namespace tsvar::dist {

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_two_sided_p(double z) noexcept { return std::erfc(std::abs(z) / std::numbers::sqrt2); }

namespace {

// Continued fraction for I_x(a,b), modified Lentz. Converges for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 100000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw ConvergenceError("incomplete_beta: continued fraction did not converge");
}

// Stirling series remainder: lgamma(z) − [(z − ½)ln z − z + ½ln 2π].
double stirling_remainder(double z) {
    const double z2 = z * z;
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) / z;
}

// ln B(a, b). With one large argument the naive lgamma difference loses about
// lgamma(b)·ε absolute accuracy, so the large-argument pair is expanded directly.
double log_beta(double a, double b) {
    if (a > b) std::swap(a, b);
    if (b < 10.0) return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const double s = a + b;
    const double corr = stirling_remainder(b) - stirling_remainder(s);
    // lgamma(b) − lgamma(a + b)
    const double diff = -a * std::log(s) - (b - 0.5) * std::log1p(a / b) + a + corr;
    if (a < 10.0) return std::lgamma(a) + diff;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (a - 0.5) * std::log(a) - a + stirling_remainder(a) + diff;
}

// I_x(a, b) with y = 1 − x supplied by the caller, so x near 1 keeps full precision.
double incomplete_beta_xy(double a, double b, double x, double y) {
    const double log_x = x > 0.5 ? std::log1p(-y) : std::log(x);
    const double log_y = y > 0.5 ? std::log1p(-x) : std::log(y);
    const double front = std::exp(a * log_x + b * log_y - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete_beta: a and b must be > 0");
    if (std::isnan(x)) return x;
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return incomplete_beta_xy(a, b, x, 1.0 - x);
}

double f_cdf(double x, double df_num, double df_den) {
    if (!(df_num > 0.0) || !(df_den > 0.0)) throw std::invalid_argument("f_cdf: degrees of freedom must be > 0");
    if (std::isnan(x)) return x;
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double u = df_num * x;
    return incomplete_beta_xy(0.5 * df_num, 0.5 * df_den, u / (u + df_den), df_den / (u + df_den));
}

double f_sf(double x, double df_num, double df_den) {
    if (!(df_num > 0.0) || !(df_den > 0.0)) throw std::invalid_argument("f_sf: degrees of freedom must be > 0");
    if (std::isnan(x)) return x;
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    const double u = df_num * x;
    return incomplete_beta_xy(0.5 * df_den, 0.5 * df_num, df_den / (u + df_den), u / (u + df_den));
}

double f_quantile(double p, double df_num, double df_den) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("f_quantile: p must be in (0, 1)");
    // Bracket, then bisect on the monotone CDF; 200 halvings reach double resolution.
    double lo = 0.0;
    double hi = 1.0;
    while (f_cdf(hi, df_num, df_den) < p) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw ConvergenceError("f_quantile: could not bracket quantile");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (f_cdf(mid, df_num, df_den) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace tsvar::dist
