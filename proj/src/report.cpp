#include "tsvar/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

#include "json_util.hpp"
#include "tsvar/error.hpp"

namespace tsvar::report {

namespace {

std::string repeat(char c, std::size_t n) { return std::string(n, c); }

std::string shortest(double v) { return fmt::format("{}", v); }

std::string optional_cell(const std::optional<double>& v) { return v ? shortest(*v) : std::string{}; }

}  // namespace

std::string TextTable::render() const {
    const std::size_t ncols = header.size();
    std::vector<std::size_t> width(ncols, 0);
    for (std::size_t c = 0; c < ncols; ++c) width[c] = header[c].size();
    for (const auto& row : rows) {
        if (row.size() != ncols) throw std::logic_error("TextTable: row width mismatch");
        for (std::size_t c = 0; c < ncols; ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::size_t total = 0;
    for (std::size_t c = 0; c < ncols; ++c) total += width[c] + (c == 0 ? 0 : 3);
    total = std::max(total, title.size());

    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < ncols; ++c) {
            if (c == 0) {
                s += fmt::format("{:<{}}", cells[c], width[c]);
            } else {
                s += fmt::format("   {:>{}}", cells[c], width[c]);
            }
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s + '\n';
    };

    std::string out;
    if (!title.empty()) out += title + '\n';
    out += repeat('=', total) + '\n';
    out += line(header);
    out += repeat('-', total) + '\n';
    for (const auto& row : rows) out += line(row);
    out += repeat('=', total) + '\n';
    if (!footer.empty()) out += footer + '\n';
    return out;
}

std::string describe_table(const SeriesFrame& frame, const std::vector<std::string>& columns) {
    TextTable t;
    t.title = "Descriptive statistics";
    t.header.push_back("");
    std::vector<SummaryStats> stats;
    std::vector<std::size_t> nonzero;
    for (const auto& c : columns) {
        t.header.push_back(c);
        stats.push_back(describe(frame, c));
        nonzero.push_back(nonzero_count(frame, c));
    }
    auto add = [&](std::string label, auto&& cell) {
        std::vector<std::string> row{std::move(label)};
        for (std::size_t i = 0; i < stats.size(); ++i) row.push_back(cell(i));
        t.rows.push_back(std::move(row));
    };
    add("Total", [&](std::size_t i) { return std::to_string(stats[i].total); });
    add("Missing", [&](std::size_t i) { return std::to_string(stats[i].missing); });
    add("Mean", [&](std::size_t i) { return fmt::format("{:.2f}", stats[i].mean); });
    add("SD", [&](std::size_t i) { return fmt::format("{:.2f}", stats[i].sd); });
    add("Max", [&](std::size_t i) { return fmt::format("{:.2f}", stats[i].max); });
    add("Min", [&](std::size_t i) { return fmt::format("{:.2f}", stats[i].min); });
    add("Non-zero", [&](std::size_t i) { return std::to_string(nonzero[i]); });
    return t.render();
}

std::string adf_block(std::string_view name, const stationarity::AdfResult& r, double alpha) {
    std::string out = fmt::format("Augmented Dickey-Fuller test: {}\n", name);
    const auto line = [&out](std::string_view label, const auto& value) {
        out += fmt::format("  {:<20}{}\n", label, value);
    };
    line("regression", stationarity::to_string(r.regression));
    line("test statistic", fmt::format("{:.4f}", r.statistic));
    line("p-value", fmt::format("{:.4f}", r.p_value));
    line("lags used", r.used_lag);
    line("observations", r.n_obs);
    line("critical value 1%", fmt::format("{:.4f}", r.critical_values[0]));
    line("critical value 5%", fmt::format("{:.4f}", r.critical_values[1]));
    line("critical value 10%", fmt::format("{:.4f}", r.critical_values[2]));
    if (r.degenerate) out += "  note: the test regression fits exactly; the statistic is a boundary value\n";
    out += fmt::format("  null hypothesis: unit root; {} at alpha = {}\n",
                       r.p_value < alpha ? "rejected (stationary, no differencing needed)"
                                         : "not rejected (differencing advised)",
                       alpha);
    return out;
}

std::string order_selection_table(const var::OrderSelection& sel) {
    TextTable t;
    t.title = "VAR order selection (* highlights the minimum)";
    t.header = {"", "AIC", "BIC", "FPE", "HQIC"};
    for (std::size_t p = 0; p < sel.table.size(); ++p) {
        std::vector<std::string> row{std::to_string(p)};
        for (auto c : var::kCriteria) {
            std::string cell = fmt::format("{:#.4g}", var::value(sel.table[p], c));
            if (sel.minimum(c) == p) cell += '*';
            row.push_back(std::move(cell));
        }
        t.rows.push_back(std::move(row));
    }
    t.footer = fmt::format("selected lag: {} ({})", sel.selected, sel.selection_rule);
    return t.render();
}

std::string fit_report(const var::VarFit& fit) {
    const std::size_t k = fit.k();
    const std::size_t m = k * fit.p + 1;
    std::string out = fmt::format("VAR({}) estimated by OLS: {} equations, {} observations, df resid {}\n\n", fit.p, k,
                                  fit.t_eff, fit.df_resid());
    auto pick = [&](const var::CoefficientSet& set, std::size_t eq, std::size_t col) {
        return col == 0 ? set.intercept[eq] : set.lags[(col - 1) / k](eq, (col - 1) % k);
    };
    for (std::size_t eq = 0; eq < k; ++eq) {
        TextTable t;
        t.title = "VAR results for equation " + fit.var_names[eq];
        t.header = {"", "coefficient", "std. error", "t-stat", "prob"};
        for (std::size_t col = 0; col < m; ++col) {
            t.rows.push_back({var::design_column_name(fit.var_names, col), fmt::format("{:.6f}", fit.coefficient(eq, col)),
                              fmt::format("{:.6f}", pick(fit.coef_se, eq, col)),
                              fmt::format("{:.3f}", pick(fit.coef_t, eq, col)),
                              fmt::format("{:.3f}", pick(fit.coef_p, eq, col))});
        }
        out += t.render();
        if (eq + 1 < k) out += '\n';
    }
    return out;
}

std::string granger_table(std::span<const inference::GrangerResult> results) {
    TextTable t;
    t.title = "Granger causality F tests (* rejects the null of no Granger causality)";
    t.header = {"Causal Variable", "Variable", "Test statistic", "Critical value", "p-value", "df"};
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
        return s;
    };
    for (const auto& r : results) {
        t.rows.push_back({join(r.causing), join(r.caused), fmt::format("{:.3f}", r.statistic),
                          fmt::format("{:.3f}", r.critical_value),
                          fmt::format("{:.3f}{}", r.p_value, r.reject_null ? "*" : ""),
                          fmt::format("({}, {})", r.df_num, r.df_den)});
    }
    if (!results.empty()) t.footer = fmt::format("alpha = {}", results.front().alpha);
    return t.render();
}

std::string decomposition_csv(std::span<const double> observed, const stationarity::Decomposition& d) {
    std::string out = "index,observed,trend,seasonal,residual\n";
    for (std::size_t i = 0; i < observed.size(); ++i) {
        out += fmt::format("{},{},{},{},{}\n", i, shortest(observed[i]), optional_cell(d.trend[i]), shortest(d.seasonal[i]),
                           optional_cell(d.residual[i]));
    }
    return out;
}

std::string pacf_csv(const stationarity::PacfResult& r) {
    std::string out = "lag,pacf,band\n";
    for (std::size_t i = 0; i < r.values.size(); ++i) out += fmt::format("{},{},{}\n", i, shortest(r.values[i]), shortest(r.band));
    return out;
}

std::string irf_csv(const irf::IrfResult& r) {
    std::string out = "horizon,impulse,response,estimate,lower,upper\n";
    const std::size_t k = r.var_names.size();
    for (std::size_t h = 0; h <= r.horizon; ++h)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < k; ++i)
                out += fmt::format("{},{},{},{},{},{}\n", h, r.var_names[j], r.var_names[i], shortest(r.responses[h](i, j)),
                                   shortest(r.lower[h](i, j)), shortest(r.upper[h](i, j)));
    return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

Range start_range() {
    return {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
}

Range padded(Range r) {
    if (!(r.lo <= r.hi)) return {-1.0, 1.0};
    if (r.hi - r.lo < 1e-12) {
        const double pad = std::max(std::abs(r.lo) * 0.1, 1.0);
        return {r.lo - pad, r.hi + pad};
    }
    const double pad = 0.05 * (r.hi - r.lo);
    return {r.lo - pad, r.hi + pad};
}

std::vector<double> nice_ticks(Range r, int target = 5) {
    const double raw = (r.hi - r.lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 5.0, 10.0}) {
        step = f * mag;
        if (step >= raw) break;
    }
    std::vector<double> ticks;
    for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-9 * step; v += step) {
        ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return ticks;
}

std::string tick_label(double v) { return fmt::format("{:g}", v); }

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

class Panel {
public:
    Panel(double x, double y, double w, double h, Range xr, Range yr) : x_(x), y_(y), w_(w), h_(h), xr_(xr), yr_(yr) {}

    [[nodiscard]] double px(double v) const { return x_ + (v - xr_.lo) / (xr_.hi - xr_.lo) * w_; }
    [[nodiscard]] double py(double v) const { return y_ + h_ - (v - yr_.lo) / (yr_.hi - yr_.lo) * h_; }

    [[nodiscard]] std::string frame(std::string_view title) const {
        std::string s = fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="#444"/>)"
                                    "\n",
                                    x_, y_, w_, h_);
        s += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="12" text-anchor="middle">{}</text>)"
                         "\n",
                         x_ + w_ / 2, y_ - 6, escape(title));
        for (double t : nice_ticks(yr_)) {
            s += fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="#444"/>)"
                             "\n",
                             x_ - 4, py(t), x_, py(t));
            s += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="9" text-anchor="end">{}</text>)"
                             "\n",
                             x_ - 6, py(t) + 3, tick_label(t));
        }
        for (double t : nice_ticks(xr_)) {
            s += fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="#444"/>)"
                             "\n",
                             px(t), y_ + h_, px(t), y_ + h_ + 4);
            s += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="9" text-anchor="middle">{}</text>)"
                             "\n",
                             px(t), y_ + h_ + 14, tick_label(t));
        }
        return s;
    }

    [[nodiscard]] std::string hline(double v, std::string_view style) const {
        return fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" {}/>)"
                           "\n",
                           x_, py(v), x_ + w_, py(v), style);
    }

    /// Polyline through (xs, ys); missing points split the path.
    [[nodiscard]] std::string path(const std::vector<double>& xs, const std::vector<std::optional<double>>& ys,
                                   std::string_view stroke) const {
        std::string d;
        bool pen_down = false;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!ys[i] || !std::isfinite(*ys[i])) {
                pen_down = false;
                continue;
            }
            d += fmt::format("{}{:.2f},{:.2f} ", pen_down ? "L" : "M", px(xs[i]), py(*ys[i]));
            pen_down = true;
        }
        if (d.empty()) return {};
        d.pop_back();
        return fmt::format(R"(<path d="{}" fill="none" stroke="{}" stroke-width="1.2"/>)"
                           "\n",
                           d, stroke);
    }

    [[nodiscard]] std::string band(const std::vector<double>& xs, const std::vector<double>& lo,
                                   const std::vector<double>& hi) const {
        std::string pts;
        for (std::size_t i = 0; i < xs.size(); ++i) pts += fmt::format("{:.2f},{:.2f} ", px(xs[i]), py(hi[i]));
        for (std::size_t i = xs.size(); i-- > 0;) pts += fmt::format("{:.2f},{:.2f} ", px(xs[i]), py(lo[i]));
        if (!pts.empty()) pts.pop_back();
        return fmt::format(R"(<polygon points="{}" fill="#1f77b4" fill-opacity="0.25" stroke="none"/>)"
                           "\n",
                           pts);
    }

private:
    double x_, y_, w_, h_;
    Range xr_, yr_;
};

std::string svg_open(double w, double h) {
    return fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{:.0f}" height="{:.0f}" viewBox="0 0 {:.0f} {:.0f}" font-family="sans-serif">)"
                       "\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
                       w, h, w, h);
}

std::vector<double> iota(std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(i);
    return xs;
}

}  // namespace

std::string decomposition_svg(std::string_view name, std::span<const double> observed,
                              const stationarity::Decomposition& d) {
    const double width = 900, panel_h = 140, left = 70, top = 40, gap = 50;
    const std::size_t n = observed.size();
    const auto xs = iota(n);
    std::vector<std::vector<std::optional<double>>> series(4);
    for (std::size_t i = 0; i < n; ++i) {
        series[0].push_back(observed[i]);
        series[1].push_back(d.trend[i]);
        series[2].push_back(d.seasonal[i]);
        series[3].push_back(d.residual[i]);
    }
    const char* titles[] = {"observed", "trend", "seasonal", "residual"};
    std::string out = svg_open(width, top + 4 * (panel_h + gap));
    out += fmt::format(R"(<text x="{:.0f}" y="18" font-size="14" text-anchor="middle">Additive decomposition of {} (period {})</text>)"
                       "\n",
                       width / 2, escape(name), d.period);
    for (std::size_t p = 0; p < 4; ++p) {
        Range yr = start_range();
        for (const auto& v : series[p])
            if (v) yr.include(*v);
        const Panel panel(left, top + static_cast<double>(p) * (panel_h + gap), width - left - 20, panel_h,
                          {0.0, static_cast<double>(std::max<std::size_t>(n, 2) - 1)}, padded(yr));
        out += panel.frame(titles[p]);
        out += panel.path(xs, series[p], "#1f77b4");
    }
    return out + "</svg>\n";
}

std::string pacf_svg(std::string_view name, const stationarity::PacfResult& r) {
    const double width = 720, height = 360, left = 60, top = 40;
    const double n = static_cast<double>(r.values.size());
    Range yr{-1.0, 1.0};
    const Panel panel(left, top, width - left - 20, height - top - 40, {-0.5, n - 0.5}, padded(yr));
    std::string out = svg_open(width, height);
    out += panel.frame(fmt::format("Partial autocorrelation of {}", name));
    out += panel.hline(0.0, R"(stroke="#444")");
    out += panel.hline(r.band, R"(stroke="#d62728" stroke-dasharray="4,3")");
    out += panel.hline(-r.band, R"(stroke="#d62728" stroke-dasharray="4,3")");
    for (std::size_t lag = 0; lag < r.values.size(); ++lag) {
        const double x = panel.px(static_cast<double>(lag));
        out += fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="#1f77b4"/>)"
                           "\n",
                           x, panel.py(0.0), x, panel.py(r.values[lag]));
        out += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="2.5" fill="#1f77b4"/>)"
                           "\n",
                           x, panel.py(r.values[lag]));
    }
    return out + "</svg>\n";
}

std::string irf_svg(const irf::IrfResult& r) {
    const std::size_t k = r.var_names.size();
    const double cell_w = 220, cell_h = 160, left = 60, top = 50, gap_x = 40, gap_y = 50;
    const double width = left + static_cast<double>(k) * (cell_w + gap_x);
    const double height = top + static_cast<double>(k) * (cell_h + gap_y);
    const auto xs = iota(r.horizon + 1);
    std::string out = svg_open(width, height);
    out += fmt::format(R"(<text x="{:.0f}" y="20" font-size="14" text-anchor="middle">{} impulse responses with {:g}% bands</text>)"
                       "\n",
                       width / 2, r.orthogonalized ? "Orthogonalized" : "Non-orthogonalized", r.level * 100.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<double> lo, hi;
            std::vector<std::optional<double>> est;
            Range yr = start_range();
            yr.include(0.0);
            for (std::size_t h = 0; h <= r.horizon; ++h) {
                lo.push_back(r.lower[h](i, j));
                hi.push_back(r.upper[h](i, j));
                est.emplace_back(r.responses[h](i, j));
                yr.include(lo.back());
                yr.include(hi.back());
            }
            const Panel panel(left + static_cast<double>(j) * (cell_w + gap_x), top + static_cast<double>(i) * (cell_h + gap_y),
                              cell_w, cell_h, {0.0, static_cast<double>(std::max<std::size_t>(r.horizon, 1))}, padded(yr));
            out += panel.frame(fmt::format("{} -> {}", r.var_names[j], r.var_names[i]));
            out += panel.band(xs, lo, hi);
            out += panel.hline(0.0, R"(stroke="#888" stroke-dasharray="3,3")");
            out += panel.path(xs, est, "#1f77b4");
        }
    }
    return out + "</svg>\n";
}

// ---------------------------------------------------------------------------
// JSON

json summary_json(const SeriesFrame& frame, const std::string& column) {
    const SummaryStats s = describe(frame, column);
    return json{{"variable", column}, {"total", s.total}, {"missing", s.missing}, {"mean", s.mean}, {"sd", s.sd},
                {"max", s.max},       {"min", s.min},     {"nonzero", nonzero_count(frame, column)}};
}

json adf_json(std::string_view name, const stationarity::AdfResult& r, double alpha) {
    return json{{"variable", name},
                {"regression", stationarity::to_string(r.regression)},
                {"statistic", r.statistic},
                {"p_value", r.p_value},
                {"used_lag", r.used_lag},
                {"n_obs", r.n_obs},
                {"critical_values", {{"1%", r.critical_values[0]}, {"5%", r.critical_values[1]}, {"10%", r.critical_values[2]}}},
                {"degenerate", r.degenerate},
                {"alpha", alpha},
                {"needs_differencing", r.p_value > alpha}};
}

json order_selection_json(const var::OrderSelection& sel) {
    json table = json::array();
    for (std::size_t p = 0; p < sel.table.size(); ++p) {
        json row{{"lag", p}};
        for (auto c : var::kCriteria) row[std::string(var::to_string(c))] = var::value(sel.table[p], c);
        table.push_back(std::move(row));
    }
    json minima;
    for (auto c : var::kCriteria) minima[std::string(var::to_string(c))] = sel.minimum(c);
    return json{{"max_lags", sel.max_lags},
                {"table", std::move(table)},
                {"minima", std::move(minima)},
                {"selected", sel.selected},
                {"selection_rule", sel.selection_rule}};
}

json granger_json(const inference::GrangerResult& r) {
    return json{{"causing", r.causing},     {"caused", r.caused}, {"statistic", r.statistic},
                {"critical_value", r.critical_value}, {"p_value", r.p_value}, {"df_num", r.df_num},
                {"df_den", r.df_den},       {"alpha", r.alpha},   {"reject_null", r.reject_null}};
}

inference::GrangerResult granger_from_json(const json& doc) {
    try {
        inference::GrangerResult r;
        r.causing = detail::require(doc, "causing").get<std::vector<std::string>>();
        r.caused = detail::require(doc, "caused").get<std::vector<std::string>>();
        r.statistic = detail::require(doc, "statistic").get<double>();
        r.critical_value = detail::require(doc, "critical_value").get<double>();
        r.p_value = detail::require(doc, "p_value").get<double>();
        r.df_num = detail::require(doc, "df_num").get<std::size_t>();
        r.df_den = detail::require(doc, "df_den").get<std::size_t>();
        r.alpha = detail::require(doc, "alpha").get<double>();
        r.reject_null = detail::require(doc, "reject_null").get<bool>();
        return r;
    } catch (const json::exception& e) {
        throw ModelFormatError(std::string("granger document: ") + e.what());
    }
}

json irf_json(const irf::IrfResult& r) {
    auto tensor = [](const std::vector<linalg::Matrix>& t) {
        json out = json::array();
        for (const auto& m : t) out.push_back(detail::matrix_to_json(m));
        return out;
    };
    return json{{"var_names", r.var_names},
                {"horizon", r.horizon},
                {"orthogonalized", r.orthogonalized},
                {"level", r.level},
                {"replications", r.replications},
                {"failed_replications", r.failed_replications},
                {"seed", r.seed},
                {"responses", tensor(r.responses)},
                {"lower", tensor(r.lower)},
                {"upper", tensor(r.upper)}};
}

irf::IrfResult irf_from_json(const json& doc) {
    try {
        irf::IrfResult r;
        r.var_names = detail::require(doc, "var_names").get<std::vector<std::string>>();
        r.horizon = detail::require(doc, "horizon").get<std::size_t>();
        r.orthogonalized = detail::require(doc, "orthogonalized").get<bool>();
        r.level = detail::require(doc, "level").get<double>();
        r.replications = detail::require(doc, "replications").get<std::size_t>();
        r.failed_replications = detail::require(doc, "failed_replications").get<std::size_t>();
        r.seed = detail::require(doc, "seed").get<std::uint64_t>();
        const std::size_t k = r.var_names.size();
        auto tensor = [&](const char* field) {
            const json& t = detail::require(doc, field);
            if (!t.is_array() || t.size() != r.horizon + 1) {
                throw ModelFormatError(std::string("field '") + field + "' must hold horizon + 1 matrices");
            }
            std::vector<linalg::Matrix> out;
            for (const auto& m : t) out.push_back(detail::matrix_from_json(m, field, k, k));
            return out;
        };
        r.responses = tensor("responses");
        r.lower = tensor("lower");
        r.upper = tensor("upper");
        return r;
    } catch (const json::exception& e) {
        throw ModelFormatError(std::string("irf document: ") + e.what());
    }
}

json pacf_json(const stationarity::PacfResult& r) { return json{{"values", r.values}, {"band", r.band}}; }

json decomposition_json(std::span<const double> observed, const stationarity::Decomposition& d) {
    json trend = json::array(), residual = json::array();
    for (std::size_t i = 0; i < observed.size(); ++i) {
        trend.push_back(d.trend[i] ? json(*d.trend[i]) : json(nullptr));
        residual.push_back(d.residual[i] ? json(*d.residual[i]) : json(nullptr));
    }
    return json{{"period", d.period},
                {"observed", std::vector<double>(observed.begin(), observed.end())},
                {"trend", std::move(trend)},
                {"seasonal", d.seasonal},
                {"residual", std::move(residual)}};
}

}  // namespace tsvar::report
