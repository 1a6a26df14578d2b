#include "tsvar/frame.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "tsvar/error.hpp"

namespace tsvar {

namespace {

using namespace std::chrono;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(pos)));
            return out;
        }
        out.push_back(trim(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;  // (line number, cells)
};

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (trim(view).empty()) continue;
        auto cells = split_commas(view);
        if (!have_header) {
            for (auto c : cells) table.header.emplace_back(c);
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(table.header.size()) + " fields, found " +
                            std::to_string(cells.size()));
        }
        std::vector<std::string> owned(cells.begin(), cells.end());
        table.rows.emplace_back(line_no, std::move(owned));
    }
    if (!have_header) throw DataError("empty file: header row required");
    if (table.rows.empty()) throw DataError("file has a header but no data rows");
    return table;
}

std::string at_line(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

Date parse_date_at(std::string_view text, std::size_t line_no) {
    try {
        return parse_iso_date(text);
    } catch (const DataError& e) {
        throw DataError(at_line(line_no) + e.what());
    }
}

long parse_integer(std::string_view text, std::size_t line_no, std::string_view what) {
    long value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw DataError(at_line(line_no) + std::string(what) + " '" + std::string(text) +
                        "' is not an integer");
    }
    return value;
}

double parse_real(std::string_view text, std::size_t line_no) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last || !std::isfinite(value)) {
        throw DataError(at_line(line_no) + "value '" + std::string(text) + "' is not a finite number");
    }
    return value;
}

std::size_t day_offset(Date from, Date to) {
    return static_cast<std::size_t>((to - from).count());
}

}  // namespace

Date parse_iso_date(std::string_view text) {
    auto bad = [&] { return DataError("malformed date '" + std::string(text) + "' (expected YYYY-MM-DD)"); };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
    auto digits = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (text[i] < '0' || text[i] > '9') throw bad();
            v = v * 10 + (text[i] - '0');
        }
        return v;
    };
    const year_month_day ymd{year{digits(0, 4)}, month{static_cast<unsigned>(digits(5, 2))},
                             day{static_cast<unsigned>(digits(8, 2))}};
    if (!ymd.ok()) throw bad();
    return sys_days{ymd};
}

std::string format_iso_date(Date d) {
    const year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

SeriesFrame::SeriesFrame(Date start, std::vector<std::string> names, std::vector<Column> columns)
    : start_(start), names_(std::move(names)), columns_(std::move(columns)) {
    if (names_.empty()) throw std::invalid_argument("SeriesFrame: at least one column required");
    if (names_.size() != columns_.size()) {
        throw std::invalid_argument("SeriesFrame: names and columns differ in count");
    }
    const std::size_t t = columns_.front().size();
    if (t == 0) throw std::invalid_argument("SeriesFrame: columns must have length >= 1");
    std::set<std::string_view> seen;
    for (std::size_t c = 0; c < names_.size(); ++c) {
        if (names_[c].empty()) throw std::invalid_argument("SeriesFrame: empty column name");
        if (!seen.insert(names_[c]).second) {
            throw DataError("duplicate variable name '" + names_[c] + "'");
        }
        if (columns_[c].size() != t) {
            throw std::invalid_argument("SeriesFrame: column '" + names_[c] + "' has a different length");
        }
    }
}

Date SeriesFrame::end_date() const noexcept { return date_at(rows() - 1); }

Date SeriesFrame::date_at(std::size_t row) const noexcept {
    return start_ + days{static_cast<long>(row)};
}

std::optional<std::size_t> SeriesFrame::find(std::string_view name) const noexcept {
    for (std::size_t c = 0; c < names_.size(); ++c)
        if (names_[c] == name) return c;
    return std::nullopt;
}

std::size_t SeriesFrame::index_of(std::string_view name) const {
    if (auto idx = find(name)) return *idx;
    throw DataError("unknown column '" + std::string(name) + "'");
}

std::size_t SeriesFrame::missing_count() const noexcept {
    std::size_t n = 0;
    for (const auto& col : columns_)
        n += static_cast<std::size_t>(std::count(col.begin(), col.end(), std::nullopt));
    return n;
}

linalg::Matrix SeriesFrame::to_matrix() const {
    linalg::Matrix m(rows(), cols());
    for (std::size_t c = 0; c < cols(); ++c) {
        for (std::size_t r = 0; r < rows(); ++r) {
            if (!columns_[c][r]) {
                throw DataError("missing value in column '" + names_[c] + "' on " +
                                format_iso_date(date_at(r)) + "; impute first");
            }
            m(r, c) = *columns_[c][r];
        }
    }
    return m;
}

std::vector<double> SeriesFrame::dense_column(std::string_view name) const {
    const auto c = index_of(name);
    std::vector<double> out(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        if (!columns_[c][r]) {
            throw DataError("missing value in column '" + names_[c] + "' on " +
                            format_iso_date(date_at(r)));
        }
        out[r] = *columns_[c][r];
    }
    return out;
}

SeriesFrame frame_from_matrix(Date start, std::vector<std::string> names, const linalg::Matrix& data) {
    std::vector<Column> cols(data.cols(), Column(data.rows()));
    for (std::size_t r = 0; r < data.rows(); ++r)
        for (std::size_t c = 0; c < data.cols(); ++c) cols[c][r] = data(r, c);
    return SeriesFrame(start, std::move(names), std::move(cols));
}

VariableSpec sleep_score_spec() { return {"score", VariableKind::sleep_score, 1.0, 100.0}; }

VariableSpec mood_spec(std::string name) { return {std::move(name), VariableKind::mood, 0.0, 3.0}; }

SeriesFrame ingest_sleep(std::istream& in) {
    const CsvTable table = read_csv(in);
    if (table.header != std::vector<std::string>{"date", "score"}) {
        throw DataError("sleep file header must be 'date,score'");
    }
    const VariableSpec spec = sleep_score_spec();
    std::map<Date, Cell> by_date;
    for (const auto& [line_no, cells] : table.rows) {
        const Date d = parse_date_at(cells[0], line_no);
        Cell value;
        if (!cells[1].empty()) {
            const long score = parse_integer(cells[1], line_no, "score");
            if (score < spec.min || score > spec.max) {
                throw DataError(at_line(line_no) + "score " + std::to_string(score) +
                                " outside [1, 100]");
            }
            value = static_cast<double>(score);
        }
        if (!by_date.emplace(d, value).second) {
            throw DataError(at_line(line_no) + "duplicate date " + format_iso_date(d));
        }
    }
    const Date start = by_date.begin()->first;
    const std::size_t t = day_offset(start, by_date.rbegin()->first) + 1;
    Column col(t);
    for (const auto& [d, v] : by_date) col[day_offset(start, d)] = v;
    return SeriesFrame(start, {spec.name}, {std::move(col)});
}

SeriesFrame ingest_mood(std::istream& in, const MoodIngestOptions& options) {
    const CsvTable table = read_csv(in);
    if (table.header.size() != 5 || table.header[0] != "date") {
        throw DataError("mood file header must be 'date,depressed,anxious,irritable,elevated'");
    }
    // Map canonical mood order onto file positions.
    std::array<std::size_t, 4> source{};
    for (std::size_t m = 0; m < 4; ++m) {
        const auto it = std::find(table.header.begin() + 1, table.header.end(), kMoodColumns[m]);
        if (it == table.header.end()) {
            throw DataError("mood file header is missing column '" + std::string(kMoodColumns[m]) + "'");
        }
        source[m] = static_cast<std::size_t>(it - table.header.begin());
    }

    std::map<Date, std::array<Cell, 4>> by_date;
    for (const auto& [line_no, cells] : table.rows) {
        const Date d = parse_date_at(cells[0], line_no);
        auto& slot = by_date[d];
        for (std::size_t m = 0; m < 4; ++m) {
            const std::string& text = cells[source[m]];
            if (text.empty()) continue;
            const long v = parse_integer(text, line_no, kMoodColumns[m]);
            if (v < 0 || v > 3) {
                throw DataError(at_line(line_no) + std::string(kMoodColumns[m]) + " value " +
                                std::to_string(v) + " outside {0,1,2,3}");
            }
            // Most severe rating of the day wins.
            slot[m] = std::max(slot[m].value_or(0.0), static_cast<double>(v));
        }
    }

    const Date start = by_date.begin()->first;
    const std::size_t t = day_offset(start, by_date.rbegin()->first) + 1;
    const Cell fill = options.absent_as_zero ? Cell{0.0} : Cell{};
    std::vector<Column> cols(4, Column(t, fill));
    for (const auto& [d, values] : by_date) {
        const auto row = day_offset(start, d);
        for (std::size_t m = 0; m < 4; ++m) cols[m][row] = values[m] ? values[m] : fill;
    }
    std::vector<std::string> names(std::begin(kMoodColumns), std::end(kMoodColumns));
    return SeriesFrame(start, std::move(names), std::move(cols));
}

SeriesFrame read_frame_csv(std::istream& in) {
    const CsvTable table = read_csv(in);
    if (table.header.size() < 2 || table.header[0] != "date") {
        throw DataError("frame file header must be 'date,<name1>,...'");
    }
    const std::size_t k = table.header.size() - 1;
    std::map<Date, std::vector<Cell>> by_date;
    for (const auto& [line_no, cells] : table.rows) {
        const Date d = parse_date_at(cells[0], line_no);
        std::vector<Cell> values(k);
        for (std::size_t c = 0; c < k; ++c)
            if (!cells[c + 1].empty()) values[c] = parse_real(cells[c + 1], line_no);
        if (!by_date.emplace(d, std::move(values)).second) {
            throw DataError(at_line(line_no) + "duplicate date " + format_iso_date(d));
        }
    }
    const Date start = by_date.begin()->first;
    const std::size_t t = day_offset(start, by_date.rbegin()->first) + 1;
    std::vector<Column> cols(k, Column(t));
    for (const auto& [d, values] : by_date) {
        const auto row = day_offset(start, d);
        for (std::size_t c = 0; c < k; ++c) cols[c][row] = values[c];
    }
    return SeriesFrame(start, {table.header.begin() + 1, table.header.end()}, std::move(cols));
}

namespace {

template <typename Reader>
SeriesFrame read_path(const std::string& path, Reader&& reader) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return reader(in);
}

}  // namespace

SeriesFrame ingest_sleep_file(const std::string& path) {
    return read_path(path, [](std::istream& in) { return ingest_sleep(in); });
}

SeriesFrame ingest_mood_file(const std::string& path, const MoodIngestOptions& options) {
    return read_path(path, [&](std::istream& in) { return ingest_mood(in, options); });
}

SeriesFrame read_frame_csv_file(const std::string& path) {
    return read_path(path, [](std::istream& in) { return read_frame_csv(in); });
}

void write_csv(const SeriesFrame& frame, std::ostream& out) {
    out << "date";
    for (const auto& n : frame.names()) out << ',' << n;
    out << '\n';
    char buf[32];
    for (std::size_t r = 0; r < frame.rows(); ++r) {
        out << format_iso_date(frame.date_at(r));
        for (std::size_t c = 0; c < frame.cols(); ++c) {
            out << ',';
            if (const auto& v = frame.column(c)[r]) {
                const auto res = std::to_chars(buf, buf + sizeof buf, *v);
                out.write(buf, res.ptr - buf);
            }
        }
        out << '\n';
    }
}

SeriesFrame merge(std::span<const SeriesFrame> frames) {
    if (frames.empty()) throw std::invalid_argument("merge: no frames");
    Date start = frames.front().start_date();
    Date end = frames.front().end_date();
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& f : frames) {
        start = std::min(start, f.start_date());
        end = std::max(end, f.end_date());
        for (const auto& n : f.names()) {
            if (!seen.insert(n).second) throw DataError("merge: variable name '" + n + "' appears in more than one frame");
            names.push_back(n);
        }
    }
    const std::size_t t = day_offset(start, end) + 1;
    std::vector<Column> cols;
    for (const auto& f : frames) {
        const std::size_t offset = day_offset(start, f.start_date());
        for (std::size_t c = 0; c < f.cols(); ++c) {
            Column col(t);
            std::copy(f.column(c).begin(), f.column(c).end(), col.begin() + static_cast<long>(offset));
            cols.push_back(std::move(col));
        }
    }
    return SeriesFrame(start, std::move(names), std::move(cols));
}

ImputePolicy parse_impute_policy(std::string_view text) {
    if (text == "forward_fill" || text == "ffill") return ImputePolicy::forward_fill;
    if (text == "linear") return ImputePolicy::linear;
    if (text == "none") return ImputePolicy::none;
    throw std::invalid_argument("unknown imputation policy '" + std::string(text) + "'");
}

std::string_view to_string(ImputePolicy policy) noexcept {
    switch (policy) {
        case ImputePolicy::forward_fill: return "forward_fill";
        case ImputePolicy::linear: return "linear";
        case ImputePolicy::none: return "none";
    }
    return "none";
}

SeriesFrame impute(const SeriesFrame& frame, ImputePolicy policy, std::size_t max_gap, ImputeReport* report) {
    ImputeReport local;
    std::vector<Column> cols;
    cols.reserve(frame.cols());
    for (std::size_t c = 0; c < frame.cols(); ++c) {
        Column col = frame.column(c);
        const std::size_t t = col.size();
        std::size_t r = 0;
        while (r < t) {
            if (col[r]) {
                ++r;
                continue;
            }
            const std::size_t run_start = r;
            while (r < t && !col[r]) ++r;
            const std::size_t run_len = r - run_start;
            const bool has_left = run_start > 0;
            const bool has_right = r < t;
            bool fill = policy != ImputePolicy::none && run_len <= max_gap && has_left;
            if (policy == ImputePolicy::linear) fill = fill && has_right;
            if (!fill) {
                local.left_missing += run_len;
                continue;
            }
            const double left = *col[run_start - 1];
            for (std::size_t i = run_start; i < r; ++i) {
                if (policy == ImputePolicy::forward_fill) {
                    col[i] = left;
                } else {
                    const double right = *col[r];
                    const double w = static_cast<double>(i - run_start + 1) / static_cast<double>(run_len + 1);
                    col[i] = left + w * (right - left);
                }
            }
            local.filled += run_len;
        }
        cols.push_back(std::move(col));
    }
    if (report) *report = local;
    return SeriesFrame(frame.start_date(), frame.names(), std::move(cols));
}

SummaryStats describe(const SeriesFrame& frame, std::string_view name) {
    const Column& col = frame.column(name);
    SummaryStats s;
    s.total = col.size();
    std::vector<double> values;
    values.reserve(col.size());
    for (const auto& v : col) {
        if (v) values.push_back(*v);
    }
    s.missing = s.total - values.size();
    if (values.empty()) throw DataError("column '" + std::string(name) + "' has no observed values");

    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;
    // Rounding in the sum can push a constant column's mean a hair outside [min, max].
    s.mean = std::clamp(s.mean, s.min, s.max);
    return s;
}

std::size_t nonzero_count(const SeriesFrame& frame, std::string_view name) {
    const Column& col = frame.column(name);
    return static_cast<std::size_t>(
        std::count_if(col.begin(), col.end(), [](const Cell& v) { return v && *v != 0.0; }));
}

}  // namespace tsvar
