#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsvar/linalg.hpp"

namespace tsvar {

using Date = std::chrono::sys_days;
using Cell = std::optional<double>;
using Column = std::vector<Cell>;

/// Parses a strict ISO `YYYY-MM-DD` calendar date. Throws DataError.
[[nodiscard]] Date parse_iso_date(std::string_view text);
[[nodiscard]] std::string format_iso_date(Date d);

/**
 * A contiguous daily grid of K named numeric columns with explicit missingness.
 * Row i is the day start_date + i. Immutable once built.
 */
class SeriesFrame {
public:
    SeriesFrame(Date start, std::vector<std::string> names, std::vector<Column> columns);

    [[nodiscard]] Date start_date() const noexcept { return start_; }
    [[nodiscard]] Date end_date() const noexcept;
    [[nodiscard]] Date date_at(std::size_t row) const noexcept;

    [[nodiscard]] std::size_t rows() const noexcept { return columns_.front().size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return columns_.size(); }

    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const noexcept;
    /// Throws DataError for unknown names.
    [[nodiscard]] std::size_t index_of(std::string_view name) const;

    [[nodiscard]] const Column& column(std::size_t c) const { return columns_.at(c); }
    [[nodiscard]] const Column& column(std::string_view name) const { return columns_[index_of(name)]; }

    [[nodiscard]] std::size_t missing_count() const noexcept;
    [[nodiscard]] bool has_missing() const noexcept { return missing_count() != 0; }

    /// Dense T × K matrix; throws DataError naming the first missing cell.
    [[nodiscard]] linalg::Matrix to_matrix() const;

    /// Values of one column; throws DataError if any cell is missing.
    [[nodiscard]] std::vector<double> dense_column(std::string_view name) const;

    friend bool operator==(const SeriesFrame&, const SeriesFrame&) = default;

private:
    Date start_;
    std::vector<std::string> names_;
    std::vector<Column> columns_;
};

/// Builds a frame from a fully observed T × K matrix.
[[nodiscard]] SeriesFrame frame_from_matrix(Date start, std::vector<std::string> names,
                                            const linalg::Matrix& data);

enum class VariableKind { sleep_score, mood };

struct VariableSpec {
    std::string name;
    VariableKind kind;
    double min;
    double max;
};

[[nodiscard]] VariableSpec sleep_score_spec();
[[nodiscard]] VariableSpec mood_spec(std::string name);

/// Mood columns in the order they appear in the export.
inline constexpr std::string_view kMoodColumns[] = {"depressed", "anxious", "irritable", "elevated"};

struct MoodIngestOptions {
    /// Dates inside the covered span with no rows become 0 ("not present").
    bool absent_as_zero = true;
};

/// Reads `date,score`. One row per date; the empty cell and absent dates become missing.
[[nodiscard]] SeriesFrame ingest_sleep(std::istream& in);
[[nodiscard]] SeriesFrame ingest_sleep_file(const std::string& path);

/// Reads `date,depressed,anxious,irritable,elevated`; repeated dates keep the per-column maximum.
[[nodiscard]] SeriesFrame ingest_mood(std::istream& in, const MoodIngestOptions& options = {});
[[nodiscard]] SeriesFrame ingest_mood_file(const std::string& path,
                                           const MoodIngestOptions& options = {});

/// Reads the merged-frame format written by write_csv (`date,<name1>,...`).
[[nodiscard]] SeriesFrame read_frame_csv(std::istream& in);
[[nodiscard]] SeriesFrame read_frame_csv_file(const std::string& path);

/// Writes `date,<name1>,...,<nameK>` with ISO dates, empty missing cells and
/// shortest round-trip decimal values.
void write_csv(const SeriesFrame& frame, std::ostream& out);

/// Aligns frames on the union daily grid; column order follows argument order.
[[nodiscard]] SeriesFrame merge(std::span<const SeriesFrame> frames);

enum class ImputePolicy { forward_fill, linear, none };

[[nodiscard]] ImputePolicy parse_impute_policy(std::string_view text);
[[nodiscard]] std::string_view to_string(ImputePolicy policy) noexcept;

struct ImputeReport {
    std::size_t filled = 0;
    std::size_t left_missing = 0;
};

/// Fills missing runs of length <= max_gap. Observed cells are never touched.
[[nodiscard]] SeriesFrame impute(const SeriesFrame& frame, ImputePolicy policy, std::size_t max_gap,
                                 ImputeReport* report = nullptr);

struct SummaryStats {
    std::size_t total = 0;
    std::size_t missing = 0;
    double mean = 0.0;
    double sd = 0.0;  ///< sample standard deviation (n − 1)
    double max = 0.0;
    double min = 0.0;
};

[[nodiscard]] SummaryStats describe(const SeriesFrame& frame, std::string_view name);

/// Number of observed cells that are non-zero.
[[nodiscard]] std::size_t nonzero_count(const SeriesFrame& frame, std::string_view name);

}  // namespace tsvar
