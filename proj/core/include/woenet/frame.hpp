#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

namespace woenet {

// Cells are either finite doubles or missing. Missing is a quiet NaN.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

struct Column {
    std::string name;
    std::vector<double> values;
};

/// Columnar numeric dataset with named columns and an optional binary target.
/// Columns all share the same row count; names are unique. Frames are cheap
/// to copy-on-build and treated as immutable once handed to an operation.
class Frame {
public:
    Frame() = default;

    void add_column(std::string name, std::vector<double> values);
    void drop_column(const std::string& name);

    /// Marks `name` as the target. The column must exist and contain only
    /// 0 and 1 (no missing values).
    void set_target(const std::string& name);

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return columns_.size(); }
    bool empty() const { return columns_.empty(); }

    bool has_column(const std::string& name) const { return index_.count(name) > 0; }
    std::size_t index_of(const std::string& name) const;

    const Column& column(std::size_t i) const { return columns_[i]; }
    const std::vector<Column>& columns() const { return columns_; }
    const std::vector<double>& values(const std::string& name) const;

    bool has_target() const { return !target_.empty(); }
    const std::string& target_name() const { return target_; }
    const std::vector<double>& target() const;

    /// Column names in column order, excluding the target.
    std::vector<std::string> predictor_names() const;
    std::vector<std::string> column_names() const;

    /// New frame with the given rows (in the given order), same columns/target.
    Frame select_rows(const std::vector<std::size_t>& rows) const;

    /// New frame restricted to `names` (kept in the listed order) plus the
    /// target column if one is set.
    Frame select_columns(const std::vector<std::string>& names) const;

    bool equals(const Frame& other) const;

private:
    std::vector<Column> columns_;
    std::unordered_map<std::string, std::size_t> index_;
    std::size_t n_rows_ = 0;
    std::string target_;
};

}  // namespace woenet
