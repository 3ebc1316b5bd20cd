#include "woenet/frame.hpp"

#include "woenet/errors.hpp"

namespace woenet {

void Frame::add_column(std::string name, std::vector<double> values) {
    if (name.empty()) throw DataError("column name must not be empty");
    if (index_.count(name)) throw DataError("duplicate column name '" + name + "'");
    if (!columns_.empty() && values.size() != n_rows_)
        throw DataError("column '" + name + "' has " + std::to_string(values.size()) +
                        " rows, frame has " + std::to_string(n_rows_));
    if (columns_.empty()) n_rows_ = values.size();
    index_.emplace(name, columns_.size());
    columns_.push_back(Column{std::move(name), std::move(values)});
}

void Frame::drop_column(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) throw DataError("unknown column '" + name + "'");
    columns_.erase(columns_.begin() + static_cast<std::ptrdiff_t>(it->second));
    index_.clear();
    for (std::size_t i = 0; i < columns_.size(); ++i) index_.emplace(columns_[i].name, i);
    if (target_ == name) target_.clear();
}

void Frame::set_target(const std::string& name) {
    const auto& vals = values(name);
    for (double v : vals) {
        if (is_missing(v)) throw DataError("target column '" + name + "' has missing values");
        if (v != 0.0 && v != 1.0)
            throw DataError("target column '" + name + "' has values outside {0,1}");
    }
    target_ = name;
}

std::size_t Frame::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw DataError("unknown column '" + name + "'");
    return it->second;
}

const std::vector<double>& Frame::values(const std::string& name) const {
    return columns_[index_of(name)].values;
}

const std::vector<double>& Frame::target() const {
    if (target_.empty()) throw DataError("frame has no target column");
    return values(target_);
}

std::vector<std::string> Frame::predictor_names() const {
    std::vector<std::string> names;
    names.reserve(columns_.size());
    for (const auto& c : columns_)
        if (c.name != target_) names.push_back(c.name);
    return names;
}

std::vector<std::string> Frame::column_names() const {
    std::vector<std::string> names;
    names.reserve(columns_.size());
    for (const auto& c : columns_) names.push_back(c.name);
    return names;
}

Frame Frame::select_rows(const std::vector<std::size_t>& rows) const {
    Frame out;
    for (const auto& c : columns_) {
        std::vector<double> v;
        v.reserve(rows.size());
        for (std::size_t r : rows) v.push_back(c.values[r]);
        out.add_column(c.name, std::move(v));
    }
    if (!target_.empty()) out.set_target(target_);
    return out;
}

Frame Frame::select_columns(const std::vector<std::string>& names) const {
    Frame out;
    for (const auto& n : names) out.add_column(n, values(n));
    if (!target_.empty()) {
        bool listed = false;
        for (const auto& n : names) listed |= (n == target_);
        if (!listed) out.add_column(target_, values(target_));
        out.set_target(target_);
    }
    return out;
}

bool Frame::equals(const Frame& other) const {
    if (n_rows_ != other.n_rows_ || columns_.size() != other.columns_.size()) return false;
    if (target_ != other.target_) return false;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name != other.columns_[i].name) return false;
        const auto& a = columns_[i].values;
        const auto& b = other.columns_[i].values;
        for (std::size_t r = 0; r < a.size(); ++r) {
            bool ma = is_missing(a[r]), mb = is_missing(b[r]);
            if (ma != mb) return false;
            if (!ma && a[r] != b[r]) return false;
        }
    }
    return true;
}

}  // namespace woenet
