#include "woenet/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "woenet/errors.hpp"

namespace woenet {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Minimal RFC-4180 field splitter: quoted fields with "" escapes.
std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_number(const std::string& token, double* out) {
    const char* begin = token.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') return false;
    *out = v;
    return true;
}

std::string format_cell(double v) {
    if (is_missing(v)) return "";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

Frame load_csv_text(const std::string& text, const IngestConfig& cfg, IngestReport* report) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty csv document");
    std::vector<std::string> header = split_record(line);
    for (auto& h : header) h = trim(h);
    if (header.size() == 1 && header[0].empty()) throw DataError("empty csv document");

    std::set<std::string> seen;
    for (const auto& h : header) {
        if (h.empty()) throw DataError("csv header has an empty column name");
        if (!seen.insert(h).second) throw DataError("csv header repeats column '" + h + "'");
    }

    std::vector<std::vector<std::string>> raw(header.size());
    std::size_t n_rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> rec = split_record(line);
        if (rec.size() != header.size())
            throw DataError("csv row " + std::to_string(n_rows + 2) + " has " +
                            std::to_string(rec.size()) + " fields, expected " +
                            std::to_string(header.size()));
        for (std::size_t c = 0; c < rec.size(); ++c) raw[c].push_back(trim(rec[c]));
        ++n_rows;
    }
    if (n_rows == 0) throw DataError("csv has a header but no data rows");

    const bool want_target = !cfg.target_name.empty();
    std::size_t target_idx = header.size();
    if (want_target) {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == cfg.target_name) target_idx = c;
        if (target_idx == header.size())
            throw DataError("missing target column '" + cfg.target_name + "'");
    }

    std::set<std::string> sentinels(cfg.missing_tokens.begin(), cfg.missing_tokens.end());
    std::set<std::string> categorical(cfg.categorical.begin(), cfg.categorical.end());
    IngestReport local;
    IngestReport& rep = report ? *report : local;

    // Target first: binary-coded via positive_label, rejecting missing rows.
    std::vector<double> target_vals;
    if (want_target) {
        const auto& col = raw[target_idx];
        std::set<std::string> distinct;
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (col[r].empty() || sentinels.count(col[r]))
                throw DataError("target column '" + cfg.target_name + "' is missing at row " +
                                std::to_string(r + 2));
            distinct.insert(col[r]);
        }
        target_vals.resize(n_rows);
        if (!cfg.positive_label.empty()) {
            if (distinct.size() > 2)
                throw DataError("target column '" + cfg.target_name +
                                "' is not binary: " + std::to_string(distinct.size()) +
                                " distinct values");
            if (!distinct.count(cfg.positive_label))
                throw DataError("positive label '" + cfg.positive_label +
                                "' never occurs in target column '" + cfg.target_name + "'");
            for (std::size_t r = 0; r < n_rows; ++r)
                target_vals[r] = (col[r] == cfg.positive_label) ? 1.0 : 0.0;
        } else {
            for (std::size_t r = 0; r < n_rows; ++r) {
                double v;
                if (!parse_number(col[r], &v) || (v != 0.0 && v != 1.0))
                    throw DataError("target column '" + cfg.target_name +
                                    "' has non-binary value '" + col[r] + "' at row " +
                                    std::to_string(r + 2));
                target_vals[r] = v;
            }
        }
    }

    Frame frame;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (want_target && c == target_idx) {
            frame.add_column(header[c], target_vals);
            continue;
        }
        const auto& col = raw[c];
        std::vector<double> vals(n_rows, kMissing);
        if (categorical.count(header[c])) {
            std::map<std::string, double> mapping;
            auto given = cfg.ordinal_maps.find(header[c]);
            if (given != cfg.ordinal_maps.end()) {
                mapping = given->second;
            } else {
                if (!want_target)
                    throw DataError("categorical column '" + header[c] +
                                    "' needs an explicit ordinal map when no target is set");
                // Ordinal code by ascending event rate; ties by token order.
                std::map<std::string, std::pair<std::size_t, std::size_t>> counts;  // events, total
                for (std::size_t r = 0; r < n_rows; ++r) {
                    const std::string& tok = col[r];
                    if (tok.empty() || sentinels.count(tok)) continue;
                    auto& e = counts[tok];
                    e.first += static_cast<std::size_t>(target_vals[r] == 1.0);
                    e.second += 1;
                }
                std::vector<std::pair<double, std::string>> order;
                for (const auto& [tok, e] : counts)
                    order.emplace_back(static_cast<double>(e.first) / static_cast<double>(e.second),
                                       tok);
                std::sort(order.begin(), order.end());
                double code = 1.0;
                for (const auto& [rate, tok] : order) mapping[tok] = code++;
            }
            rep.ordinal_maps[header[c]] = mapping;
            for (std::size_t r = 0; r < n_rows; ++r) {
                const std::string& tok = col[r];
                if (tok.empty() || sentinels.count(tok)) {
                    ++rep.coerced_cells;
                    continue;
                }
                auto it = mapping.find(tok);
                if (it == mapping.end()) {
                    rep.warnings.push_back("unmapped category '" + tok + "' in column '" +
                                           header[c] + "' treated as missing");
                    ++rep.coerced_cells;
                } else {
                    vals[r] = it->second;
                }
            }
        } else {
            for (std::size_t r = 0; r < n_rows; ++r) {
                const std::string& tok = col[r];
                if (tok.empty() || sentinels.count(tok)) {
                    ++rep.coerced_cells;
                    continue;
                }
                double v;
                if (parse_number(tok, &v) && std::isfinite(v)) {
                    vals[r] = v;
                } else {
                    ++rep.coerced_cells;
                }
            }
        }
        frame.add_column(header[c], std::move(vals));
    }
    if (want_target) frame.set_target(cfg.target_name);
    return frame;
}

Frame load_csv(const std::string& path, const IngestConfig& cfg, IngestReport* report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (text.empty()) throw DataError("empty file '" + path + "'");
    return load_csv_text(text, cfg, report);
}

std::string to_csv_text(const Frame& frame) {
    std::ostringstream out;
    for (std::size_t c = 0; c < frame.n_cols(); ++c) {
        if (c) out << ',';
        out << frame.column(c).name;
    }
    out << '\n';
    for (std::size_t r = 0; r < frame.n_rows(); ++r) {
        for (std::size_t c = 0; c < frame.n_cols(); ++c) {
            if (c) out << ',';
            out << format_cell(frame.column(c).values[r]);
        }
        out << '\n';
    }
    return out.str();
}

void write_csv(const Frame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << to_csv_text(frame);
}

}  // namespace woenet
