#pragma once

#include <map>
#include <string>
#include <vector>

#include "woenet/frame.hpp"

namespace woenet {

struct IngestConfig {
    std::string target_name;                      // empty = no target required (scoring)
    std::vector<std::string> missing_tokens;      // sentinel raw tokens treated as missing
    std::string positive_label;                   // raw target token mapped to 1; empty = numeric {0,1}
    std::vector<std::string> categorical;         // columns to ordinal-encode
    // Explicit token -> code maps; categorical columns without one are encoded
    // by ascending event rate over the loaded rows (requires a target).
    std::map<std::string, std::map<std::string, double>> ordinal_maps;
};

struct IngestReport {
    std::map<std::string, std::map<std::string, double>> ordinal_maps;  // as applied
    std::size_t coerced_cells = 0;   // non-parseable/sentinel tokens turned missing
    std::vector<std::string> warnings;
};

/// Loads a CSV file (header row, comma separated, empty cell = missing) into
/// a Frame. Sentinel tokens and non-parseable cells become missing; the
/// target column must map to {0,1} with no missing entries.
Frame load_csv(const std::string& path, const IngestConfig& cfg, IngestReport* report = nullptr);

/// Same parse applied to an in-memory document (used by tests).
Frame load_csv_text(const std::string& text, const IngestConfig& cfg, IngestReport* report = nullptr);

/// Writes a frame back out; missing cells as empty fields, numbers in
/// shortest round-trip form.
void write_csv(const Frame& frame, const std::string& path);
std::string to_csv_text(const Frame& frame);

}  // namespace woenet
