#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace woenet {

struct PipelineConfig {
    std::string input;
    std::string output_dir = "out";
    std::string target;
    std::string positive_label;  // empty = target already coded 0/1
    std::vector<std::string> sentinels;
    std::vector<std::string> categorical;

    double fraction = 0.6;
    std::uint64_t seed = 1;
    std::size_t n_bins = 10;
    double smoothing = 0.5;
    double min_explained = 0.90;
    std::size_t top_n = 50;
    std::vector<double> learning_rates = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
    std::size_t max_iters = 10000;
    std::size_t hidden = 1;
    double alpha_enter = 0.15;
    double alpha_stay = 0.15;
    double vif_threshold = 10.0;
    double accuracy_threshold = 0.5;
    std::size_t workers = 1;
};

// Applies one `key = value` setting; lists are comma-separated.
void config_set(PipelineConfig& cfg, const std::string& key, const std::string& value);

PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config(const std::string& path);

// Field-level range checks; throws ConfigError on the first violation.
void validate_config(const PipelineConfig& cfg);

}  // namespace woenet
