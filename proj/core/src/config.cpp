#include "woenet/config.hpp"

#include <fstream>
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

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': '" + value + "' is not a number");
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
        std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': '" + value +
                          "' is not a non-negative integer");
    }
}

}  // namespace

void config_set(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "input")
        cfg.input = value;
    else if (key == "output_dir")
        cfg.output_dir = value;
    else if (key == "target")
        cfg.target = value;
    else if (key == "positive_label")
        cfg.positive_label = value;
    else if (key == "sentinels")
        cfg.sentinels = split_list(value);
    else if (key == "categorical")
        cfg.categorical = split_list(value);
    else if (key == "fraction")
        cfg.fraction = parse_double(key, value);
    else if (key == "seed")
        cfg.seed = parse_uint(key, value);
    else if (key == "n_bins")
        cfg.n_bins = static_cast<std::size_t>(parse_uint(key, value));
    else if (key == "smoothing")
        cfg.smoothing = parse_double(key, value);
    else if (key == "min_explained")
        cfg.min_explained = parse_double(key, value);
    else if (key == "top_n")
        cfg.top_n = static_cast<std::size_t>(parse_uint(key, value));
    else if (key == "learning_rates") {
        cfg.learning_rates.clear();
        for (const auto& item : split_list(value))
            cfg.learning_rates.push_back(parse_double(key, item));
    } else if (key == "max_iters")
        cfg.max_iters = static_cast<std::size_t>(parse_uint(key, value));
    else if (key == "hidden")
        cfg.hidden = static_cast<std::size_t>(parse_uint(key, value));
    else if (key == "alpha_enter")
        cfg.alpha_enter = parse_double(key, value);
    else if (key == "alpha_stay")
        cfg.alpha_stay = parse_double(key, value);
    else if (key == "vif_threshold")
        cfg.vif_threshold = parse_double(key, value);
    else if (key == "accuracy_threshold")
        cfg.accuracy_threshold = parse_double(key, value);
    else if (key == "workers")
        cfg.workers = static_cast<std::size_t>(parse_uint(key, value));
    else
        throw ConfigError("unknown config key '" + key + "'");
}

PipelineConfig parse_config(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        try {
            config_set(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& err) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + err.what());
        }
    }
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_config(const PipelineConfig& cfg) {
    if (cfg.input.empty()) throw ConfigError("config: 'input' is required");
    if (cfg.target.empty()) throw ConfigError("config: 'target' is required");
    if (!(cfg.fraction > 0.0 && cfg.fraction < 1.0))
        throw ConfigError("config: 'fraction' must lie strictly between 0 and 1");
    if (cfg.n_bins < 2) throw ConfigError("config: 'n_bins' must be at least 2");
    if (cfg.smoothing < 0.0) throw ConfigError("config: 'smoothing' must be non-negative");
    if (!(cfg.min_explained > 0.0 && cfg.min_explained <= 1.0))
        throw ConfigError("config: 'min_explained' must lie in (0, 1]");
    if (cfg.top_n < 1) throw ConfigError("config: 'top_n' must be at least 1");
    if (cfg.learning_rates.empty())
        throw ConfigError("config: 'learning_rates' must not be empty");
    for (double lr : cfg.learning_rates)
        if (!(lr >= 1e-5 && lr <= 1e-1))
            throw ConfigError("config: learning rates must lie in [1e-5, 1e-1]");
    if (cfg.max_iters < 1 || cfg.max_iters > 10000)
        throw ConfigError("config: 'max_iters' must lie in [1, 10000]");
    if (cfg.hidden < 1) throw ConfigError("config: 'hidden' must be at least 1");
    if (!(cfg.alpha_enter > 0.0 && cfg.alpha_enter < 1.0))
        throw ConfigError("config: 'alpha_enter' must lie strictly between 0 and 1");
    if (!(cfg.alpha_stay > 0.0 && cfg.alpha_stay < 1.0))
        throw ConfigError("config: 'alpha_stay' must lie strictly between 0 and 1");
    if (cfg.vif_threshold <= 1.0)
        throw ConfigError("config: 'vif_threshold' must exceed 1");
    if (!(cfg.accuracy_threshold >= 0.0 && cfg.accuracy_threshold <= 1.0))
        throw ConfigError("config: 'accuracy_threshold' must lie in [0, 1]");
    if (cfg.workers < 1) throw ConfigError("config: 'workers' must be at least 1");
}

}  // namespace woenet
