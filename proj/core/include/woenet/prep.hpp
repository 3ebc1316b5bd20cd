#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "woenet/frame.hpp"

namespace woenet {

struct SplitResult {
    Frame train;
    Frame valid;
    std::uint64_t seed = 0;
    double fraction = 0.6;
};

// Seeded shuffle within each target class; train takes ceil(fraction * size)
// rows per class. Row order inside each part follows the source frame.
SplitResult stratified_split(const Frame& frame, double fraction, std::uint64_t seed);

struct ImputePlan {
    std::map<std::string, double> medians;              // variable -> training median
    std::map<std::string, std::string> indicator_names; // only variables missing in train
    std::vector<std::string> dropped;                   // all-missing training columns
};

ImputePlan fit_impute(const Frame& train);

// Fills planned variables with training medians, appends indicator columns
// (name order), and removes columns the plan dropped.
Frame apply_impute(const ImputePlan& plan, const Frame& frame);

struct WoeVariable {
    std::string name;
    std::vector<double> edges;  // internal upper-inclusive cut points, ascending
    std::vector<double> woe;    // edges.size() + 1 bins
    std::vector<std::size_t> events;
    std::vector<std::size_t> nonevents;
};

struct WoeEncoder {
    std::map<std::string, WoeVariable> variables;
    std::size_t total_events = 0;
    std::size_t total_nonevents = 0;
    double smoothing = 0.5;
    std::vector<std::string> dropped;  // constant training columns
};

// Equal-frequency bins (one bin per distinct value when fewer than n_bins);
// WOE_b = ln(((e_b+s)/(E+Bs)) / ((n_b+s)/(N+Bs))).
WoeEncoder fit_woe(const Frame& train, std::size_t n_bins, double smoothing = 0.5);

std::size_t woe_bin_index(const WoeVariable& var, double value);

// Replaces every encoded cell by its bin's WOE; out-of-range values land in
// the unbounded outer bins. Unencoded columns pass through untouched.
Frame apply_woe(const WoeEncoder& enc, const Frame& frame);

// Sum over bins of (e_b/E - n_b/N) * WOE_b at the encoder's smoothing.
double information_value(const WoeVariable& var, std::size_t total_events,
                         std::size_t total_nonevents, double smoothing);

}  // namespace woenet
