#include "woenet/prep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "woenet/errors.hpp"
#include "woenet/rng.hpp"

namespace woenet {

SplitResult stratified_split(const Frame& frame, double fraction, std::uint64_t seed) {
    if (!frame.has_target()) throw DataError("stratified split needs a target column");
    if (!(fraction > 0.0 && fraction < 1.0))
        throw DataError("split fraction must lie strictly between 0 and 1");

    const auto& y = frame.target();
    std::vector<std::size_t> strata[2];
    for (std::size_t i = 0; i < y.size(); ++i) strata[y[i] == 1.0 ? 1 : 0].push_back(i);
    if (strata[0].empty() || strata[1].empty())
        throw DataError("degenerate stratum: one target class has no rows");

    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> valid_rows;
    for (int s = 0; s < 2; ++s) {
        auto rows = strata[s];
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
        rng.shuffle(rows);
        std::size_t n_train = static_cast<std::size_t>(
            std::ceil(fraction * static_cast<double>(rows.size())));
        n_train = std::min(n_train, rows.size());
        train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_train));
        valid_rows.insert(valid_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_train), rows.end());
    }
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(valid_rows.begin(), valid_rows.end());

    SplitResult out;
    out.train = frame.select_rows(train_rows);
    out.valid = frame.select_rows(valid_rows);
    out.seed = seed;
    out.fraction = fraction;
    return out;
}

ImputePlan fit_impute(const Frame& train) {
    if (train.n_rows() == 0) throw DataError("cannot fit imputation on an empty frame");
    ImputePlan plan;
    for (const auto& name : train.predictor_names()) {
        const auto& values = train.values(name);
        std::vector<double> observed;
        observed.reserve(values.size());
        std::size_t n_missing = 0;
        for (double v : values) {
            if (is_missing(v))
                ++n_missing;
            else
                observed.push_back(v);
        }
        if (observed.empty()) {
            plan.dropped.push_back(name);
            continue;
        }
        std::sort(observed.begin(), observed.end());
        std::size_t n = observed.size();
        double median = (n % 2 == 1) ? observed[n / 2]
                                     : 0.5 * (observed[n / 2 - 1] + observed[n / 2]);
        plan.medians[name] = median;
        if (n_missing > 0) plan.indicator_names[name] = "M_" + name;
    }
    return plan;
}

Frame apply_impute(const ImputePlan& plan, const Frame& frame) {
    for (const auto& entry : plan.medians) {
        if (!frame.has_column(entry.first))
            throw DataError("imputation plan covers unknown column '" + entry.first + "'");
    }
    Frame out;
    std::map<std::string, std::vector<double>> indicators;
    for (const auto& col : frame.columns()) {
        if (std::find(plan.dropped.begin(), plan.dropped.end(), col.name) != plan.dropped.end())
            continue;
        auto med = plan.medians.find(col.name);
        if (med == plan.medians.end()) {
            out.add_column(col.name, col.values);
            continue;
        }
        std::vector<double> filled = col.values;
        std::vector<double> indicator(filled.size(), 0.0);
        for (std::size_t i = 0; i < filled.size(); ++i) {
            if (is_missing(filled[i])) {
                filled[i] = med->second;
                indicator[i] = 1.0;
            }
        }
        out.add_column(col.name, std::move(filled));
        if (plan.indicator_names.count(col.name)) indicator.swap(indicators[col.name]);
    }
    // Indicators go at the end, ordered by source variable name.
    for (const auto& [source, values] : indicators)
        out.add_column(plan.indicator_names.at(source), values);
    if (frame.has_target()) out.set_target(frame.target_name());
    return out;
}

std::size_t woe_bin_index(const WoeVariable& var, double value) {
    // Bins are (lo, hi]: the first cut point >= value names the bin.
    auto it = std::lower_bound(var.edges.begin(), var.edges.end(), value);
    return static_cast<std::size_t>(it - var.edges.begin());
}

WoeEncoder fit_woe(const Frame& train, std::size_t n_bins, double smoothing) {
    if (!train.has_target()) throw DataError("WOE fitting needs a target column");
    if (n_bins < 2) throw ConfigError("WOE needs at least 2 bins");

    const auto& y = train.target();
    WoeEncoder enc;
    enc.smoothing = smoothing;
    for (double v : y) {
        if (v == 1.0)
            ++enc.total_events;
        else
            ++enc.total_nonevents;
    }

    for (const auto& name : train.predictor_names()) {
        const auto& values = train.values(name);
        std::vector<double> sorted;
        sorted.reserve(values.size());
        for (double v : values) {
            if (is_missing(v))
                throw DataError("WOE fitting requires imputed data; column '" + name +
                                "' still has missing values");
            sorted.push_back(v);
        }
        std::sort(sorted.begin(), sorted.end());

        std::vector<double> distinct;
        for (double v : sorted)
            if (distinct.empty() || v != distinct.back()) distinct.push_back(v);
        if (distinct.size() < 2) {
            enc.dropped.push_back(name);
            continue;
        }

        WoeVariable var;
        var.name = name;
        if (distinct.size() < n_bins) {
            // One bin per distinct value; the top value keeps the open bin.
            var.edges.assign(distinct.begin(), distinct.end() - 1);
        } else {
            std::size_t n = sorted.size();
            for (std::size_t k = 1; k < n_bins; ++k) {
                std::size_t idx = (k * n + n_bins - 1) / n_bins;  // ceil(k*n/B)
                double edge = sorted[idx - 1];
                if (edge >= sorted.back()) continue;
                if (var.edges.empty() || edge > var.edges.back()) var.edges.push_back(edge);
            }
        }

        std::size_t b = var.edges.size() + 1;
        var.events.assign(b, 0);
        var.nonevents.assign(b, 0);
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::size_t bin = woe_bin_index(var, values[i]);
            if (y[i] == 1.0)
                ++var.events[bin];
            else
                ++var.nonevents[bin];
        }
        var.woe.resize(b);
        double E = static_cast<double>(enc.total_events);
        double N = static_cast<double>(enc.total_nonevents);
        double B = static_cast<double>(b);
        for (std::size_t k = 0; k < b; ++k) {
            double ev = (static_cast<double>(var.events[k]) + smoothing) / (E + B * smoothing);
            double ne = (static_cast<double>(var.nonevents[k]) + smoothing) / (N + B * smoothing);
            var.woe[k] = std::log(ev / ne);
            if (!std::isfinite(var.woe[k]))
                throw ModelError("non-finite WOE in column '" + name +
                                 "' (zero cell with zero smoothing)");
        }
        enc.variables[name] = std::move(var);
    }
    return enc;
}

Frame apply_woe(const WoeEncoder& enc, const Frame& frame) {
    Frame out;
    for (const auto& col : frame.columns()) {
        if (std::find(enc.dropped.begin(), enc.dropped.end(), col.name) != enc.dropped.end())
            continue;
        auto it = enc.variables.find(col.name);
        if (it == enc.variables.end()) {
            out.add_column(col.name, col.values);
            continue;
        }
        const WoeVariable& var = it->second;
        std::vector<double> encoded(col.values.size());
        for (std::size_t i = 0; i < col.values.size(); ++i) {
            if (is_missing(col.values[i]))
                throw DataError("WOE transform requires imputed data; column '" + col.name +
                                "' still has missing values");
            encoded[i] = var.woe[woe_bin_index(var, col.values[i])];
        }
        out.add_column(col.name, std::move(encoded));
    }
    for (const auto& entry : enc.variables)
        if (!frame.has_column(entry.first))
            throw DataError("WOE encoder covers unknown column '" + entry.first + "'");
    if (frame.has_target()) out.set_target(frame.target_name());
    return out;
}

double information_value(const WoeVariable& var, std::size_t total_events,
                         std::size_t total_nonevents, double smoothing) {
    double E = static_cast<double>(total_events);
    double N = static_cast<double>(total_nonevents);
    double B = static_cast<double>(var.woe.size());
    double iv = 0.0;
    for (std::size_t k = 0; k < var.woe.size(); ++k) {
        double ev = (static_cast<double>(var.events[k]) + smoothing) / (E + B * smoothing);
        double ne = (static_cast<double>(var.nonevents[k]) + smoothing) / (N + B * smoothing);
        iv += (ev - ne) * std::log(ev / ne);
    }
    return iv;
}

}  // namespace woenet
