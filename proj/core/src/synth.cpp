#include "woenet/synth.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "woenet/errors.hpp"
#include "woenet/rng.hpp"
#include "woenet/sigmoid.hpp"

namespace woenet {

Frame synth_frame(const SynthSpec& spec) {
    if (spec.n_rows < 100) throw ConfigError("synthetic generator needs at least 100 rows");
    if (!(spec.event_rate > 0.0 && spec.event_rate < 1.0))
        throw ConfigError("synthetic event rate must lie strictly between 0 and 1");
    if (spec.missing_rate < 0.0 || spec.missing_rate >= 1.0)
        throw ConfigError("synthetic missing rate must lie in [0, 1)");

    const std::size_t n_cols = 2 + spec.n_noise;
    const std::size_t pad = std::to_string(n_cols).size();
    auto col_name = [pad](std::size_t j) {
        std::string digits = std::to_string(j + 1);
        return "x" + std::string(pad - digits.size(), '0') + digits;
    };

    Rng rng(spec.seed);
    std::vector<std::vector<double>> columns(n_cols);
    for (std::size_t j = 0; j < n_cols; ++j) {
        columns[j].resize(spec.n_rows);
        for (std::size_t i = 0; i < spec.n_rows; ++i) columns[j][i] = rng.gaussian();
    }

    // Planted structure: saturating main effects that pull the log-odds DOWN as
    // each input grows, against a soft-AND corner that pushes it sharply UP when
    // both inputs are high. The effect of x1 therefore reverses direction
    // depending on x2, so no additive score f1(x1) + f2(x2) can reproduce the
    // optimal ranking, while a single monotone ridge over the pair captures the
    // corner and restores it.
    std::vector<double> latent(spec.n_rows);
    for (std::size_t i = 0; i < spec.n_rows; ++i) {
        double x1 = columns[0][i];
        double x2 = columns[1][i];
        latent[i] = -spec.main_effect * (std::tanh(x1) + std::tanh(x2)) +
                    spec.interaction * sigmoid(spec.steepness * (x1 - spec.shift)) *
                        sigmoid(spec.steepness * (x2 - spec.shift));
    }

    // Monotone in the intercept, so bisection pins the mean event probability.
    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        double mean = 0.0;
        for (double z : latent) mean += sigmoid(mid + z);
        mean /= static_cast<double>(spec.n_rows);
        if (mean < spec.event_rate)
            lo = mid;
        else
            hi = mid;
    }
    const double b0 = 0.5 * (lo + hi);

    std::vector<double> y(spec.n_rows);
    for (std::size_t i = 0; i < spec.n_rows; ++i)
        y[i] = rng.next_double() < sigmoid(b0 + latent[i]) ? 1.0 : 0.0;

    if (spec.missing_rate > 0.0) {
        for (std::size_t j = 0; j < n_cols; ++j)
            for (std::size_t i = 0; i < spec.n_rows; ++i)
                if (rng.next_double() < spec.missing_rate) columns[j][i] = kMissing;
    }

    Frame frame;
    for (std::size_t j = 0; j < n_cols; ++j) frame.add_column(col_name(j), std::move(columns[j]));
    frame.add_column("y", std::move(y));
    frame.set_target("y");
    return frame;
}

}  // namespace woenet
