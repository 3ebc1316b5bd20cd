#pragma once

#include <cstdint>
#include <cstddef>

#include "woenet/frame.hpp"

namespace woenet {

// Planted-interaction generator: the first two predictors carry saturating
// main effects plus a soft-AND corner interaction(*) in the true log-odds; the
// remaining columns are pure noise. The intercept is solved by bisection so
// the latent event probability averages to event_rate.
//
// (*) latent = -main_effect * (tanh(x1) + tanh(x2))
//            + interaction * sigmoid(steepness*(x1-shift)) * sigmoid(steepness*(x2-shift)).
// The mains pull the log-odds down as each input grows while the corner pushes
// it sharply up when both are high, so the direction of either input's effect
// depends on the other. No additive score f1(x1) + f2(x2) reproduces that
// ranking; a pairwise feature is required to recover the corner.
struct SynthSpec {
    std::size_t n_rows = 10000;
    std::size_t n_noise = 8;  // noise columns beyond the planted pair
    double main_effect = 1.2;
    double interaction = 6.0;   // gamma; 0 removes the planted term
    double steepness = 3.0;
    double shift = 0.0;
    double event_rate = 0.5;
    double missing_rate = 0.0;  // per-cell missingness on predictors
    std::uint64_t seed = 1;
};

Frame synth_frame(const SynthSpec& spec);

}  // namespace woenet
