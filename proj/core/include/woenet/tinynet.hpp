#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "woenet/frame.hpp"
#include "woenet/sigmoid.hpp"

namespace woenet {

// Two inputs, `width` hidden sigmoid units (default 1), one sigmoid output.
struct TinyNet {
    std::vector<double> w1;  // input 1 -> hidden
    std::vector<double> w2;  // input 2 -> hidden
    std::vector<double> b1;  // hidden biases
    std::vector<double> v;   // hidden -> output
    double b2 = 0.0;         // output bias
    std::string input_a;
    std::string input_b;

    std::size_t width() const { return w1.size(); }

    static TinyNet single(double w1, double w2, double b1, double v, double b2);
};

double forward(const TinyNet& net, double x1, double x2);

// Mean binary cross-entropy of the forward pass over a batch.
double bce_loss(const TinyNet& net, const std::vector<double>& x1, const std::vector<double>& x2,
                const std::vector<double>& y);

// d(bce_loss)/d(params) laid out as [w1..., w2..., b1..., v..., b2].
std::vector<double> loss_gradient(const TinyNet& net, const std::vector<double>& x1,
                                  const std::vector<double>& x2, const std::vector<double>& y);

std::vector<double> pack_params(const TinyNet& net);
void unpack_params(TinyNet& net, const std::vector<double>& params);

struct TrainConfig {
    std::vector<double> learning_rates = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
    std::size_t max_iters = 10000;
    std::size_t hidden = 1;
};

struct TrainReport {
    double final_loss = 0.0;
    std::size_t iterations = 0;
    double learning_rate = 0.0;
    bool converged = false;
    std::uint64_t seed = 0;
};

// Full-batch gradient descent from a seeded uniform(-0.5, 0.5) start; one run
// per learning rate from the same start, lowest final loss wins. A run stops
// once the relative loss change stays under 1e-7 for 10 straight iterations.
std::pair<TinyNet, TrainReport> train_tinynet(const std::vector<double>& x1,
                                              const std::vector<double>& x2,
                                              const std::vector<double>& y, std::uint64_t seed,
                                              const TrainConfig& cfg = {});

// Row-wise forward pass over the net's input columns.
std::vector<double> predict_column(const TinyNet& net, const Frame& frame);

}  // namespace woenet
