#include "woenet/tinynet.hpp"

#include <cmath>
#include <limits>

#include "woenet/errors.hpp"
#include "woenet/rng.hpp"

namespace woenet {
namespace {

constexpr double kRelTol = 1e-7;
constexpr std::size_t kCalmIters = 10;

void check_batch(const TinyNet& net, const std::vector<double>& x1, const std::vector<double>& x2,
                 const std::vector<double>& y) {
    if (net.w2.size() != net.width() || net.b1.size() != net.width() ||
        net.v.size() != net.width())
        throw ModelError("inconsistent hidden-layer parameter sizes");
    if (x1.size() != y.size() || x2.size() != y.size())
        throw ModelError("training columns must match the target length");
    if (y.empty()) throw ModelError("cannot train on zero rows");
}

}  // namespace

TinyNet TinyNet::single(double w1, double w2, double b1, double v, double b2) {
    TinyNet net;
    net.w1 = {w1};
    net.w2 = {w2};
    net.b1 = {b1};
    net.v = {v};
    net.b2 = b2;
    return net;
}

double forward(const TinyNet& net, double x1, double x2) {
    double z2 = net.b2;
    for (std::size_t k = 0; k < net.width(); ++k)
        z2 += net.v[k] * sigmoid(net.b1[k] + net.w1[k] * x1 + net.w2[k] * x2);
    return sigmoid(z2);
}

double bce_loss(const TinyNet& net, const std::vector<double>& x1, const std::vector<double>& x2,
                const std::vector<double>& y) {
    check_batch(net, x1, x2, y);
    double loss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double z2 = net.b2;
        for (std::size_t k = 0; k < net.width(); ++k)
            z2 += net.v[k] * sigmoid(net.b1[k] + net.w1[k] * x1[i] + net.w2[k] * x2[i]);
        loss += log1pexp(z2) - y[i] * z2;
    }
    return loss / static_cast<double>(y.size());
}

std::vector<double> loss_gradient(const TinyNet& net, const std::vector<double>& x1,
                                  const std::vector<double>& x2, const std::vector<double>& y) {
    check_batch(net, x1, x2, y);
    const std::size_t h = net.width();
    std::vector<double> grad(4 * h + 1, 0.0);
    std::vector<double> a(h);
    const double inv_n = 1.0 / static_cast<double>(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        double z2 = net.b2;
        for (std::size_t k = 0; k < h; ++k) {
            a[k] = sigmoid(net.b1[k] + net.w1[k] * x1[i] + net.w2[k] * x2[i]);
            z2 += net.v[k] * a[k];
        }
        double dz2 = (sigmoid(z2) - y[i]) * inv_n;
        for (std::size_t k = 0; k < h; ++k) {
            double dz1 = dz2 * net.v[k] * a[k] * (1.0 - a[k]);
            grad[k] += dz1 * x1[i];           // w1
            grad[h + k] += dz1 * x2[i];       // w2
            grad[2 * h + k] += dz1;           // b1
            grad[3 * h + k] += dz2 * a[k];    // v
        }
        grad[4 * h] += dz2;  // b2
    }
    return grad;
}

std::vector<double> pack_params(const TinyNet& net) {
    std::vector<double> p;
    p.reserve(4 * net.width() + 1);
    p.insert(p.end(), net.w1.begin(), net.w1.end());
    p.insert(p.end(), net.w2.begin(), net.w2.end());
    p.insert(p.end(), net.b1.begin(), net.b1.end());
    p.insert(p.end(), net.v.begin(), net.v.end());
    p.push_back(net.b2);
    return p;
}

void unpack_params(TinyNet& net, const std::vector<double>& params) {
    const std::size_t h = net.width();
    if (params.size() != 4 * h + 1) throw ModelError("parameter vector has the wrong size");
    for (std::size_t k = 0; k < h; ++k) {
        net.w1[k] = params[k];
        net.w2[k] = params[h + k];
        net.b1[k] = params[2 * h + k];
        net.v[k] = params[3 * h + k];
    }
    net.b2 = params[4 * h];
}

std::pair<TinyNet, TrainReport> train_tinynet(const std::vector<double>& x1,
                                              const std::vector<double>& x2,
                                              const std::vector<double>& y, std::uint64_t seed,
                                              const TrainConfig& cfg) {
    if (cfg.hidden < 1) throw ConfigError("hidden width must be at least 1");
    if (cfg.max_iters < 1 || cfg.max_iters > 10000)
        throw ConfigError("max_iters must lie in [1, 10000]");
    for (double lr : cfg.learning_rates)
        if (!(lr >= 1e-5 && lr <= 1e-1))
            throw ConfigError("learning rates must lie in [1e-5, 1e-1]");
    if (cfg.learning_rates.empty()) throw ConfigError("learning-rate grid is empty");

    TinyNet init;
    init.w1.resize(cfg.hidden);
    init.w2.resize(cfg.hidden);
    init.b1.resize(cfg.hidden);
    init.v.resize(cfg.hidden);
    Rng rng(seed);
    for (std::size_t k = 0; k < cfg.hidden; ++k) {
        init.w1[k] = rng.uniform(-0.5, 0.5);
        init.w2[k] = rng.uniform(-0.5, 0.5);
        init.b1[k] = rng.uniform(-0.5, 0.5);
        init.v[k] = rng.uniform(-0.5, 0.5);
    }
    init.b2 = rng.uniform(-0.5, 0.5);
    check_batch(init, x1, x2, y);

    TinyNet best_net;
    TrainReport best;
    best.final_loss = std::numeric_limits<double>::infinity();
    best.seed = seed;

    const std::size_t h = cfg.hidden;
    for (double lr : cfg.learning_rates) {
        TinyNet net = init;
        double prev_loss = std::numeric_limits<double>::infinity();
        std::size_t calm = 0;
        std::size_t it = 0;
        bool converged = false;
        bool diverged = false;
        std::vector<double> a(h);
        for (; it < cfg.max_iters; ++it) {
            // One fused pass: loss at the current parameters plus its gradient.
            std::vector<double> grad(4 * h + 1, 0.0);
            double loss = 0.0;
            const double inv_n = 1.0 / static_cast<double>(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) {
                double z2 = net.b2;
                for (std::size_t k = 0; k < h; ++k) {
                    a[k] = sigmoid(net.b1[k] + net.w1[k] * x1[i] + net.w2[k] * x2[i]);
                    z2 += net.v[k] * a[k];
                }
                loss += log1pexp(z2) - y[i] * z2;
                double dz2 = (sigmoid(z2) - y[i]) * inv_n;
                for (std::size_t k = 0; k < h; ++k) {
                    double dz1 = dz2 * net.v[k] * a[k] * (1.0 - a[k]);
                    grad[k] += dz1 * x1[i];
                    grad[h + k] += dz1 * x2[i];
                    grad[2 * h + k] += dz1;
                    grad[3 * h + k] += dz2 * a[k];
                }
                grad[4 * h] += dz2;
            }
            loss /= static_cast<double>(y.size());
            if (!std::isfinite(loss)) {
                diverged = true;
                break;
            }
            double rel = std::fabs(prev_loss - loss) / std::max(std::fabs(prev_loss), 1e-12);
            calm = (rel < kRelTol) ? calm + 1 : 0;
            prev_loss = loss;
            if (calm >= kCalmIters) {
                converged = true;
                break;
            }
            for (std::size_t k = 0; k < h; ++k) {
                net.w1[k] -= lr * grad[k];
                net.w2[k] -= lr * grad[h + k];
                net.b1[k] -= lr * grad[2 * h + k];
                net.v[k] -= lr * grad[3 * h + k];
            }
            net.b2 -= lr * grad[4 * h];
        }
        if (diverged) continue;
        double final_loss = bce_loss(net, x1, x2, y);
        if (!std::isfinite(final_loss)) continue;
        if (final_loss < best.final_loss) {
            best_net = net;
            best.final_loss = final_loss;
            best.iterations = it;
            best.learning_rate = lr;
            best.converged = converged;
        }
    }
    if (!std::isfinite(best.final_loss))
        throw ModelError("training diverged at every learning rate");
    return {best_net, best};
}

std::vector<double> predict_column(const TinyNet& net, const Frame& frame) {
    const auto& x1 = frame.values(net.input_a);
    const auto& x2 = frame.values(net.input_b);
    std::vector<double> out(x1.size());
    for (std::size_t i = 0; i < x1.size(); ++i) out[i] = forward(net, x1[i], x2[i]);
    return out;
}

}  // namespace woenet
