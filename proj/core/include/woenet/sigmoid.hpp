#pragma once

#include <cmath>

namespace woenet {

// Stable logistic: exp(x)/(1+exp(x)) branch below zero avoids overflow.
inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow; pairs with sigmoid for likelihoods.
inline double log1pexp(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

}  // namespace woenet
