#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "woenet/frame.hpp"

namespace woenet {

struct FitOptions {
    std::size_t max_iter = 100;
    // Convergence: half the Newton decrement (a bound on the log-likelihood
    // suboptimality) must fall below tol * (|log-likelihood| + 1).
    double tol = 1e-14;
    double ridge = 1e-8;  // information-matrix stabilizer, applied only on factorization failure
};

// Named design columns; the intercept is implicit everywhere.
struct Design {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    std::size_t n_rows() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t n_terms() const { return names.size(); }
};

Design design_from(const Frame& frame, const std::vector<std::string>& names);

struct LogisticModel {
    std::vector<std::string> terms;  // non-intercept, design order
    std::vector<double> beta;        // beta[0] = intercept, beta[1+i] pairs with terms[i]
    std::vector<double> se;
    std::vector<double> wald_chisq;  // (beta/se)^2, intercept included at [0]
    std::vector<double> p_value;     // upper-tail chi-square(1)
    double log_likelihood = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    bool quasi_separated = false;  // any |beta| > 30
    bool ridge_used = false;

    std::size_t n_terms() const { return terms.size(); }
};

// Upper-tail probability of chi-square with 1 df.
double chisq1_sf(double x);

LogisticModel fit_logistic(const Design& design, const std::vector<double>& y,
                           const FitOptions& opts = {});

struct InteractionFit {
    LogisticModel model;
    double wald = 0.0;  // interaction term; 0 when unusable
    double p = 1.0;
    bool usable = false;  // converged and not quasi-separated
};

// Fits [1, x_a, x_b, x_a*x_b] and reports the product term's Wald statistic.
InteractionFit fit_interaction_pair(const std::string& name_a, const std::vector<double>& x_a,
                                    const std::string& name_b, const std::vector<double>& x_b,
                                    const std::vector<double>& y, const FitOptions& opts = {});

std::vector<double> predict_proba(const LogisticModel& model, const Design& design);
std::vector<double> predict_proba(const LogisticModel& model, const Frame& frame);

// Wald-p stepwise with identical enter/stay thresholds; ties break on name.
LogisticModel stepwise_select(const Design& candidates, const std::vector<double>& y,
                              double alpha_enter = 0.15, double alpha_stay = 0.15,
                              const FitOptions& opts = {});

// VIF_j = 1/(1 - R^2_j) from OLS of column j on the rest; +inf on perfect fit.
std::vector<double> vif(const Design& design);

}  // namespace woenet
