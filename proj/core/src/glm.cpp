#include "woenet/glm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "woenet/errors.hpp"
#include "woenet/sigmoid.hpp"

namespace woenet {
namespace {

constexpr double kSeparationBeta = 30.0;

Eigen::MatrixXd build_design_matrix(const Design& design, std::size_t n) {
    Eigen::MatrixXd X(n, design.n_terms() + 1);
    X.col(0).setOnes();
    for (std::size_t j = 0; j < design.n_terms(); ++j) {
        const auto& col = design.columns[j];
        if (col.size() != n)
            throw ModelError("design column '" + design.names[j] + "' has " +
                             std::to_string(col.size()) + " rows, expected " + std::to_string(n));
        for (std::size_t i = 0; i < n; ++i) {
            if (is_missing(col[i]))
                throw ModelError("design column '" + design.names[j] + "' has a missing value");
            X(i, j + 1) = col[i];
        }
        // A constant column duplicates the intercept: the information matrix
        // is structurally singular and no ridge can make the term identified.
        if (n > 0 && X.col(j + 1).maxCoeff() == X.col(j + 1).minCoeff())
            throw ModelError("singular information matrix: column '" + design.names[j] +
                             "' is constant");
    }
    return X;
}

double log_likelihood(const Eigen::VectorXd& eta, const Eigen::VectorXd& y) {
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) ll += y[i] * eta[i] - log1pexp(eta[i]);
    return ll;
}

bool solve_spd(const Eigen::MatrixXd& H, const Eigen::VectorXd& g, Eigen::VectorXd* out) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
    Eigen::VectorXd delta = ldlt.solve(g);
    if (!delta.allFinite()) return false;
    *out = delta;
    return true;
}

}  // namespace

Design design_from(const Frame& frame, const std::vector<std::string>& names) {
    Design d;
    d.names = names;
    d.columns.reserve(names.size());
    for (const auto& name : names) d.columns.push_back(frame.values(name));
    return d;
}

double chisq1_sf(double x) {
    if (x <= 0.0) return 1.0;
    return std::erfc(std::sqrt(x / 2.0));
}

LogisticModel fit_logistic(const Design& design, const std::vector<double>& y,
                           const FitOptions& opts) {
    const std::size_t n = y.size();
    if (n == 0) throw ModelError("empty design: no rows to fit");
    for (double v : y)
        if (v != 0.0 && v != 1.0) throw ModelError("response must be 0/1");

    Eigen::MatrixXd X = build_design_matrix(design, n);
    Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(n));
    const Eigen::Index p = X.cols();

    LogisticModel model;
    model.terms = design.names;

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd eta = X * beta;
    double ll = log_likelihood(eta, yv);

    Eigen::MatrixXd H(p, p);
    bool hit_tolerance = false;
    std::size_t iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        Eigen::VectorXd mu(eta.size());
        Eigen::VectorXd w(eta.size());
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            mu[i] = sigmoid(eta[i]);
            w[i] = mu[i] * (1.0 - mu[i]);
        }
        Eigen::VectorXd grad = X.transpose() * (yv - mu);
        H = X.transpose() * w.asDiagonal() * X;

        Eigen::VectorXd delta;
        if (!solve_spd(H, grad, &delta)) {
            Eigen::MatrixXd Hr = H + opts.ridge * Eigen::MatrixXd::Identity(p, p);
            if (!solve_spd(Hr, grad, &delta))
                throw ModelError("singular information matrix; design is degenerate");
            model.ridge_used = true;
        }

        // Half the Newton decrement bounds the log-likelihood suboptimality at
        // the current iterate; unlike a raw gradient norm it is invariant to
        // row count and column scale, so large designs converge cleanly once
        // they reach the rounding floor of the likelihood itself.
        double half_decrement = 0.5 * grad.dot(delta);
        if (half_decrement <= opts.tol * (std::fabs(ll) + 1.0)) {
            hit_tolerance = true;
            break;
        }

        // Step-halving keeps the likelihood ascent invariant.
        double step = 1.0;
        Eigen::VectorXd beta_new;
        Eigen::VectorXd eta_new;
        double ll_new = ll;
        bool improved = false;
        for (int h = 0; h < 30; ++h) {
            beta_new = beta + step * delta;
            eta_new = X * beta_new;
            ll_new = log_likelihood(eta_new, yv);
            if (std::isfinite(ll_new) && ll_new >= ll - 1e-12) {
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;  // no ascent direction survives rounding

        beta = beta_new;
        eta = eta_new;
        ll = ll_new;
    }

    // Final information at the accepted beta for the standard errors; when the
    // loop ended without hitting tolerance, re-test the decrement here so a fit
    // stopped by rounding on the last step still counts if it is at optimum.
    bool score_ok = hit_tolerance;
    {
        Eigen::VectorXd mu(eta.size());
        Eigen::VectorXd w(eta.size());
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            mu[i] = sigmoid(eta[i]);
            w[i] = mu[i] * (1.0 - mu[i]);
        }
        Eigen::VectorXd grad = X.transpose() * (yv - mu);
        H = X.transpose() * w.asDiagonal() * X;
        if (!score_ok) {
            Eigen::VectorXd delta;
            Eigen::MatrixXd Hr = H;
            bool solved = solve_spd(Hr, grad, &delta);
            if (!solved) {
                Hr = H + opts.ridge * Eigen::MatrixXd::Identity(p, p);
                solved = solve_spd(Hr, grad, &delta);
            }
            if (solved)
                score_ok = 0.5 * grad.dot(delta) <= opts.tol * (std::fabs(ll) + 1.0);
        }
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    Eigen::MatrixXd cov;
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
        cov = ldlt.solve(Eigen::MatrixXd::Identity(p, p));
    } else {
        Eigen::MatrixXd Hr = H + opts.ridge * Eigen::MatrixXd::Identity(p, p);
        Eigen::LDLT<Eigen::MatrixXd> ldlt2(Hr);
        if (ldlt2.info() != Eigen::Success)
            throw ModelError("singular information matrix; design is degenerate");
        cov = ldlt2.solve(Eigen::MatrixXd::Identity(p, p));
        model.ridge_used = true;
    }

    model.iterations = iter;
    model.converged = score_ok;
    model.log_likelihood = ll;
    model.beta.assign(beta.data(), beta.data() + p);
    model.se.resize(p);
    model.wald_chisq.resize(p);
    model.p_value.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        double var = cov(j, j);
        model.se[j] = var > 0.0 ? std::sqrt(var) : std::numeric_limits<double>::quiet_NaN();
        if (model.se[j] > 0.0) {
            double z = model.beta[j] / model.se[j];
            model.wald_chisq[j] = z * z;
            model.p_value[j] = chisq1_sf(model.wald_chisq[j]);
        } else {
            model.wald_chisq[j] = 0.0;
            model.p_value[j] = 1.0;
        }
        if (std::fabs(model.beta[j]) > kSeparationBeta) model.quasi_separated = true;
    }
    return model;
}

InteractionFit fit_interaction_pair(const std::string& name_a, const std::vector<double>& x_a,
                                    const std::string& name_b, const std::vector<double>& x_b,
                                    const std::vector<double>& y, const FitOptions& opts) {
    if (x_a.size() != y.size() || x_b.size() != y.size())
        throw ModelError("interaction columns must match the response length");
    Design d;
    d.names = {name_a, name_b, name_a + "*" + name_b};
    d.columns.resize(3);
    d.columns[0] = x_a;
    d.columns[1] = x_b;
    d.columns[2].resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) d.columns[2][i] = x_a[i] * x_b[i];

    InteractionFit fit;
    fit.model = fit_logistic(d, y, opts);
    fit.usable = fit.model.converged && !fit.model.quasi_separated;
    if (fit.usable) {
        fit.wald = fit.model.wald_chisq[3];
        fit.p = fit.model.p_value[3];
    }
    return fit;
}

std::vector<double> predict_proba(const LogisticModel& model, const Design& design) {
    if (design.names != model.terms)
        throw ModelError("design columns do not match the model terms");
    const std::size_t n = design.n_rows();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double eta = model.beta[0];
        for (std::size_t j = 0; j < model.terms.size(); ++j)
            eta += model.beta[j + 1] * design.columns[j][i];
        out[i] = sigmoid(eta);
    }
    return out;
}

std::vector<double> predict_proba(const LogisticModel& model, const Frame& frame) {
    return predict_proba(model, design_from(frame, model.terms));
}

LogisticModel stepwise_select(const Design& candidates, const std::vector<double>& y,
                              double alpha_enter, double alpha_stay, const FitOptions& opts) {
    if (candidates.n_terms() == 0) throw ModelError("stepwise selection needs candidate columns");

    auto subset = [&](const std::vector<std::string>& names) {
        Design d;
        d.names = names;
        for (const auto& name : names) {
            auto it = std::find(candidates.names.begin(), candidates.names.end(), name);
            d.columns.push_back(candidates.columns[it - candidates.names.begin()]);
        }
        return d;
    };

    std::vector<std::string> included;
    std::set<std::vector<std::string>> visited;
    visited.insert(included);

    while (true) {
        bool changed = false;

        // Entry: smallest Wald p among one-variable augmentations.
        std::string best_name;
        double best_p = 1.0;
        for (const auto& cand : candidates.names) {
            if (std::find(included.begin(), included.end(), cand) != included.end()) continue;
            std::vector<std::string> trial = included;
            trial.push_back(cand);
            LogisticModel m;
            try {
                m = fit_logistic(subset(trial), y, opts);
            } catch (const ModelError&) {
                continue;
            }
            if (!m.converged || m.quasi_separated) continue;
            double p = m.p_value.back();
            if (p < best_p || (p == best_p && (best_name.empty() || cand < best_name))) {
                best_p = p;
                best_name = cand;
            }
        }
        if (!best_name.empty() && best_p < alpha_enter) {
            included.push_back(best_name);
            std::sort(included.begin(), included.end());
            changed = true;
        }

        // Removal: worst offender out, one at a time, until all stay.
        while (!included.empty()) {
            LogisticModel m = fit_logistic(subset(included), y, opts);
            std::size_t worst = included.size();
            double worst_p = alpha_stay;
            for (std::size_t j = 0; j < included.size(); ++j) {
                double p = m.p_value[j + 1];
                if (p > worst_p) {
                    worst_p = p;
                    worst = j;
                }
            }
            if (worst == included.size()) break;
            included.erase(included.begin() + static_cast<std::ptrdiff_t>(worst));
            changed = true;
        }

        if (!changed) break;
        if (!visited.insert(included).second) break;  // cycle guard
    }

    return fit_logistic(subset(included), y, opts);
}

std::vector<double> vif(const Design& design) {
    const std::size_t p = design.n_terms();
    if (p < 2) throw ModelError("VIF needs at least two columns");
    const std::size_t n = design.n_rows();

    Eigen::MatrixXd X(n, p);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t i = 0; i < n; ++i) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = design.columns[j][i];

    std::vector<double> out(p);
    for (std::size_t j = 0; j < p; ++j) {
        Eigen::VectorXd target = X.col(static_cast<Eigen::Index>(j));
        double mean = target.mean();
        double sst = (target.array() - mean).matrix().squaredNorm();
        if (sst <= 0.0)
            throw ModelError("VIF needs nonzero variance in column '" + design.names[j] + "'");

        Eigen::MatrixXd Z(n, p);  // others + intercept
        Z.col(0).setOnes();
        Eigen::Index k = 1;
        for (std::size_t m = 0; m < p; ++m)
            if (m != j) Z.col(k++) = X.col(static_cast<Eigen::Index>(m));
        Eigen::VectorXd coef = Z.colPivHouseholderQr().solve(target);
        double ssr = (target - Z * coef).squaredNorm();
        double r2 = 1.0 - ssr / sst;
        if (r2 >= 1.0 - 1e-12)
            out[j] = std::numeric_limits<double>::infinity();
        else
            out[j] = 1.0 / (1.0 - r2);
    }
    return out;
}

}  // namespace woenet
