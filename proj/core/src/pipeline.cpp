#include "woenet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "woenet/errors.hpp"
#include "woenet/metrics.hpp"
#include "woenet/rng.hpp"
#include "woenet/worker_pool.hpp"

namespace woenet {
namespace {

bool has_variance(const std::vector<double>& values) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] != values[0]) return true;
    return false;
}

}  // namespace

Preprocessed preprocess(const Frame& raw, const PipelineConfig& cfg) {
    Preprocessed out;
    SplitResult split = stratified_split(raw, cfg.fraction, cfg.seed);

    out.impute = fit_impute(split.train);
    for (const auto& name : out.impute.dropped)
        out.warnings.push_back("dropped all-missing column '" + name + "'");
    Frame train = apply_impute(out.impute, split.train);
    Frame valid = apply_impute(out.impute, split.valid);

    // Constant training columns carry nothing and break clustering.
    std::vector<std::string> active;
    for (const auto& name : train.predictor_names()) {
        if (has_variance(train.values(name))) {
            active.push_back(name);
        } else {
            out.warnings.push_back("dropped constant column '" + name + "'");
        }
    }
    if (active.empty()) throw DataError("no usable predictor columns after imputation");

    if (active.size() >= 2) {
        std::vector<std::vector<double>> columns;
        columns.reserve(active.size());
        for (const auto& name : active) columns.push_back(train.values(name));
        out.prep_clusters = cluster_variables(active, columns, cfg.min_explained);
        out.prep_report = select_representatives(out.prep_clusters, active, columns);
        out.predictors = out.prep_report.representatives;
        std::sort(out.predictors.begin(), out.predictors.end());
    } else {
        out.predictors = active;
    }

    train = train.select_columns(out.predictors);
    valid = valid.select_columns(out.predictors);

    out.woe = fit_woe(train, cfg.n_bins, cfg.smoothing);
    for (const auto& name : out.woe.dropped)
        out.warnings.push_back("dropped constant column '" + name + "' at WOE fitting");
    out.train = apply_woe(out.woe, train);
    out.valid = apply_woe(out.woe, valid);
    out.predictors = out.train.predictor_names();
    return out;
}

std::vector<std::pair<std::string, std::string>> enumerate_pairs(
    std::vector<std::string> variables) {
    if (variables.size() < 2) throw DataError("pair enumeration needs at least two variables");
    std::sort(variables.begin(), variables.end());
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(variables.size() * (variables.size() - 1) / 2);
    for (std::size_t i = 0; i < variables.size(); ++i)
        for (std::size_t j = i + 1; j < variables.size(); ++j)
            pairs.emplace_back(variables[i], variables[j]);
    return pairs;
}

std::vector<PairScore> screen_interactions(
    const Frame& train, const std::vector<std::pair<std::string, std::string>>& pairs,
    std::size_t workers) {
    if (!train.has_target()) throw DataError("interaction screening needs a target column");
    const auto& y = train.target();
    std::vector<PairScore> scores(pairs.size());
    parallel_for(pairs.size(), workers, [&](std::size_t k) {
        const auto& [a, b] = pairs[k];
        PairScore& s = scores[k];
        s.a = a;
        s.b = b;
        try {
            InteractionFit fit = fit_interaction_pair(a, train.values(a), b, train.values(b), y);
            s.wald = fit.wald;
            s.p = fit.p;
            s.converged = fit.usable;
        } catch (const ModelError&) {
            s.wald = 0.0;
            s.p = 1.0;
            s.converged = false;
        }
    });
    return scores;
}

std::vector<std::size_t> select_top_n(const std::vector<PairScore>& scores, std::size_t n,
                                      bool* saturated) {
    if (n < 1) throw ConfigError("top-n selection needs n >= 1");
    std::vector<std::size_t> usable;
    for (std::size_t k = 0; k < scores.size(); ++k)
        if (scores[k].converged) usable.push_back(k);
    std::stable_sort(usable.begin(), usable.end(), [&](std::size_t a, std::size_t b) {
        return scores[a].wald > scores[b].wald;
    });
    if (saturated) *saturated = usable.size() < n;
    if (usable.size() > n) usable.resize(n);
    return usable;
}

StageOneResult build_stage_one(const Frame& train, const Frame& valid,
                               const PipelineConfig& cfg) {
    StageOneResult out;
    auto pairs = enumerate_pairs(train.predictor_names());
    out.scored_pairs = screen_interactions(train, pairs, cfg.workers);
    auto top = select_top_n(out.scored_pairs, cfg.top_n, &out.saturated);
    if (out.saturated)
        out.warnings.push_back("only " + std::to_string(top.size()) + " of " +
                               std::to_string(cfg.top_n) + " requested pairs converged");
    if (top.empty()) throw ModelError("no converged interaction pair to build stage one from");

    for (std::size_t k : top)
        out.top_pairs.emplace_back(out.scored_pairs[k].a, out.scored_pairs[k].b);

    TrainConfig net_cfg;
    net_cfg.learning_rates = cfg.learning_rates;
    net_cfg.max_iters = cfg.max_iters;
    net_cfg.hidden = cfg.hidden;

    const auto& y = train.target();
    out.nets.resize(out.top_pairs.size());
    out.reports.resize(out.top_pairs.size());
    std::vector<char> failed(out.top_pairs.size(), 0);
    parallel_for(out.top_pairs.size(), cfg.workers, [&](std::size_t k) {
        const auto& [a, b] = out.top_pairs[k];
        try {
            auto [net, report] =
                train_tinynet(train.values(a), train.values(b), y, derive_seed(cfg.seed, k),
                              net_cfg);
            net.input_a = a;
            net.input_b = b;
            out.nets[k] = std::move(net);
            out.reports[k] = report;
        } catch (const ModelError&) {
            failed[k] = 1;
        }
    });

    out.train_aug = train;
    out.valid_aug = valid;
    out.yhat_names.resize(out.top_pairs.size());

    // Zero-padded rank index keeps the names in rank order lexicographically.
    const std::size_t pad = std::to_string(out.top_pairs.size() - 1).size();
    auto yhat_name = [pad](std::size_t k) {
        std::string digits = std::to_string(k);
        return "yhat_" + std::string(pad - digits.size(), '0') + digits;
    };

    std::vector<std::string> usable_names;
    std::vector<std::vector<double>> usable_columns;
    for (std::size_t k = 0; k < out.top_pairs.size(); ++k) {
        out.yhat_names[k] = yhat_name(k);
        if (failed[k]) {
            out.warnings.push_back("net for pair (" + out.top_pairs[k].first + ", " +
                                   out.top_pairs[k].second + ") diverged at every rate");
            continue;
        }
        std::vector<double> column = predict_column(out.nets[k], train);
        if (!has_variance(column)) {
            out.warnings.push_back("net output '" + out.yhat_names[k] +
                                   "' is constant; excluded");
            failed[k] = 1;
            continue;
        }
        usable_names.push_back(out.yhat_names[k]);
        usable_columns.push_back(std::move(column));
    }
    if (usable_names.empty()) throw ModelError("every stage-one net diverged or went flat");

    out.cluster_model = cluster_variables(usable_names, usable_columns, cfg.min_explained);
    out.cluster_report = select_representatives(out.cluster_model, usable_names, usable_columns);
    out.new_features = out.cluster_report.representatives;
    std::sort(out.new_features.begin(), out.new_features.end());

    for (const auto& feature : out.new_features) {
        std::size_t k = static_cast<std::size_t>(std::stoul(feature.substr(5)));
        out.train_aug.add_column(feature, predict_column(out.nets[k], train));
        out.valid_aug.add_column(feature, predict_column(out.nets[k], valid));
    }
    return out;
}

MetricSet evaluate(const LogisticModel& model, const Frame& frame, double threshold) {
    std::vector<double> scores = predict_proba(model, frame);
    MetricSet m;
    m.accuracy = accuracy(scores, frame.target(), threshold);
    m.auc = auc(scores, frame.target());
    m.ks = ks(scores, frame.target());
    return m;
}

const PathEntry* ModelPath::base() const {
    for (const auto& entry : entries)
        if (entry.is_base) return &entry;
    return nullptr;
}

const PathEntry* ModelPath::at_most(std::size_t n_features) const {
    const PathEntry* best = nullptr;
    for (const auto& entry : entries) {
        if (entry.n_features > n_features) continue;
        if (!best || entry.n_features > best->n_features) best = &entry;
    }
    return best;
}

namespace {

PathEntry make_entry(std::string label, const LogisticModel& model, const Frame& train,
                     const Frame& valid, double threshold) {
    PathEntry entry;
    entry.label = std::move(label);
    entry.n_features = model.n_terms();
    entry.model = model;
    entry.train = evaluate(model, train, threshold);
    entry.valid = evaluate(model, valid, threshold);
    return entry;
}

// Refits after dropping every negative coefficient until all signs agree.
LogisticModel prune_signs(LogisticModel model, const Design& candidates,
                          const std::vector<double>& y, const FitOptions& opts) {
    auto subset = [&](const std::vector<std::string>& names) {
        Design d;
        d.names = names;
        for (const auto& name : names) {
            auto it = std::find(candidates.names.begin(), candidates.names.end(), name);
            d.columns.push_back(candidates.columns[it - candidates.names.begin()]);
        }
        return d;
    };
    while (true) {
        std::vector<std::string> kept;
        for (std::size_t j = 0; j < model.terms.size(); ++j)
            if (model.beta[j + 1] >= 0.0) kept.push_back(model.terms[j]);
        if (kept.size() == model.terms.size()) return model;
        if (kept.empty())
            throw ModelError("sign pruning removed every candidate; no all-positive model exists");
        model = fit_logistic(subset(kept), y, opts);
    }
}

ModelPath reduce_path(const Frame& train, const Frame& valid,
                      const std::vector<std::string>& candidates, const PipelineConfig& cfg) {
    if (candidates.empty()) throw ModelError("model path needs candidate columns");
    const auto& y = train.target();
    Design all = design_from(train, candidates);
    FitOptions opts;

    ModelPath path;
    LogisticModel full = fit_logistic(all, y, opts);
    PathEntry full_entry = make_entry("Full Model", full, train, valid, cfg.accuracy_threshold);
    full_entry.is_full = true;

    LogisticModel model = stepwise_select(all, y, cfg.alpha_enter, cfg.alpha_stay, opts);
    if (model.terms.empty()) {
        path.warnings.push_back("stepwise selection kept no candidate; only the full model is reported");
        path.entries.push_back(std::move(full_entry));
        return path;
    }

    auto subset = [&](const std::vector<std::string>& names) {
        return design_from(train, names);
    };

    // VIF pruning: worst offender out, refit, repeat.
    while (model.terms.size() >= 2) {
        std::vector<double> v = vif(subset(model.terms));
        std::size_t worst = v.size();
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] > cfg.vif_threshold && (worst == v.size() || v[j] > v[worst])) worst = j;
        if (worst == v.size()) break;
        std::vector<std::string> kept = model.terms;
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(worst));
        model = fit_logistic(subset(kept), y, opts);
    }

    model = prune_signs(model, all, y, opts);

    bool base_is_full = model.terms.size() == candidates.size();
    full_entry.is_base = base_is_full;
    path.entries.push_back(std::move(full_entry));

    std::size_t index = 1;
    if (!base_is_full) {
        PathEntry base = make_entry("Model " + std::to_string(index++), model, train, valid,
                                    cfg.accuracy_threshold);
        base.is_base = true;
        path.entries.push_back(std::move(base));
    }

    // Reduction: drop the smallest-|Wald| term, refit, re-assert signs.
    while (model.terms.size() > 1) {
        std::size_t weakest = 0;
        for (std::size_t j = 1; j < model.terms.size(); ++j)
            if (model.wald_chisq[j + 1] < model.wald_chisq[weakest + 1]) weakest = j;
        std::vector<std::string> kept = model.terms;
        kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(weakest));
        try {
            model = prune_signs(fit_logistic(subset(kept), y, opts), all, y, opts);
        } catch (const ModelError& e) {
            path.warnings.push_back(std::string("reduction stopped early: ") + e.what());
            break;
        }
        path.entries.push_back(make_entry("Model " + std::to_string(index++), model, train,
                                          valid, cfg.accuracy_threshold));
    }
    return path;
}

}  // namespace

ModelPath run_stage_two(const Frame& train, const Frame& valid,
                        const std::vector<std::string>& candidates, const PipelineConfig& cfg) {
    return reduce_path(train, valid, candidates, cfg);
}

ModelPath run_one_stage(const Frame& train, const Frame& valid,
                        const std::vector<std::string>& candidates, const PipelineConfig& cfg) {
    return reduce_path(train, valid, candidates, cfg);
}

}  // namespace woenet
