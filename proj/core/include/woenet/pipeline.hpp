#pragma once

#include <string>
#include <utility>
#include <vector>

#include "woenet/config.hpp"
#include "woenet/frame.hpp"
#include "woenet/glm.hpp"
#include "woenet/prep.hpp"
#include "woenet/tinynet.hpp"
#include "woenet/varclust.hpp"

namespace woenet {

struct Preprocessed {
    Frame train;
    Frame valid;
    ImputePlan impute;
    WoeEncoder woe;
    ClusterModel prep_clusters;
    RepresentativeReport prep_report;
    std::vector<std::string> predictors;  // surviving representative predictors
    std::vector<std::string> warnings;
};

// Split -> impute (+ indicators) -> variable clustering on imputed values,
// keeping cluster representatives -> WOE. Validation reuses every fit.
Preprocessed preprocess(const Frame& raw, const PipelineConfig& cfg);

// All C(n,2) unordered pairs in lexicographic order.
std::vector<std::pair<std::string, std::string>> enumerate_pairs(
    std::vector<std::string> variables);

struct PairScore {
    std::string a;
    std::string b;
    double wald = 0.0;
    double p = 1.0;
    bool converged = false;
};

// One interaction-term fit per pair; failures become wald-0 flags. Results
// land in canonical pair order no matter how the pool schedules them.
std::vector<PairScore> screen_interactions(
    const Frame& train, const std::vector<std::pair<std::string, std::string>>& pairs,
    std::size_t workers);

// Indices of the n largest converged Wald statistics (ties: canonical order).
std::vector<std::size_t> select_top_n(const std::vector<PairScore>& scores, std::size_t n,
                                      bool* saturated = nullptr);

struct StageOneResult {
    std::vector<PairScore> scored_pairs;
    std::vector<std::pair<std::string, std::string>> top_pairs;  // rank order
    std::vector<TinyNet> nets;          // aligned with top_pairs
    std::vector<TrainReport> reports;   // aligned with top_pairs
    std::vector<std::string> yhat_names;
    ClusterModel cluster_model;         // over usable yhat columns
    RepresentativeReport cluster_report;
    std::vector<std::string> new_features;  // representative yhat columns
    Frame train_aug;  // train/valid with the new feature columns appended
    Frame valid_aug;
    bool saturated = false;
    std::vector<std::string> warnings;
};

StageOneResult build_stage_one(const Frame& train, const Frame& valid,
                               const PipelineConfig& cfg);

struct MetricSet {
    double accuracy = 0.0;
    double auc = 0.0;
    double ks = 0.0;
};

MetricSet evaluate(const LogisticModel& model, const Frame& frame, double threshold);

struct PathEntry {
    std::string label;  // "Full Model", "Model 1", ...
    std::size_t n_features = 0;
    LogisticModel model;
    MetricSet train;
    MetricSet valid;
    bool is_full = false;
    bool is_base = false;
};

struct ModelPath {
    std::vector<PathEntry> entries;  // full model first, then shrinking sizes
    std::vector<std::string> warnings;

    const PathEntry* base() const;
    const PathEntry* at_most(std::size_t n_features) const;  // largest entry <= budget
};

// Stepwise -> VIF pruning -> sign pruning -> one-at-a-time smallest-|Wald|
// reduction, with train/valid metrics at every recorded size.
ModelPath run_stage_two(const Frame& train, const Frame& valid,
                        const std::vector<std::string>& candidates, const PipelineConfig& cfg);

// Same procedure over the preprocessed original predictors only.
ModelPath run_one_stage(const Frame& train, const Frame& valid,
                        const std::vector<std::string>& candidates, const PipelineConfig& cfg);

}  // namespace woenet
