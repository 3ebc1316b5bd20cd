#pragma once

#include <cstddef>
#include <vector>

namespace woenet {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    double accuracy() const;
};

struct RocPoint {
    double threshold;
    double fpr;
    double tpr;
};

// Predicts 1 iff score >= threshold.
ConfusionCounts confusion(const std::vector<double>& scores, const std::vector<double>& labels,
                          double threshold);

double accuracy(const std::vector<double>& scores, const std::vector<double>& labels,
                double threshold = 0.5);

// Tie-corrected Mann-Whitney statistic: P(score+ > score-) + P(tie)/2.
// Computed from integer pair counts so it matches pairwise concordance exactly.
double auc(const std::vector<double>& scores, const std::vector<double>& labels);

// Max |F_neg(s) - F_pos(s)| over the empirical score CDFs, maximized on
// integer cross-products before the single final division.
double ks(const std::vector<double>& scores, const std::vector<double>& labels);

// One point per distinct score threshold (descending), prefixed by the
// predict-nothing point; runs (0,0) -> (1,1) in (fpr, tpr).
std::vector<RocPoint> roc_points(const std::vector<double>& scores,
                                 const std::vector<double>& labels);

}  // namespace woenet
