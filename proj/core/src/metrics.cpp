#include "woenet/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "woenet/errors.hpp"

namespace woenet {
namespace {

void check_lengths(const std::vector<double>& scores, const std::vector<double>& labels) {
    if (scores.size() != labels.size())
        throw DataError("scores/labels length mismatch: " + std::to_string(scores.size()) +
                        " vs " + std::to_string(labels.size()));
    if (scores.empty()) throw DataError("cannot evaluate metrics on zero rows");
}

// Rows sorted by ascending score, collapsed into distinct-score groups.
struct ScoreGroups {
    std::vector<double> score;
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
};

ScoreGroups group_by_score(const std::vector<double>& scores, const std::vector<double>& labels) {
    check_lengths(scores, labels);
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    ScoreGroups g;
    for (std::size_t idx : order) {
        if (g.score.empty() || scores[idx] != g.score.back()) {
            g.score.push_back(scores[idx]);
            g.pos.push_back(0);
            g.neg.push_back(0);
        }
        if (labels[idx] == 1.0) {
            ++g.pos.back();
            ++g.n_pos;
        } else {
            ++g.neg.back();
            ++g.n_neg;
        }
    }
    if (g.n_pos == 0 || g.n_neg == 0)
        throw DataError("metric needs both classes present (got " + std::to_string(g.n_pos) +
                        " positives, " + std::to_string(g.n_neg) + " negatives)");
    return g;
}

}  // namespace

double ConfusionCounts::accuracy() const {
    std::size_t n = total();
    return n ? static_cast<double>(tp + tn) / static_cast<double>(n) : 0.0;
}

ConfusionCounts confusion(const std::vector<double>& scores, const std::vector<double>& labels,
                          double threshold) {
    check_lengths(scores, labels);
    ConfusionCounts c;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        bool predicted = scores[i] >= threshold;
        bool actual = labels[i] == 1.0;
        if (predicted && actual)
            ++c.tp;
        else if (predicted)
            ++c.fp;
        else if (actual)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

double accuracy(const std::vector<double>& scores, const std::vector<double>& labels,
                double threshold) {
    return confusion(scores, labels, threshold).accuracy();
}

double auc(const std::vector<double>& scores, const std::vector<double>& labels) {
    ScoreGroups g = group_by_score(scores, labels);
    // 2*wins + ties, all integer-valued, to keep tie halves exact.
    unsigned long long twice = 0;
    unsigned long long neg_below = 0;
    for (std::size_t k = 0; k < g.score.size(); ++k) {
        twice += 2ULL * g.pos[k] * neg_below + 1ULL * g.pos[k] * g.neg[k];
        neg_below += g.neg[k];
    }
    return static_cast<double>(twice) /
           (2.0 * static_cast<double>(g.n_pos) * static_cast<double>(g.n_neg));
}

double ks(const std::vector<double>& scores, const std::vector<double>& labels) {
    ScoreGroups g = group_by_score(scores, labels);
    long long cum_pos = 0;
    long long cum_neg = 0;
    long long best = 0;
    const long long P = static_cast<long long>(g.n_pos);
    const long long N = static_cast<long long>(g.n_neg);
    for (std::size_t k = 0; k < g.score.size(); ++k) {
        cum_pos += static_cast<long long>(g.pos[k]);
        cum_neg += static_cast<long long>(g.neg[k]);
        best = std::max(best, std::llabs(cum_neg * P - cum_pos * N));
    }
    return static_cast<double>(best) / (static_cast<double>(N) * static_cast<double>(P));
}

std::vector<RocPoint> roc_points(const std::vector<double>& scores,
                                 const std::vector<double>& labels) {
    ScoreGroups g = group_by_score(scores, labels);
    std::vector<RocPoint> points;
    points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    std::size_t pos_ge = 0;
    std::size_t neg_ge = 0;
    for (std::size_t k = g.score.size(); k-- > 0;) {
        pos_ge += g.pos[k];
        neg_ge += g.neg[k];
        points.push_back({g.score[k], static_cast<double>(neg_ge) / static_cast<double>(g.n_neg),
                          static_cast<double>(pos_ge) / static_cast<double>(g.n_pos)});
    }
    return points;
}

}  // namespace woenet
