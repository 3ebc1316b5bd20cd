#include "woenet/varclust.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "woenet/errors.hpp"

namespace woenet {
namespace {

constexpr int kMaxSweeps = 20;

Eigen::MatrixXd standardize(const std::vector<std::string>& names,
                            const std::vector<std::vector<double>>& columns) {
    if (names.size() != columns.size())
        throw DataError("clustering: names/columns size mismatch");
    if (columns.empty()) throw DataError("clustering needs at least one column");
    const std::size_t n = columns.front().size();
    if (n < 2) throw DataError("clustering needs at least two rows");

    Eigen::MatrixXd Z(n, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != n) throw DataError("clustering: ragged column lengths");
        double mean = 0.0;
        for (double v : columns[j]) mean += v;
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (double v : columns[j]) ss += (v - mean) * (v - mean);
        if (ss <= 0.0)
            throw DataError("clustering: column '" + names[j] + "' has zero variance");
        double sd = std::sqrt(ss / static_cast<double>(n - 1));
        for (std::size_t i = 0; i < n; ++i)
            Z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                (columns[j][i] - mean) / sd;
    }
    return Z;
}

struct ClusterInfo {
    std::vector<std::size_t> members;  // column indices, sorted by variable name
    Eigen::VectorXd u1, u2;            // loadings over members
    Eigen::VectorXd s1, s2;            // PC scores
    double l1 = 0.0, l2 = 0.0;
};

// Squared correlation of a centered column with a centered score vector.
double corr2(const Eigen::VectorXd& z, const Eigen::VectorXd& s) {
    double ss = s.squaredNorm();
    if (ss < 1e-24) return 0.0;
    double zz = z.squaredNorm();
    double dot = z.dot(s);
    double r2 = (dot * dot) / (zz * ss);
    return std::min(r2, 1.0);
}

void analyze(ClusterInfo& c, const Eigen::MatrixXd& Z, const std::vector<std::string>& names) {
    std::sort(c.members.begin(), c.members.end(),
              [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
    const std::size_t m = c.members.size();
    const Eigen::Index n = Z.rows();
    Eigen::MatrixXd Zm(n, m);
    for (std::size_t k = 0; k < m; ++k)
        Zm.col(static_cast<Eigen::Index>(k)) = Z.col(static_cast<Eigen::Index>(c.members[k]));

    Eigen::MatrixXd R = (Zm.transpose() * Zm) / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(R);
    const Eigen::Index p = R.cols();
    c.l1 = eig.eigenvalues()(p - 1);
    c.u1 = eig.eigenvectors().col(p - 1);
    if (p >= 2) {
        c.l2 = eig.eigenvalues()(p - 2);
        c.u2 = eig.eigenvectors().col(p - 2);
    } else {
        c.l2 = 0.0;
        c.u2 = Eigen::VectorXd::Zero(1);
    }
    // Fix the PC1 sign on the first member with a nonzero loading.
    for (std::size_t k = 0; k < m; ++k) {
        double v = c.u1(static_cast<Eigen::Index>(k));
        if (v != 0.0) {
            if (v < 0.0) c.u1 = -c.u1;
            break;
        }
    }
    for (std::size_t k = 0; k < m; ++k) {
        double v = c.u2(static_cast<Eigen::Index>(k));
        if (v != 0.0) {
            if (v < 0.0) c.u2 = -c.u2;
            break;
        }
    }
    c.s1 = Zm * c.u1;
    c.s2 = (p >= 2) ? Eigen::VectorXd(Zm * c.u2) : Eigen::VectorXd::Zero(n);
}

double total_lambda1(const std::vector<ClusterInfo>& clusters) {
    double t = 0.0;
    for (const auto& c : clusters) t += c.l1;
    return t;
}

std::vector<ClusterInfo> clusters_from_assignment(const std::vector<std::size_t>& assign,
                                                  std::size_t n_clusters,
                                                  const Eigen::MatrixXd& Z,
                                                  const std::vector<std::string>& names) {
    std::vector<ClusterInfo> out(n_clusters);
    for (std::size_t j = 0; j < assign.size(); ++j) out[assign[j]].members.push_back(j);
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const ClusterInfo& c) { return c.members.empty(); }),
              out.end());
    for (auto& c : out) analyze(c, Z, names);
    return out;
}

std::vector<std::size_t> assignment_of(const std::vector<ClusterInfo>& clusters, std::size_t p) {
    std::vector<std::size_t> assign(p, 0);
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (std::size_t j : clusters[c].members) assign[j] = c;
    return assign;
}

}  // namespace

double one_minus_r2_ratio(double r2_own, double r2_next) {
    r2_own = std::clamp(r2_own, 0.0, 1.0);
    if (r2_next >= 1.0) return std::numeric_limits<double>::infinity();
    r2_next = std::clamp(r2_next, 0.0, 1.0);
    return (1.0 - r2_own) / (1.0 - r2_next);
}

ClusterModel cluster_variables(const std::vector<std::string>& names,
                               const std::vector<std::vector<double>>& columns,
                               double min_explained) {
    if (!(min_explained > 0.0 && min_explained <= 1.0))
        throw ConfigError("min_explained must lie in (0, 1]");
    Eigen::MatrixXd Z = standardize(names, columns);
    const std::size_t p = names.size();

    std::vector<ClusterInfo> clusters(1);
    for (std::size_t j = 0; j < p; ++j) clusters[0].members.push_back(j);
    analyze(clusters[0], Z, names);

    std::set<std::vector<std::size_t>> failed_splits;

    while (total_lambda1(clusters) / static_cast<double>(p) < min_explained) {
        // Largest second eigenvalue among splittable clusters.
        std::size_t target = clusters.size();
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            if (clusters[c].members.size() < 2) continue;
            if (failed_splits.count(clusters[c].members)) continue;
            if (target == clusters.size() || clusters[c].l2 > clusters[target].l2) target = c;
        }
        if (target == clusters.size()) break;

        const ClusterInfo& parent = clusters[target];
        double prev_total = total_lambda1(clusters);
        std::size_t prev_count = clusters.size();

        // Seed children from the parent's top two PCs after a quartimax rotation
        // of the loading matrix. Without the rotation, every variable in a
        // two-member cluster correlates at least as strongly with PC1 as with
        // PC2 (lambda1/2 vs lambda2/2), so near-orthogonal pairs could never be
        // separated; rotating aligns the components with variable groups.
        const double sl1 = std::sqrt(std::max(parent.l1, 0.0));
        const double sl2 = std::sqrt(std::max(parent.l2, 0.0));
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < parent.members.size(); ++k) {
            double a = sl1 * parent.u1(static_cast<Eigen::Index>(k));
            double b = sl2 * parent.u2(static_cast<Eigen::Index>(k));
            double u = a * a - b * b;
            double v = 2.0 * a * b;
            num += 2.0 * u * v;
            den += u * u - v * v;
        }
        const double theta = 0.25 * std::atan2(num, den);
        const Eigen::VectorXd t1 = std::cos(theta) * parent.s1 + std::sin(theta) * parent.s2;
        const Eigen::VectorXd t2 = -std::sin(theta) * parent.s1 + std::cos(theta) * parent.s2;

        std::vector<std::size_t> assign = assignment_of(clusters, p);
        bool nonempty[2] = {false, false};
        for (std::size_t j : parent.members) {
            double a = corr2(Z.col(static_cast<Eigen::Index>(j)), t1);
            double b = corr2(Z.col(static_cast<Eigen::Index>(j)), t2);
            bool second = b > a;
            if (second) assign[j] = clusters.size();  // new cluster id
            nonempty[second ? 1 : 0] = true;
        }
        if (!nonempty[0] || !nonempty[1]) {
            // All members hug one rotated component. Peel off the member least
            // aligned with it so the split can still be evaluated; the commit
            // check below rejects it if it does not help.
            const Eigen::VectorXd& axis = nonempty[0] ? t1 : t2;
            std::size_t worst = parent.members.front();
            double worst_r2 = std::numeric_limits<double>::infinity();
            for (std::size_t j : parent.members) {
                double r2 = corr2(Z.col(static_cast<Eigen::Index>(j)), axis);
                if (r2 < worst_r2) {
                    worst_r2 = r2;
                    worst = j;
                }
            }
            for (std::size_t j : parent.members) assign[j] = (j == worst) ? clusters.size() : target;
        }

        std::vector<ClusterInfo> trial =
            clusters_from_assignment(assign, clusters.size() + 1, Z, names);
        std::vector<ClusterInfo> best = trial;
        double best_total = total_lambda1(trial);

        // Nearest-component reassignment sweeps, keeping the best total.
        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            std::vector<std::size_t> cur = assignment_of(trial, p);
            std::vector<std::size_t> next = cur;
            bool changed = false;
            for (std::size_t j = 0; j < p; ++j) {
                double best_r2 = corr2(Z.col(static_cast<Eigen::Index>(j)), trial[cur[j]].s1);
                std::size_t best_c = cur[j];
                for (std::size_t c = 0; c < trial.size(); ++c) {
                    if (c == cur[j]) continue;
                    double r2 = corr2(Z.col(static_cast<Eigen::Index>(j)), trial[c].s1);
                    if (r2 > best_r2) {
                        best_r2 = r2;
                        best_c = c;
                    }
                }
                if (best_c != cur[j]) {
                    next[j] = best_c;
                    changed = true;
                }
            }
            if (!changed) break;
            trial = clusters_from_assignment(next, trial.size(), Z, names);
            double t = total_lambda1(trial);
            if (t > best_total) {
                best_total = t;
                best = trial;
            }
        }

        if (best.size() <= prev_count || best_total < prev_total - 1e-12) {
            failed_splits.insert(parent.members);
            continue;
        }
        clusters = std::move(best);
    }

    ClusterModel model;
    model.clusters.resize(clusters.size());
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        Cluster& out = model.clusters[c];
        out.lambda1 = clusters[c].l1;
        out.lambda2 = clusters[c].l2;
        for (std::size_t k = 0; k < clusters[c].members.size(); ++k) {
            std::size_t j = clusters[c].members[k];
            out.members.push_back(names[j]);
            out.loadings.push_back(clusters[c].u1(static_cast<Eigen::Index>(k)));
            model.assignments[names[j]] = c;
        }
    }
    model.explained = total_lambda1(clusters) / static_cast<double>(p);
    return model;
}

RepresentativeReport select_representatives(const ClusterModel& model,
                                            const std::vector<std::string>& names,
                                            const std::vector<std::vector<double>>& columns) {
    Eigen::MatrixXd Z = standardize(names, columns);
    std::map<std::string, std::size_t> col_index;
    for (std::size_t j = 0; j < names.size(); ++j) col_index[names[j]] = j;

    // Rebuild each cluster's PC1 scores from the stored loadings.
    std::vector<Eigen::VectorXd> scores(model.clusters.size());
    for (std::size_t c = 0; c < model.clusters.size(); ++c) {
        const Cluster& cl = model.clusters[c];
        Eigen::VectorXd s = Eigen::VectorXd::Zero(Z.rows());
        for (std::size_t k = 0; k < cl.members.size(); ++k) {
            auto it = col_index.find(cl.members[k]);
            if (it == col_index.end())
                throw DataError("cluster member '" + cl.members[k] + "' missing from data");
            s += cl.loadings[k] * Z.col(static_cast<Eigen::Index>(it->second));
        }
        scores[c] = s;
    }

    RepresentativeReport report;
    report.rows.resize(names.size());
    report.representatives.assign(model.clusters.size(), "");
    std::vector<double> best_ratio(model.clusters.size(),
                                   std::numeric_limits<double>::infinity());

    for (std::size_t j = 0; j < names.size(); ++j) {
        auto it = model.assignments.find(names[j]);
        if (it == model.assignments.end())
            throw DataError("variable '" + names[j] + "' is not in the cluster model");
        std::size_t own = it->second;
        double r2_own = corr2(Z.col(static_cast<Eigen::Index>(j)), scores[own]);
        double r2_next = 0.0;
        for (std::size_t c = 0; c < model.clusters.size(); ++c) {
            if (c == own) continue;
            r2_next = std::max(r2_next, corr2(Z.col(static_cast<Eigen::Index>(j)), scores[c]));
        }
        RepresentativeRow& row = report.rows[j];
        row.variable = names[j];
        row.cluster = own;
        row.r2_own = r2_own;
        row.r2_next = r2_next;
        row.ratio = one_minus_r2_ratio(r2_own, r2_next);
    }

    // Per-cluster argmin ratio, ties broken by name; rows are in input order,
    // so scan members in each cluster's (name-sorted) order.
    std::map<std::string, std::size_t> row_of;
    for (std::size_t j = 0; j < names.size(); ++j) row_of[names[j]] = j;
    for (std::size_t c = 0; c < model.clusters.size(); ++c) {
        for (const auto& member : model.clusters[c].members) {
            const RepresentativeRow& row = report.rows[row_of[member]];
            if (row.ratio < best_ratio[c]) {
                best_ratio[c] = row.ratio;
                report.representatives[c] = member;
            }
        }
        if (report.representatives[c].empty() && !model.clusters[c].members.empty())
            report.representatives[c] = model.clusters[c].members.front();
    }
    for (std::size_t c = 0; c < model.clusters.size(); ++c)
        if (!report.representatives[c].empty())
            report.rows[row_of[report.representatives[c]]].is_representative = true;
    return report;
}

}  // namespace woenet
