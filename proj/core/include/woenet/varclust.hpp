#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace woenet {

struct Cluster {
    std::vector<std::string> members;   // name order
    std::vector<double> loadings;       // PC1 eigenvector entries, sign-fixed
    double lambda1 = 0.0;               // leading eigenvalue of the member correlation matrix
    double lambda2 = 0.0;
};

struct ClusterModel {
    std::vector<Cluster> clusters;
    double explained = 0.0;  // sum of lambda1 over clusters / total variables
    std::map<std::string, std::size_t> assignments;
};

// Divisive PC clustering: repeatedly split the largest-second-eigenvalue
// cluster across its top two PCs, then sweep reassignments to the closest
// cluster PC1 (keeping the best total lambda1 over at most 20 sweeps).
// Deterministic; no RNG involved.
ClusterModel cluster_variables(const std::vector<std::string>& names,
                               const std::vector<std::vector<double>>& columns,
                               double min_explained);

// (1 - r2_own) / (1 - r2_next); +inf sentinel when the next cluster fits
// perfectly, 1 - r2_own when there is no next cluster (r2_next = 0).
double one_minus_r2_ratio(double r2_own, double r2_next);

struct RepresentativeRow {
    std::string variable;
    std::size_t cluster = 0;
    double r2_own = 0.0;
    double r2_next = 0.0;
    double ratio = 0.0;
    bool is_representative = false;
};

struct RepresentativeReport {
    std::vector<RepresentativeRow> rows;             // input name order
    std::vector<std::string> representatives;        // one per cluster, cluster order
};

RepresentativeReport select_representatives(const ClusterModel& model,
                                            const std::vector<std::string>& names,
                                            const std::vector<std::vector<double>>& columns);

}  // namespace woenet
