#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "woenet/errors.hpp"
#include "woenet/rng.hpp"
#include "woenet/varclust.hpp"

using namespace woenet;

namespace {

std::vector<double> noisy_copy(const std::vector<double>& base, double noise, Rng& rng) {
    std::vector<double> out = base;
    for (double& v : out) v += noise * rng.gaussian();
    return out;
}

std::vector<double> gaussian_column(std::size_t n, Rng& rng) {
    std::vector<double> out(n);
    for (double& v : out) v = rng.gaussian();
    return out;
}

}  // namespace

TEST_CASE("collinear pair plus an independent variable -> 2 clusters") {
    Rng rng(71);
    std::size_t n = 200;
    std::vector<double> base = gaussian_column(n, rng);
    std::vector<std::vector<double>> columns{base, base, gaussian_column(n, rng)};
    // exactly collinear pair: lambda1 of its 2x2 correlation block is 2
    ClusterModel model = cluster_variables({"a", "b", "c"}, columns, 0.9);
    REQUIRE(model.clusters.size() == 2);

    std::vector<std::vector<std::string>> memberships;
    for (const auto& c : model.clusters) memberships.push_back(c.members);
    std::sort(memberships.begin(), memberships.end());
    CHECK(memberships[0] == std::vector<std::string>{"a", "b"});
    CHECK(memberships[1] == std::vector<std::string>{"c"});

    for (const auto& c : model.clusters) {
        if (c.members.size() == 2) CHECK(c.lambda1 == doctest::Approx(2.0).epsilon(1e-9));
        if (c.members.size() == 1) CHECK(c.lambda1 == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(model.explained >= 0.9);
}

TEST_CASE("orthogonal variables end as singletons when full variance is required") {
    // Build exactly uncorrelated columns from a 4x4 orthogonal design.
    std::vector<std::vector<double>> columns = {
        {1, 1, -1, -1, 1, 1, -1, -1},
        {1, -1, 1, -1, 1, -1, 1, -1},
        {1, -1, -1, 1, 1, -1, -1, 1},
    };
    ClusterModel model = cluster_variables({"a", "b", "c"}, columns, 1.0);
    CHECK(model.clusters.size() == 3);
    for (const auto& c : model.clusters) CHECK(c.members.size() == 1);
    CHECK(model.explained == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two correlated blocks separate and explained accounts lambda1") {
    Rng rng(72);
    std::size_t n = 300;
    std::vector<double> u = gaussian_column(n, rng);
    std::vector<double> v = gaussian_column(n, rng);
    std::vector<std::vector<double>> columns{
        noisy_copy(u, 0.1, rng), noisy_copy(u, 0.1, rng), noisy_copy(u, 0.1, rng),
        noisy_copy(v, 0.1, rng), noisy_copy(v, 0.1, rng)};
    ClusterModel model =
        cluster_variables({"u1", "u2", "u3", "v1", "v2"}, columns, 0.9);
    REQUIRE(model.clusters.size() >= 2);

    // The u-block and v-block must not share a cluster.
    CHECK(model.assignments.at("u1") == model.assignments.at("u2"));
    CHECK(model.assignments.at("u1") == model.assignments.at("u3"));
    CHECK(model.assignments.at("v1") == model.assignments.at("v2"));
    CHECK(model.assignments.at("u1") != model.assignments.at("v1"));

    double total = 0.0;
    for (const auto& c : model.clusters) total += c.lambda1;
    CHECK(model.explained == doctest::Approx(total / 5.0));
}

TEST_CASE("clustering is deterministic") {
    Rng rng(73);
    std::size_t n = 120;
    std::vector<double> u = gaussian_column(n, rng);
    std::vector<std::vector<double>> columns{noisy_copy(u, 0.4, rng), noisy_copy(u, 0.4, rng),
                                             gaussian_column(n, rng), gaussian_column(n, rng)};
    std::vector<std::string> names{"a", "b", "c", "d"};
    ClusterModel m1 = cluster_variables(names, columns, 0.95);
    ClusterModel m2 = cluster_variables(names, columns, 0.95);
    REQUIRE(m1.clusters.size() == m2.clusters.size());
    for (std::size_t k = 0; k < m1.clusters.size(); ++k) {
        CHECK(m1.clusters[k].members == m2.clusters[k].members);
        CHECK(m1.clusters[k].lambda1 == m2.clusters[k].lambda1);
        CHECK(m1.clusters[k].loadings == m2.clusters[k].loadings);
    }
}

TEST_CASE("min_explained is validated and trivial inputs handled") {
    std::vector<std::vector<double>> columns{{1.0, 2.0, 3.0}, {2.0, 1.0, 3.0}};
    CHECK_THROWS_AS(cluster_variables({"a", "b"}, columns, 0.0), ConfigError);
    CHECK_THROWS_AS(cluster_variables({"a", "b"}, columns, 1.5), ConfigError);

    // Single variable: one singleton cluster, fully explained.
    ClusterModel one = cluster_variables({"a"}, {{1.0, 2.0, 3.0}}, 0.9);
    CHECK(one.clusters.size() == 1);
    CHECK(one.explained == doctest::Approx(1.0));
}

TEST_CASE("constant or short columns are rejected") {
    CHECK_THROWS_AS(cluster_variables({"a", "b"}, {{1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}}, 0.9),
                    DataError);
    CHECK_THROWS_AS(cluster_variables({"a"}, {{1.0}}, 0.9), DataError);
}

TEST_CASE("one_minus_r2_ratio closed cases") {
    CHECK(one_minus_r2_ratio(1.0, 0.3) == 0.0);
    CHECK(one_minus_r2_ratio(0.64, 0.1) == doctest::Approx(0.4));
    CHECK(one_minus_r2_ratio(0.0, 0.0) == 1.0);
    CHECK(std::isinf(one_minus_r2_ratio(0.5, 1.0)));
}

TEST_CASE("singleton cluster representative has r2_own 1 and ratio 0") {
    Rng rng(74);
    std::vector<std::vector<double>> columns{gaussian_column(50, rng), gaussian_column(50, rng)};
    ClusterModel model = cluster_variables({"a", "b"}, columns, 1.0);
    REQUIRE(model.clusters.size() == 2);
    RepresentativeReport report = select_representatives(model, {"a", "b"}, columns);
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
        CHECK(row.r2_own == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(row.ratio == doctest::Approx(0.0).scale(1).epsilon(1e-12));
        CHECK(row.is_representative);
    }
    CHECK(report.representatives.size() == 2);
}

TEST_CASE("identical columns tie on ratio; name order breaks the tie") {
    Rng rng(75);
    std::vector<double> base = gaussian_column(80, rng);
    std::vector<std::vector<double>> columns{base, base};
    ClusterModel model = cluster_variables({"beta", "alpha"}, columns, 0.9);
    REQUIRE(model.clusters.size() == 1);
    RepresentativeReport report =
        select_representatives(model, {"beta", "alpha"}, columns);
    CHECK(report.rows[0].ratio == report.rows[1].ratio);
    REQUIRE(report.representatives.size() == 1);
    CHECK(report.representatives[0] == "alpha");
}

TEST_CASE("a PC-like average beats its parts as representative") {
    // v1 is the (noisy) mean of v2 and v3: it correlates best with the
    // cluster's first PC, so it should win the lowest 1-R2 ratio.
    Rng rng(76);
    std::size_t n = 100;
    std::vector<double> v2 = gaussian_column(n, rng);
    std::vector<double> v3 = gaussian_column(n, rng);
    std::vector<double> v1(n);
    for (std::size_t i = 0; i < n; ++i)
        v1[i] = 0.5 * (v2[i] + v3[i]) + 0.05 * rng.gaussian();
    std::vector<std::vector<double>> columns{v1, v2, v3};
    std::vector<std::string> names{"v1", "v2", "v3"};

    ClusterModel model = cluster_variables(names, columns, 0.5);
    REQUIRE(model.clusters.size() == 1);
    RepresentativeReport report = select_representatives(model, names, columns);
    REQUIRE(report.representatives.size() == 1);
    CHECK(report.representatives[0] == "v1");

    double best_ratio = 1e300;
    for (const auto& row : report.rows) best_ratio = std::min(best_ratio, row.ratio);
    for (const auto& row : report.rows)
        if (row.is_representative) CHECK(row.ratio == best_ratio);
}

TEST_CASE("representative rows preserve input order and assignments") {
    Rng rng(77);
    std::size_t n = 150;
    std::vector<double> u = gaussian_column(n, rng);
    std::vector<std::vector<double>> columns{gaussian_column(n, rng), noisy_copy(u, 0.2, rng),
                                             noisy_copy(u, 0.2, rng)};
    std::vector<std::string> names{"z", "p", "q"};
    ClusterModel model = cluster_variables(names, columns, 0.9);
    RepresentativeReport report = select_representatives(model, names, columns);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].variable == "z");
    CHECK(report.rows[1].variable == "p");
    CHECK(report.rows[2].variable == "q");
    for (const auto& row : report.rows)
        CHECK(row.cluster == model.assignments.at(row.variable));
    // Exactly one representative per cluster.
    std::size_t n_repr = 0;
    for (const auto& row : report.rows) n_repr += row.is_representative ? 1 : 0;
    CHECK(n_repr == model.clusters.size());
}
