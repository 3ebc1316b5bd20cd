#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "woenet/errors.hpp"
#include "woenet/metrics.hpp"
#include "woenet/pipeline.hpp"
#include "woenet/rng.hpp"
#include "woenet/sigmoid.hpp"
#include "woenet/synth.hpp"

using namespace woenet;

namespace {

std::vector<std::string> names_n(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i + 1));
    return out;
}

// Small planted-interaction frame for screening tests.
Frame interaction_frame(std::size_t n, double strength, std::uint64_t seed,
                        std::size_t n_noise = 0) {
    Rng rng(seed);
    std::vector<std::vector<double>> cols(2 + n_noise, std::vector<double>(n));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& c : cols) c[i] = rng.gaussian();
        double z = 0.2 * cols[0][i] + 0.2 * cols[1][i] + strength * cols[0][i] * cols[1][i];
        y[i] = rng.next_double() < sigmoid(z) ? 1.0 : 0.0;
    }
    Frame f;
    f.add_column("pa", cols[0]);
    f.add_column("pb", cols[1]);
    for (std::size_t k = 0; k < n_noise; ++k)
        f.add_column("n" + std::to_string(k + 1), cols[2 + k]);
    f.add_column("y", y);
    f.set_target("y");
    return f;
}

PipelineConfig tiny_cfg() {
    PipelineConfig cfg;
    cfg.target = "y";
    cfg.top_n = 2;
    cfg.max_iters = 2000;
    cfg.n_bins = 5;
    return cfg;
}

}  // namespace

TEST_CASE("pair counts: 178 -> 15,753 and 11 -> 55 and 2 -> 1") {
    CHECK(enumerate_pairs(names_n(178)).size() == 15753);
    CHECK(enumerate_pairs(names_n(11)).size() == 55);
    auto single = enumerate_pairs(names_n(2));
    REQUIRE(single.size() == 1);
    CHECK(single[0].first == "v1");
    CHECK(single[0].second == "v2");
}

TEST_CASE("pairs are lexicographic over distinct variables") {
    auto pairs = enumerate_pairs({"c", "a", "b"});
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == std::pair<std::string, std::string>{"a", "b"});
    CHECK(pairs[1] == std::pair<std::string, std::string>{"a", "c"});
    CHECK(pairs[2] == std::pair<std::string, std::string>{"b", "c"});
    for (const auto& p : pairs) CHECK(p.first != p.second);
    CHECK_THROWS_AS(enumerate_pairs({"only"}), DataError);
}

TEST_CASE("planted interaction pair outranks noise pairs") {
    // Majority over replicates: the (pa, pb) pair must take rank 1.
    int wins = 0;
    const int reps = 20;
    for (std::uint64_t rep = 0; rep < reps; ++rep) {
        Frame f = interaction_frame(1500, 1.0, derive_seed(600, rep), 3);
        auto pairs = enumerate_pairs(f.predictor_names());
        CHECK(pairs.size() == 10);  // 5 variables
        auto scores = screen_interactions(f, pairs, 1);
        auto top = select_top_n(scores, 1);
        REQUIRE(top.size() == 1);
        if (scores[top[0]].a == "pa" && scores[top[0]].b == "pb") ++wins;
    }
    CHECK(wins > reps / 2);
}

TEST_CASE("screening a null frame yields sane p-values and no crash") {
    Frame f = interaction_frame(400, 0.0, 77, 9);  // 11 variables -> 55 pairs
    auto pairs = enumerate_pairs(f.predictor_names());
    REQUIRE(pairs.size() == 55);
    auto scores = screen_interactions(f, pairs, 3);
    REQUIRE(scores.size() == 55);
    double max_p = 0.0;
    for (const auto& s : scores) {
        CHECK(s.converged);
        CHECK(s.p >= 0.0);
        CHECK(s.wald >= 0.0);
        max_p = std::max(max_p, s.p);
    }
    CHECK(max_p < 1.0);
}

TEST_CASE("screen results keep canonical order across worker counts") {
    Frame f = interaction_frame(300, 0.8, 13, 4);
    auto pairs = enumerate_pairs(f.predictor_names());
    auto serial = screen_interactions(f, pairs, 1);
    auto parallel = screen_interactions(f, pairs, 5);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].a == parallel[i].a);
        CHECK(serial[i].b == parallel[i].b);
        CHECK(serial[i].wald == parallel[i].wald);
        CHECK(serial[i].p == parallel[i].p);
    }
}

TEST_CASE("select_top_n takes the n largest usable Walds, flags saturation") {
    std::vector<PairScore> scores(4);
    scores[0] = {"a", "b", 5.0, 0.02, true};
    scores[1] = {"a", "c", 50.0, 1e-9, true};
    scores[2] = {"a", "d", 100.0, 0.5, false};  // not converged: excluded
    scores[3] = {"b", "c", 7.0, 0.01, true};

    bool saturated = false;
    auto top = select_top_n(scores, 2, &saturated);
    REQUIRE(top.size() == 2);
    CHECK(scores[top[0]].wald == 50.0);
    CHECK(scores[top[1]].wald == 7.0);
    CHECK_FALSE(saturated);

    top = select_top_n(scores, 10, &saturated);
    CHECK(top.size() == 3);  // only converged pairs
    CHECK(saturated);

    CHECK_THROWS_AS(select_top_n(scores, 0), ConfigError);
}

TEST_CASE("preprocess: split, impute, cluster, WOE chain on a small frame") {
    Rng rng(800);
    std::size_t n = 400;
    std::vector<double> a(n), b(n), c(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.gaussian();
        b[i] = a[i] + 0.05 * rng.gaussian();  // near-duplicate of a
        c[i] = rng.gaussian();
        if (i % 13 == 0) c[i] = kMissing;
        y[i] = rng.next_double() < sigmoid(0.8 * a[i]) ? 1.0 : 0.0;
    }
    Frame f;
    f.add_column("a", a);
    f.add_column("b", b);
    f.add_column("c", c);
    f.add_column("y", y);
    f.set_target("y");

    PipelineConfig cfg = tiny_cfg();
    cfg.fraction = 0.6;
    cfg.seed = 5;
    cfg.min_explained = 0.8;
    Preprocessed prep = preprocess(f, cfg);

    CHECK(prep.train.n_rows() + prep.valid.n_rows() == n);
    // a and b share a cluster; only one representative of the pair survives.
    bool has_a = std::find(prep.predictors.begin(), prep.predictors.end(), "a") !=
                 prep.predictors.end();
    bool has_b = std::find(prep.predictors.begin(), prep.predictors.end(), "b") !=
                 prep.predictors.end();
    CHECK(has_a != has_b);
    // the missing indicator for c exists as a candidate column
    CHECK(prep.impute.indicator_names.count("c") == 1);
    // WOE-encoded training data has no missing cells and matches predictors
    for (const auto& name : prep.predictors) {
        CHECK(prep.train.has_column(name));
        for (double v : prep.train.values(name)) CHECK_FALSE(is_missing(v));
    }
    CHECK(prep.train.predictor_names() == prep.predictors);
}

TEST_CASE("stage one: duplicated pair collapses to one representative feature") {
    // pa/pb carry the signal; pc duplicates pa exactly, so (pa,pb) and
    // (pb,pc) train nets on the same information and their prediction
    // columns should land in one cluster with a single representative.
    Rng rng(801);
    std::size_t n = 1200;
    std::vector<double> pa(n), pb(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        pa[i] = rng.gaussian();
        pb[i] = rng.gaussian();
        double z = 0.5 * pa[i] + 0.5 * pb[i] + 1.2 * pa[i] * pb[i];
        y[i] = rng.next_double() < sigmoid(z) ? 1.0 : 0.0;
    }
    Frame train;
    train.add_column("pa", pa);
    train.add_column("pb", pb);
    train.add_column("pc", pa);
    train.add_column("y", y);
    train.set_target("y");

    PipelineConfig cfg = tiny_cfg();
    cfg.top_n = 2;
    cfg.min_explained = 0.8;
    cfg.max_iters = 4000;
    cfg.learning_rates = {1e-2, 1e-1};
    StageOneResult s1 = build_stage_one(train, train, cfg);
    REQUIRE(s1.top_pairs.size() == 2);

    std::set<std::string> tops;
    for (const auto& p : s1.top_pairs) tops.insert(p.first + "*" + p.second);
    CHECK(tops.count("pa*pb") == 1);
    CHECK(tops.count("pb*pc") == 1);

    CHECK(s1.cluster_model.clusters.size() == 1);
    CHECK(s1.new_features.size() == 1);
    CHECK(s1.train_aug.has_column(s1.new_features[0]));
    CHECK(s1.valid_aug.has_column(s1.new_features[0]));
}

TEST_CASE("stage one: top_n=1 skips clustering gymnastics") {
    Frame f = interaction_frame(600, 1.0, 44, 1);
    PipelineConfig cfg = tiny_cfg();
    cfg.top_n = 1;
    cfg.learning_rates = {1e-2, 1e-1};
    StageOneResult s1 = build_stage_one(f, f, cfg);
    CHECK(s1.top_pairs.size() == 1);
    CHECK(s1.new_features.size() == 1);
    CHECK(s1.yhat_names.size() == 1);
    CHECK(s1.yhat_names[0] == "yhat_0");
}

TEST_CASE("stage one: top_n beyond the pair count saturates with a warning") {
    Frame f = interaction_frame(500, 1.0, 45, 0);  // 2 predictors -> 1 pair
    PipelineConfig cfg = tiny_cfg();
    cfg.top_n = 9;
    cfg.learning_rates = {1e-2, 1e-1};
    StageOneResult s1 = build_stage_one(f, f, cfg);
    CHECK(s1.saturated);
    CHECK(s1.top_pairs.size() == 1);
    CHECK_FALSE(s1.warnings.empty());
}

TEST_CASE("evaluate bundles accuracy, AUC and KS at the configured threshold") {
    Rng rng(802);
    std::size_t n = 300;
    Frame f;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rng.gaussian();
        y[i] = rng.next_double() < sigmoid(1.3 * x[i]) ? 1.0 : 0.0;
    }
    f.add_column("x", x);
    f.add_column("y", y);
    f.set_target("y");

    Design d = design_from(f, {"x"});
    LogisticModel m = fit_logistic(d, f.target());
    MetricSet ms = evaluate(m, f, 0.5);
    auto scores = predict_proba(m, f);
    CHECK(ms.accuracy == accuracy(scores, f.target(), 0.5));
    CHECK(ms.auc == auc(scores, f.target()));
    CHECK(ms.ks == ks(scores, f.target()));
    CHECK(ms.auc > 0.7);
}

TEST_CASE("model path: full model first, then monotone shrinking sizes") {
    SynthSpec spec;
    spec.n_rows = 1500;
    spec.n_noise = 4;
    spec.seed = 11;
    Frame raw = synth_frame(spec);

    PipelineConfig cfg = tiny_cfg();
    cfg.seed = 11;
    Preprocessed prep = preprocess(raw, cfg);
    ModelPath path = run_one_stage(prep.train, prep.valid, prep.predictors, cfg);

    REQUIRE_FALSE(path.entries.empty());
    CHECK(path.entries.front().is_full);
    CHECK(path.entries.front().label == "Full Model");
    CHECK(path.entries.front().n_features == prep.predictors.size());
    for (std::size_t i = 1; i < path.entries.size(); ++i)
        CHECK(path.entries[i].n_features < path.entries[i - 1].n_features);
    if (!path.entries.empty()) CHECK(path.entries.back().n_features >= 1);

    // exactly one base entry, and base() finds it
    std::size_t n_base = 0;
    for (const auto& e : path.entries) n_base += e.is_base ? 1 : 0;
    CHECK(n_base == 1);
    REQUIRE(path.base() != nullptr);
    CHECK(path.base()->is_base);

    // every non-full entry satisfies the sign discipline
    for (const auto& e : path.entries) {
        if (e.is_full) continue;
        for (std::size_t j = 1; j < e.model.beta.size(); ++j) CHECK(e.model.beta[j] >= 0.0);
    }

    // at_most picks the largest entry within budget
    const PathEntry* pick = path.at_most(path.entries.front().n_features + 5);
    CHECK(pick == &path.entries.front());
    const PathEntry* tiny = path.at_most(1);
    if (tiny != nullptr) CHECK(tiny->n_features <= 1);
}

TEST_CASE("negated encoded column is pruned by the sign rule") {
    Rng rng(803);
    std::size_t n = 900;
    std::vector<double> x1(n), x2(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = rng.gaussian();
        x2[i] = rng.gaussian();
        y[i] = rng.next_double() < sigmoid(0.9 * x1[i] + 0.6 * x2[i]) ? 1.0 : 0.0;
    }
    Frame f;
    f.add_column("x1", x1);
    f.add_column("x2", x2);
    f.add_column("y", y);
    f.set_target("y");
    f = [&] {
        PipelineConfig cfg = tiny_cfg();
        cfg.seed = 12;
        Preprocessed prep = preprocess(f, cfg);
        return prep.train;
    }();

    // Manually flip one encoded column: its coefficient turns negative and the
    // sign rule must drop it from the base model.
    std::vector<double> flipped = f.values("x2");
    for (double& v : flipped) v = -v;
    Frame g;
    g.add_column("x1", f.values("x1"));
    g.add_column("x2", flipped);
    g.add_column("y", f.target());
    g.set_target("y");

    PipelineConfig cfg = tiny_cfg();
    ModelPath path = run_one_stage(g, g, {"x1", "x2"}, cfg);
    const PathEntry* base = path.base();
    REQUIRE(base != nullptr);
    CHECK(std::find(base->model.terms.begin(), base->model.terms.end(), "x2") ==
          base->model.terms.end());
    CHECK(std::find(base->model.terms.begin(), base->model.terms.end(), "x1") !=
          base->model.terms.end());
}

TEST_CASE("collinear duplicate never survives to the base model") {
    Rng rng(804);
    std::size_t n = 700;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rng.gaussian();
        y[i] = rng.next_double() < sigmoid(1.1 * x[i]) ? 1.0 : 0.0;
    }
    Frame f;
    f.add_column("x", x);
    std::vector<double> x_dup = x;
    for (double& v : x_dup) v += 1e-6 * rng.gaussian();
    f.add_column("x_dup", x_dup);
    f.add_column("y", y);
    f.set_target("y");

    PipelineConfig cfg = tiny_cfg();
    ModelPath path = run_one_stage(f, f, {"x", "x_dup"}, cfg);
    const PathEntry* base = path.base();
    REQUIRE(base != nullptr);
    CHECK(base->model.terms.size() <= 1);
}

TEST_CASE("one-stage and two-stage paths share identical preprocessing") {
    SynthSpec spec;
    spec.n_rows = 1200;
    spec.n_noise = 2;
    spec.seed = 21;
    Frame raw = synth_frame(spec);
    PipelineConfig cfg = tiny_cfg();
    cfg.seed = 21;
    cfg.learning_rates = {1e-1};

    Preprocessed p1 = preprocess(raw, cfg);
    Preprocessed p2 = preprocess(raw, cfg);
    CHECK(p1.train.equals(p2.train));
    CHECK(p1.valid.equals(p2.valid));
    CHECK(p1.predictors == p2.predictors);
    REQUIRE(p1.woe.variables.size() == p2.woe.variables.size());
    for (const auto& [name, var] : p1.woe.variables) {
        const auto& other = p2.woe.variables.at(name);
        CHECK(var.edges == other.edges);
        CHECK(var.woe == other.woe);
    }
}
