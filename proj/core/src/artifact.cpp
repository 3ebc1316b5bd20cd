#include "woenet/artifact.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "woenet/errors.hpp"

namespace woenet {
namespace {

using json = nlohmann::ordered_json;

json config_to_json(const PipelineConfig& cfg) {
    json j;
    j["input"] = cfg.input;
    j["target"] = cfg.target;
    j["positive_label"] = cfg.positive_label;
    j["sentinels"] = cfg.sentinels;
    j["categorical"] = cfg.categorical;
    j["fraction"] = cfg.fraction;
    j["seed"] = cfg.seed;
    j["n_bins"] = cfg.n_bins;
    j["smoothing"] = cfg.smoothing;
    j["min_explained"] = cfg.min_explained;
    j["top_n"] = cfg.top_n;
    j["learning_rates"] = cfg.learning_rates;
    j["max_iters"] = cfg.max_iters;
    j["hidden"] = cfg.hidden;
    j["alpha_enter"] = cfg.alpha_enter;
    j["alpha_stay"] = cfg.alpha_stay;
    j["vif_threshold"] = cfg.vif_threshold;
    j["accuracy_threshold"] = cfg.accuracy_threshold;
    return j;
}

PipelineConfig config_from_json(const json& j) {
    PipelineConfig cfg;
    cfg.input = j.at("input").get<std::string>();
    cfg.target = j.at("target").get<std::string>();
    cfg.positive_label = j.at("positive_label").get<std::string>();
    cfg.sentinels = j.at("sentinels").get<std::vector<std::string>>();
    cfg.categorical = j.at("categorical").get<std::vector<std::string>>();
    cfg.fraction = j.at("fraction").get<double>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.n_bins = j.at("n_bins").get<std::size_t>();
    cfg.smoothing = j.at("smoothing").get<double>();
    cfg.min_explained = j.at("min_explained").get<double>();
    cfg.top_n = j.at("top_n").get<std::size_t>();
    cfg.learning_rates = j.at("learning_rates").get<std::vector<double>>();
    cfg.max_iters = j.at("max_iters").get<std::size_t>();
    cfg.hidden = j.at("hidden").get<std::size_t>();
    cfg.alpha_enter = j.at("alpha_enter").get<double>();
    cfg.alpha_stay = j.at("alpha_stay").get<double>();
    cfg.vif_threshold = j.at("vif_threshold").get<double>();
    cfg.accuracy_threshold = j.at("accuracy_threshold").get<double>();
    return cfg;
}

json net_to_json(const TinyNet& net) {
    json j;
    if (net.width() == 1) {
        j["w1"] = net.w1[0];
        j["w2"] = net.w2[0];
        j["b1"] = net.b1[0];
        j["v"] = net.v[0];
    } else {
        j["w1"] = net.w1;
        j["w2"] = net.w2;
        j["b1"] = net.b1;
        j["v"] = net.v;
    }
    j["b2"] = net.b2;
    j["input_a"] = net.input_a;
    j["input_b"] = net.input_b;
    return j;
}

std::vector<double> number_or_array(const json& j) {
    if (j.is_array()) return j.get<std::vector<double>>();
    return {j.get<double>()};
}

TinyNet net_from_json(const json& j) {
    TinyNet net;
    net.w1 = number_or_array(j.at("w1"));
    net.w2 = number_or_array(j.at("w2"));
    net.b1 = number_or_array(j.at("b1"));
    net.v = number_or_array(j.at("v"));
    net.b2 = j.at("b2").get<double>();
    net.input_a = j.at("input_a").get<std::string>();
    net.input_b = j.at("input_b").get<std::string>();
    return net;
}

json model_to_json(const LogisticModel& m) {
    json j;
    j["terms"] = m.terms;
    j["beta"] = m.beta;
    j["se"] = m.se;
    j["wald_chisq"] = m.wald_chisq;
    j["p_value"] = m.p_value;
    j["log_likelihood"] = m.log_likelihood;
    j["iterations"] = m.iterations;
    j["converged"] = m.converged;
    j["quasi_separated"] = m.quasi_separated;
    j["ridge_used"] = m.ridge_used;
    return j;
}

LogisticModel model_from_json(const json& j) {
    LogisticModel m;
    m.terms = j.at("terms").get<std::vector<std::string>>();
    m.beta = j.at("beta").get<std::vector<double>>();
    m.se = j.at("se").get<std::vector<double>>();
    m.wald_chisq = j.at("wald_chisq").get<std::vector<double>>();
    m.p_value = j.at("p_value").get<std::vector<double>>();
    m.log_likelihood = j.at("log_likelihood").get<double>();
    m.iterations = j.at("iterations").get<std::size_t>();
    m.converged = j.at("converged").get<bool>();
    m.quasi_separated = j.at("quasi_separated").get<bool>();
    m.ridge_used = j.at("ridge_used").get<bool>();
    return m;
}

json path_to_json(const ModelPath& path) {
    json j;
    j["warnings"] = path.warnings;
    j["entries"] = json::array();
    for (const auto& e : path.entries) {
        json entry;
        entry["label"] = e.label;
        entry["n_features"] = e.n_features;
        entry["model"] = model_to_json(e.model);
        entry["train"] = {{"accuracy", e.train.accuracy}, {"auc", e.train.auc}, {"ks", e.train.ks}};
        entry["valid"] = {{"accuracy", e.valid.accuracy}, {"auc", e.valid.auc}, {"ks", e.valid.ks}};
        entry["is_full"] = e.is_full;
        entry["is_base"] = e.is_base;
        j["entries"].push_back(entry);
    }
    return j;
}

MetricSet metrics_from_json(const json& j) {
    MetricSet m;
    m.accuracy = j.at("accuracy").get<double>();
    m.auc = j.at("auc").get<double>();
    m.ks = j.at("ks").get<double>();
    return m;
}

ModelPath path_from_json(const json& j) {
    ModelPath path;
    path.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (const auto& entry : j.at("entries")) {
        PathEntry e;
        e.label = entry.at("label").get<std::string>();
        e.n_features = entry.at("n_features").get<std::size_t>();
        e.model = model_from_json(entry.at("model"));
        e.train = metrics_from_json(entry.at("train"));
        e.valid = metrics_from_json(entry.at("valid"));
        e.is_full = entry.at("is_full").get<bool>();
        e.is_base = entry.at("is_base").get<bool>();
        path.entries.push_back(std::move(e));
    }
    return path;
}

}  // namespace

std::string artifact_to_json(const ModelArtifact& artifact) {
    json j;
    j["version"] = artifact.version;
    j["config"] = config_to_json(artifact.config);
    j["ordinal_maps"] = artifact.ordinal_maps;

    json impute;
    impute["medians"] = artifact.impute.medians;
    impute["indicators"] = artifact.impute.indicator_names;
    impute["dropped"] = artifact.impute.dropped;
    j["impute"] = impute;

    j["predictors"] = artifact.predictors;

    json woe;
    woe["smoothing"] = artifact.woe.smoothing;
    woe["total_events"] = artifact.woe.total_events;
    woe["total_nonevents"] = artifact.woe.total_nonevents;
    woe["dropped"] = artifact.woe.dropped;
    woe["variables"] = json::object();
    for (const auto& [name, var] : artifact.woe.variables) {
        json v;
        v["edges"] = var.edges;
        v["woe"] = var.woe;
        v["events"] = var.events;
        v["nonevents"] = var.nonevents;
        woe["variables"][name] = v;
    }
    j["woe"] = woe;

    json stage_one;
    stage_one["top_pairs"] = json::array();
    for (const auto& [a, b] : artifact.top_pairs) stage_one["top_pairs"].push_back({a, b});
    stage_one["yhat_names"] = artifact.yhat_names;
    stage_one["new_features"] = artifact.new_features;
    stage_one["nets"] = json::array();
    for (const auto& net : artifact.nets) stage_one["nets"].push_back(net_to_json(net));
    stage_one["reports"] = json::array();
    for (const auto& r : artifact.reports) {
        stage_one["reports"].push_back({{"final_loss", r.final_loss},
                                        {"iterations", r.iterations},
                                        {"learning_rate", r.learning_rate},
                                        {"converged", r.converged},
                                        {"seed", r.seed}});
    }
    j["stage_one"] = stage_one;

    j["models"]["two_stage"] = path_to_json(artifact.two_stage);
    j["models"]["one_stage"] = path_to_json(artifact.one_stage);
    return j.dump(2) + "\n";
}

ModelArtifact artifact_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        ModelArtifact a;
        a.version = j.at("version").get<int>();
        if (a.version != 1)
            throw DataError("unsupported model file version " + std::to_string(a.version));
        a.config = config_from_json(j.at("config"));
        a.ordinal_maps =
            j.at("ordinal_maps").get<std::map<std::string, std::map<std::string, double>>>();
        a.impute.medians = j.at("impute").at("medians").get<std::map<std::string, double>>();
        a.impute.indicator_names =
            j.at("impute").at("indicators").get<std::map<std::string, std::string>>();
        a.impute.dropped = j.at("impute").at("dropped").get<std::vector<std::string>>();
        a.predictors = j.at("predictors").get<std::vector<std::string>>();

        const json& woe = j.at("woe");
        a.woe.smoothing = woe.at("smoothing").get<double>();
        a.woe.total_events = woe.at("total_events").get<std::size_t>();
        a.woe.total_nonevents = woe.at("total_nonevents").get<std::size_t>();
        a.woe.dropped = woe.at("dropped").get<std::vector<std::string>>();
        for (const auto& [name, v] : woe.at("variables").items()) {
            WoeVariable var;
            var.name = name;
            var.edges = v.at("edges").get<std::vector<double>>();
            var.woe = v.at("woe").get<std::vector<double>>();
            var.events = v.at("events").get<std::vector<std::size_t>>();
            var.nonevents = v.at("nonevents").get<std::vector<std::size_t>>();
            a.woe.variables[name] = std::move(var);
        }

        const json& stage_one = j.at("stage_one");
        for (const auto& p : stage_one.at("top_pairs"))
            a.top_pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
        a.yhat_names = stage_one.at("yhat_names").get<std::vector<std::string>>();
        a.new_features = stage_one.at("new_features").get<std::vector<std::string>>();
        for (const auto& n : stage_one.at("nets")) a.nets.push_back(net_from_json(n));
        for (const auto& r : stage_one.at("reports")) {
            TrainReport report;
            report.final_loss = r.at("final_loss").get<double>();
            report.iterations = r.at("iterations").get<std::size_t>();
            report.learning_rate = r.at("learning_rate").get<double>();
            report.converged = r.at("converged").get<bool>();
            report.seed = r.at("seed").get<std::uint64_t>();
            a.reports.push_back(report);
        }

        a.two_stage = path_from_json(j.at("models").at("two_stage"));
        a.one_stage = path_from_json(j.at("models").at("one_stage"));
        return a;
    } catch (const json::exception& e) {
        throw DataError(std::string("model file is missing fields: ") + e.what());
    }
}

void save_artifact(const ModelArtifact& artifact, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file '" + path + "'");
    out << artifact_to_json(artifact);
}

ModelArtifact load_artifact(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return artifact_from_json(buf.str());
}

Frame load_for_scoring(const ModelArtifact& artifact, const std::string& csv_path,
                       std::vector<std::string>* warnings) {
    IngestConfig ic;
    ic.missing_tokens = artifact.config.sentinels;
    ic.categorical = artifact.config.categorical;
    ic.ordinal_maps = artifact.ordinal_maps;
    IngestReport report;
    Frame frame = load_csv(csv_path, ic, &report);
    if (warnings) warnings->insert(warnings->end(), report.warnings.begin(), report.warnings.end());
    return frame;
}

Frame prepare_for_scoring(const ModelArtifact& artifact, const Frame& raw) {
    Frame frame = apply_impute(artifact.impute, raw);
    frame = frame.select_columns(artifact.predictors);
    frame = apply_woe(artifact.woe, frame);
    for (const auto& feature : artifact.new_features) {
        std::size_t k = artifact.yhat_names.size();
        for (std::size_t i = 0; i < artifact.yhat_names.size(); ++i)
            if (artifact.yhat_names[i] == feature) k = i;
        if (k == artifact.yhat_names.size())
            throw DataError("model file: new feature '" + feature + "' has no stored net");
        frame.add_column(feature, predict_column(artifact.nets[k], frame));
    }
    return frame;
}

const PathEntry& pick_model(const ModelArtifact& artifact, const std::string& which,
                            std::size_t size_budget) {
    const ModelPath* path = nullptr;
    if (which == "two_stage")
        path = &artifact.two_stage;
    else if (which == "one_stage")
        path = &artifact.one_stage;
    else
        throw ConfigError("unknown model choice '" + which + "' (use two_stage or one_stage)");
    const PathEntry* entry = size_budget == 0 ? path->base() : path->at_most(size_budget);
    if (!entry && !path->entries.empty()) entry = &path->entries.front();
    if (!entry) throw ModelError("model file has an empty " + which + " path");
    return *entry;
}

}  // namespace woenet
