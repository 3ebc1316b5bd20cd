#include "woenet/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "woenet/errors.hpp"
#include "woenet/report.hpp"

namespace woenet {
namespace {

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << content;
}

LabelMap build_labels(const ModelArtifact& artifact) {
    LabelMap labels;
    std::set<std::string> categorical(artifact.config.categorical.begin(),
                                      artifact.config.categorical.end());
    for (const auto& name : artifact.predictors) {
        if (name.rfind("M_", 0) == 0)
            labels[name] = "missing indicator of " + name.substr(2);
        else if (categorical.count(name))
            labels[name] = "ordinal code of " + name;
        else
            labels[name] = name;
    }
    for (std::size_t k = 0; k < artifact.yhat_names.size(); ++k) {
        labels[artifact.yhat_names[k]] = "net feature over (" + artifact.top_pairs[k].first +
                                         ", " + artifact.top_pairs[k].second + ")";
    }
    return labels;
}

std::string run_summary(const RunResult& result, const PipelineConfig& cfg) {
    std::ostringstream out;
    out << "# Run summary\n\n";
    out << "- input: " << cfg.input << "\n";
    out << "- target: " << cfg.target << " (positive label: "
        << (cfg.positive_label.empty() ? "numeric 0/1" : "'" + cfg.positive_label + "'") << ")\n";
    out << "- split: " << result.prep.train.n_rows() << " train / " << result.prep.valid.n_rows()
        << " valid rows at fraction " << cfg.fraction << ", seed " << cfg.seed << "\n";
    out << "- predictors after preprocessing: " << result.artifact.predictors.size() << "\n";
    out << "- screened pairs: " << result.stage_one.scored_pairs.size() << ", nets trained: "
        << result.stage_one.top_pairs.size() << ", new features kept: "
        << result.stage_one.new_features.size() << "\n\n";

    out << "## New features\n\n";
    for (std::size_t k = 0; k < result.stage_one.yhat_names.size(); ++k) {
        const auto& name = result.stage_one.yhat_names[k];
        bool kept = std::find(result.stage_one.new_features.begin(),
                              result.stage_one.new_features.end(),
                              name) != result.stage_one.new_features.end();
        const auto& report = result.stage_one.reports[k];
        char line[256];
        std::snprintf(line, sizeof(line),
                      "- %s over (%s, %s): final loss %.6f, lr %g, %zu iterations%s%s\n",
                      name.c_str(), result.stage_one.top_pairs[k].first.c_str(),
                      result.stage_one.top_pairs[k].second.c_str(), report.final_loss,
                      report.learning_rate, report.iterations,
                      report.converged ? "" : " (iteration cap)", kept ? " [kept]" : "");
        out << line;
    }

    std::vector<std::string> warnings = result.warnings;
    warnings.insert(warnings.end(), result.prep.warnings.begin(), result.prep.warnings.end());
    warnings.insert(warnings.end(), result.stage_one.warnings.begin(),
                    result.stage_one.warnings.end());
    for (const auto& w : result.artifact.two_stage.warnings)
        warnings.push_back("two-stage: " + w);
    for (const auto& w : result.artifact.one_stage.warnings)
        warnings.push_back("one-stage: " + w);
    if (!warnings.empty()) {
        out << "\n## Warnings\n\n";
        for (const auto& w : warnings) out << "- " << w << "\n";
    }
    return out.str();
}

}  // namespace

RunResult run_pipeline(const Frame& raw, const IngestReport& ingest_report,
                       const PipelineConfig& cfg) {
    RunResult result;
    result.prep = preprocess(raw, cfg);
    result.stage_one = build_stage_one(result.prep.train, result.prep.valid, cfg);

    std::vector<std::string> two_stage_candidates = result.prep.predictors;
    two_stage_candidates.insert(two_stage_candidates.end(),
                                result.stage_one.new_features.begin(),
                                result.stage_one.new_features.end());
    std::sort(two_stage_candidates.begin(), two_stage_candidates.end());

    ModelArtifact& artifact = result.artifact;
    artifact.config = cfg;
    artifact.ordinal_maps = ingest_report.ordinal_maps;
    artifact.impute = result.prep.impute;
    artifact.predictors = result.prep.predictors;
    artifact.woe = result.prep.woe;
    artifact.top_pairs = result.stage_one.top_pairs;
    artifact.nets = result.stage_one.nets;
    artifact.reports = result.stage_one.reports;
    artifact.yhat_names = result.stage_one.yhat_names;
    artifact.new_features = result.stage_one.new_features;

    artifact.two_stage = run_stage_two(result.stage_one.train_aug, result.stage_one.valid_aug,
                                       two_stage_candidates, cfg);
    artifact.one_stage =
        run_one_stage(result.prep.train, result.prep.valid, result.prep.predictors, cfg);
    return result;
}

void cmd_run(const PipelineConfig& cfg) {
    validate_config(cfg);

    IngestConfig ic;
    ic.target_name = cfg.target;
    ic.missing_tokens = cfg.sentinels;
    ic.positive_label = cfg.positive_label;
    ic.categorical = cfg.categorical;
    IngestReport ingest_report;
    Frame raw = load_csv(cfg.input, ic, &ingest_report);

    RunResult result = run_pipeline(raw, ingest_report, cfg);
    result.warnings.insert(result.warnings.end(), ingest_report.warnings.begin(),
                           ingest_report.warnings.end());

    std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);

    LabelMap labels = build_labels(result.artifact);
    const ModelPath& two_stage = result.artifact.two_stage;
    const ModelPath& one_stage = result.artifact.one_stage;

    write_text(dir / "two_stage_path.csv", render_path_csv(two_stage));
    write_text(dir / "one_stage_path.csv", render_path_csv(one_stage));
    write_text(dir / "two_stage_path.md",
               render_path_markdown(two_stage, "Two-stage model path"));
    write_text(dir / "one_stage_path.md",
               render_path_markdown(one_stage, "One-stage model path"));
    write_text(dir / "two_stage_coefficients.csv", render_coefficients_csv(two_stage, labels));
    write_text(dir / "one_stage_coefficients.csv", render_coefficients_csv(one_stage, labels));
    write_text(dir / "two_stage_model.md",
               render_coefficients_markdown(two_stage, labels, "Two-stage base model"));
    write_text(dir / "one_stage_model.md",
               render_coefficients_markdown(one_stage, labels, "One-stage base model"));
    write_text(dir / "pairs.csv",
               render_pairs_csv(result.stage_one.scored_pairs, result.stage_one.top_pairs));
    if (!result.prep.prep_report.rows.empty())
        write_text(dir / "prep_clusters.csv", render_cluster_csv(result.prep.prep_report));
    write_text(dir / "stage_one_clusters.csv",
               render_cluster_csv(result.stage_one.cluster_report));
    write_text(dir / "woe_bins.csv", render_woe_csv(result.artifact.woe));

    // Validation ROC of each base model.
    {
        const PathEntry* base = two_stage.base();
        if (!base) base = &two_stage.entries.front();
        std::vector<double> scores = predict_proba(base->model, result.stage_one.valid_aug);
        write_text(dir / "roc_two_stage.csv",
                   render_roc_csv(roc_points(scores, result.stage_one.valid_aug.target())));
    }
    {
        const PathEntry* base = one_stage.base();
        if (!base) base = &one_stage.entries.front();
        std::vector<double> scores = predict_proba(base->model, result.prep.valid);
        write_text(dir / "roc_one_stage.csv",
                   render_roc_csv(roc_points(scores, result.prep.valid.target())));
    }

    write_text(dir / "summary.md", run_summary(result, cfg));
    save_artifact(result.artifact, (dir / "model.json").string());
}

void cmd_score(const std::string& artifact_path, const std::string& input_csv,
               const std::string& output_csv, const std::string& which,
               std::size_t size_budget) {
    ModelArtifact artifact = load_artifact(artifact_path);
    std::vector<std::string> warnings;
    Frame raw = load_for_scoring(artifact, input_csv, &warnings);

    std::set<std::string> known;
    for (const auto& entry : artifact.impute.medians) known.insert(entry.first);
    for (const auto& name : artifact.impute.dropped) known.insert(name);
    known.insert(artifact.config.target);
    for (const auto& col : raw.columns())
        if (!known.count(col.name))
            warnings.push_back("ignoring unknown column '" + col.name + "'");
    for (const auto& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

    Frame prepared = prepare_for_scoring(artifact, raw);
    const PathEntry& entry = pick_model(artifact, which, size_budget);
    std::vector<double> scores = predict_proba(entry.model, prepared);

    std::ofstream out(output_csv, std::ios::binary);
    if (!out) throw DataError("cannot write '" + output_csv + "'");
    out << "row,score\n";
    char buf[64];
    for (std::size_t i = 0; i < scores.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i + 1, scores[i]);
        out << buf;
    }
}

void cmd_synth(const SynthSpec& spec, const std::string& output_csv) {
    write_csv(synth_frame(spec), output_csv);
}

void cmd_report(const std::string& artifact_path, const std::string& output_dir) {
    ModelArtifact artifact = load_artifact(artifact_path);
    std::filesystem::path dir(output_dir);
    std::filesystem::create_directories(dir);
    LabelMap labels = build_labels(artifact);
    write_text(dir / "two_stage_path.csv", render_path_csv(artifact.two_stage));
    write_text(dir / "one_stage_path.csv", render_path_csv(artifact.one_stage));
    write_text(dir / "two_stage_path.md",
               render_path_markdown(artifact.two_stage, "Two-stage model path"));
    write_text(dir / "one_stage_path.md",
               render_path_markdown(artifact.one_stage, "One-stage model path"));
    write_text(dir / "two_stage_coefficients.csv",
               render_coefficients_csv(artifact.two_stage, labels));
    write_text(dir / "one_stage_coefficients.csv",
               render_coefficients_csv(artifact.one_stage, labels));
    write_text(dir / "two_stage_model.md",
               render_coefficients_markdown(artifact.two_stage, labels, "Two-stage base model"));
    write_text(dir / "one_stage_model.md",
               render_coefficients_markdown(artifact.one_stage, labels, "One-stage base model"));
    write_text(dir / "woe_bins.csv", render_woe_csv(artifact.woe));
}

}  // namespace woenet
