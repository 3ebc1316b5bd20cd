#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "woenet/config.hpp"
#include "woenet/csv.hpp"
#include "woenet/frame.hpp"
#include "woenet/pipeline.hpp"
#include "woenet/prep.hpp"
#include "woenet/tinynet.hpp"

namespace woenet {

// Everything scoring needs, and the fitted tables the report command
// re-renders. Execution knobs (workers, output_dir) stay out of the file.
struct ModelArtifact {
    int version = 1;
    PipelineConfig config;
    std::map<std::string, std::map<std::string, double>> ordinal_maps;
    ImputePlan impute;
    std::vector<std::string> predictors;  // WOE-encoded candidate columns
    WoeEncoder woe;

    std::vector<std::pair<std::string, std::string>> top_pairs;
    std::vector<TinyNet> nets;          // aligned with top_pairs
    std::vector<TrainReport> reports;   // aligned with top_pairs
    std::vector<std::string> yhat_names;
    std::vector<std::string> new_features;

    ModelPath two_stage;
    ModelPath one_stage;
};

std::string artifact_to_json(const ModelArtifact& artifact);
ModelArtifact artifact_from_json(const std::string& text);

void save_artifact(const ModelArtifact& artifact, const std::string& path);
ModelArtifact load_artifact(const std::string& path);

// Ingests a CSV with the artifact's sentinel/categorical setup; no target
// column is required. Appends any loader warnings.
Frame load_for_scoring(const ModelArtifact& artifact, const std::string& csv_path,
                       std::vector<std::string>* warnings = nullptr);

// Impute -> WOE -> net feature columns, exactly as fitted.
Frame prepare_for_scoring(const ModelArtifact& artifact, const Frame& raw);

/// which: "two_stage" or "one_stage"; size_budget 0 picks the base model,
// otherwise the largest path entry with at most that many features.
const PathEntry& pick_model(const ModelArtifact& artifact, const std::string& which,
                            std::size_t size_budget = 0);

}  // namespace woenet
