#pragma once

#include <string>
#include <vector>

#include "woenet/artifact.hpp"
#include "woenet/config.hpp"
#include "woenet/csv.hpp"
#include "woenet/pipeline.hpp"
#include "woenet/synth.hpp"

namespace woenet {

struct RunResult {
    ModelArtifact artifact;
    Preprocessed prep;
    StageOneResult stage_one;
    std::vector<std::string> warnings;
};

// The full pipeline on an already-ingested frame: preprocess, stage one,
// stage two, one-stage baseline. Pure given (raw, ingest_report, cfg).
RunResult run_pipeline(const Frame& raw, const IngestReport& ingest_report,
                       const PipelineConfig& cfg);

// run: ingest + pipeline + all report files and the model artifact.
void cmd_run(const PipelineConfig& cfg);

// score: artifact + csv -> row,score csv.
void cmd_score(const std::string& artifact_path, const std::string& input_csv,
               const std::string& output_csv, const std::string& which = "two_stage",
               std::size_t size_budget = 0);

void cmd_synth(const SynthSpec& spec, const std::string& output_csv);

// report: re-render the artifact's tables without any data access.
void cmd_report(const std::string& artifact_path, const std::string& output_dir);

}  // namespace woenet
