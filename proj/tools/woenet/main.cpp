#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "woenet/commands.hpp"
#include "woenet/config.hpp"
#include "woenet/errors.hpp"
#include "woenet/synth.hpp"

namespace {

void apply_overrides(woenet::PipelineConfig& cfg, const std::vector<std::string>& sets) {
    for (const auto& item : sets) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw woenet::ConfigError("--set expects key=value, got '" + item + "'");
        woenet::config_set(cfg, item.substr(0, eq), item.substr(eq + 1));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"woenet: two-stage credit scoring with tiny-net feature construction"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Fit both pipelines from a config file");
    std::string run_config;
    std::vector<std::string> run_sets;
    run->add_option("--config", run_config, "Config file (key = value lines)")->required();
    run->add_option("--set", run_sets, "Override a config key, e.g. --set seed=7");

    // score
    auto* score = app.add_subcommand("score", "Score a CSV with a saved model");
    std::string score_model, score_input, score_output;
    std::string score_which = "two_stage";
    std::size_t score_size = 0;
    score->add_option("--model", score_model, "Model artifact (model.json)")->required();
    score->add_option("--input", score_input, "CSV to score")->required();
    score->add_option("--output", score_output, "Output CSV (row,score)")->required();
    score->add_option("--which", score_which, "two_stage or one_stage")
        ->check(CLI::IsMember({"two_stage", "one_stage"}));
    score->add_option("--size", score_size,
                      "Feature budget; picks the largest path model within it (0 = base model)");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a planted-interaction dataset");
    woenet::SynthSpec spec;
    std::string synth_output;
    synth->add_option("--output", synth_output, "Output CSV")->required();
    synth->add_option("--rows", spec.n_rows, "Rows to generate");
    synth->add_option("--noise", spec.n_noise, "Noise columns beyond the planted pair");
    synth->add_option("--main-effect", spec.main_effect, "Main-effect weight on the pair");
    synth->add_option("--interaction", spec.interaction, "Planted interaction strength");
    synth->add_option("--steepness", spec.steepness, "Interaction ridge steepness");
    synth->add_option("--shift", spec.shift, "Interaction ridge shift");
    synth->add_option("--event-rate", spec.event_rate, "Target event rate");
    synth->add_option("--missing-rate", spec.missing_rate, "Per-cell missing rate");
    synth->add_option("--seed", spec.seed, "RNG seed");

    // report
    auto* report = app.add_subcommand("report", "Re-render tables from a saved model");
    std::string report_model, report_dir;
    report->add_option("--model", report_model, "Model artifact (model.json)")->required();
    report->add_option("--output-dir", report_dir, "Directory for rendered tables")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            woenet::PipelineConfig cfg = woenet::load_config(run_config);
            apply_overrides(cfg, run_sets);
            woenet::cmd_run(cfg);
        } else if (score->parsed()) {
            woenet::cmd_score(score_model, score_input, score_output, score_which, score_size);
        } else if (synth->parsed()) {
            woenet::cmd_synth(spec, synth_output);
        } else if (report->parsed()) {
            woenet::cmd_report(report_model, report_dir);
        }
    } catch (const woenet::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
