#pragma once

#include <map>
#include <string>
#include <vector>

#include "woenet/metrics.hpp"
#include "woenet/pipeline.hpp"
#include "woenet/prep.hpp"
#include "woenet/varclust.hpp"

namespace woenet {

// Header exactly: Model Index,# of Features,Acc. on Train,... (fixed layout).
std::string render_path_csv(const ModelPath& path);
std::string render_path_markdown(const ModelPath& path, const std::string& title);

using LabelMap = std::map<std::string, std::string>;

// Rows: Model Index,Feature Code,Estimate,p Value,Feature Label.
std::string render_coefficients_csv(const ModelPath& path, const LabelMap& labels);
// Coefficient table of the base (post-pruning) model only.
std::string render_coefficients_markdown(const ModelPath& path, const LabelMap& labels,
                                         const std::string& title);

std::string render_pairs_csv(const std::vector<PairScore>& scores,
                             const std::vector<std::pair<std::string, std::string>>& selected);

std::string render_cluster_csv(const RepresentativeReport& report);

std::string render_roc_csv(const std::vector<RocPoint>& points);

std::string render_woe_csv(const WoeEncoder& enc);

}  // namespace woenet
