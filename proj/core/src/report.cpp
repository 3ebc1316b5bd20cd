#include "woenet/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace woenet {
namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string f6(double v) { return fmt("%.6f", v); }
std::string f3(double v) { return fmt("%.3f", v); }
std::string g10(double v) { return fmt("%.10g", v); }
std::string g4(double v) { return fmt("%.4g", v); }

std::string markdown_table(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return "";
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out << '|';
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            out << ' ' << rows[r][c] << std::string(width[c] - rows[r][c].size(), ' ') << " |";
        }
        out << '\n';
        if (r == 0) {
            out << '|';
            for (std::size_t c = 0; c < width.size(); ++c)
                out << ' ' << std::string(width[c], '-') << " |";
            out << '\n';
        }
    }
    return out.str();
}

std::string label_for(const LabelMap& labels, const std::string& name) {
    auto it = labels.find(name);
    return it == labels.end() ? name : it->second;
}

}  // namespace

std::string render_path_csv(const ModelPath& path) {
    std::ostringstream out;
    out << "Model Index,# of Features,Acc. on Train,Acc. on Valid,AUC on Train,AUC on Valid,"
           "KS on Train,KS on Valid\n";
    for (const auto& e : path.entries) {
        out << e.label << ',' << e.n_features << ',' << f6(e.train.accuracy) << ','
            << f6(e.valid.accuracy) << ',' << f6(e.train.auc) << ',' << f6(e.valid.auc) << ','
            << f6(e.train.ks) << ',' << f6(e.valid.ks) << '\n';
    }
    return out.str();
}

std::string render_path_markdown(const ModelPath& path, const std::string& title) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Model Index", "# of Features", "Acc. on Train", "Acc. on Valid",
                    "AUC on Train", "AUC on Valid", "KS on Train", "KS on Valid"});
    for (const auto& e : path.entries) {
        rows.push_back({e.label, std::to_string(e.n_features), f3(e.train.accuracy),
                        f3(e.valid.accuracy), f3(e.train.auc), f3(e.valid.auc), f3(e.train.ks),
                        f3(e.valid.ks)});
    }
    std::string out = "## " + title + "\n\n" + markdown_table(rows);
    for (const auto& w : path.warnings) out += "\nNote: " + w + "\n";
    return out;
}

std::string render_coefficients_csv(const ModelPath& path, const LabelMap& labels) {
    std::ostringstream out;
    out << "Model Index,Feature Code,Estimate,p Value,Feature Label\n";
    for (const auto& e : path.entries) {
        out << e.label << ",Intercept," << g10(e.model.beta[0]) << ',' << g4(e.model.p_value[0])
            << ",Intercept\n";
        for (std::size_t j = 0; j < e.model.terms.size(); ++j) {
            out << e.label << ',' << e.model.terms[j] << ',' << g10(e.model.beta[j + 1]) << ','
                << g4(e.model.p_value[j + 1]) << ',' << label_for(labels, e.model.terms[j])
                << '\n';
        }
    }
    return out.str();
}

std::string render_coefficients_markdown(const ModelPath& path, const LabelMap& labels,
                                         const std::string& title) {
    const PathEntry* base = path.base();
    if (!base && !path.entries.empty()) base = &path.entries.front();
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Feature Code", "Estimate", "p Value", "Feature Label"});
    if (base) {
        rows.push_back({"Intercept", f3(base->model.beta[0]), g4(base->model.p_value[0]),
                        "Intercept"});
        for (std::size_t j = 0; j < base->model.terms.size(); ++j) {
            rows.push_back({base->model.terms[j], f3(base->model.beta[j + 1]),
                            g4(base->model.p_value[j + 1]),
                            label_for(labels, base->model.terms[j])});
        }
    }
    return "## " + title + "\n\n" + markdown_table(rows);
}

std::string render_pairs_csv(const std::vector<PairScore>& scores,
                             const std::vector<std::pair<std::string, std::string>>& selected) {
    std::set<std::pair<std::string, std::string>> chosen(selected.begin(), selected.end());
    std::ostringstream out;
    out << "Variable A,Variable B,Wald ChiSq,p Value,Converged,Selected\n";
    for (const auto& s : scores) {
        out << s.a << ',' << s.b << ',' << g10(s.wald) << ',' << g4(s.p) << ','
            << (s.converged ? 1 : 0) << ',' << (chosen.count({s.a, s.b}) ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string render_cluster_csv(const RepresentativeReport& report) {
    std::ostringstream out;
    out << "Variable,Cluster,R2 Own,R2 Next,1-R2 Ratio,Representative\n";
    for (const auto& row : report.rows) {
        out << row.variable << ',' << row.cluster << ',' << f6(row.r2_own) << ','
            << f6(row.r2_next) << ',' << f6(row.ratio) << ',' << (row.is_representative ? 1 : 0)
            << '\n';
    }
    return out.str();
}

std::string render_roc_csv(const std::vector<RocPoint>& points) {
    std::ostringstream out;
    out << "Threshold,FPR,TPR\n";
    for (const auto& p : points)
        out << g10(p.threshold) << ',' << f6(p.fpr) << ',' << f6(p.tpr) << '\n';
    return out.str();
}

std::string render_woe_csv(const WoeEncoder& enc) {
    std::ostringstream out;
    out << "Variable,Bin,Upper Edge,Events,Nonevents,WOE\n";
    for (const auto& [name, var] : enc.variables) {
        for (std::size_t b = 0; b < var.woe.size(); ++b) {
            out << name << ',' << b << ',';
            if (b < var.edges.size())
                out << g10(var.edges[b]);
            else
                out << "inf";
            out << ',' << var.events[b] << ',' << var.nonevents[b] << ',' << g10(var.woe[b])
                << '\n';
        }
    }
    return out.str();
}

}  // namespace woenet
