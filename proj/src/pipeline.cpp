#include "satev/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "satev/errors.hpp"
#include "satev/stats.hpp"

namespace satev {
namespace {

namespace fs = std::filesystem;

std::string extension_for(ReportFormat f) {
    switch (f) {
    case ReportFormat::Text: return ".txt";
    case ReportFormat::Csv: return ".csv";
    case ReportFormat::Json: return ".json";
    }
    return ".txt";
}

} // namespace

void validate_config(const RunConfig& config) {
    if (!(config.alpha_strong > 0.0 && config.alpha_strong <= config.alpha_posthoc_gate &&
          config.alpha_posthoc_gate < 1.0)) {
        throw ValidationError("alpha levels must satisfy 0 < alpha_strong <= alpha_gate < 1");
    }
}

AnalysisResult run_analysis(const std::vector<CandidateTranslation>& candidates,
                            const std::vector<ResponseRecord>& records,
                            const std::vector<ParticipantProfile>& participants,
                            const RunConfig& config) {
    validate_config(config);

    AnalysisResult out;
    out.items = generate_items(candidates, config.language_name);
    out.completeness = completeness_report(records, out.items, participants);

    const auto contribs =
        contributions(records, out.items, participants, config.completeness_policy);
    const auto weights =
        config.weighted ? std::optional(ilr_weights(participants)) : std::nullopt;
    out.summaries = summarize(contribs, weights);

    std::unordered_map<std::string, const ScoreSummary*> summary_of;
    for (const auto& s : out.summaries) {
        summary_of[s.candidate_id + "\x1f" + std::string(criterion_name(s.criterion))] = &s;
    }
    std::unordered_map<std::string, std::string> label_of;
    for (const auto& c : candidates) label_of[c.id] = c.local_text;

    // candidate contribution values per (candidate, criterion), insertion
    // order preserved within each group
    std::unordered_map<std::string, std::vector<double>> values_of;
    for (const auto& c : contribs) {
        values_of[c.candidate_id + "\x1f" + std::string(criterion_name(c.criterion))].push_back(
            c.s);
    }

    // attributes in candidate input order
    std::vector<Attribute> attr_order;
    std::map<int, std::vector<std::string>> members; // attribute -> candidate ids
    for (const auto& c : candidates) {
        const int a = static_cast<int>(c.attribute);
        if (!members.count(a)) attr_order.push_back(c.attribute);
        members[a].push_back(c.id);
    }

    for (Attribute attr : attr_order) {
        const auto& ids = members[static_cast<int>(attr)];
        const auto criteria = criteria_for(axis_kind(attr));
        if (axis_kind(attr) == AxisKind::Main) out.has_main_axis = true;
        else out.has_derived_axis = true;

        std::size_t significant_families = 0, tested_families = 0;
        std::vector<MarkedScore> attr_marked;
        std::vector<FamilyResult> attr_families;
        for (Criterion crit : criteria) {
            const std::string crit_name(criterion_name(crit));
            std::vector<ScoreSummary> family_summaries;
            GroupedSample sample;
            for (const auto& id : ids) {
                const auto key = id + "\x1f" + crit_name;
                const auto it = summary_of.find(key);
                if (it == summary_of.end()) {
                    throw EmptyGroup("candidate '" + id + "' has no contributions for " +
                                     crit_name);
                }
                family_summaries.push_back(*it->second);
                sample.groups.push_back({id, values_of[key]});
            }

            FamilyResult family;
            family.attribute = attr;
            family.criterion = crit;
            bool tested = false;
            if (ids.size() >= 2) {
                family.omnibus = kruskal_wallis(sample);
                tested = true;
                ++tested_families;
                if (family.omnibus.p < config.alpha_posthoc_gate) {
                    ++significant_families;
                    family.posthoc = conover_iman(sample, family.omnibus);
                    // left side follows the reported (possibly weighted) means
                    std::unordered_map<std::string, double> S_of;
                    for (const auto& s : family_summaries) S_of[s.candidate_id] = s.S;
                    for (auto& pr : family.posthoc) {
                        if (S_of[pr.candidate_hi] < S_of[pr.candidate_lo]) {
                            std::swap(pr.candidate_hi, pr.candidate_lo);
                            pr.t_stat = -pr.t_stat;
                        }
                    }
                }
            }

            auto marks = assign_markers(attr, family_summaries, family.omnibus, family.posthoc,
                                        config.alpha_strong, config.alpha_posthoc_gate);
            for (auto& m : marks) {
                m.label = label_of[m.candidate_id];
                attr_marked.push_back(std::move(m));
            }
            if (tested) attr_families.push_back(std::move(family));
        }

        // scored participant count under the policy (complete case: every
        // group of this attribute shares it)
        std::size_t scored_n = 0;
        for (const auto& m : attr_marked) {
            const auto it = summary_of.find(m.candidate_id + "\x1f" +
                                            std::string(criterion_name(m.criterion)));
            scored_n = std::max(scored_n, it->second->n);
        }

        std::ostringstream line;
        line << attribute_name(attr) << ": " << ids.size() << " candidate"
             << (ids.size() == 1 ? "" : "s");
        if (ids.size() >= 2) {
            line << ", omnibus significant on " << significant_families << "/" << tested_families
                 << " criteria";
        } else {
            line << ", no tests (single candidate)";
        }
        line << ", max group size " << scored_n;
        out.attribute_summaries.push_back(line.str());

        out.recommendations.push_back(
            recommend(attr, attr_marked, attr_families, {config.alpha_posthoc_gate}));
        for (auto& m : attr_marked) out.marked.push_back(std::move(m));
        for (auto& f : attr_families) out.families.push_back(std::move(f));
    }
    return out;
}

std::vector<fs::path> write_reports(const AnalysisResult& analysis,
                                    const std::vector<ResponseRecord>& records,
                                    const fs::path& out_dir, const RunConfig& config) {
    const std::string ext = extension_for(config.output_format);

    // render everything before touching the filesystem
    std::vector<std::pair<fs::path, std::string>> files;
    std::vector<MarkedScore> main_marked, derived_marked;
    for (const auto& m : analysis.marked) {
        (axis_kind(m.attribute) == AxisKind::Main ? main_marked : derived_marked).push_back(m);
    }
    if (!main_marked.empty()) {
        files.emplace_back(out_dir / ("scores_main" + ext),
                           emit_score_table(main_marked, TableLayout::MainAxes,
                                            config.output_format, config.ascii_markers));
    }
    if (!derived_marked.empty()) {
        files.emplace_back(out_dir / ("scores_derived" + ext),
                           emit_score_table(derived_marked, TableLayout::DerivedAxes,
                                            config.output_format, config.ascii_markers));
    }
    files.emplace_back(out_dir / ("tests" + ext),
                       emit_test_table(analysis.families, config.output_format,
                                       config.ascii_markers));
    files.emplace_back(out_dir / "distributions.csv",
                       distribution_summary(records, analysis.items));
    files.emplace_back(out_dir / ("recommendations" + ext),
                       emit_recommendations(analysis.recommendations, config.output_format,
                                            config.ascii_markers));

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "'");

    std::vector<fs::path> written;
    try {
        for (const auto& [path, content] : files) {
            write_file(path, content);
            written.push_back(path);
        }
    } catch (...) {
        for (const auto& path : written) fs::remove(path, ec);
        throw;
    }
    return written;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UnreadableDocument("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw UnreadableDocument("failed while reading '" + path.string() + "'");
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream outf(path, std::ios::binary | std::ios::trunc);
    if (!outf) throw IoError("cannot open '" + path.string() + "' for writing");
    outf.write(content.data(), static_cast<std::streamsize>(content.size()));
    outf.flush();
    if (!outf) throw IoError("failed while writing '" + path.string() + "'");
}

DocumentFormat detect_format(const fs::path& path) {
    return path.extension() == ".json" ? DocumentFormat::JSON : DocumentFormat::CSV;
}

} // namespace satev
