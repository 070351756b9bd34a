#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "satev/ingest.hpp"
#include "satev/questionnaire.hpp"
#include "satev/report.hpp"
#include "satev/scoring.hpp"

namespace satev {

struct RunConfig {
    double alpha_posthoc_gate = 0.05; // omnibus gate and weak marker level
    double alpha_strong = 0.01;       // strong marker level
    bool weighted = false;            // ILR-sum weighting of contributions
    CompletenessPolicy completeness_policy = CompletenessPolicy::CompleteCase;
    std::optional<std::uint64_t> shuffle_seed; // questionnaire export only
    ReportFormat output_format = ReportFormat::Text;
    bool ascii_markers = false;
    std::string language_name = "local"; // [LOCAL LANGUAGE] in UNDR prompts
};

// Enforces 0 < alpha_strong <= alpha_posthoc_gate < 1.
void validate_config(const RunConfig& config);

struct AnalysisResult {
    std::vector<QuestionnaireItem> items;
    CompletenessReport completeness;
    std::vector<ScoreSummary> summaries;
    std::vector<MarkedScore> marked;           // labels filled with local text
    std::vector<FamilyResult> families;        // tests in table emission order
    std::vector<RecommendationReport> recommendations;
    std::vector<std::string> attribute_summaries; // one stdout line each
    bool has_main_axis = false;
    bool has_derived_axis = false;
};

// generate -> score -> test -> mark -> recommend over validated inputs.
AnalysisResult run_analysis(const std::vector<CandidateTranslation>& candidates,
                            const std::vector<ResponseRecord>& records,
                            const std::vector<ParticipantProfile>& participants,
                            const RunConfig& config);

// Writes score tables, the test table, distribution summaries, and the
// recommendation report into out_dir. Any failure removes the files this
// call already wrote before rethrowing.
std::vector<std::filesystem::path> write_reports(const AnalysisResult& analysis,
                                                 const std::vector<ResponseRecord>& records,
                                                 const std::filesystem::path& out_dir,
                                                 const RunConfig& config);

// Whole-file read/write. UnreadableDocument when reading fails, IoError
// when writing fails.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// .json extension selects JSON, anything else CSV.
DocumentFormat detect_format(const std::filesystem::path& path);

} // namespace satev
