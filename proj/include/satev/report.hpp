#pragma once

#include <optional>
#include <string>
#include <vector>

#include "satev/circumplex.hpp"
#include "satev/ingest.hpp"
#include "satev/scoring.hpp"
#include "satev/stats.hpp"

namespace satev {

enum class ReportFormat { Text, Csv, Json };

ReportFormat parse_report_format(std::string_view name);
std::string_view report_format_name(ReportFormat f) noexcept;

enum class MarkerKind { DoubleStar, Star, Opus, Plus, Nothing };

struct Marker {
    MarkerKind kind = MarkerKind::Nothing;
    int count = 0;   // pair count for Opus and Plus
    bool bold = false; // accompanies DoubleStar and Star
};

// Glyphs: "**", "*", "⊕n", "+n"; ASCII fallback replaces the circled plus
// with "o n" and "+ n".
std::string marker_string(const Marker& m, bool ascii);

struct MarkedScore {
    Attribute attribute = Attribute::Pleasant;
    std::string candidate_id;
    std::string label; // local text shown in table rows
    Criterion criterion = Criterion::APPR;
    double S = 0.0;
    Marker marker;
};

// Marker semantics, applied to the pairwise rejections of one
// (attribute, criterion) family. A pair credits only its higher-mean
// candidate. All pairs won at the strong level gives DoubleStar, all at the
// weak level Star; otherwise Opus counts strong wins, Plus counts wins at
// the weak level only, and Nothing marks candidates without wins or
// families without posthoc results.
std::vector<MarkedScore> assign_markers(Attribute attribute,
                                        const std::vector<ScoreSummary>& summaries,
                                        const OmnibusResult& omnibus,
                                        const std::vector<PosthocResult>& posthoc,
                                        double alpha_strong = 0.01,
                                        double alpha_weak = 0.05);

enum class TableLayout { MainAxes, DerivedAxes };

// Criterion columns of a layout, in table order.
std::vector<Criterion> layout_columns(TableLayout layout);

// Rows grouped by attribute, candidates in input order, one column per
// layout criterion, values to 3 decimals with marker prefixes.
std::string emit_score_table(const std::vector<MarkedScore>& marked, TableLayout layout,
                             ReportFormat format, bool ascii_markers = false);

// Omnibus and gated posthoc results of one family.
struct FamilyResult {
    Attribute attribute = Attribute::Pleasant;
    Criterion criterion = Criterion::APPR;
    OmnibusResult omnibus;
    std::vector<PosthocResult> posthoc; // empty when the gate kept it from running
};

// Per family: the omnibus row with significance stars, then posthoc rows in
// ascending p_adj order, higher-mean candidate on the left. p values below
// 0.001 render "<0.001"; p values at or above 0.9995 render "≈1.000"
// ("~1.000" in ASCII mode).
std::string emit_test_table(const std::vector<FamilyResult>& families, ReportFormat format,
                            bool ascii_markers = false);

// Per-item histogram of raw ratings (bins 0..10), response count, and mean
// normalized rating, as CSV. Items without responses are omitted.
std::string distribution_summary(const std::vector<ResponseRecord>& records,
                                 const std::vector<QuestionnaireItem>& items);

struct RecommendPolicy {
    double alpha = 0.05; // pairwise rejection level feeding the ranking
};

struct CandidateAssessment {
    std::string candidate_id;
    std::string label;
    int rank = 0;                   // 1-based
    std::size_t criteria_best = 0;  // top scorer with a significant win
    std::size_t criteria_worst = 0; // bottom scorer with a significant loss
    double mean_score = 0.0;        // across applicable criteria
    std::vector<std::string> strengths;
    std::vector<std::string> weaknesses;
};

struct RecommendationReport {
    Attribute attribute = Attribute::Pleasant;
    bool any_significant = false;
    std::string note; // labels the ranking as decision support
    std::vector<CandidateAssessment> ranking;
};

// Transparent default ranking: most criteria won, fewest criteria
// significantly worst, then mean score; ties keep input order. The output
// is decision support for a human reviewer, not a verdict.
RecommendationReport recommend(Attribute attribute, const std::vector<MarkedScore>& marked,
                               const std::vector<FamilyResult>& families,
                               const RecommendPolicy& policy = {});

std::string emit_recommendations(const std::vector<RecommendationReport>& reports,
                                 ReportFormat format, bool ascii_markers = false);

// Fixed-point rendering with half-away-from-zero tie breaking in decimal,
// so 0.8675 renders "0.868" at three decimals.
std::string format_fixed(double v, int decimals);

// "<0.001" / "≈1.000" / three-decimal display of a p value.
std::string p_display(double p, bool ascii = false);

} // namespace satev
