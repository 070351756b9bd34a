#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "satev/circumplex.hpp"
#include "satev/ingest.hpp"
#include "satev/questionnaire.hpp"

namespace satev {

enum class Criterion { APPR, UNDR, CLAR, ANTO, ORTH, NCON, CONN, IBAL };

std::string_view criterion_name(Criterion c) noexcept;
Criterion parse_criterion(std::string_view name);

// Main-axis candidates are scored on {APPR, UNDR, CLAR, ANTO, ORTH, NCON,
// IBAL}; derived-axis candidates on {APPR, UNDR, CLAR, CONN, IBAL}.
std::vector<Criterion> criteria_for(AxisKind axis);

// raw / 10; raw must lie in 0..10.
double normalize(int raw_rating);

// Score contributions from normalized ratings. Every function maps [0,1]
// inputs to [0,1] and throws OutOfRange otherwise.
double clar_score(double r_asso_ccw, double r_asso_cw); // 1 - 0.5 (ccw + cw)
double orth_score(double r_bias);                       // 1 - 2 |r - 0.5|
double ncon_score(double r_impl_ccw, double r_impl_cw); // 1 - 0.5 (ccw + cw)
double conn_score(double r_impl_ccw, double r_impl_cw); // 0.5 (ccw + cw)
double ibal_score(double r_impl_ccw, double r_impl_cw); // 1 - |ccw - cw|
// s = r, for the criteria scored directly (APPR, UNDR, ANTO).
double identity_score(double r, Criterion criterion);

struct ScoreContribution {
    std::string participant_id;
    std::string candidate_id;
    Criterion criterion = Criterion::APPR;
    double s = 0.0; // in [0,1]
};

// complete_case admits a participant into an attribute only with responses
// to every listed item of that attribute; pairwise admits each (participant,
// candidate, criterion) whose own ratings are present.
enum class CompletenessPolicy { CompleteCase, Pairwise };

CompletenessPolicy parse_completeness_policy(std::string_view name);
std::string_view completeness_policy_name(CompletenessPolicy p) noexcept;

// One contribution per admitted participant x candidate x applicable
// criterion, sorted by candidate, criterion, participant. Records must
// reference listed participants. Throws MissingItemRating when an admitted
// computation needs a rating for an item kind the questionnaire never
// defined for the candidate.
std::vector<ScoreContribution> contributions(
    const std::vector<ResponseRecord>& records,
    const std::vector<QuestionnaireItem>& items,
    const std::vector<ParticipantProfile>& participants,
    CompletenessPolicy policy = CompletenessPolicy::CompleteCase);

struct ScoreSummary {
    std::string candidate_id;
    Criterion criterion = Criterion::APPR;
    double S = 0.0;      // weighted mean of contributions
    std::size_t n = 0;   // contribution count
    bool weighted = false;
};

// Weighted mean per (candidate, criterion) group, in first-appearance group
// order. Weights map participant ids to nonnegative reals; absence means the
// unweighted mean. Equal weights reproduce the unweighted result bit for bit.
std::vector<ScoreSummary> summarize(
    const std::vector<ScoreContribution>& contributions,
    const std::optional<std::map<std::string, double>>& weights = std::nullopt);

// Proficiency weighting: participant -> ilr_local + ilr_english.
std::map<std::string, double> ilr_weights(const std::vector<ParticipantProfile>& participants);

} // namespace satev
