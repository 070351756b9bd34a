#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "satev/questionnaire.hpp"

namespace satev {

enum class YearsAbroadBucket { LessThanOne, OneToFive, SixToTen, MoreThanTen, Unknown };

std::string_view years_abroad_name(YearsAbroadBucket b) noexcept;
YearsAbroadBucket parse_years_abroad(std::string_view text);

struct ParticipantProfile {
    std::string participant_id;
    int ilr_local = 0;   // ILR self-rating 0..5, target language
    int ilr_english = 0; // ILR self-rating 0..5
    YearsAbroadBucket years_abroad = YearsAbroadBucket::Unknown;
};

struct ResponseRecord {
    std::string participant_id;
    std::string item_id;
    int raw_rating = 0; // 0..10
};

enum class IngestErrorKind { UnknownItem, OutOfRange, Duplicate, MalformedRow };

std::string_view ingest_error_kind_name(IngestErrorKind k) noexcept;

// One rejected input row. `row` is the 1-based data row (CSV) or array
// position (JSON).
struct IngestError {
    IngestErrorKind kind = IngestErrorKind::MalformedRow;
    std::size_t row = 0;
    std::string message;
};

struct ParsedResponses {
    std::vector<ResponseRecord> records;
    std::vector<IngestError> errors;
};

// Accepts every well-formed row and reports a structured error for each
// rejected one; rows are never silently dropped. Ratings must be integers
// in 0..10 and item ids must exist in the questionnaire.
ParsedResponses parse_responses(const std::string& text, DocumentFormat format,
                                const std::vector<QuestionnaireItem>& items);

// Parses participant profiles; malformed rows are fatal because every
// profile is required for cross-validation.
std::vector<ParticipantProfile> parse_participants(const std::string& text,
                                                   DocumentFormat format);

struct ParticipantCompleteness {
    std::string participant_id;
    std::vector<std::string> missing_item_ids;
    double coverage = 0.0; // answered / expected
    bool flagged = false;  // coverage below threshold
};

struct ItemCompleteness {
    std::string item_id;
    std::size_t response_count = 0;
};

struct CompletenessReport {
    std::vector<ParticipantCompleteness> participants;
    std::vector<ItemCompleteness> items;
    double threshold = 1.0;
};

CompletenessReport completeness_report(const std::vector<ResponseRecord>& records,
                                       const std::vector<QuestionnaireItem>& items,
                                       const std::vector<ParticipantProfile>& participants,
                                       double threshold = 1.0);

} // namespace satev
