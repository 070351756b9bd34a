#include "satev/ingest.hpp"

#include <charconv>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "satev/csv.hpp"
#include "satev/errors.hpp"

namespace satev {
namespace {

bool parse_int_strict(const std::string& text, int& out) {
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !text.empty();
}

// Outcome of one response row; exactly one of record/error applies.
struct RowOutcome {
    bool ok = false;
    ResponseRecord record;
    IngestError error;
};

RowOutcome classify_row(std::string participant_id, std::string item_id,
                        const std::string& rating_text, std::size_t row,
                        const std::unordered_set<std::string>& known_items,
                        std::unordered_set<std::string>& seen_keys) {
    RowOutcome out;
    out.error.row = row;
    int rating = 0;
    if (participant_id.empty() || item_id.empty()) {
        out.error.kind = IngestErrorKind::MalformedRow;
        out.error.message = "row " + std::to_string(row) + ": empty participant or item id";
        return out;
    }
    if (!parse_int_strict(rating_text, rating)) {
        out.error.kind = IngestErrorKind::MalformedRow;
        out.error.message =
            "row " + std::to_string(row) + ": rating '" + rating_text + "' is not an integer";
        return out;
    }
    if (rating < 0 || rating > 10) {
        out.error.kind = IngestErrorKind::OutOfRange;
        out.error.message = "row " + std::to_string(row) + ": rating " +
                            std::to_string(rating) + " outside 0..10";
        return out;
    }
    if (!known_items.count(item_id)) {
        out.error.kind = IngestErrorKind::UnknownItem;
        out.error.message = "row " + std::to_string(row) + ": unknown item '" + item_id + "'";
        return out;
    }
    if (!seen_keys.insert(participant_id + "\x1f" + item_id).second) {
        out.error.kind = IngestErrorKind::Duplicate;
        out.error.message = "row " + std::to_string(row) + ": duplicate response for (" +
                            participant_id + ", " + item_id + ")";
        return out;
    }
    out.ok = true;
    out.record = {std::move(participant_id), std::move(item_id), rating};
    return out;
}

constexpr std::string_view kBucketNames[] = {"<1", "1-5", "6-10", ">10", "unknown"};

} // namespace

std::string_view years_abroad_name(YearsAbroadBucket b) noexcept {
    return kBucketNames[static_cast<int>(b)];
}

YearsAbroadBucket parse_years_abroad(std::string_view text) {
    for (int i = 0; i < 5; ++i) {
        if (kBucketNames[i] == text) return static_cast<YearsAbroadBucket>(i);
    }
    // en dash spellings of the two middle buckets
    if (text == "1–5") return YearsAbroadBucket::OneToFive;
    if (text == "6–10") return YearsAbroadBucket::SixToTen;
    throw ValidationError("unknown years-abroad bucket '" + std::string(text) + "'");
}

std::string_view ingest_error_kind_name(IngestErrorKind k) noexcept {
    switch (k) {
    case IngestErrorKind::UnknownItem: return "unknown_item";
    case IngestErrorKind::OutOfRange: return "out_of_range";
    case IngestErrorKind::Duplicate: return "duplicate";
    case IngestErrorKind::MalformedRow: return "malformed_row";
    }
    return "malformed_row";
}

ParsedResponses parse_responses(const std::string& text, DocumentFormat format,
                                const std::vector<QuestionnaireItem>& items) {
    std::unordered_set<std::string> known_items;
    for (const auto& it : items) known_items.insert(it.item_id);

    ParsedResponses out;
    std::unordered_set<std::string> seen_keys;

    if (format == DocumentFormat::CSV) {
        const auto rows = parse_csv(text);
        const std::vector<std::string> expected = {"participant_id", "item_id", "rating"};
        if (rows.empty() || rows[0] != expected) {
            throw UnreadableDocument("responses: header must be participant_id,item_id,rating");
        }
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& row = rows[i];
            if (row.size() != 3) {
                out.errors.push_back({IngestErrorKind::MalformedRow, i,
                                      "row " + std::to_string(i) + ": expected 3 fields, got " +
                                          std::to_string(row.size())});
                continue;
            }
            RowOutcome oc = classify_row(row[0], row[1], row[2], i, known_items, seen_keys);
            if (oc.ok) out.records.push_back(std::move(oc.record));
            else out.errors.push_back(std::move(oc.error));
        }
        return out;
    }

    if (format == DocumentFormat::JSON) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw UnreadableDocument(std::string("responses: ") + e.what());
        }
        if (!doc.is_array()) throw UnreadableDocument("responses: expected a JSON array");
        for (std::size_t i = 0; i < doc.size(); ++i) {
            const auto& obj = doc[i];
            const std::size_t row = i + 1;
            if (!obj.is_object() || !obj.contains("participant_id") || !obj.contains("item_id") ||
                !obj.contains("rating") || !obj["participant_id"].is_string() ||
                !obj["item_id"].is_string() || !obj["rating"].is_number_integer()) {
                out.errors.push_back(
                    {IngestErrorKind::MalformedRow, row,
                     "entry " + std::to_string(row) +
                         ": need string participant_id, string item_id, integer rating"});
                continue;
            }
            RowOutcome oc = classify_row(obj["participant_id"].get<std::string>(),
                                         obj["item_id"].get<std::string>(),
                                         std::to_string(obj["rating"].get<long long>()), row,
                                         known_items, seen_keys);
            if (oc.ok) out.records.push_back(std::move(oc.record));
            else out.errors.push_back(std::move(oc.error));
        }
        return out;
    }
    throw UnsupportedFormat("responses: unsupported format");
}

std::vector<ParticipantProfile> parse_participants(const std::string& text,
                                                   DocumentFormat format) {
    std::vector<ParticipantProfile> out;
    std::unordered_set<std::string> seen;

    auto add = [&](ParticipantProfile p, std::size_t row) {
        if (p.participant_id.empty()) {
            throw ValidationError("participants: row " + std::to_string(row) +
                                  " has empty participant_id");
        }
        if (p.ilr_local < 0 || p.ilr_local > 5 || p.ilr_english < 0 || p.ilr_english > 5) {
            throw ValidationError("participants: row " + std::to_string(row) +
                                  " has ILR rating outside 0..5");
        }
        if (!seen.insert(p.participant_id).second) {
            throw ValidationError("participants: duplicate participant '" + p.participant_id +
                                  "'");
        }
        out.push_back(std::move(p));
    };

    if (format == DocumentFormat::CSV) {
        const auto rows = parse_csv(text);
        const std::vector<std::string> expected = {"participant_id", "ilr_local", "ilr_english",
                                                   "years_abroad_bucket"};
        if (rows.empty() || rows[0] != expected) {
            throw UnreadableDocument(
                "participants: header must be "
                "participant_id,ilr_local,ilr_english,years_abroad_bucket");
        }
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& row = rows[i];
            if (row.size() != 4) {
                throw ValidationError("participants: row " + std::to_string(i) +
                                      " has wrong field count");
            }
            ParticipantProfile p;
            p.participant_id = row[0];
            if (!parse_int_strict(row[1], p.ilr_local) ||
                !parse_int_strict(row[2], p.ilr_english)) {
                throw ValidationError("participants: row " + std::to_string(i) +
                                      " has non-integer ILR rating");
            }
            p.years_abroad = parse_years_abroad(row[3]);
            add(std::move(p), i);
        }
        return out;
    }

    if (format == DocumentFormat::JSON) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw UnreadableDocument(std::string("participants: ") + e.what());
        }
        if (!doc.is_array()) throw UnreadableDocument("participants: expected a JSON array");
        for (std::size_t i = 0; i < doc.size(); ++i) {
            const auto& obj = doc[i];
            if (!obj.is_object() || !obj.contains("participant_id") ||
                !obj.contains("ilr_local") || !obj.contains("ilr_english") ||
                !obj.contains("years_abroad_bucket") || !obj["participant_id"].is_string() ||
                !obj["ilr_local"].is_number_integer() || !obj["ilr_english"].is_number_integer() ||
                !obj["years_abroad_bucket"].is_string()) {
                throw ValidationError("participants: entry " + std::to_string(i + 1) +
                                      " is malformed");
            }
            ParticipantProfile p;
            p.participant_id = obj["participant_id"].get<std::string>();
            p.ilr_local = obj["ilr_local"].get<int>();
            p.ilr_english = obj["ilr_english"].get<int>();
            p.years_abroad = parse_years_abroad(obj["years_abroad_bucket"].get<std::string>());
            add(std::move(p), i + 1);
        }
        return out;
    }
    throw UnsupportedFormat("participants: unsupported format");
}

CompletenessReport completeness_report(const std::vector<ResponseRecord>& records,
                                       const std::vector<QuestionnaireItem>& items,
                                       const std::vector<ParticipantProfile>& participants,
                                       double threshold) {
    CompletenessReport report;
    report.threshold = threshold;

    std::unordered_map<std::string, std::unordered_set<std::string>> answered;
    std::unordered_map<std::string, std::size_t> item_counts;
    for (const auto& r : records) {
        answered[r.participant_id].insert(r.item_id);
        ++item_counts[r.item_id];
    }

    // profile order first, then respondents missing a profile in first
    // appearance order
    std::vector<std::string> participant_order;
    std::unordered_set<std::string> listed;
    for (const auto& p : participants) {
        participant_order.push_back(p.participant_id);
        listed.insert(p.participant_id);
    }
    for (const auto& r : records) {
        if (listed.insert(r.participant_id).second) {
            participant_order.push_back(r.participant_id);
        }
    }

    const double expected = static_cast<double>(items.size());
    for (const auto& pid : participant_order) {
        ParticipantCompleteness pc;
        pc.participant_id = pid;
        const auto it = answered.find(pid);
        for (const auto& item : items) {
            if (it == answered.end() || !it->second.count(item.item_id)) {
                pc.missing_item_ids.push_back(item.item_id);
            }
        }
        const double got = expected - static_cast<double>(pc.missing_item_ids.size());
        pc.coverage = items.empty() ? 1.0 : got / expected;
        pc.flagged = pc.coverage < threshold;
        report.participants.push_back(std::move(pc));
    }

    for (const auto& item : items) {
        const auto it = item_counts.find(item.item_id);
        report.items.push_back(
            {item.item_id, it == item_counts.end() ? std::size_t{0} : it->second});
    }
    return report;
}

} // namespace satev
