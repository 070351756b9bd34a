#include "doctest.h"

#include <string>
#include <vector>

#include "satev/csv.hpp"
#include "satev/errors.hpp"
#include "satev/ingest.hpp"
#include "satev/questionnaire.hpp"

using namespace satev;

namespace {

std::vector<QuestionnaireItem> small_questionnaire() {
    CandidateTranslation c;
    c.id = "c1";
    c.attribute = Attribute::Pleasant;
    c.local_text = "x";
    return generate_items({c}, "Thai");
}

} // namespace

TEST_CASE("years abroad buckets parse both spellings") {
    CHECK(parse_years_abroad("<1") == YearsAbroadBucket::LessThanOne);
    CHECK(parse_years_abroad("1-5") == YearsAbroadBucket::OneToFive);
    CHECK(parse_years_abroad("6-10") == YearsAbroadBucket::SixToTen);
    CHECK(parse_years_abroad("1\xe2\x80\x93" "5") == YearsAbroadBucket::OneToFive);
    CHECK(parse_years_abroad("6\xe2\x80\x93" "10") == YearsAbroadBucket::SixToTen);
    CHECK(parse_years_abroad(">10") == YearsAbroadBucket::MoreThanTen);
    CHECK(parse_years_abroad("unknown") == YearsAbroadBucket::Unknown);
    CHECK_THROWS_AS(parse_years_abroad("11"), ValidationError);
    for (YearsAbroadBucket b : {YearsAbroadBucket::LessThanOne, YearsAbroadBucket::OneToFive,
                                YearsAbroadBucket::SixToTen, YearsAbroadBucket::MoreThanTen,
                                YearsAbroadBucket::Unknown}) {
        CHECK(parse_years_abroad(years_abroad_name(b)) == b);
    }
}

TEST_CASE("response rows are accepted or classified, never dropped") {
    const auto items = small_questionnaire();
    const std::string text =
        "participant_id,item_id,rating\n"
        "P01,pleasant.c1.APPR,9\n"             // ok
        "P01,pleasant.c1.UNDR,11\n"            // out of range
        "P01,pleasant.c1.ANTO,-1\n"            // out of range
        "P01,pleasant.c1.BIAS,9.5\n"           // malformed rating
        "P01,pleasant.c1.BIAS,abc\n"           // malformed rating
        "P01,pleasant.c9.APPR,5\n"             // unknown item
        "P01,pleasant.c1.APPR,3\n"             // duplicate
        "P02,pleasant.c1.APPR,0\n"             // ok
        ",pleasant.c1.APPR,5\n"                // malformed: empty id
        "P03,pleasant.c1.IMPL_CCW\n";          // malformed: field count
    const ParsedResponses parsed = parse_responses(text, DocumentFormat::CSV, items);

    CHECK(parsed.records.size() == 2);
    CHECK(parsed.errors.size() == 8);
    CHECK(parsed.records.size() + parsed.errors.size() == 10);

    CHECK(parsed.records[0].participant_id == "P01");
    CHECK(parsed.records[0].raw_rating == 9);
    CHECK(parsed.records[1].raw_rating == 0);

    CHECK(parsed.errors[0].kind == IngestErrorKind::OutOfRange);
    CHECK(parsed.errors[1].kind == IngestErrorKind::OutOfRange);
    CHECK(parsed.errors[2].kind == IngestErrorKind::MalformedRow);
    CHECK(parsed.errors[3].kind == IngestErrorKind::MalformedRow);
    CHECK(parsed.errors[4].kind == IngestErrorKind::UnknownItem);
    CHECK(parsed.errors[5].kind == IngestErrorKind::Duplicate);
    CHECK(parsed.errors[6].kind == IngestErrorKind::MalformedRow);
    CHECK(parsed.errors[7].kind == IngestErrorKind::MalformedRow);

    // row numbers are 1-based data rows and appear in the message
    CHECK(parsed.errors[0].row == 2);
    CHECK(parsed.errors[0].message.find("row 2") != std::string::npos);
    CHECK(parsed.errors[5].message.find("duplicate") != std::string::npos);
}

TEST_CASE("response header and format problems are fatal") {
    const auto items = small_questionnaire();
    CHECK_THROWS_AS(parse_responses("", DocumentFormat::CSV, items), UnreadableDocument);
    CHECK_THROWS_AS(parse_responses("a,b,c\n", DocumentFormat::CSV, items), UnreadableDocument);
    CHECK_THROWS_AS(parse_responses("{not json", DocumentFormat::JSON, items),
                    UnreadableDocument);
    CHECK_THROWS_AS(parse_responses("{\"a\":1}", DocumentFormat::JSON, items),
                    UnreadableDocument);
}

TEST_CASE("json responses enforce integer ratings") {
    const auto items = small_questionnaire();
    const std::string text = R"([
        {"participant_id":"P01","item_id":"pleasant.c1.APPR","rating":7},
        {"participant_id":"P01","item_id":"pleasant.c1.UNDR","rating":7.5},
        {"participant_id":"P01","item_id":"pleasant.c1.ANTO","rating":"7"},
        {"participant_id":"P01","item_id":"pleasant.c1.BIAS"}
    ])";
    const ParsedResponses parsed = parse_responses(text, DocumentFormat::JSON, items);
    CHECK(parsed.records.size() == 1);
    REQUIRE(parsed.errors.size() == 3);
    for (const auto& e : parsed.errors) {
        CHECK(e.kind == IngestErrorKind::MalformedRow);
    }
    CHECK(parsed.errors[0].row == 2);
}

TEST_CASE("participant profiles parse from both formats") {
    const std::string csv_text = "participant_id,ilr_local,ilr_english,years_abroad_bucket\n"
                                 "P01,5,4,<1\n"
                                 "P02,5,3,1-5\n";
    const auto from_csv = parse_participants(csv_text, DocumentFormat::CSV);
    REQUIRE(from_csv.size() == 2);
    CHECK(from_csv[0].participant_id == "P01");
    CHECK(from_csv[0].ilr_local == 5);
    CHECK(from_csv[0].ilr_english == 4);
    CHECK(from_csv[0].years_abroad == YearsAbroadBucket::LessThanOne);
    CHECK(from_csv[1].years_abroad == YearsAbroadBucket::OneToFive);

    const std::string json_text = R"([
        {"participant_id":"P01","ilr_local":5,"ilr_english":4,"years_abroad_bucket":"<1"},
        {"participant_id":"P02","ilr_local":5,"ilr_english":3,"years_abroad_bucket":"1-5"}
    ])";
    const auto from_json = parse_participants(json_text, DocumentFormat::JSON);
    REQUIRE(from_json.size() == 2);
    CHECK(from_json[1].participant_id == "P02");
    CHECK(from_json[1].ilr_english == 3);
}

TEST_CASE("participant profile problems are fatal") {
    const std::string header = "participant_id,ilr_local,ilr_english,years_abroad_bucket\n";
    CHECK_THROWS_AS(parse_participants("", DocumentFormat::CSV), UnreadableDocument);
    CHECK_THROWS_AS(parse_participants(header + "P01,6,4,<1\n", DocumentFormat::CSV),
                    ValidationError);
    CHECK_THROWS_AS(parse_participants(header + "P01,5,-1,<1\n", DocumentFormat::CSV),
                    ValidationError);
    CHECK_THROWS_AS(parse_participants(header + "P01,x,4,<1\n", DocumentFormat::CSV),
                    ValidationError);
    CHECK_THROWS_AS(parse_participants(header + "P01,5,4,sometimes\n", DocumentFormat::CSV),
                    ValidationError);
    CHECK_THROWS_AS(
        parse_participants(header + "P01,5,4,<1\nP01,5,4,<1\n", DocumentFormat::CSV),
        ValidationError);
    CHECK_THROWS_AS(parse_participants(header + ",5,4,<1\n", DocumentFormat::CSV),
                    ValidationError);
}

TEST_CASE("completeness report covers participants and items") {
    const auto items = small_questionnaire();
    REQUIRE(items.size() == 8);

    std::vector<ParticipantProfile> profiles = {
        {"P01", 5, 4, YearsAbroadBucket::LessThanOne},
        {"P02", 5, 3, YearsAbroadBucket::OneToFive},
    };
    std::vector<ResponseRecord> records;
    for (const auto& it : items) records.push_back({"P01", it.item_id, 5});
    for (std::size_t i = 0; i + 1 < items.size(); ++i) {
        records.push_back({"P02", items[i].item_id, 3});
    }
    records.push_back({"P99", items[0].item_id, 1}); // respondent without a profile

    const CompletenessReport report = completeness_report(records, items, profiles, 1.0);
    REQUIRE(report.participants.size() == 3);
    CHECK(report.participants[0].participant_id == "P01");
    CHECK(report.participants[0].coverage == 1.0);
    CHECK_FALSE(report.participants[0].flagged);
    CHECK(report.participants[0].missing_item_ids.empty());

    CHECK(report.participants[1].participant_id == "P02");
    CHECK(report.participants[1].coverage == doctest::Approx(7.0 / 8.0));
    CHECK(report.participants[1].flagged);
    REQUIRE(report.participants[1].missing_item_ids.size() == 1);
    CHECK(report.participants[1].missing_item_ids[0] == items.back().item_id);

    CHECK(report.participants[2].participant_id == "P99");
    CHECK(report.participants[2].coverage == doctest::Approx(1.0 / 8.0));

    REQUIRE(report.items.size() == items.size());
    CHECK(report.items[0].item_id == items[0].item_id);
    CHECK(report.items[0].response_count == 3);
    CHECK(report.items.back().response_count == 1);

    // a lower threshold unflags the near-complete participant
    const CompletenessReport loose = completeness_report(records, items, profiles, 0.8);
    CHECK_FALSE(loose.participants[1].flagged);
    CHECK(loose.participants[2].flagged);

    const CompletenessReport empty = completeness_report({}, items, {}, 1.0);
    CHECK(empty.participants.empty());
    CHECK(empty.items.size() == items.size());
}

TEST_CASE("accepted records round trip through csv") {
    const auto items = small_questionnaire();
    std::vector<ResponseRecord> records = {
        {"P01", items[0].item_id, 9},
        {"P02", items[1].item_id, 0},
        {"P03", items[2].item_id, 10},
    };
    std::string text = "participant_id,item_id,rating\n";
    for (const auto& r : records) {
        text += csv_join({r.participant_id, r.item_id, std::to_string(r.raw_rating)}) + "\n";
    }
    const ParsedResponses parsed = parse_responses(text, DocumentFormat::CSV, items);
    CHECK(parsed.errors.empty());
    REQUIRE(parsed.records.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parsed.records[i].participant_id == records[i].participant_id);
        CHECK(parsed.records[i].item_id == records[i].item_id);
        CHECK(parsed.records[i].raw_rating == records[i].raw_rating);
    }
}
