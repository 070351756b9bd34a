#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "satev/csv.hpp"
#include "satev/errors.hpp"
#include "satev/questionnaire.hpp"

using namespace satev;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CandidateTranslation cand(std::string id, Attribute a, std::string text) {
    CandidateTranslation c;
    c.id = std::move(id);
    c.attribute = a;
    c.local_text = std::move(text);
    return c;
}

} // namespace

TEST_CASE("item kinds per axis") {
    const auto main_kinds = item_kinds_for(AxisKind::Main);
    const auto derived_kinds = item_kinds_for(AxisKind::Derived);
    CHECK(main_kinds == std::vector<ItemKind>{ItemKind::APPR, ItemKind::UNDR, ItemKind::ASSO_CCW,
                                              ItemKind::ASSO_CW, ItemKind::ANTO, ItemKind::BIAS,
                                              ItemKind::IMPL_CCW, ItemKind::IMPL_CW});
    CHECK(derived_kinds == std::vector<ItemKind>{ItemKind::APPR, ItemKind::UNDR,
                                                 ItemKind::ASSO_CCW, ItemKind::ASSO_CW,
                                                 ItemKind::IMPL_CCW, ItemKind::IMPL_CW});
    for (ItemKind k : main_kinds) {
        CHECK(parse_item_kind(item_kind_name(k)) == k);
    }
    CHECK_THROWS_AS(parse_item_kind("APPROVAL"), ValidationError);
}

TEST_CASE("main-axis candidates get eight items, derived six") {
    const auto main_items = generate_items({cand("c1", Attribute::Pleasant, "x")}, "German");
    CHECK(main_items.size() == 8);
    const auto derived_items = generate_items({cand("c1", Attribute::Chaotic, "x")}, "Swedish");
    CHECK(derived_items.size() == 6);
    for (const auto& it : derived_items) {
        CHECK(it.kind != ItemKind::ANTO);
        CHECK(it.kind != ItemKind::BIAS);
    }
    CHECK(main_items[0].item_id == "pleasant.c1.APPR");
    CHECK(main_items[5].item_id == "pleasant.c1.BIAS");
    CHECK(derived_items[0].item_id == "chaotic.c1.APPR");
}

TEST_CASE("prompt templates render the worked examples") {
    const auto pleasant = generate_items({cand("c", Attribute::Pleasant, "angenehm")}, "German");
    CHECK(pleasant[0].prompt_text ==
          "To what extent do you agree/disagree that \"angenehm\" is an appropriate translation "
          "of pleasant?");

    const auto vibrant = generate_items({cand("c", Attribute::Vibrant, "dynamique")}, "French");
    CHECK(vibrant[1].prompt_text ==
          "To what extent do you agree/disagree that \"dynamique\" is easily understood by a "
          "typical general French speaker?");

    const auto monotonous =
        generate_items({cand("c", Attribute::Monotonous, "membosankan")}, "Indonesian");
    CHECK(monotonous[2].prompt_text ==
          "To what extent do you agree/disagree that \"membosankan\" is more often associated as "
          "a translation of uneventful?");
    CHECK(monotonous[3].prompt_text ==
          "To what extent do you agree/disagree that \"membosankan\" is more often associated as "
          "a translation of annoying?");

    const auto eventful =
        generate_items({cand("c", Attribute::Eventful, "sinh \xc4\x91\xe1\xbb\x99ng")}, "Vietnamese");
    CHECK(eventful[4].prompt_text ==
          "To what extent do you agree/disagree that \"sinh \xc4\x91\xe1\xbb\x99ng\" is a direct "
          "antonym of uneventful?");

    const auto annoying = generate_items({cand("c", Attribute::Annoying, "keyifsiz")}, "Turkish");
    CHECK(annoying[5].prompt_text ==
          "To what extent is \"keyifsiz\" (as a description of an acoustic environment) biased "
          "with respect to the uneventful\xe2\x80\x93" "eventful axis?");

    const auto chaotic = generate_items({cand("c", Attribute::Chaotic, "kaotiskt")}, "Swedish");
    CHECK(chaotic[5].prompt_text ==
          "To what extent do you agree/disagree that \"kaotiskt\" (as a description of an "
          "acoustic environment) implies that the environment is also eventful?");
}

TEST_CASE("scale labels: agreement everywhere, axis endpoints on bias items") {
    const auto items = generate_items({cand("c", Attribute::Uneventful, "x")}, "Thai");
    for (const auto& it : items) {
        if (it.kind == ItemKind::BIAS) {
            // orthogonal pair of uneventful: CCW = pleasant, CW = annoying
            CHECK(it.scale_min_label == "pleasant");
            CHECK(it.scale_max_label == "annoying");
        } else {
            CHECK(it.scale_min_label == "fully disagree");
            CHECK(it.scale_max_label == "fully agree");
        }
    }
}

TEST_CASE("referenced attributes follow the circumplex relations") {
    const std::string path = std::string(SATEV_DATA_DIR) + "/thai_candidates.csv";
    const auto candidates = parse_candidates_csv(slurp(path));
    const auto items = generate_items(candidates, "Thai");

    std::set<std::string> ids;
    for (const auto& it : items) {
        CHECK(ids.insert(it.item_id).second);
        const Attribute a = it.source_attribute;
        const std::string expected_id = std::string(attribute_name(a)) + "." + it.candidate.id +
                                        "." + std::string(item_kind_name(it.kind));
        CHECK(it.item_id == expected_id);
        // the local text appears exactly once, quoted; no template holes remain
        const std::string needle = "\"" + it.candidate.local_text + "\"";
        const auto first = it.prompt_text.find(needle);
        REQUIRE(first != std::string::npos);
        CHECK(it.prompt_text.find(needle, first + 1) == std::string::npos);
        CHECK(it.prompt_text.find('[') == std::string::npos);

        switch (it.kind) {
        case ItemKind::APPR:
            REQUIRE(it.referenced_attributes.size() == 1);
            CHECK(it.referenced_attributes[0] == a);
            break;
        case ItemKind::UNDR:
            CHECK(it.referenced_attributes.empty());
            break;
        case ItemKind::ASSO_CCW:
        case ItemKind::IMPL_CCW:
            REQUIRE(it.referenced_attributes.size() == 1);
            CHECK(it.referenced_attributes[0] == adjacent(a, Direction::Counterclockwise));
            break;
        case ItemKind::ASSO_CW:
        case ItemKind::IMPL_CW:
            REQUIRE(it.referenced_attributes.size() == 1);
            CHECK(it.referenced_attributes[0] == adjacent(a, Direction::Clockwise));
            break;
        case ItemKind::ANTO:
            REQUIRE(it.referenced_attributes.size() == 1);
            CHECK(it.referenced_attributes[0] == antipodal(a));
            break;
        case ItemKind::BIAS:
            REQUIRE(it.referenced_attributes.size() == 2);
            CHECK(it.referenced_attributes[0] == orthogonal(a, Direction::Counterclockwise));
            CHECK(it.referenced_attributes[1] == orthogonal(a, Direction::Clockwise));
            CHECK(it.referenced_attributes[0] == antipodal(it.referenced_attributes[1]));
            break;
        }
    }
}

TEST_CASE("bundled candidate set yields the published item counts") {
    const std::string path = std::string(SATEV_DATA_DIR) + "/thai_candidates.csv";
    const auto candidates = parse_candidates_csv(slurp(path));
    std::size_t main_candidates = 0, derived_candidates = 0;
    for (const auto& c : candidates) {
        (axis_kind(c.attribute) == AxisKind::Main ? main_candidates : derived_candidates) += 1;
    }
    CHECK(candidates.size() == 26);
    CHECK(main_candidates == 11);
    CHECK(derived_candidates == 15);

    const auto items = generate_items(candidates, "Thai");
    std::size_t main_items = 0, derived_items = 0;
    for (const auto& it : items) {
        (axis_kind(it.source_attribute) == AxisKind::Main ? main_items : derived_items) += 1;
    }
    CHECK(items.size() == 178);
    CHECK(main_items == 88);
    CHECK(derived_items == 90);
}

TEST_CASE("candidate validation") {
    CHECK_THROWS_AS(generate_items({}, "Thai"), EmptyCandidateSet);
    CHECK_THROWS_AS(generate_items({cand("a", Attribute::Calm, "")}, "Thai"), ValidationError);
    CHECK_THROWS_AS(generate_items({cand("a", Attribute::Calm, "x"),
                                    cand("a", Attribute::Vibrant, "y")},
                                   "Thai"),
                    DuplicateCandidateId);
}

TEST_CASE("questionnaire export round trips and shuffles deterministically") {
    const auto items = generate_items({cand("c1", Attribute::Pleasant, "x"),
                                       cand("c2", Attribute::Calm, "y")},
                                      "Thai");
    REQUIRE(items.size() == 14);

    const std::string csv_plain = export_questionnaire(items, DocumentFormat::CSV);
    const auto rows = parse_csv(csv_plain);
    REQUIRE(rows.size() == items.size() + 1);
    CHECK(rows[0][0] == "item_id");
    for (std::size_t i = 0; i < items.size(); ++i) {
        CHECK(rows[i + 1][0] == items[i].item_id); // no seed: generation order
        CHECK(rows[i + 1][5] == "0");
        CHECK(rows[i + 1][6] == "10");
    }

    const std::string seeded_a = export_questionnaire(items, DocumentFormat::CSV, 42);
    const std::string seeded_b = export_questionnaire(items, DocumentFormat::CSV, 42);
    const std::string seeded_c = export_questionnaire(items, DocumentFormat::CSV, 43);
    CHECK(seeded_a == seeded_b);
    CHECK(seeded_a != seeded_c);

    // a shuffle permutes rows without losing any
    auto id_set = [](const std::string& text) {
        std::multiset<std::string> ids;
        const auto parsed = parse_csv(text);
        for (std::size_t i = 1; i < parsed.size(); ++i) ids.insert(parsed[i][0]);
        return ids;
    };
    CHECK(id_set(seeded_a) == id_set(csv_plain));

    const std::string json_text = export_questionnaire(items, DocumentFormat::JSON, 7);
    const auto doc = nlohmann::json::parse(json_text);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == items.size());
    CHECK(doc[0].contains("prompt"));
    CHECK(doc[0]["scale_max"] == 10);

    CHECK_THROWS_AS(export_questionnaire({}, DocumentFormat::CSV), ValidationError);
}

TEST_CASE("candidate csv parser enforces its schema") {
    const std::string good = "id,attribute,local_text,transliteration,notes\n"
                             "c1,pleasant,\xe0\xb8\x99\xe0\xb9\x88\xe0\xb8\xb2\xe0\xb8\x9f\xe0\xb8\xb1\xe0\xb8\x87,/na:-fang/,\n";
    const auto cands = parse_candidates_csv(good);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].id == "c1");
    CHECK(cands[0].attribute == Attribute::Pleasant);
    CHECK(cands[0].local_text == "\xe0\xb8\x99\xe0\xb9\x88\xe0\xb8\xb2\xe0\xb8\x9f\xe0\xb8\xb1\xe0\xb8\x87");
    CHECK(cands[0].transliteration == "/na:-fang/");

    CHECK_THROWS_AS(parse_candidates_csv(""), UnreadableDocument);
    CHECK_THROWS_AS(parse_candidates_csv("id,attribute\nc1,pleasant\n"), UnreadableDocument);
    CHECK_THROWS_WITH_AS(
        parse_candidates_csv("id,attribute,local_text,transliteration,notes\nc1,serene,x,,\n"),
        doctest::Contains("row 2"), ValidationError);
    CHECK_THROWS_AS(
        parse_candidates_csv("id,attribute,local_text,transliteration,notes\nc1,pleasant,x\n"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_candidates_csv("id,attribute,local_text,transliteration,notes\n,pleasant,x,,\n"),
        ValidationError);
}
