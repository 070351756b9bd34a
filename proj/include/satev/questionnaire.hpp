#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "satev/circumplex.hpp"

namespace satev {

struct CandidateTranslation {
    std::string id;              // unique within a candidate set
    Attribute attribute = Attribute::Pleasant;
    std::string local_text;      // UTF-8, non-empty
    std::string transliteration; // optional
    std::string notes;           // optional
};

// ANTO and BIAS exist only for main-axis candidates.
enum class ItemKind { APPR, UNDR, ASSO_CCW, ASSO_CW, ANTO, BIAS, IMPL_CCW, IMPL_CW };

std::string_view item_kind_name(ItemKind k) noexcept;
ItemKind parse_item_kind(std::string_view name);

// The item kinds a candidate of the given axis receives, in emission order.
std::vector<ItemKind> item_kinds_for(AxisKind axis);

struct QuestionnaireItem {
    std::string item_id;         // "<attribute>.<candidate-id>.<kind>"
    ItemKind kind = ItemKind::APPR;
    CandidateTranslation candidate;
    Attribute source_attribute = Attribute::Pleasant;
    // English attributes named in the prompt: none for UNDR, one for
    // APPR/ASSO/ANTO/IMPL, the (CCW, CW) orthogonal pair for BIAS.
    std::vector<Attribute> referenced_attributes;
    std::string prompt_text;
    std::string scale_min_label; // rating 0
    std::string scale_max_label; // rating 10
};

// Emits 8 items per main-axis candidate and 6 per derived-axis candidate,
// candidates in input order, kinds in the order of item_kinds_for.
std::vector<QuestionnaireItem> generate_items(
    const std::vector<CandidateTranslation>& candidates,
    const std::string& local_language_name);

// Expands the English template for the item. The local text is wrapped in
// ASCII double quotes; attribute names appear lowercase; the BIAS axis is
// rendered "<ccw>–<cw>" with an en dash.
std::string render_prompt(const QuestionnaireItem& item,
                          const std::string& local_language_name);

enum class DocumentFormat { CSV, JSON };

// One row/object per item: identifier, kind, candidate, prompt, and the
// 0..10 scale declaration. A seed applies a deterministic permutation.
std::string export_questionnaire(const std::vector<QuestionnaireItem>& items,
                                 DocumentFormat format,
                                 std::optional<std::uint64_t> shuffle_seed = std::nullopt);

// Reads a candidate set from CSV text with header
// id,attribute,local_text,transliteration,notes.
std::vector<CandidateTranslation> parse_candidates_csv(const std::string& text);

} // namespace satev
