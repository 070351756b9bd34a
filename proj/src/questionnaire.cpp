#include "satev/questionnaire.hpp"

#include <random>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "satev/csv.hpp"
#include "satev/errors.hpp"

namespace satev {
namespace {

constexpr std::string_view kKindNames[] = {"APPR",     "UNDR", "ASSO_CCW", "ASSO_CW",
                                           "ANTO",     "BIAS", "IMPL_CCW", "IMPL_CW"};

std::string quoted(const std::string& text) { return "\"" + text + "\""; }

std::string lower_name(Attribute a) { return std::string(attribute_name(a)); }

} // namespace

std::string_view item_kind_name(ItemKind k) noexcept {
    return kKindNames[static_cast<int>(k)];
}

ItemKind parse_item_kind(std::string_view name) {
    for (int i = 0; i < 8; ++i) {
        if (kKindNames[i] == name) return static_cast<ItemKind>(i);
    }
    throw ValidationError("unknown item kind '" + std::string(name) + "'");
}

std::vector<ItemKind> item_kinds_for(AxisKind axis) {
    if (axis == AxisKind::Main) {
        return {ItemKind::APPR,     ItemKind::UNDR, ItemKind::ASSO_CCW, ItemKind::ASSO_CW,
                ItemKind::ANTO,     ItemKind::BIAS, ItemKind::IMPL_CCW, ItemKind::IMPL_CW};
    }
    return {ItemKind::APPR,     ItemKind::UNDR,     ItemKind::ASSO_CCW,
            ItemKind::ASSO_CW,  ItemKind::IMPL_CCW, ItemKind::IMPL_CW};
}

std::string render_prompt(const QuestionnaireItem& item,
                          const std::string& local_language_name) {
    const std::string loc = quoted(item.candidate.local_text);
    switch (item.kind) {
    case ItemKind::APPR:
        return "To what extent do you agree/disagree that " + loc +
               " is an appropriate translation of " + lower_name(item.source_attribute) + "?";
    case ItemKind::UNDR:
        return "To what extent do you agree/disagree that " + loc +
               " is easily understood by a typical general " + local_language_name + " speaker?";
    case ItemKind::ASSO_CCW:
    case ItemKind::ASSO_CW:
        return "To what extent do you agree/disagree that " + loc +
               " is more often associated as a translation of " +
               lower_name(item.referenced_attributes.at(0)) + "?";
    case ItemKind::ANTO:
        return "To what extent do you agree/disagree that " + loc + " is a direct antonym of " +
               lower_name(item.referenced_attributes.at(0)) + "?";
    case ItemKind::BIAS:
        return "To what extent is " + loc +
               " (as a description of an acoustic environment) biased with respect to the " +
               lower_name(item.referenced_attributes.at(0)) + "–" +
               lower_name(item.referenced_attributes.at(1)) + " axis?";
    case ItemKind::IMPL_CCW:
    case ItemKind::IMPL_CW:
        return "To what extent do you agree/disagree that " + loc +
               " (as a description of an acoustic environment) implies that the environment is "
               "also " +
               lower_name(item.referenced_attributes.at(0)) + "?";
    }
    throw ValidationError("render_prompt: unknown item kind");
}

std::vector<QuestionnaireItem> generate_items(
    const std::vector<CandidateTranslation>& candidates,
    const std::string& local_language_name) {
    if (candidates.empty()) throw EmptyCandidateSet("candidate set is empty");
    std::unordered_set<std::string> seen;
    for (const auto& c : candidates) {
        if (c.local_text.empty()) {
            throw ValidationError("candidate '" + c.id + "' has empty local text");
        }
        if (!seen.insert(c.id).second) {
            throw DuplicateCandidateId("duplicate candidate id '" + c.id + "'");
        }
    }

    std::vector<QuestionnaireItem> items;
    for (const auto& c : candidates) {
        const Attribute a = c.attribute;
        for (ItemKind kind : item_kinds_for(axis_kind(a))) {
            QuestionnaireItem item;
            item.kind = kind;
            item.candidate = c;
            item.source_attribute = a;
            switch (kind) {
            case ItemKind::APPR:
                item.referenced_attributes = {a};
                break;
            case ItemKind::UNDR:
                break;
            case ItemKind::ASSO_CCW:
            case ItemKind::IMPL_CCW:
                item.referenced_attributes = {adjacent(a, Direction::Counterclockwise)};
                break;
            case ItemKind::ASSO_CW:
            case ItemKind::IMPL_CW:
                item.referenced_attributes = {adjacent(a, Direction::Clockwise)};
                break;
            case ItemKind::ANTO:
                item.referenced_attributes = {antipodal(a)};
                break;
            case ItemKind::BIAS:
                item.referenced_attributes = {orthogonal(a, Direction::Counterclockwise),
                                              orthogonal(a, Direction::Clockwise)};
                break;
            }
            item.item_id = lower_name(a) + "." + c.id + "." + std::string(item_kind_name(kind));
            item.prompt_text = render_prompt(item, local_language_name);
            if (kind == ItemKind::BIAS) {
                item.scale_min_label = lower_name(item.referenced_attributes[0]);
                item.scale_max_label = lower_name(item.referenced_attributes[1]);
            } else {
                item.scale_min_label = "fully disagree";
                item.scale_max_label = "fully agree";
            }
            items.push_back(std::move(item));
        }
    }
    return items;
}

std::string export_questionnaire(const std::vector<QuestionnaireItem>& items,
                                 DocumentFormat format,
                                 std::optional<std::uint64_t> shuffle_seed) {
    if (items.empty()) throw ValidationError("export_questionnaire: no items");

    std::vector<std::size_t> order(items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (shuffle_seed) {
        // hand-rolled Fisher-Yates so the permutation is stable across
        // standard library implementations
        std::mt19937_64 gen(*shuffle_seed);
        for (std::size_t i = order.size() - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(gen() % (i + 1));
            std::swap(order[i], order[j]);
        }
    }

    if (format == DocumentFormat::CSV) {
        std::string out = "item_id,kind,candidate_id,attribute,prompt,"
                          "scale_min,scale_max,scale_min_label,scale_max_label\n";
        for (std::size_t idx : order) {
            const auto& it = items[idx];
            out += csv_join({it.item_id, std::string(item_kind_name(it.kind)), it.candidate.id,
                             lower_name(it.source_attribute), it.prompt_text, "0", "10",
                             it.scale_min_label, it.scale_max_label});
            out += '\n';
        }
        return out;
    }
    if (format == DocumentFormat::JSON) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (std::size_t idx : order) {
            const auto& it = items[idx];
            nlohmann::ordered_json obj;
            obj["item_id"] = it.item_id;
            obj["kind"] = std::string(item_kind_name(it.kind));
            obj["candidate_id"] = it.candidate.id;
            obj["attribute"] = lower_name(it.source_attribute);
            obj["prompt"] = it.prompt_text;
            obj["scale_min"] = 0;
            obj["scale_max"] = 10;
            obj["scale_min_label"] = it.scale_min_label;
            obj["scale_max_label"] = it.scale_max_label;
            doc.push_back(std::move(obj));
        }
        return doc.dump(2) + "\n";
    }
    throw UnsupportedFormat("export_questionnaire: unsupported format");
}

std::vector<CandidateTranslation> parse_candidates_csv(const std::string& text) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw UnreadableDocument("candidates: empty document");
    const std::vector<std::string> expected = {"id", "attribute", "local_text",
                                               "transliteration", "notes"};
    if (rows[0] != expected) {
        throw UnreadableDocument(
            "candidates: header must be id,attribute,local_text,transliteration,notes");
    }
    std::vector<CandidateTranslation> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != expected.size()) {
            throw ValidationError("candidates: row " + std::to_string(i + 1) + " has " +
                                  std::to_string(row.size()) + " fields, expected 5");
        }
        CandidateTranslation c;
        c.id = row[0];
        try {
            c.attribute = parse_attribute(row[1]);
        } catch (const ValidationError&) {
            throw ValidationError("candidates: row " + std::to_string(i + 1) +
                                  " has unknown attribute '" + row[1] + "'");
        }
        c.local_text = row[2];
        c.transliteration = row[3];
        c.notes = row[4];
        if (c.id.empty()) {
            throw ValidationError("candidates: row " + std::to_string(i + 1) + " has empty id");
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace satev
