#include "satev/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "satev/errors.hpp"

namespace satev {
namespace {

constexpr std::string_view kCriterionNames[] = {"APPR", "UNDR", "CLAR", "ANTO",
                                                "ORTH", "NCON", "CONN", "IBAL"};

void require_unit(double v, const char* what) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw OutOfRange(std::string(what) + " must lie in [0,1], got " + std::to_string(v));
    }
}

// Item kinds whose normalized ratings feed a criterion, in argument order.
std::vector<ItemKind> required_kinds(Criterion c) {
    switch (c) {
    case Criterion::APPR: return {ItemKind::APPR};
    case Criterion::UNDR: return {ItemKind::UNDR};
    case Criterion::ANTO: return {ItemKind::ANTO};
    case Criterion::CLAR: return {ItemKind::ASSO_CCW, ItemKind::ASSO_CW};
    case Criterion::ORTH: return {ItemKind::BIAS};
    case Criterion::NCON:
    case Criterion::CONN:
    case Criterion::IBAL: return {ItemKind::IMPL_CCW, ItemKind::IMPL_CW};
    }
    throw ValidationError("unknown criterion");
}

double evaluate(Criterion c, const std::vector<double>& r) {
    switch (c) {
    case Criterion::APPR:
    case Criterion::UNDR:
    case Criterion::ANTO: return identity_score(r.at(0), c);
    case Criterion::CLAR: return clar_score(r.at(0), r.at(1));
    case Criterion::ORTH: return orth_score(r.at(0));
    case Criterion::NCON: return ncon_score(r.at(0), r.at(1));
    case Criterion::CONN: return conn_score(r.at(0), r.at(1));
    case Criterion::IBAL: return ibal_score(r.at(0), r.at(1));
    }
    throw ValidationError("unknown criterion");
}

} // namespace

std::string_view criterion_name(Criterion c) noexcept {
    return kCriterionNames[static_cast<int>(c)];
}

Criterion parse_criterion(std::string_view name) {
    for (int i = 0; i < 8; ++i) {
        if (kCriterionNames[i] == name) return static_cast<Criterion>(i);
    }
    throw ValidationError("unknown criterion '" + std::string(name) + "'");
}

std::vector<Criterion> criteria_for(AxisKind axis) {
    if (axis == AxisKind::Main) {
        return {Criterion::APPR, Criterion::UNDR, Criterion::CLAR, Criterion::ANTO,
                Criterion::ORTH, Criterion::NCON, Criterion::IBAL};
    }
    return {Criterion::APPR, Criterion::UNDR, Criterion::CLAR, Criterion::CONN,
            Criterion::IBAL};
}

double normalize(int raw_rating) {
    if (raw_rating < 0 || raw_rating > 10) {
        throw OutOfRange("rating " + std::to_string(raw_rating) + " outside 0..10");
    }
    return raw_rating / 10.0;
}

double clar_score(double r_asso_ccw, double r_asso_cw) {
    require_unit(r_asso_ccw, "r_asso_ccw");
    require_unit(r_asso_cw, "r_asso_cw");
    return 1.0 - 0.5 * (r_asso_ccw + r_asso_cw);
}

double orth_score(double r_bias) {
    require_unit(r_bias, "r_bias");
    return 1.0 - 2.0 * std::fabs(r_bias - 0.5);
}

double ncon_score(double r_impl_ccw, double r_impl_cw) {
    require_unit(r_impl_ccw, "r_impl_ccw");
    require_unit(r_impl_cw, "r_impl_cw");
    return 1.0 - 0.5 * (r_impl_ccw + r_impl_cw);
}

double conn_score(double r_impl_ccw, double r_impl_cw) {
    require_unit(r_impl_ccw, "r_impl_ccw");
    require_unit(r_impl_cw, "r_impl_cw");
    return 0.5 * (r_impl_ccw + r_impl_cw);
}

double ibal_score(double r_impl_ccw, double r_impl_cw) {
    require_unit(r_impl_ccw, "r_impl_ccw");
    require_unit(r_impl_cw, "r_impl_cw");
    return 1.0 - std::fabs(r_impl_ccw - r_impl_cw);
}

double identity_score(double r, Criterion criterion) {
    if (criterion != Criterion::APPR && criterion != Criterion::UNDR &&
        criterion != Criterion::ANTO) {
        throw ValidationError("identity_score applies to APPR, UNDR, ANTO only");
    }
    require_unit(r, "r");
    return r;
}

CompletenessPolicy parse_completeness_policy(std::string_view name) {
    if (name == "complete_case") return CompletenessPolicy::CompleteCase;
    if (name == "pairwise") return CompletenessPolicy::Pairwise;
    throw ValidationError("unknown completeness policy '" + std::string(name) + "'");
}

std::string_view completeness_policy_name(CompletenessPolicy p) noexcept {
    return p == CompletenessPolicy::CompleteCase ? "complete_case" : "pairwise";
}

std::vector<ScoreContribution> contributions(
    const std::vector<ResponseRecord>& records,
    const std::vector<QuestionnaireItem>& items,
    const std::vector<ParticipantProfile>& participants,
    CompletenessPolicy policy) {
    std::unordered_set<std::string> known_participants;
    for (const auto& p : participants) known_participants.insert(p.participant_id);
    for (const auto& r : records) {
        if (!known_participants.count(r.participant_id)) {
            throw ValidationError("response from unlisted participant '" + r.participant_id +
                                  "'");
        }
    }

    // (participant, item) -> normalized rating
    std::unordered_map<std::string, double> rating;
    for (const auto& r : records) {
        rating[r.participant_id + "\x1f" + r.item_id] = normalize(r.raw_rating);
    }

    // candidate -> kind -> item_id, and the item universe per attribute
    std::unordered_map<std::string, std::unordered_map<ItemKind, std::string>> item_of;
    std::unordered_map<std::string, std::vector<std::string>> attribute_items;
    std::vector<std::pair<std::string, Attribute>> candidate_order;
    std::unordered_set<std::string> seen_candidates;
    for (const auto& it : items) {
        item_of[it.candidate.id][it.kind] = it.item_id;
        attribute_items[std::string(attribute_name(it.source_attribute))].push_back(it.item_id);
        if (seen_candidates.insert(it.candidate.id).second) {
            candidate_order.emplace_back(it.candidate.id, it.source_attribute);
        }
    }

    // participants admitted per attribute under the complete-case policy
    std::unordered_map<std::string, std::unordered_set<std::string>> admitted;
    if (policy == CompletenessPolicy::CompleteCase) {
        for (const auto& [attr, ids] : attribute_items) {
            auto& set = admitted[attr];
            for (const auto& p : participants) {
                bool complete = true;
                for (const auto& id : ids) {
                    if (!rating.count(p.participant_id + "\x1f" + id)) {
                        complete = false;
                        break;
                    }
                }
                if (complete) set.insert(p.participant_id);
            }
        }
    }

    std::vector<ScoreContribution> out;
    for (const auto& [cand_id, attr] : candidate_order) {
        const std::string attr_name(attribute_name(attr));
        const auto& kind_to_item = item_of[cand_id];
        for (Criterion crit : criteria_for(axis_kind(attr))) {
            const auto kinds = required_kinds(crit);
            for (const auto& p : participants) {
                if (policy == CompletenessPolicy::CompleteCase &&
                    !admitted[attr_name].count(p.participant_id)) {
                    continue;
                }
                std::vector<double> r;
                bool available = true;
                for (ItemKind kind : kinds) {
                    const auto it = kind_to_item.find(kind);
                    if (it == kind_to_item.end()) {
                        if (policy == CompletenessPolicy::CompleteCase) {
                            throw MissingItemRating(
                                "candidate '" + cand_id + "' has no " +
                                std::string(item_kind_name(kind)) + " item for criterion " +
                                std::string(criterion_name(crit)));
                        }
                        available = false;
                        break;
                    }
                    const auto rit = rating.find(p.participant_id + "\x1f" + it->second);
                    if (rit == rating.end()) {
                        // complete-case admission guarantees the rating exists
                        available = false;
                        break;
                    }
                    r.push_back(rit->second);
                }
                if (!available) continue;
                out.push_back({p.participant_id, cand_id, crit, evaluate(crit, r)});
            }
        }
    }
    return out;
}

std::vector<ScoreSummary> summarize(
    const std::vector<ScoreContribution>& contributions,
    const std::optional<std::map<std::string, double>>& weights) {
    double w_max = 0.0;
    if (weights) {
        std::unordered_set<std::string> used;
        for (const auto& c : contributions) {
            if (!used.insert(c.participant_id).second) continue;
            const auto it = weights->find(c.participant_id);
            if (it == weights->end()) {
                throw ValidationError("no weight for participant '" + c.participant_id + "'");
            }
            if (!std::isfinite(it->second)) {
                throw NonFiniteInput("weight for participant '" + c.participant_id +
                                     "' is not finite");
            }
            if (it->second < 0.0) {
                throw ValidationError("negative weight for participant '" + c.participant_id +
                                      "'");
            }
            w_max = std::max(w_max, it->second);
        }
        if (!contributions.empty() && w_max == 0.0) {
            throw AllZeroWeights("all participant weights are zero");
        }
    }

    // group key -> index into out, groups in first-appearance order
    std::vector<ScoreSummary> out;
    std::vector<double> num, den;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& c : contributions) {
        const std::string key = c.candidate_id + "\x1f" + std::string(criterion_name(c.criterion));
        auto [it, inserted] = index.emplace(key, out.size());
        if (inserted) {
            out.push_back({c.candidate_id, c.criterion, 0.0, 0, weights.has_value()});
            num.push_back(0.0);
            den.push_back(0.0);
        }
        // normalizing by the largest used weight makes the all-equal-weights
        // case reduce to u = 1.0 exactly, so it matches unweighted output
        // bit for bit
        const double u = weights ? weights->at(c.participant_id) / w_max : 1.0;
        const std::size_t g = it->second;
        num[g] += u * c.s;
        den[g] += u;
        ++out[g].n;
    }
    for (std::size_t g = 0; g < out.size(); ++g) {
        if (den[g] == 0.0) {
            throw AllZeroWeights("candidate '" + out[g].candidate_id + "' criterion " +
                                 std::string(criterion_name(out[g].criterion)) +
                                 " has zero total weight");
        }
        out[g].S = num[g] / den[g];
    }
    return out;
}

std::map<std::string, double> ilr_weights(const std::vector<ParticipantProfile>& participants) {
    std::map<std::string, double> w;
    for (const auto& p : participants) {
        w[p.participant_id] = static_cast<double>(p.ilr_local + p.ilr_english);
    }
    return w;
}

} // namespace satev
