#include "satev/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <utility>

#include <json.hpp>

#include "satev/csv.hpp"
#include "satev/errors.hpp"

namespace satev {
namespace {

using ojson = nlohmann::ordered_json;

// code points, so padding lines up better than byte counts for Thai text
std::size_t utf8_length(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

std::string pad_right(const std::string& s, std::size_t width) {
    const std::size_t len = utf8_length(s);
    return len >= width ? s : s + std::string(width - len, ' ');
}

std::string render_text_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], utf8_length(row[i]));
        }
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += "  ";
            line += i + 1 == row.size() ? row[i] : pad_right(row[i], widths[i]);
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += '\n';
    }
    return out;
}

std::string significance_stars(double p, double alpha_strong = 0.01,
                               double alpha_weak = 0.05) {
    if (p < alpha_strong) return "**";
    if (p < alpha_weak) return "*";
    return "";
}

std::string cell_display(const MarkedScore& m, bool ascii) {
    const std::string marker = marker_string(m.marker, ascii);
    const std::string value = format_fixed(m.S, 3);
    if (marker.empty()) return value;
    // glyph-count markers get a space so the count never merges with the value
    if (m.marker.kind == MarkerKind::Opus || m.marker.kind == MarkerKind::Plus) {
        return marker + " " + value;
    }
    return marker + value;
}

} // namespace

ReportFormat parse_report_format(std::string_view name) {
    if (name == "text") return ReportFormat::Text;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw ValidationError("unknown report format '" + std::string(name) + "'");
}

std::string_view report_format_name(ReportFormat f) noexcept {
    switch (f) {
    case ReportFormat::Text: return "text";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
    }
    return "text";
}

std::string marker_string(const Marker& m, bool ascii) {
    switch (m.kind) {
    case MarkerKind::DoubleStar: return "**";
    case MarkerKind::Star: return "*";
    case MarkerKind::Opus: return (ascii ? "o " : "⊕") + std::to_string(m.count);
    case MarkerKind::Plus: return (ascii ? "+ " : "+") + std::to_string(m.count);
    case MarkerKind::Nothing: return "";
    }
    return "";
}

std::string format_fixed(double v, int decimals) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.*f", decimals + 9, std::fabs(v));
    const std::string s = buf;
    const std::size_t dot = s.find('.');
    // digit sequence without the point; the first discarded digit decides
    std::string digits = s.substr(0, dot) + s.substr(dot + 1, static_cast<std::size_t>(decimals));
    const char next = s[dot + 1 + static_cast<std::size_t>(decimals)];
    if (next >= '5') {
        int i = static_cast<int>(digits.size()) - 1;
        for (; i >= 0; --i) {
            if (digits[i] == '9') {
                digits[i] = '0';
            } else {
                ++digits[i];
                break;
            }
        }
        if (i < 0) digits.insert(digits.begin(), '1');
    }
    std::string int_part = digits.substr(0, digits.size() - static_cast<std::size_t>(decimals));
    if (int_part.empty()) int_part = "0";
    std::string out = int_part;
    if (decimals > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(decimals));
    if (std::signbit(v) && out.find_first_of("123456789") != std::string::npos) {
        out.insert(out.begin(), '-');
    }
    return out;
}

std::string p_display(double p, bool ascii) {
    if (p < 0.001) return "<0.001";
    if (p >= 0.9995) return ascii ? "~1.000" : "≈" "1.000";
    return format_fixed(p, 3);
}

std::vector<MarkedScore> assign_markers(Attribute attribute,
                                        const std::vector<ScoreSummary>& summaries,
                                        const OmnibusResult& omnibus,
                                        const std::vector<PosthocResult>& posthoc,
                                        double alpha_strong, double alpha_weak) {
    (void)omnibus; // gate enforcement is the caller's job; an empty posthoc
                   // list is what a closed gate looks like here
    if (summaries.empty()) throw InconsistentFamily("marker family has no summaries");
    std::set<std::string> known;
    for (const auto& s : summaries) {
        if (s.criterion != summaries.front().criterion) {
            throw InconsistentFamily("marker family mixes criteria");
        }
        if (!known.insert(s.candidate_id).second) {
            throw InconsistentFamily("candidate '" + s.candidate_id +
                                     "' appears twice in one family");
        }
    }
    for (const auto& pr : posthoc) {
        if (!known.count(pr.candidate_hi) || !known.count(pr.candidate_lo)) {
            throw InconsistentFamily("posthoc pair (" + pr.candidate_hi + ", " +
                                     pr.candidate_lo + ") references unknown candidates");
        }
    }

    const std::size_t k = summaries.size();
    std::vector<MarkedScore> out;
    for (const auto& s : summaries) {
        MarkedScore m;
        m.attribute = attribute;
        m.candidate_id = s.candidate_id;
        m.criterion = s.criterion;
        m.S = s.S;
        if (!posthoc.empty()) {
            std::size_t wins_strong = 0, wins_weak = 0;
            for (const auto& pr : posthoc) {
                if (pr.candidate_hi != s.candidate_id) continue;
                if (pr.p_adj < alpha_strong) ++wins_strong;
                if (pr.p_adj < alpha_weak) ++wins_weak;
            }
            if (wins_strong == k - 1) {
                m.marker = {MarkerKind::DoubleStar, 0, true};
            } else if (wins_weak == k - 1) {
                m.marker = {MarkerKind::Star, 0, true};
            } else if (wins_strong > 0) {
                m.marker = {MarkerKind::Opus, static_cast<int>(wins_strong), false};
            } else if (wins_weak > 0) {
                m.marker = {MarkerKind::Plus, static_cast<int>(wins_weak), false};
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Criterion> layout_columns(TableLayout layout) {
    return criteria_for(layout == TableLayout::MainAxes ? AxisKind::Main : AxisKind::Derived);
}

std::string emit_score_table(const std::vector<MarkedScore>& marked, TableLayout layout,
                             ReportFormat format, bool ascii_markers) {
    const std::vector<Criterion> columns = layout_columns(layout);
    auto column_index = [&](Criterion c) -> std::size_t {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == c) return i;
        }
        throw LayoutMismatch("criterion " + std::string(criterion_name(c)) +
                             " does not belong to this layout");
    };

    struct Row {
        Attribute attribute;
        std::string candidate_id;
        std::string label;
        std::vector<std::optional<MarkedScore>> cells;
    };
    std::vector<Row> rows;
    std::map<std::pair<int, std::string>, std::size_t> row_index;
    for (const auto& m : marked) {
        const auto key = std::make_pair(static_cast<int>(m.attribute), m.candidate_id);
        auto it = row_index.find(key);
        if (it == row_index.end()) {
            it = row_index.emplace(key, rows.size()).first;
            rows.push_back({m.attribute, m.candidate_id, m.label,
                            std::vector<std::optional<MarkedScore>>(columns.size())});
        }
        Row& row = rows[it->second];
        if (row.label.empty()) row.label = m.label;
        auto& cell = row.cells[column_index(m.criterion)];
        if (cell) {
            throw LayoutMismatch("duplicate score for candidate '" + m.candidate_id +
                                 "' criterion " + std::string(criterion_name(m.criterion)));
        }
        cell = m;
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (!row.cells[i]) {
                throw LayoutMismatch("candidate '" + row.candidate_id + "' is missing criterion " +
                                     std::string(criterion_name(columns[i])));
            }
        }
    }

    if (format == ReportFormat::Csv) {
        std::vector<std::string> header = {"attribute", "candidate_id", "label"};
        for (Criterion c : columns) {
            header.push_back(std::string(criterion_name(c)));
            header.push_back(std::string(criterion_name(c)) + "_marker");
        }
        std::string out = csv_join(header) + "\n";
        for (const auto& row : rows) {
            std::vector<std::string> fields = {std::string(attribute_name(row.attribute)),
                                               row.candidate_id, row.label};
            for (const auto& cell : row.cells) {
                fields.push_back(format_fixed(cell->S, 3));
                fields.push_back(marker_string(cell->marker, ascii_markers));
            }
            out += csv_join(fields) + "\n";
        }
        return out;
    }

    if (format == ReportFormat::Json) {
        ojson doc = ojson::array();
        for (const auto& row : rows) {
            ojson obj;
            obj["attribute"] = std::string(attribute_name(row.attribute));
            obj["candidate_id"] = row.candidate_id;
            obj["label"] = row.label;
            ojson scores;
            for (std::size_t i = 0; i < columns.size(); ++i) {
                const auto& cell = *row.cells[i];
                ojson sc;
                sc["value"] = format_fixed(cell.S, 3);
                sc["marker"] = marker_string(cell.marker, ascii_markers);
                sc["bold"] = cell.marker.bold;
                sc["display"] = cell_display(cell, ascii_markers);
                scores[std::string(criterion_name(columns[i]))] = std::move(sc);
            }
            obj["scores"] = std::move(scores);
            doc.push_back(std::move(obj));
        }
        return doc.dump(2) + "\n";
    }

    // aligned text, attribute shown on the first row of its group
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header = {"attribute", "candidate", "translation"};
    for (Criterion c : columns) header.push_back(std::string(criterion_name(c)));
    grid.push_back(std::move(header));
    Attribute last = Attribute::Pleasant;
    bool first = true;
    for (const auto& row : rows) {
        std::vector<std::string> line;
        const bool new_group = first || row.attribute != last;
        line.push_back(new_group ? std::string(attribute_name(row.attribute)) : "");
        line.push_back(row.candidate_id);
        line.push_back(row.label);
        for (const auto& cell : row.cells) line.push_back(cell_display(*cell, ascii_markers));
        grid.push_back(std::move(line));
        last = row.attribute;
        first = false;
    }
    return render_text_table(grid);
}

namespace {

std::vector<PosthocResult> sorted_by_p(const std::vector<PosthocResult>& posthoc) {
    std::vector<PosthocResult> sorted = posthoc;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const PosthocResult& a, const PosthocResult& b) {
                         return a.p_adj < b.p_adj;
                     });
    return sorted;
}

} // namespace

std::string emit_test_table(const std::vector<FamilyResult>& families, ReportFormat format,
                            bool ascii_markers) {
    if (format == ReportFormat::Csv) {
        std::string out = "attribute,criterion,H,df,p,significance\n";
        for (const auto& f : families) {
            out += csv_join({std::string(attribute_name(f.attribute)),
                             std::string(criterion_name(f.criterion)),
                             format_fixed(f.omnibus.H, 3), std::to_string(f.omnibus.df),
                             p_display(f.omnibus.p, ascii_markers),
                             significance_stars(f.omnibus.p)}) +
                   "\n";
        }
        out += "\nattribute,criterion,cand_hi,cand_lo,t,p_raw,p_adj,significance\n";
        for (const auto& f : families) {
            for (const auto& pr : sorted_by_p(f.posthoc)) {
                out += csv_join({std::string(attribute_name(f.attribute)),
                                 std::string(criterion_name(f.criterion)), pr.candidate_hi,
                                 pr.candidate_lo, format_fixed(pr.t_stat, 3),
                                 p_display(pr.p_raw, ascii_markers),
                                 p_display(pr.p_adj, ascii_markers),
                                 significance_stars(pr.p_adj)}) +
                       "\n";
            }
        }
        return out;
    }

    if (format == ReportFormat::Json) {
        ojson doc = ojson::array();
        for (const auto& f : families) {
            ojson obj;
            obj["attribute"] = std::string(attribute_name(f.attribute));
            obj["criterion"] = std::string(criterion_name(f.criterion));
            ojson omni;
            omni["H"] = format_fixed(f.omnibus.H, 3);
            omni["df"] = f.omnibus.df;
            omni["p"] = p_display(f.omnibus.p, ascii_markers);
            omni["significance"] = significance_stars(f.omnibus.p);
            obj["omnibus"] = std::move(omni);
            ojson pairs = ojson::array();
            for (const auto& pr : sorted_by_p(f.posthoc)) {
                ojson pj;
                pj["higher"] = pr.candidate_hi;
                pj["lower"] = pr.candidate_lo;
                pj["t"] = format_fixed(pr.t_stat, 3);
                pj["p_raw"] = p_display(pr.p_raw, ascii_markers);
                pj["p_adj"] = p_display(pr.p_adj, ascii_markers);
                pj["significance"] = significance_stars(pr.p_adj);
                pairs.push_back(std::move(pj));
            }
            obj["posthoc"] = std::move(pairs);
            doc.push_back(std::move(obj));
        }
        return doc.dump(2) + "\n";
    }

    std::string out;
    for (const auto& f : families) {
        std::string head = std::string(attribute_name(f.attribute)) + " / " +
                           std::string(criterion_name(f.criterion)) +
                           ": H = " + format_fixed(f.omnibus.H, 3) +
                           " (df = " + std::to_string(f.omnibus.df) +
                           "), p = " + p_display(f.omnibus.p, ascii_markers);
        const std::string stars = significance_stars(f.omnibus.p);
        if (!stars.empty()) head += " " + stars;
        out += head + "\n";
        if (f.posthoc.empty()) {
            out += "  no posthoc test (omnibus not significant)\n";
        } else {
            for (const auto& pr : sorted_by_p(f.posthoc)) {
                std::string line = "  " + pr.candidate_hi + " > " + pr.candidate_lo +
                                   ": t = " + format_fixed(pr.t_stat, 3) +
                                   ", p_raw = " + p_display(pr.p_raw, ascii_markers) +
                                   ", p_adj = " + p_display(pr.p_adj, ascii_markers);
                const std::string flag = significance_stars(pr.p_adj);
                if (!flag.empty()) line += " " + flag;
                out += line + "\n";
            }
        }
    }
    return out;
}

std::string distribution_summary(const std::vector<ResponseRecord>& records,
                                 const std::vector<QuestionnaireItem>& items) {
    std::map<std::string, std::array<std::size_t, 11>> bins;
    std::map<std::string, long long> totals;
    for (const auto& r : records) {
        if (r.raw_rating < 0 || r.raw_rating > 10) {
            throw OutOfRange("rating " + std::to_string(r.raw_rating) + " outside 0..10");
        }
        auto& b = bins.try_emplace(r.item_id).first->second;
        ++b[static_cast<std::size_t>(r.raw_rating)];
        totals[r.item_id] += r.raw_rating;
    }

    std::string out = "item_id";
    for (int i = 0; i <= 10; ++i) out += ",bin_" + std::to_string(i);
    out += ",n,mean_normalized\n";
    for (const auto& item : items) {
        const auto it = bins.find(item.item_id);
        if (it == bins.end()) continue;
        std::size_t n = 0;
        for (std::size_t c : it->second) n += c;
        std::vector<std::string> fields = {item.item_id};
        for (std::size_t c : it->second) fields.push_back(std::to_string(c));
        fields.push_back(std::to_string(n));
        const double mean = static_cast<double>(totals[item.item_id]) /
                            (10.0 * static_cast<double>(n));
        fields.push_back(format_fixed(mean, 4));
        out += csv_join(fields) + "\n";
    }
    return out;
}

RecommendationReport recommend(Attribute attribute, const std::vector<MarkedScore>& marked,
                               const std::vector<FamilyResult>& families,
                               const RecommendPolicy& policy) {
    struct Entry {
        CandidateAssessment a;
        std::size_t input_order;
    };
    std::vector<Entry> entries;
    std::map<std::string, std::size_t> by_id;
    std::vector<const MarkedScore*> mine;
    for (const auto& m : marked) {
        if (m.attribute != attribute) continue;
        mine.push_back(&m);
        if (!by_id.count(m.candidate_id)) {
            by_id[m.candidate_id] = entries.size();
            Entry e;
            e.a.candidate_id = m.candidate_id;
            e.a.label = m.label;
            e.input_order = entries.size();
            entries.push_back(std::move(e));
        }
    }

    RecommendationReport report;
    report.attribute = attribute;
    report.note = "Decision support only: this ranking is derived mechanically from pairwise "
                  "test outcomes and mean scores and is not a verdict.";
    if (entries.empty()) return report;

    // per criterion: top/bottom scorer and each candidate's win/loss counts
    std::map<std::string, std::pair<std::size_t, std::size_t>> wins_losses_total;
    std::set<std::string> criteria_seen;
    for (const auto& f : families) {
        if (f.attribute != attribute) continue;
        const std::string crit(criterion_name(f.criterion));
        criteria_seen.insert(crit);

        double best = -1.0, worst = 2.0;
        for (const auto* m : mine) {
            if (m->criterion != f.criterion) continue;
            best = std::max(best, m->S);
            worst = std::min(worst, m->S);
        }
        std::map<std::string, std::size_t> wins, losses;
        for (const auto& pr : f.posthoc) {
            if (pr.p_adj < policy.alpha) {
                ++wins[pr.candidate_hi];
                ++losses[pr.candidate_lo];
                report.any_significant = true;
            }
        }
        for (const auto* m : mine) {
            if (m->criterion != f.criterion) continue;
            auto& e = entries[by_id[m->candidate_id]];
            const std::size_t w = wins.count(m->candidate_id) ? wins[m->candidate_id] : 0;
            const std::size_t l = losses.count(m->candidate_id) ? losses[m->candidate_id] : 0;
            if (m->S == best && w > 0) ++e.a.criteria_best;
            if (m->S == worst && l > 0) ++e.a.criteria_worst;
            if (m->marker.kind == MarkerKind::DoubleStar || m->marker.kind == MarkerKind::Star) {
                e.a.strengths.push_back(crit + ": significantly better than all");
            } else if (w > 0) {
                e.a.strengths.push_back(crit + ": better in " + std::to_string(w) +
                                        " pairwise test" + (w == 1 ? "" : "s"));
            }
            if (l > 0) {
                e.a.weaknesses.push_back(crit + ": worse in " + std::to_string(l) +
                                         " pairwise test" + (l == 1 ? "" : "s"));
            }
        }
    }

    for (auto& e : entries) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto* m : mine) {
            if (m->candidate_id == e.a.candidate_id) {
                sum += m->S;
                ++n;
            }
        }
        e.a.mean_score = n ? sum / static_cast<double>(n) : 0.0;
    }
    if (!report.any_significant) {
        report.note += " No significant pairwise differences were found; the order falls back "
                       "to mean scores.";
    }

    std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.a.criteria_best != y.a.criteria_best) return x.a.criteria_best > y.a.criteria_best;
        if (x.a.criteria_worst != y.a.criteria_worst) {
            return x.a.criteria_worst < y.a.criteria_worst;
        }
        if (x.a.mean_score != y.a.mean_score) return x.a.mean_score > y.a.mean_score;
        return false; // stable: keep input order
    });
    int rank = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const bool tied_with_previous =
            i > 0 && entries[i].a.criteria_best == entries[i - 1].a.criteria_best &&
            entries[i].a.criteria_worst == entries[i - 1].a.criteria_worst &&
            entries[i].a.mean_score == entries[i - 1].a.mean_score;
        if (!tied_with_previous) rank = static_cast<int>(i) + 1;
        entries[i].a.rank = rank;
        report.ranking.push_back(std::move(entries[i].a));
    }
    return report;
}

std::string emit_recommendations(const std::vector<RecommendationReport>& reports,
                                 ReportFormat format, bool ascii_markers) {
    (void)ascii_markers;
    if (format == ReportFormat::Csv) {
        std::string out = "attribute,rank,candidate_id,label,criteria_best,criteria_worst,"
                          "mean_score,strengths,weaknesses\n";
        for (const auto& rep : reports) {
            for (const auto& a : rep.ranking) {
                std::string strengths, weaknesses;
                for (std::size_t i = 0; i < a.strengths.size(); ++i) {
                    if (i) strengths += "; ";
                    strengths += a.strengths[i];
                }
                for (std::size_t i = 0; i < a.weaknesses.size(); ++i) {
                    if (i) weaknesses += "; ";
                    weaknesses += a.weaknesses[i];
                }
                out += csv_join({std::string(attribute_name(rep.attribute)),
                                 std::to_string(a.rank), a.candidate_id, a.label,
                                 std::to_string(a.criteria_best),
                                 std::to_string(a.criteria_worst),
                                 format_fixed(a.mean_score, 3), strengths, weaknesses}) +
                       "\n";
            }
        }
        return out;
    }

    if (format == ReportFormat::Json) {
        ojson doc = ojson::array();
        for (const auto& rep : reports) {
            ojson obj;
            obj["attribute"] = std::string(attribute_name(rep.attribute));
            obj["any_significant"] = rep.any_significant;
            obj["note"] = rep.note;
            ojson ranking = ojson::array();
            for (const auto& a : rep.ranking) {
                ojson aj;
                aj["rank"] = a.rank;
                aj["candidate_id"] = a.candidate_id;
                aj["label"] = a.label;
                aj["criteria_best"] = a.criteria_best;
                aj["criteria_worst"] = a.criteria_worst;
                aj["mean_score"] = format_fixed(a.mean_score, 3);
                aj["strengths"] = a.strengths;
                aj["weaknesses"] = a.weaknesses;
                ranking.push_back(std::move(aj));
            }
            obj["ranking"] = std::move(ranking);
            doc.push_back(std::move(obj));
        }
        return doc.dump(2) + "\n";
    }

    std::string out;
    for (const auto& rep : reports) {
        out += std::string(attribute_name(rep.attribute)) + "\n";
        out += "  " + rep.note + "\n";
        for (const auto& a : rep.ranking) {
            out += "  " + std::to_string(a.rank) + ". " + a.candidate_id;
            if (!a.label.empty()) out += " (" + a.label + ")";
            out += " - criteria won: " + std::to_string(a.criteria_best) +
                   ", significantly worst: " + std::to_string(a.criteria_worst) +
                   ", mean score: " + format_fixed(a.mean_score, 3) + "\n";
            for (const auto& s : a.strengths) out += "      + " + s + "\n";
            for (const auto& w : a.weaknesses) out += "      - " + w + "\n";
        }
    }
    return out;
}

} // namespace satev
