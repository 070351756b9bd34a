#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "satev/errors.hpp"
#include "satev/ingest.hpp"
#include "satev/pipeline.hpp"
#include "satev/questionnaire.hpp"
#include "satev/report.hpp"

namespace {

namespace fs = std::filesystem;
using namespace satev;

// exit codes: 0 success, 1 validation, 2 I/O, 3 numerical/internal
template <typename F>
int run_guarded(F&& body) {
    try {
        return body();
    } catch (const IoError& e) {
        std::cerr << "satev: error: io: " << e.what() << "\n";
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "satev: error: numerical: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "satev: error: validation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "satev: error: internal: " << e.what() << "\n";
        return 3;
    }
}

struct GenerateArgs {
    std::string candidates_file;
    std::string language = "local";
    std::string out_file;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
};

struct AnalyzeArgs {
    std::string candidates_file;
    std::string responses_file;
    std::string participants_file;
    std::string out_dir = "reports";
    std::string language = "local";
    double alpha_gate = 0.05;
    double alpha_strong = 0.01;
    bool weighted = false;
    std::string policy = "complete_case";
    std::string format = "text";
    bool ascii_markers = false;
};

struct ValidateArgs {
    std::string candidates_file;
    std::string responses_file;
    std::string participants_file;
    std::string language = "local";
};

int cmd_generate(const GenerateArgs& args) {
    const auto candidates = parse_candidates_csv(read_file(args.candidates_file));
    const auto items = generate_items(candidates, args.language);

    DocumentFormat format = DocumentFormat::CSV;
    if (args.format == "json") format = DocumentFormat::JSON;
    else if (args.format != "csv") throw ValidationError("--format must be csv or json");

    std::string out_file = args.out_file;
    if (out_file.empty()) {
        out_file = format == DocumentFormat::JSON ? "questionnaire.json" : "questionnaire.csv";
    }
    write_file(out_file, export_questionnaire(items, format, args.seed));
    std::cout << items.size() << " items\n";
    std::cout << "wrote " << out_file << "\n";
    return 0;
}

ParsedResponses load_responses(const std::string& path,
                               const std::vector<QuestionnaireItem>& items) {
    return parse_responses(read_file(path), detect_format(path), items);
}

std::vector<ParticipantProfile> load_participants(const std::string& path) {
    return parse_participants(read_file(path), detect_format(path));
}

int cmd_analyze(const AnalyzeArgs& args) {
    RunConfig config;
    config.alpha_posthoc_gate = args.alpha_gate;
    config.alpha_strong = args.alpha_strong;
    config.weighted = args.weighted;
    config.completeness_policy = parse_completeness_policy(args.policy);
    config.output_format = parse_report_format(args.format);
    config.ascii_markers = args.ascii_markers;
    config.language_name = args.language;
    validate_config(config);

    const auto candidates = parse_candidates_csv(read_file(args.candidates_file));
    const auto items = generate_items(candidates, config.language_name);
    const auto participants = load_participants(args.participants_file);
    const auto parsed = load_responses(args.responses_file, items);
    if (!parsed.errors.empty()) {
        std::cerr << "satev: error: validation: responses contain "
                  << parsed.errors.size() << " rejected row"
                  << (parsed.errors.size() == 1 ? "" : "s") << " (first: "
                  << parsed.errors.front().message << ")\n";
        for (const auto& e : parsed.errors) {
            std::cerr << "  [" << ingest_error_kind_name(e.kind) << "] " << e.message << "\n";
        }
        return 1;
    }

    const auto analysis = run_analysis(candidates, parsed.records, participants, config);
    const auto written = write_reports(analysis, parsed.records, args.out_dir, config);

    for (const auto& line : analysis.attribute_summaries) std::cout << line << "\n";
    std::size_t flagged = 0;
    for (const auto& pc : analysis.completeness.participants) flagged += pc.flagged ? 1 : 0;
    if (flagged > 0) {
        std::cout << flagged << " participant" << (flagged == 1 ? "" : "s")
                  << " below the completeness threshold\n";
    }
    std::cout << "wrote " << written.size() << " files to " << args.out_dir << "\n";
    return 0;
}

int cmd_validate(const ValidateArgs& args) {
    const auto candidates = parse_candidates_csv(read_file(args.candidates_file));
    const auto items = generate_items(candidates, args.language);
    std::size_t main_candidates = 0;
    for (const auto& c : candidates) {
        if (axis_kind(c.attribute) == AxisKind::Main) ++main_candidates;
    }
    std::cout << candidates.size() << " candidates (" << main_candidates << " main-axis, "
              << candidates.size() - main_candidates << " derived-axis), " << items.size()
              << " items\n";

    std::vector<ParticipantProfile> participants;
    if (!args.participants_file.empty()) {
        participants = load_participants(args.participants_file);
        std::cout << participants.size() << " participants\n";
    }

    std::size_t problem_count = 0;
    if (!args.responses_file.empty()) {
        const auto parsed = load_responses(args.responses_file, items);
        std::cout << parsed.records.size() << " responses accepted, " << parsed.errors.size()
                  << " rejected\n";
        for (const auto& e : parsed.errors) {
            std::cout << "  [" << ingest_error_kind_name(e.kind) << "] " << e.message << "\n";
        }
        problem_count += parsed.errors.size();

        if (!args.participants_file.empty()) {
            std::set<std::string> listed;
            for (const auto& p : participants) listed.insert(p.participant_id);
            std::set<std::string> unlisted;
            for (const auto& r : parsed.records) {
                if (!listed.count(r.participant_id)) unlisted.insert(r.participant_id);
            }
            for (const auto& pid : unlisted) {
                std::cout << "  [unlisted_participant] responses from '" << pid
                          << "' without a profile\n";
            }
            problem_count += unlisted.size();

            const auto completeness = completeness_report(parsed.records, items, participants);
            std::size_t flagged = 0;
            for (const auto& pc : completeness.participants) flagged += pc.flagged ? 1 : 0;
            std::cout << flagged << " participant" << (flagged == 1 ? "" : "s")
                      << " with incomplete responses\n";
        }
    }
    if (problem_count > 0) {
        std::cerr << "satev: error: validation: " << problem_count << " problem"
                  << (problem_count == 1 ? "" : "s") << " found\n";
        return 1;
    }
    std::cout << "ok\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"questionnaire generation and statistical evaluation for translated "
                 "soundscape attributes"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a config file; flags win");

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "build a questionnaire from candidates");
    generate->add_option("--candidates", gen.candidates_file, "candidate translations CSV")
        ->required();
    generate->add_option("--language", gen.language, "local language name used in prompts");
    generate->add_option("--out", gen.out_file, "output file (default questionnaire.<ext>)");
    generate->add_option("--format", gen.format, "csv or json")->default_str("csv");
    generate->add_option("--seed", gen.seed, "deterministic item shuffle seed");

    AnalyzeArgs ana;
    auto* analyze = app.add_subcommand("analyze", "score responses and run the test pipeline");
    analyze->add_option("--candidates", ana.candidates_file, "candidate translations CSV")
        ->required();
    analyze->add_option("--responses", ana.responses_file, "responses CSV or JSON")->required();
    analyze->add_option("--participants", ana.participants_file, "participant profiles CSV or JSON")
        ->required();
    analyze->add_option("--out-dir", ana.out_dir, "report output directory");
    analyze->add_option("--language", ana.language, "local language name used in prompts");
    analyze->add_option("--alpha-gate", ana.alpha_gate,
                        "omnibus significance gate and weak marker level");
    analyze->add_option("--alpha-strong", ana.alpha_strong, "strong marker level");
    analyze->add_flag("--weighted", ana.weighted, "weight contributions by ILR rating sums");
    analyze->add_option("--policy", ana.policy, "complete_case or pairwise");
    analyze->add_option("--format", ana.format, "text, csv, or json");
    analyze->add_flag("--ascii-markers", ana.ascii_markers, "ASCII significance markers");

    ValidateArgs val;
    auto* validate = app.add_subcommand("validate", "dry-run input checks, no outputs");
    validate->add_option("--candidates", val.candidates_file, "candidate translations CSV")
        ->required();
    validate->add_option("--responses", val.responses_file, "responses CSV or JSON");
    validate->add_option("--participants", val.participants_file,
                         "participant profiles CSV or JSON");
    validate->add_option("--language", val.language, "local language name used in prompts");

    CLI11_PARSE(app, argc, argv);

    if (generate->parsed()) return run_guarded([&] { return cmd_generate(gen); });
    if (analyze->parsed()) return run_guarded([&] { return cmd_analyze(ana); });
    return run_guarded([&] { return cmd_validate(val); });
}
