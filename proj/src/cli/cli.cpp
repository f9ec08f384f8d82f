#include "loclang/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "loclang/checker.hpp"
#include "loclang/harness.hpp"
#include "loclang/interp.hpp"
#include "loclang/syntax.hpp"

namespace loclang::cli {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_diagnostics(const std::vector<Diagnostic>& diags, bool json, std::ostream& out, std::ostream& err) {
    for (const auto& d : diags) {
        if (json) out << render_json(d) << '\n';
        else err << render_text(d);
    }
}

int cmd_check(const std::string& file, bool json, std::ostream& out, std::ostream& err) {
    auto source = read_file(file);
    if (!source) {
        err << "error: cannot read " << file << '\n';
        return kUsage;
    }
    syntax::ParseResult parsed = syntax::parse_source(*source, file);
    std::vector<Diagnostic> diags = parsed.diagnostics;
    if (parsed.ok()) diags = checker::check_program(parsed.program).diagnostics;
    print_diagnostics(diags, json, out, err);
    return diags.empty() ? kOk : kRejected;
}

int cmd_run(const std::string& file, const std::string& arena, bool stats, bool unchecked, bool json, std::ostream& out,
            std::ostream& err) {
    regions::ArenaStrategy strategy;
    try {
        strategy = regions::parse_arena_spec(arena);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    auto source = read_file(file);
    if (!source) {
        err << "error: cannot read " << file << '\n';
        return kUsage;
    }
    syntax::ParseResult parsed = syntax::parse_source(*source, file);
    if (!parsed.ok()) {
        print_diagnostics(parsed.diagnostics, json, out, err);
        return kRejected;
    }
    interp::RunResult run =
        interp::run_program(parsed.program, strategy, unchecked ? interp::Mode::Unchecked : interp::Mode::Checked);
    if (!run.exec) {
        print_diagnostics(run.diagnostics, json, out, err);
        return kRejected;
    }
    for (const auto& line : run.exec->output) out << line << '\n';
    if (run.exec->fault) err << interp::render_fault(*run.exec->fault) << '\n';
    if (stats) out << (json ? regions::stats_json(run.exec->stats) + "\n" : regions::stats_text(run.exec->stats));
    return run.exec->fault ? kFault : kOk;
}

int cmd_corpus(const std::string& dir, bool json, std::ostream& out, std::ostream& err) {
    if (!std::filesystem::is_directory(dir)) {
        err << "error: not a directory: " << dir << '\n';
        return kUsage;
    }
    harness::CorpusReport report = harness::run_corpus(dir);
    out << (json ? harness::report_json(report) + "\n" : harness::report_text(report));
    return report.ok() ? kOk : kRejected;
}

int cmd_fuzz(std::uint64_t seed, std::uint32_t count, bool json, std::ostream& out) {
    harness::GenConfig cfg;
    cfg.seed = seed;
    cfg.count = count;
    harness::SoundnessReport report = harness::soundness_suite(cfg);
    out << (json ? harness::soundness_json(report) + "\n" : harness::soundness_text(report));
    return report.ok() ? kOk : kFault;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"LocLang checker and interpreter", "locc"};
    app.require_subcommand(1);

    std::string file, dir;
    bool json = false, stats = false, unchecked = false;
    const char* env_arena = std::getenv("LOC_ARENA");
    std::string arena = env_arena && *env_arena ? env_arena : "extensible";
    std::uint64_t seed = 0;
    std::uint32_t count = 100;

    auto* check = app.add_subcommand("check", "Check a program");
    check->add_option("file", file, "Source file")->required();
    check->add_flag("--json", json, "JSON diagnostics, one per line");

    auto* run = app.add_subcommand("run", "Check and run a program");
    run->add_option("file", file, "Source file")->required();
    run->add_option("--arena", arena, "fixed:<bytes> or extensible[:<initial>:<factor>]");
    run->add_flag("--stats", stats, "Print region statistics");
    run->add_flag("--unchecked", unchecked, "Skip the ownership checks");
    run->add_flag("--json", json, "JSON diagnostics and stats");

    auto* corpus = app.add_subcommand("corpus", "Run a conformance corpus");
    corpus->add_option("dir", dir, "Corpus directory")->required();
    corpus->add_flag("--json", json, "JSON report");

    auto* fuzz = app.add_subcommand("fuzz", "Run the soundness suite on generated programs");
    fuzz->add_option("--seed", seed, "Generator seed")->required();
    fuzz->add_option("--count", count, "Number of programs")->required();
    fuzz->add_flag("--json", json, "JSON report");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run 'locc --help' for usage\n";
        return kUsage;
    }

    if (check->parsed()) return cmd_check(file, json, out, err);
    if (run->parsed()) return cmd_run(file, arena, stats, unchecked, json, out, err);
    if (corpus->parsed()) return cmd_corpus(dir, json, out, err);
    return cmd_fuzz(seed, count, json, out);
}

}  // namespace loclang::cli
