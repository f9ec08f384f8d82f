#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "loclang/checker.hpp"
#include "loclang/harness.hpp"
#include "loclang/syntax.hpp"

namespace loclang::harness {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<regions::FaultCode> parse_fault(std::string_view s) {
    for (auto c : {regions::FaultCode::F001, regions::FaultCode::F002, regions::FaultCode::F003}) {
        if (regions::to_string(c) == s) return c;
    }
    return std::nullopt;
}

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) out += (i ? "," : "") + lines[i];
    return out;
}

}  // namespace

DirectiveParse parse_directives(std::string_view source) {
    DirectiveParse out;
    Expectation e;
    int expects = 0;
    std::istringstream in{std::string(source)};
    std::string raw;
    while (std::getline(in, raw)) {
        std::string_view line = trim(raw);
        if (line.substr(0, 3) != "//!") continue;
        line = trim(line.substr(3));
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            out.error = "bad directive '" + std::string(line) + "'";
            return out;
        }
        const std::string_view key = trim(line.substr(0, colon));
        const std::string_view arg = trim(line.substr(colon + 1));
        if (key == "expect") {
            ++expects;
            if (arg == "accept") {
                e.accept = true;
            } else if (arg.substr(0, 6) == "reject") {
                e.accept = false;
                DiagCode code;
                if (!parse_diag_code(trim(arg.substr(6)), code)) {
                    out.error = "reject directive needs a diagnostic code";
                    return out;
                }
                e.code = code;
            } else {
                out.error = "bad expect directive '" + std::string(arg) + "'";
                return out;
            }
        } else if (key == "output") {
            e.has_output = true;
            e.output.emplace_back(arg);
        } else if (key == "fault") {
            e.fault = parse_fault(arg);
            if (!e.fault) {
                out.error = "unknown fault code '" + std::string(arg) + "'";
                return out;
            }
        } else if (key == "arena") {
            e.arena = std::string(arg);
        } else if (key == "mode") {
            if (arg == "unchecked") e.mode = interp::Mode::Unchecked;
            else if (arg == "checked") e.mode = interp::Mode::Checked;
            else {
                out.error = "bad mode '" + std::string(arg) + "'";
                return out;
            }
        } else {
            out.error = "unknown directive '" + std::string(key) + "'";
            return out;
        }
    }
    if (expects != 1) {
        out.error = expects == 0 ? "missing expect directive" : "more than one expect directive";
        return out;
    }
    if (!e.accept && (e.fault || e.has_output)) {
        out.error = "reject case cannot carry output or fault directives";
        return out;
    }
    out.expectation = std::move(e);
    return out;
}

std::string_view to_string(CaseResult::Status s) {
    switch (s) {
        case CaseResult::Status::Pass: return "pass";
        case CaseResult::Status::Fail: return "fail";
        case CaseResult::Status::Malformed: return "malformed";
    }
    return "?";
}

std::size_t CorpusReport::count(CaseResult::Status s) const {
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [&](const CaseResult& c) { return c.status == s; }));
}

bool CorpusReport::ok() const { return count(CaseResult::Status::Pass) == cases.size(); }

CaseResult run_case(const std::string& name, std::string_view source, std::string_view category) {
    CaseResult r;
    r.name = name;
    DirectiveParse d = parse_directives(source);
    if (!d.expectation) {
        r.status = CaseResult::Status::Malformed;
        r.detail = d.error;
        return r;
    }
    const Expectation& e = *d.expectation;
    const bool category_ok = category.empty() || (category == "accept" && e.accept && !e.fault) ||
                             (category == "reject" && !e.accept) || (category == "fault" && e.accept && e.fault);
    if (!category_ok) {
        r.status = CaseResult::Status::Malformed;
        r.detail = "directives do not match directory '" + std::string(category) + "'";
        return r;
    }
    regions::ArenaStrategy strategy;
    try {
        strategy = regions::parse_arena_spec(e.arena);
    } catch (const std::invalid_argument& ex) {
        r.status = CaseResult::Status::Malformed;
        r.detail = ex.what();
        return r;
    }

    auto fail = [&](std::string why) {
        r.status = CaseResult::Status::Fail;
        r.detail = std::move(why);
        return r;
    };

    syntax::ParseResult parsed = syntax::parse_source(source, name);
    std::vector<Diagnostic> diags = parsed.diagnostics;
    std::optional<interp::RunResult> run;
    if (parsed.ok()) {
        run = interp::run_program(parsed.program, strategy, e.mode);
        diags = run->diagnostics;
    }

    if (!e.accept) {
        const bool found = std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& x) { return x.code == *e.code; });
        if (found) return r;
        if (diags.empty()) return fail("expected " + std::string(to_string(*e.code)) + ", program was accepted");
        return fail("expected " + std::string(to_string(*e.code)) + ", got " + std::string(to_string(diags.front().code)));
    }
    if (!diags.empty()) {
        const std::string first = render_text(diags.front());
        return fail("expected accept, got " + first.substr(0, first.find('\n')));
    }
    const interp::ExecResult& ex = *run->exec;
    if (e.fault != (ex.fault ? std::optional(ex.fault->code) : std::nullopt)) {
        return fail("expected " + (e.fault ? std::string(regions::to_string(*e.fault)) : std::string("no fault")) + ", got " +
                    (ex.fault ? std::string(regions::to_string(ex.fault->code)) : std::string("no fault")));
    }
    if (e.has_output && ex.output != e.output) return fail("output [" + join(ex.output) + "], expected [" + join(e.output) + "]");
    return r;
}

CorpusReport run_corpus(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".loc") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(), [&](const fs::path& a, const fs::path& b) {
        return fs::relative(a, dir).generic_string() < fs::relative(b, dir).generic_string();
    });
    CorpusReport report;
    for (const auto& f : files) {
        const fs::path rel = fs::relative(f, dir);
        std::ifstream in(f, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string category = rel.has_parent_path() ? rel.begin()->string() : std::string();
        const bool known = category == "accept" || category == "reject" || category == "fault";
        report.cases.push_back(run_case(rel.generic_string(), buf.str(), known ? category : std::string()));
    }
    return report;
}

std::string report_text(const CorpusReport& r) {
    std::ostringstream out;
    for (const auto& c : r.cases) {
        out << to_string(c.status) << "  " << c.name;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << '\n';
    }
    out << r.cases.size() << " cases, " << r.count(CaseResult::Status::Pass) << " passed, "
        << r.count(CaseResult::Status::Fail) << " failed, " << r.count(CaseResult::Status::Malformed) << " malformed\n";
    return out.str();
}

std::string report_json(const CorpusReport& r) {
    nlohmann::json j;
    j["cases"] = nlohmann::json::array();
    for (const auto& c : r.cases) {
        j["cases"].push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    }
    j["total"] = r.cases.size();
    j["passed"] = r.count(CaseResult::Status::Pass);
    j["failed"] = r.count(CaseResult::Status::Fail);
    j["malformed"] = r.count(CaseResult::Status::Malformed);
    return j.dump();
}

}  // namespace loclang::harness
