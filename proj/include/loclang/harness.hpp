#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "loclang/ast.hpp"
#include "loclang/diagnostic.hpp"
#include "loclang/interp.hpp"

namespace loclang::harness {

/// Directives read from `//!` comments at the top of a corpus file.
struct Expectation {
    bool accept = true;
    std::optional<DiagCode> code;  // reject cases
    std::vector<std::string> output;
    bool has_output = false;
    std::optional<regions::FaultCode> fault;
    std::string arena = "extensible";
    interp::Mode mode = interp::Mode::Checked;
};

/// Returns the expectation or a reason the case is malformed.
struct DirectiveParse {
    std::optional<Expectation> expectation;
    std::string error;
};
DirectiveParse parse_directives(std::string_view source);

struct CaseResult {
    enum class Status { Pass, Fail, Malformed };
    std::string name;
    Status status = Status::Pass;
    std::string detail;
};

std::string_view to_string(CaseResult::Status s);

struct CorpusReport {
    std::vector<CaseResult> cases;
    std::size_t count(CaseResult::Status s) const;
    bool ok() const;
};

/// Runs one case. `category` is the corpus subdirectory (accept, reject, fault) or empty.
CaseResult run_case(const std::string& name, std::string_view source, std::string_view category = {});

/// Runs every `*.loc` under dir, ordered by relative path.
CorpusReport run_corpus(const std::filesystem::path& dir);

std::string report_text(const CorpusReport& r);
std::string report_json(const CorpusReport& r);

struct GenConfig {
    std::uint64_t seed = 0;
    std::uint32_t count = 1;
    std::uint32_t max_depth = 3;
    std::uint32_t max_stmts = 12;
    std::uint32_t max_records = 2;
};

/// Deterministic in (cfg.seed, index); other count values do not matter.
Program gen_program(const GenConfig& cfg, std::uint32_t index);

struct SoundnessFailure {
    std::uint64_t seed = 0;
    std::uint32_t index = 0;
    std::string reason;
};

struct SoundnessReport {
    std::uint32_t generated = 0;
    std::uint32_t accepted = 0;
    std::uint32_t rejected = 0;
    std::uint32_t faults = 0;              // F002 among accepted programs
    std::uint32_t nil_faults = 0;          // F003 among accepted programs (allowed)
    std::uint32_t roundtrip_failures = 0;
    std::uint32_t unchecked_dangling = 0;  // rejected programs that fault F002 when run unchecked
    std::vector<SoundnessFailure> failures;

    bool ok() const { return failures.empty(); }
    double acceptance_rate() const { return generated ? static_cast<double>(accepted) / generated : 0.0; }
};

SoundnessReport soundness_suite(const GenConfig& cfg);

std::string soundness_text(const SoundnessReport& r);
std::string soundness_json(const SoundnessReport& r);

}  // namespace loclang::harness
