#include <sstream>

#include <json.hpp>

#include "loclang/checker.hpp"
#include "loclang/harness.hpp"
#include "loclang/syntax.hpp"

namespace loclang::harness {

SoundnessReport soundness_suite(const GenConfig& cfg) {
    SoundnessReport r;
    const regions::ArenaStrategy strategy = regions::ExtensibleArena{};
    for (std::uint32_t i = 0; i < cfg.count; ++i) {
        ++r.generated;
        const Program generated = gen_program(cfg, i);
        syntax::ParseResult parsed = syntax::parse_source(syntax::format_ast(generated), "gen_" + std::to_string(i) + ".loc");
        if (!parsed.ok() || !same_structure(parsed.program, generated)) {
            ++r.roundtrip_failures;
            r.failures.push_back({cfg.seed, i, "round-trip mismatch"});
            continue;
        }
        checker::CheckResult checked = checker::check_program(parsed.program);
        if (checked.accepted()) {
            ++r.accepted;
            interp::ExecResult ex = interp::execute(*checked.typed, strategy);
            if (ex.fault && ex.fault->code == regions::FaultCode::F002) {
                ++r.faults;
                r.failures.push_back({cfg.seed, i, "accepted program faulted: " + interp::render_fault(*ex.fault)});
            } else if (ex.fault && ex.fault->code == regions::FaultCode::F003) {
                ++r.nil_faults;
            }
            continue;
        }
        ++r.rejected;
        // Rejected by the ownership rules but well-typed: run it anyway to see whether it really dangles.
        if (checked.typed) {
            interp::ExecResult ex = interp::execute(*checked.typed, strategy);
            if (ex.fault && ex.fault->code == regions::FaultCode::F002) ++r.unchecked_dangling;
        }
    }
    return r;
}

std::string soundness_text(const SoundnessReport& r) {
    std::ostringstream out;
    out << "generated  " << r.generated << '\n'
        << "accepted   " << r.accepted << '\n'
        << "rejected   " << r.rejected << '\n'
        << "faults     " << r.faults << '\n'
        << "nil_faults " << r.nil_faults << '\n'
        << "roundtrip_failures " << r.roundtrip_failures << '\n'
        << "unchecked_dangling " << r.unchecked_dangling << '\n';
    for (const auto& f : r.failures) out << "FAIL seed=" << f.seed << " index=" << f.index << ": " << f.reason << '\n';
    return out.str();
}

std::string soundness_json(const SoundnessReport& r) {
    nlohmann::json j{{"generated", r.generated},
                     {"accepted", r.accepted},
                     {"rejected", r.rejected},
                     {"faults", r.faults},
                     {"nil_faults", r.nil_faults},
                     {"roundtrip_failures", r.roundtrip_failures},
                     {"unchecked_dangling", r.unchecked_dangling},
                     {"failures", nlohmann::json::array()}};
    for (const auto& f : r.failures) j["failures"].push_back({{"seed", f.seed}, {"index", f.index}, {"reason", f.reason}});
    return j.dump();
}

}  // namespace loclang::harness
