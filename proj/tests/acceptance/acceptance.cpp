// Runs each acceptance criterion and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "loclang/cli.hpp"
#include "loclang/harness.hpp"
#include "loclang/syntax.hpp"

using namespace loclang;

namespace {

const std::string kCorpus = LOCLANG_CORPUS_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string transcript;  // every byte the criterion observed, for the determinism rerun
};

struct Invocation {
    int code;
    std::string out, err;
};

Invocation locc(Outcome& o, std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    o.transcript += "$";
    for (const auto& a : args) o.transcript += " " + a;
    o.transcript += "\n[" + std::to_string(code) + "]\n" + out.str() + err.str();
    return {code, out.str(), err.str()};
}

void require(Outcome& o, bool cond, const std::string& what) {
    if (!cond && o.pass) {
        o.pass = false;
        o.detail = what;
    }
}

std::string path(const std::string& rel) { return kCorpus + "/" + rel; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

// Locates `needle` on the line that contains `context` and returns "file:L:C" for it.
std::string locate(const std::string& rel, const std::string& context, const std::string& needle) {
    std::ifstream in(path(rel));
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) {
        if (line.find(context) != std::string::npos) {
            return path(rel) + ":" + std::to_string(n) + ":" + std::to_string(line.find(needle) + 1);
        }
    }
    return "?";
}

template <class F>
double timed_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Outcome reference_snippets() {
    Outcome o;
    const double ms = timed_ms([&] {
        for (const char* f : {"accept/shared_reads.loc", "accept/unique_write.loc", "accept/local_aliases.loc",
                              "accept/three_disciplines.loc"}) {
            auto r = locc(o, {"check", path(f)});
            require(o, r.code == 0 && r.err.empty(), std::string(f) + " not accepted");
        }
        auto e300 = locc(o, {"check", path("reject/restored_shared_write.loc")});
        require(o, e300.code == 1 && first_line(e300.err).rfind("error[E300]", 0) == 0 &&
                       first_line(e300.err).find("a is not mutable, cannot write") != std::string::npos,
                "restored *a = 45: " + first_line(e300.err));
        auto e301 = locc(o, {"check", path("reject/double_mut.loc")});
        require(o, e301.code == 1 && first_line(e301.err).rfind("error[E301]", 0) == 0 &&
                       first_line(e301.err).find("as mutable more than once") != std::string::npos,
                "restored let d = &mut v: " + first_line(e301.err));
        auto run = locc(o, {"run", path("accept/three_disciplines.loc")});
        require(o, run.code == 0 && run.out == "12\n12\n45\n76\n76\n", "three_disciplines printed " + run.out);
    });
    require(o, ms < 100.0, "took " + std::to_string(ms) + " ms");
    if (o.pass) o.detail = std::to_string(ms) + " ms";
    return o;
}

Outcome dll() {
    Outcome o;
    const double ms = timed_ms([&] {
        auto mut = locc(o, {"check", path("reject/dll_mut.loc")});
        require(o, mut.code == 1 && first_line(mut.err).rfind("error[E301]", 0) == 0, "dll_mut: " + first_line(mut.err));
        auto loc = locc(o, {"check", path("accept/dll_loc.loc")});
        require(o, loc.code == 0, "dll_loc rejected: " + first_line(loc.err));
        auto run = locc(o, {"run", path("accept/dll_loc.loc")});
        require(o, run.code == 0 && run.out == "1\n2\n3\n3\n2\n1\n", "dll_loc printed " + run.out);
    });
    require(o, ms < 100.0, "took " + std::to_string(ms) + " ms");
    if (o.pass) o.detail = std::to_string(ms) + " ms";
    return o;
}

Outcome bulk_free() {
    Outcome o;
    auto text = locc(o, {"run", path("accept/dll_loc.loc"), "--stats"});
    auto json = locc(o, {"run", path("accept/dll_loc.loc"), "--stats", "--json"});
    require(o, text.code == 0 && json.code == 0, "run failed");
    if (!o.pass) return o;
    const auto doc = nlohmann::json::parse(json.out.substr(json.out.rfind('\n', json.out.size() - 2) + 1));
    const auto opened = doc["regions_opened"].get<std::uint64_t>();
    require(o, doc["regions_freed"].get<std::uint64_t>() == opened, "regions_freed != regions_opened");
    require(o, doc["live_bytes"].get<std::uint64_t>() == 0, "live_bytes != 0");
    std::set<std::pair<std::uint64_t, std::uint64_t>> regions;
    for (const auto& ev : doc["free_events"]) regions.emplace(ev["depth"].get<std::uint64_t>(), ev["generation"].get<std::uint64_t>());
    require(o, doc["free_events"].size() == opened && regions.size() == opened, "free events do not match regions one to one");
    // the text table agrees: one `free` line per region and nothing else that frees
    std::istringstream lines(text.out);
    std::uint64_t free_lines = 0;
    for (std::string l; std::getline(lines, l);) free_lines += l.rfind("free ", 0) == 0;
    require(o, free_lines == opened, "text stats show " + std::to_string(free_lines) + " free lines");
    if (o.pass) o.detail = std::to_string(opened) + " regions, " + std::to_string(free_lines) + " free events";
    return o;
}

Outcome escape_and_threads() {
    Outcome o;
    for (int rep = 0; rep < 2; ++rep) {
        auto esc = locc(o, {"check", path("reject/escape.loc")});
        const std::string esc_at = " --> " + locate("reject/escape.loc", "r = &loc b;", "&loc b");
        require(o, first_line(esc.err).rfind("error[E311]", 0) == 0 && esc.err.find(esc_at + "\n") != std::string::npos,
                "escape.loc: " + esc.err);
        auto sp = locc(o, {"check", path("reject/spawn_loc.loc")});
        const std::string sp_at = " --> " + locate("reject/spawn_loc.loc", "print v;", "v;");
        require(o, first_line(sp.err).rfind("error[E313]", 0) == 0 && sp.err.find(sp_at + "\n") != std::string::npos,
                "spawn_loc.loc: " + sp.err);
    }
    // both repetitions are in the transcript; they must be identical halves
    const std::string& t = o.transcript;
    require(o, t.substr(0, t.size() / 2) == t.substr(t.size() / 2), "diagnostics differ between runs");
    return o;
}

Outcome arenas() {
    Outcome o;
    auto f63 = locc(o, {"run", path("accept/dll_loc.loc"), "--arena", "fixed:63"});
    require(o, f63.code == 2 && f63.err.rfind("fault[F001]", 0) == 0, "fixed:63 gave exit " + std::to_string(f63.code) + " " + f63.err);
    auto f4096 = locc(o, {"run", path("accept/dll_loc.loc"), "--arena", "fixed:4096"});
    auto ext = locc(o, {"run", path("accept/dll_loc.loc"), "--arena", "extensible"});
    require(o, f4096.code == 0 && ext.code == 0 && f4096.out == ext.out, "fixed:4096 and extensible outputs differ");
    return o;
}

Outcome soundness() {
    Outcome o;
    Invocation r{};
    const double ms = timed_ms([&] { r = locc(o, {"fuzz", "--seed", "42", "--count", "1000", "--json"}); });
    const auto doc = nlohmann::json::parse(r.out);
    const double rate = doc["accepted"].get<double>() / doc["generated"].get<double>();
    require(o, r.code == 0, "fuzz exit " + std::to_string(r.code));
    require(o, doc["faults"] == 0, "F002 among accepted programs: " + doc["faults"].dump());
    require(o, rate >= 0.10 && rate <= 0.90, "acceptance rate " + std::to_string(rate));
    require(o, ms < 60000.0, "took " + std::to_string(ms) + " ms");
    if (o.pass) {
        o.detail = "accepted " + doc["accepted"].dump() + "/1000, 0 F002, unchecked rejects dangling " +
                   doc["unchecked_dangling"].dump() + ", " + std::to_string(ms) + " ms";
    }
    return o;
}

Outcome round_trip() {
    Outcome o;
    harness::GenConfig cfg;
    cfg.seed = 42;
    cfg.count = 1000;
    for (std::uint32_t i = 0; i < cfg.count && o.pass; ++i) {
        const Program p = harness::gen_program(cfg, i);
        auto q = syntax::parse(syntax::lex(syntax::format_ast(p)).tokens);
        require(o, q.ok() && same_structure(p, q.program), "program " + std::to_string(i) + " does not round-trip");
    }
    if (o.pass) o.detail = "1000 programs";
    return o;
}

}  // namespace

int main() {
    using Criterion = std::pair<const char*, std::function<Outcome()>>;
    const std::vector<Criterion> first_six = {
        {"reference snippets accepted; restored lines give E300 and E301; under 100 ms", reference_snippets},
        {"dll_mut.loc rejected E301; dll_loc.loc prints 1,2,3,3,2,1; under 100 ms", dll},
        {"bulk deallocation: regions_freed = regions_opened, live_bytes = 0, one free per region", bulk_free},
        {"escape.loc E311 and spawn_loc.loc E313, span-accurate and deterministic", escape_and_threads},
        {"fixed:63 exits 2 with F001; fixed:4096 and extensible outputs identical", arenas},
        {"fuzz seed 42 count 1000: 0 F002, acceptance within 10-90%, under 60 s", soundness},
    };

    int failed = 0;
    std::string transcript;
    auto report = [&](int n, const char* name, const Outcome& o) {
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << n << ": " << name;
        if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
        std::cout << std::endl;
        failed += !o.pass;
    };

    for (std::size_t i = 0; i < first_six.size(); ++i) {
        Outcome o = first_six[i].second();
        transcript += o.transcript;
        report(static_cast<int>(i + 1), first_six[i].first, o);
    }
    report(7, "parse . lex . format_ast is the identity on 1000 generated programs", round_trip());

    Outcome again;
    std::string rerun;
    for (const auto& c : first_six) rerun += c.second().transcript;
    require(again, rerun == transcript, "criteria 1-6 produced different bytes on the second run");
    if (again.pass) again.detail = std::to_string(transcript.size()) + " bytes compared";
    report(8, "determinism: criteria 1-6 rerun byte-identical", again);

    return failed == 0 ? 0 : 1;
}
