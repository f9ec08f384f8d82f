#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "loclang/cli.hpp"
#include "test_util.hpp"

using namespace loclang;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(const std::string& rel) { return std::string(LOCLANG_CORPUS_DIR) + "/" + rel; }

}  // namespace

TEST(Cli, CheckAccepted) {
    auto r = invoke({"check", corpus("accept/three_disciplines.loc")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "");
    EXPECT_EQ(r.err, "");
}

TEST(Cli, CheckRejected) {
    auto r = invoke({"check", corpus("reject/double_mut.loc")});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.err.rfind("error[E301]", 0), 0u);
    int error_lines = 0;
    std::istringstream lines(r.err);
    for (std::string l; std::getline(lines, l);) error_lines += l.rfind("error[", 0) == 0;
    EXPECT_EQ(error_lines, 1);
}

TEST(Cli, CheckJson) {
    auto r = invoke({"check", corpus("reject/double_mut.loc"), "--json"});
    EXPECT_EQ(r.code, 1);
    std::istringstream lines(r.out);
    int n = 0;
    for (std::string l; std::getline(lines, l); ++n) {
        auto j = nlohmann::json::parse(l);
        EXPECT_EQ(j["code"], "E301");
    }
    EXPECT_EQ(n, 1);
}

TEST(Cli, RunAndFault) {
    auto ok = invoke({"run", corpus("accept/dll_loc.loc")});
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out, "1\n2\n3\n3\n2\n1\n");
    auto f = invoke({"run", corpus("accept/dll_loc.loc"), "--arena", "fixed:63"});
    EXPECT_EQ(f.code, 2);
    EXPECT_EQ(f.err.rfind("fault[F001]", 0), 0u);
}

TEST(Cli, Stats) {
    auto r = invoke({"run", corpus("accept/dll_loc.loc"), "--stats", "--json"});
    EXPECT_EQ(r.code, 0);
    auto last = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
    auto j = nlohmann::json::parse(last);
    EXPECT_EQ(j["live_bytes"], 0);
    EXPECT_EQ(j["regions_freed"], j["regions_opened"]);
}

TEST(Cli, Unchecked) {
    EXPECT_EQ(invoke({"run", corpus("reject/escape.loc")}).code, 1);
    auto r = invoke({"run", corpus("reject/escape.loc"), "--unchecked"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("fault[F002]: dangling region access at"), std::string::npos);
}

TEST(Cli, ArenaFromEnvironment) {
    setenv("LOC_ARENA", "fixed:63", 1);
    auto r = invoke({"run", corpus("accept/dll_loc.loc")});
    unsetenv("LOC_ARENA");
    EXPECT_EQ(r.code, 2);
    // the flag wins over the environment
    setenv("LOC_ARENA", "fixed:63", 1);
    r = invoke({"run", corpus("accept/dll_loc.loc"), "--arena", "extensible"});
    unsetenv("LOC_ARENA");
    EXPECT_EQ(r.code, 0);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, 3);
    EXPECT_EQ(invoke({"frobnicate"}).code, 3);
    EXPECT_EQ(invoke({"check"}).code, 3);
    EXPECT_EQ(invoke({"run", corpus("accept/dll_loc.loc"), "--arena", "fixed:zero"}).code, 3);
    EXPECT_EQ(invoke({"check", "/nonexistent/file.loc"}).code, 3);
    EXPECT_EQ(invoke({"corpus", "/nonexistent/dir"}).code, 3);
    EXPECT_EQ(invoke({"fuzz", "--seed", "1"}).code, 3);
}

TEST(Cli, Corpus) {
    auto r = invoke({"corpus", LOCLANG_CORPUS_DIR});
    EXPECT_EQ(r.code, 0) << r.out;
    auto j = invoke({"corpus", LOCLANG_CORPUS_DIR, "--json"});
    auto doc = nlohmann::json::parse(j.out);
    EXPECT_EQ(doc["failed"], 0);
}

TEST(Cli, CorpusDisagreement) {
    auto dir = std::filesystem::temp_directory_path() / "loclang_bad_corpus";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "wrong.loc") << "//! expect: reject E301\nprint 1;\n";
    EXPECT_EQ(invoke({"corpus", dir.string()}).code, 1);
    std::filesystem::remove_all(dir);
}

TEST(Cli, Fuzz) {
    auto r = invoke({"fuzz", "--seed", "42", "--count", "50", "--json"});
    EXPECT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["generated"], 50);
    EXPECT_EQ(j["faults"], 0);
}
