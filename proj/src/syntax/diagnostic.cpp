#include "loclang/diagnostic.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include <json.hpp>

namespace loclang {

namespace {

constexpr std::array<std::pair<DiagCode, std::string_view>, 17> kCodes{{
    {DiagCode::E001, "E001"}, {DiagCode::E002, "E002"}, {DiagCode::E100, "E100"},
    {DiagCode::E101, "E101"}, {DiagCode::E200, "E200"}, {DiagCode::E300, "E300"},
    {DiagCode::E301, "E301"}, {DiagCode::E302, "E302"}, {DiagCode::E303, "E303"},
    {DiagCode::E304, "E304"}, {DiagCode::E305, "E305"}, {DiagCode::E310, "E310"},
    {DiagCode::E311, "E311"}, {DiagCode::E312, "E312"}, {DiagCode::E313, "E313"},
    {DiagCode::E314, "E314"}, {DiagCode::E315, "E315"},
}};

}  // namespace

std::string_view to_string(DiagCode code) {
    for (const auto& [c, name] : kCodes)
        if (c == code) return name;
    return "E???";
}

bool parse_diag_code(std::string_view text, DiagCode& out) {
    for (const auto& [c, name] : kCodes) {
        if (name == text) {
            out = c;
            return true;
        }
    }
    return false;
}

std::string render_text(const Diagnostic& d) {
    std::string out = "error[" + std::string(to_string(d.code)) + "]: " + d.message + "\n";
    out += " --> " + d.span.file + ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.col) + "\n";
    for (const auto& n : d.notes) {
        out += "note: " + n.message + " --> " + n.span.file + ":" + std::to_string(n.span.line) + ":" +
               std::to_string(n.span.col) + "\n";
    }
    return out;
}

std::string render_json(const Diagnostic& d) {
    nlohmann::json notes = nlohmann::json::array();
    for (const auto& n : d.notes) {
        notes.push_back({{"message", n.message}, {"file", n.span.file}, {"line", n.span.line}, {"col", n.span.col}});
    }
    nlohmann::json j{
        {"code", std::string(to_string(d.code))},
        {"message", d.message},
        {"file", d.span.file},
        {"line", d.span.line},
        {"col", d.span.col},
        {"notes", notes},
    };
    return j.dump();
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return span_before(a.span, b.span); });
}

}  // namespace loclang
