#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace loclang {

/// Source location of a token or node. Lines and columns are 1-based.
struct Span {
    std::string file;
    std::uint32_t line = 1;
    std::uint32_t col = 1;
    std::uint32_t len = 1;

    friend bool operator==(const Span&, const Span&) = default;
};

/// Ordering used when diagnostics are sorted: line, then column.
inline bool span_before(const Span& a, const Span& b) {
    if (a.line != b.line) return a.line < b.line;
    return a.col < b.col;
}

enum class DiagCode {
    // syntax
    E001, E002,
    // names and types
    E100, E101, E200,
    // mutability and loans
    E300, E301, E302, E303, E304, E305,
    // regions and threads
    E310, E311, E312, E313, E314, E315,
};

std::string_view to_string(DiagCode code);
bool parse_diag_code(std::string_view text, DiagCode& out);

struct DiagnosticNote {
    std::string message;
    Span span;
};

struct Diagnostic {
    DiagCode code;
    std::string message;
    Span span;
    std::vector<DiagnosticNote> notes;
};

/// `error[E301]: message` followed by ` --> file:line:col` and one line per note.
std::string render_text(const Diagnostic& d);

/// One JSON object on a single line with keys code, message, file, line, col, notes.
std::string render_json(const Diagnostic& d);

/// Stable sort by span; ties keep emission order.
void sort_diagnostics(std::vector<Diagnostic>& diags);

}  // namespace loclang
