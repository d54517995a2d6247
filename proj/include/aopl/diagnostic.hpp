#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aopl {

// Location of a statement or token in a source file. Positions are metadata:
// two AST nodes that differ only in where they were read compare equal.
struct SourcePos {
    std::string file;
    int line = 0;
    int column = 0;

    bool valid() const { return line > 0; }

    friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    SourcePos pos;
    std::string message;
    std::string rule_label;  // empty when not tied to a rule

    // Unlike the AST, diagnostics compare by position too.
    friend bool operator==(const Diagnostic& a, const Diagnostic& b) {
        return a.severity == b.severity && a.pos.file == b.pos.file && a.pos.line == b.pos.line &&
               a.pos.column == b.pos.column && a.message == b.message && a.rule_label == b.rule_label;
    }
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// "file:line:col: error: message [rule]"
std::string format_diagnostic(const Diagnostic& d);

std::ostream& operator<<(std::ostream& os, const Diagnostic& d);

}  // namespace aopl
