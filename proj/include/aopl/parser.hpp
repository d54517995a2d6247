#pragma once

#include "aopl/diagnostic.hpp"
#include "aopl/model.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace aopl {

// A policy or domain source held in memory, with a line index for turning
// byte offsets into line/column positions.
class SourceFile {
public:
    SourceFile(std::string path, std::string text);

    // Reads a file from disk; throws std::runtime_error when it cannot be read.
    static SourceFile load(const std::filesystem::path& path);

    const std::string& path() const { return path_; }
    const std::string& text() const { return text_; }

    // 1-based line and column (columns count code points, not bytes).
    SourcePos position(std::size_t offset) const;

private:
    std::string path_;
    std::string text_;
    std::vector<std::size_t> line_starts_;
};

struct ParsedUnit {
    Policy policy;
    DomainSpec domain;

    friend bool operator==(const ParsedUnit&, const ParsedUnit&) = default;
};

struct ParseResult {
    std::optional<ParsedUnit> unit;  // absent whenever there is an error
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return unit.has_value(); }
};

// Parses `.aopl` / `.dom` text. Both kinds of statement may appear in either
// file. On error every diagnostic carries a position and no AST is returned.
ParseResult parse(const SourceFile& src);

// Appends `other` to `into` (declaration order preserved).
void merge(ParsedUnit& into, ParsedUnit other);

// Canonical text: domain declarations first, then policy rules each followed
// by its `text` statement. parse(print(x)) == x for well-formed x.
std::string print(const Policy& policy, const DomainSpec& domain);

// Single-statement renderings used in explanations and diagnostics.
std::string print_rule(const PolicyRule& rule);

// Parses one literal such as `-authorized(c,m)` (used for pins and state
// files). Returns nullopt on malformed input.
std::optional<Literal> parse_literal(std::string_view text);

// Parses one ground happening or action such as `assume_comm(c,m)`.
std::optional<Atom> parse_atom(std::string_view text);

}  // namespace aopl
