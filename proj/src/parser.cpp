#include "aopl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace aopl {

SourceFile::SourceFile(std::string path, std::string text) : path_(std::move(path)), text_(std::move(text)) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text_.size(); ++i)
        if (text_[i] == '\n') line_starts_.push_back(i + 1);
}

SourceFile SourceFile::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return SourceFile(path.string(), buf.str());
}

SourcePos SourceFile::position(std::size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    std::size_t start = line_starts_[line - 1];
    int column = 1;
    for (std::size_t i = start; i < offset && i < text_.size(); ++i)
        if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++column;
    return SourcePos{path_, static_cast<int>(line), column};
}

namespace {

enum class Tok { Ident, Var, String, LParen, RParen, Comma, Dot, Colon, Greater, Neg, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t offset = 0;
};

std::string_view describe(Tok kind) {
    switch (kind) {
        case Tok::Ident: return "identifier";
        case Tok::Var: return "variable";
        case Tok::String: return "string";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::Colon: return "':'";
        case Tok::Greater: return "'>'";
        case Tok::Neg: return "negation";
        case Tok::End: return "end of input";
    }
    return "token";
}

// Length of the UTF-8 sequence starting at s[i], or 0 when malformed.
std::size_t utf8_length(std::string_view s, std::size_t i) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t n = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    if (n == 0 || i + n > s.size()) return 0;
    for (std::size_t k = 1; k < n; ++k)
        if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 0;
    return n;
}

class Lexer {
public:
    Lexer(const SourceFile& src, std::vector<Diagnostic>& diags) : src_(src), s_(src.text()), diags_(diags) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (i_ >= s_.size()) break;
            std::size_t start = i_;
            char c = s_[i_];
            auto uc = static_cast<unsigned char>(c);
            if (std::isalpha(uc) || c == '_' || std::isdigit(uc)) {
                while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
                std::string word(s_.substr(start, i_ - start));
                bool var = std::isupper(uc) || c == '_';
                if (std::isdigit(uc) && !std::all_of(word.begin(), word.end(), [](char ch) {
                        return std::isdigit(static_cast<unsigned char>(ch));
                    })) {
                    error(start, "malformed number '" + word + "'");
                    continue;
                }
                out.push_back({var ? Tok::Var : Tok::Ident, std::move(word), start});
                continue;
            }
            if (c == '"') {
                lex_string(out);
                continue;
            }
            if (s_.compare(i_, 2, "\xC2\xAC") == 0) {
                i_ += 2;
                out.push_back({Tok::Neg, "-", start});
                continue;
            }
            Tok kind = Tok::End;
            switch (c) {
                case '(': kind = Tok::LParen; break;
                case ')': kind = Tok::RParen; break;
                case ',': kind = Tok::Comma; break;
                case '.': kind = Tok::Dot; break;
                case ':': kind = Tok::Colon; break;
                case '>': kind = Tok::Greater; break;
                case '-':
                case '!': kind = Tok::Neg; break;
                default: break;
            }
            if (kind == Tok::End) {
                std::size_t n = utf8_length(s_, i_);
                if (n == 0) {
                    error(start, "invalid UTF-8 byte");
                    ++i_;
                } else {
                    error(start, "unexpected character '" + std::string(s_.substr(i_, n)) + "'");
                    i_ += n;
                }
                continue;
            }
            ++i_;
            out.push_back({kind, std::string(1, c), start});
        }
        out.push_back({Tok::End, {}, s_.size()});
        return out;
    }

private:
    void skip_space() {
        while (i_ < s_.size()) {
            char c = s_[i_];
            if (c == '%') {
                while (i_ < s_.size() && s_[i_] != '\n') ++i_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i_;
            } else {
                break;
            }
        }
    }

    void lex_string(std::vector<Token>& out) {
        std::size_t start = i_++;
        std::string value;
        while (i_ < s_.size() && s_[i_] != '"') {
            if (s_[i_] == '\n') break;
            if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
                char e = s_[i_ + 1];
                if (e == 'n') value += '\n';
                else if (e == 't') value += '\t';
                else if (e == '"' || e == '\\') value += e;
                else error(i_, std::string("unknown escape '\\") + e + "'");
                i_ += 2;
                continue;
            }
            std::size_t n = utf8_length(s_, i_);
            if (n == 0) {
                error(i_, "invalid UTF-8 byte in string");
                ++i_;
                continue;
            }
            value.append(s_.substr(i_, n));
            i_ += n;
        }
        if (i_ >= s_.size() || s_[i_] != '"') {
            error(start, "unterminated string");
            return;
        }
        ++i_;
        out.push_back({Tok::String, std::move(value), start});
    }

    void error(std::size_t offset, std::string msg) {
        diags_.push_back(Diagnostic{Severity::Error, src_.position(offset), std::move(msg), {}});
    }

    const SourceFile& src_;
    std::string_view s_;
    std::vector<Diagnostic>& diags_;
    std::size_t i_ = 0;
};

struct SyntaxError {
    std::size_t offset;
    std::string message;
};

struct PendingText {
    std::string label;
    std::string text;
    SourcePos pos;
};

class Parser {
public:
    Parser(const SourceFile& src, std::vector<Token> toks, std::vector<Diagnostic>& diags)
        : src_(src), toks_(std::move(toks)), diags_(diags) {}

    ParsedUnit run() {
        while (peek().kind != Tok::End) {
            std::size_t start = pos_;
            try {
                statement();
            } catch (const SyntaxError& e) {
                diags_.push_back(Diagnostic{Severity::Error, src_.position(e.offset), e.message, {}});
                // Resynchronise at the next statement terminator.
                if (pos_ == start) ++pos_;
                while (peek().kind != Tok::End && toks_[pos_ - 1].kind != Tok::Dot) ++pos_;
            }
        }
        attach_texts();
        return std::move(unit_);
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

    const Token& next() {
        const Token& t = toks_[pos_];
        if (t.kind != Tok::End) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const Token& at, const std::string& message) { throw SyntaxError{at.offset, message}; }

    const Token& expect(Tok kind, std::string_view what = {}) {
        if (peek().kind != kind) {
            std::string expected = what.empty() ? std::string(describe(kind)) : std::string(what);
            std::string found = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
            fail(peek(), "expected " + expected + ", found " + found);
        }
        return next();
    }

    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        next();
        return true;
    }

    bool accept_word(std::string_view word) {
        if (peek().kind != Tok::Ident || peek().text != word) return false;
        next();
        return true;
    }

    void expect_word(std::string_view word) {
        if (!accept_word(word)) fail(peek(), "expected '" + std::string(word) + "'");
    }

    SourcePos here(const Token& t) const { return src_.position(t.offset); }

    void statement() {
        const Token& kw = peek();
        if (kw.kind != Tok::Ident) fail(kw, "expected a statement keyword");
        SourcePos pos = here(kw);
        const std::string word = kw.text;
        next();
        if (word == "sorts") sort_decl(pos);
        else if (word == "static") predicate_decl(PredicateKind::Static, pos);
        else if (word == "fluent") predicate_decl(PredicateKind::Fluent, pos);
        else if (word == "action") predicate_decl(PredicateKind::Action, pos);
        else if (word == "constraint") constraint(pos);
        else if (word == "impossible") impossible(pos);
        else if (word == "impossible_exec") impossible_exec(pos);
        else if (word == "rule") rule(pos);
        else if (word == "prefer") prefer(pos);
        else if (word == "text") text(pos);
        else fail(kw, "unknown statement '" + word + "'");
    }

    std::string constant() {
        const Token& t = peek();
        if (t.kind == Tok::Var) fail(t, "expected a constant, found variable '" + t.text + "'");
        return expect(Tok::Ident, "constant").text;
    }

    void sort_decl(SourcePos pos) {
        SortDecl s;
        s.pos = pos;
        s.name = expect(Tok::Ident, "sort name").text;
        expect(Tok::Colon);
        s.members.push_back(constant());
        while (accept(Tok::Comma)) s.members.push_back(constant());
        expect(Tok::Dot);
        unit_.domain.sorts.push_back(std::move(s));
    }

    void predicate_decl(PredicateKind kind, SourcePos pos) {
        PredicateDecl p;
        p.kind = kind;
        p.pos = pos;
        p.name = expect(Tok::Ident, "predicate name").text;
        if (accept(Tok::LParen)) {
            p.arg_sorts.push_back(expect(Tok::Ident, "sort name").text);
            while (accept(Tok::Comma)) p.arg_sorts.push_back(expect(Tok::Ident, "sort name").text);
            expect(Tok::RParen);
        }
        expect(Tok::Dot);
        unit_.domain.predicates.push_back(std::move(p));
    }

    Atom atom() {
        Atom a;
        const Token& name = peek();
        if (name.kind == Tok::Var) fail(name, "expected a predicate name, found variable '" + name.text + "'");
        a.predicate = expect(Tok::Ident, "predicate name").text;
        if (std::isdigit(static_cast<unsigned char>(a.predicate.front())))
            fail(name, "expected a predicate name, found '" + a.predicate + "'");
        if (accept(Tok::LParen)) {
            a.args.push_back(term());
            while (accept(Tok::Comma)) a.args.push_back(term());
            expect(Tok::RParen);
        }
        return a;
    }

    std::string term() {
        const Token& t = peek();
        if (t.kind == Tok::Var || t.kind == Tok::Ident) return next().text;
        fail(t, "expected a term");
    }

    Literal literal() {
        Literal l;
        l.negative = accept(Tok::Neg);
        l.atom = atom();
        return l;
    }

    std::vector<Literal> literal_list() {
        std::vector<Literal> out{literal()};
        while (accept(Tok::Comma)) out.push_back(literal());
        return out;
    }

    std::vector<VarDecl> where_clause() {
        std::vector<VarDecl> out;
        if (!accept_word("where")) return out;
        do {
            VarDecl v;
            v.pos = here(peek());
            v.variable = expect(Tok::Var).text;
            expect(Tok::Colon);
            v.sort = expect(Tok::Ident, "sort name").text;
            out.push_back(std::move(v));
        } while (accept(Tok::Comma));
        return out;
    }

    void constraint(SourcePos pos) {
        StateConstraint c;
        c.pos = pos;
        c.head = literal();
        if (accept_word("if")) c.body = literal_list();
        c.where = where_clause();
        expect(Tok::Dot);
        unit_.domain.state_constraints.push_back(std::move(c));
    }

    void impossible(SourcePos pos) {
        StateConstraint c;
        c.pos = pos;
        c.body = literal_list();
        c.where = where_clause();
        expect(Tok::Dot);
        unit_.domain.state_constraints.push_back(std::move(c));
    }

    void impossible_exec(SourcePos pos) {
        ExecConstraint c;
        c.pos = pos;
        c.action = atom();
        if (accept_word("if")) c.body = literal_list();
        c.where = where_clause();
        expect(Tok::Dot);
        unit_.domain.exec_constraints.push_back(std::move(c));
    }

    std::string label() {
        const Token& t = peek();
        if (t.kind == Tok::Var) fail(t, "rule labels must start with a lower-case letter");
        std::string l = expect(Tok::Ident, "rule label").text;
        if (std::isdigit(static_cast<unsigned char>(l.front()))) fail(t, "rule labels must start with a letter");
        return l;
    }

    HeadLiteral head() {
        HeadLiteral h;
        h.negated = accept(Tok::Neg);
        const Token& kw = peek();
        if (accept_word("permitted")) {
            h.modality = Modality::Permitted;
            expect(Tok::LParen);
            if (peek().kind == Tok::Neg) fail(peek(), "permitted applies to elementary actions, not happenings");
            h.target.action = atom();
            expect(Tok::RParen);
        } else if (accept_word("obl")) {
            h.modality = Modality::Obligation;
            expect(Tok::LParen);
            h.target.negative = accept(Tok::Neg);
            h.target.action = atom();
            expect(Tok::RParen);
        } else {
            fail(kw, "expected permitted(...) or obl(...)");
        }
        return h;
    }

    void rule(SourcePos pos) {
        PolicyRule r;
        r.pos = pos;
        r.label = label();
        expect(Tok::Colon);
        r.kind = accept_word("normally") ? RuleKind::Defeasible : RuleKind::Strict;
        r.head = head();
        if (accept_word("if")) r.condition = literal_list();
        r.where = where_clause();
        expect(Tok::Dot);
        unit_.policy.rules.push_back(std::move(r));
    }

    void prefer(SourcePos pos) {
        PolicyRule r;
        r.pos = pos;
        r.kind = RuleKind::Preference;
        r.label = label();
        expect(Tok::Colon);
        r.preferred = label();
        expect(Tok::Greater);
        r.dispreferred = label();
        expect(Tok::Dot);
        unit_.policy.rules.push_back(std::move(r));
    }

    void text(SourcePos pos) {
        PendingText t;
        t.pos = pos;
        t.label = label();
        expect(Tok::Colon);
        t.text = expect(Tok::String).text;
        expect(Tok::Dot);
        texts_.push_back(std::move(t));
    }

    void attach_texts() {
        for (auto& t : texts_) {
            auto it = std::find_if(unit_.policy.rules.begin(), unit_.policy.rules.end(),
                                   [&](const PolicyRule& r) { return r.label == t.label; });
            if (it == unit_.policy.rules.end()) {
                diags_.push_back(Diagnostic{Severity::Error, t.pos, "text for unknown rule", t.label});
            } else if (it->text) {
                diags_.push_back(Diagnostic{Severity::Error, t.pos, "duplicate text for rule", t.label});
            } else {
                it->text = std::move(t.text);
                it->text_pos = t.pos;
            }
        }
    }

    const SourceFile& src_;
    std::vector<Token> toks_;
    std::vector<Diagnostic>& diags_;
    std::size_t pos_ = 0;
    ParsedUnit unit_;
    std::vector<PendingText> texts_;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        if (c == '\t') {
            out += "\\t";
            continue;
        }
        out += c;
    }
    return out + '"';
}

std::string join_literals(const std::vector<Literal>& lits) {
    std::string out;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (i) out += ", ";
        out += lits[i].str();
    }
    return out;
}

std::string print_where(const std::vector<VarDecl>& where) {
    if (where.empty()) return {};
    std::string out = " where ";
    for (std::size_t i = 0; i < where.size(); ++i) {
        if (i) out += ", ";
        out += where[i].variable + ": " + where[i].sort;
    }
    return out;
}

}  // namespace

ParseResult parse(const SourceFile& src) {
    ParseResult result;
    Lexer lexer(src, result.diagnostics);
    auto tokens = lexer.run();
    Parser parser(src, std::move(tokens), result.diagnostics);
    ParsedUnit unit = parser.run();
    std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.pos.line, a.pos.column) < std::tie(b.pos.line, b.pos.column);
    });
    if (!has_errors(result.diagnostics)) result.unit = std::move(unit);
    return result;
}

void merge(ParsedUnit& into, ParsedUnit other) {
    auto append = [](auto& dst, auto& src) {
        dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
    };
    append(into.policy.rules, other.policy.rules);
    append(into.domain.sorts, other.domain.sorts);
    append(into.domain.predicates, other.domain.predicates);
    append(into.domain.state_constraints, other.domain.state_constraints);
    append(into.domain.exec_constraints, other.domain.exec_constraints);
}

std::string print_rule(const PolicyRule& r) {
    std::string out;
    if (r.kind == RuleKind::Preference) return "prefer " + r.label + ": " + r.preferred + " > " + r.dispreferred + '.';
    out = "rule " + r.label + ": ";
    if (r.kind == RuleKind::Defeasible) out += "normally ";
    if (r.head) out += r.head->str();
    if (!r.condition.empty()) out += " if " + join_literals(r.condition);
    out += print_where(r.where);
    return out + '.';
}

std::string print(const Policy& policy, const DomainSpec& domain) {
    std::ostringstream os;
    for (const auto& s : domain.sorts) {
        os << "sorts " << s.name << ": ";
        for (std::size_t i = 0; i < s.members.size(); ++i) os << (i ? ", " : "") << s.members[i];
        os << ".\n";
    }
    for (const auto& p : domain.predicates) {
        os << to_string(p.kind) << ' ' << p.name;
        if (!p.arg_sorts.empty()) {
            os << '(';
            for (std::size_t i = 0; i < p.arg_sorts.size(); ++i) os << (i ? ", " : "") << p.arg_sorts[i];
            os << ')';
        }
        os << ".\n";
    }
    for (const auto& c : domain.state_constraints) {
        if (c.head) {
            os << "constraint " << c.head->str();
            if (!c.body.empty()) os << " if " << join_literals(c.body);
        } else {
            os << "impossible " << join_literals(c.body);
        }
        os << print_where(c.where) << ".\n";
    }
    for (const auto& c : domain.exec_constraints) {
        os << "impossible_exec " << c.action.str();
        if (!c.body.empty()) os << " if " << join_literals(c.body);
        os << print_where(c.where) << ".\n";
    }
    if (!domain.empty() && !policy.empty()) os << '\n';
    for (const auto& r : policy.rules) {
        os << print_rule(r) << '\n';
        if (r.text) os << "text " << r.label << ": " << quote(*r.text) << ".\n";
    }
    return os.str();
}

std::optional<Literal> parse_literal(std::string_view text) {
    std::vector<Diagnostic> diags;
    SourceFile src("<literal>", std::string(text));
    auto toks = Lexer(src, diags).run();
    if (!diags.empty()) return std::nullopt;
    std::size_t i = 0;
    Literal lit;
    if (toks[i].kind == Tok::Neg) {
        lit.negative = true;
        ++i;
    }
    if (toks[i].kind != Tok::Ident) return std::nullopt;
    lit.atom.predicate = toks[i++].text;
    if (toks[i].kind == Tok::LParen) {
        ++i;
        while (true) {
            if (toks[i].kind != Tok::Ident && toks[i].kind != Tok::Var) return std::nullopt;
            lit.atom.args.push_back(toks[i++].text);
            if (toks[i].kind == Tok::Comma) {
                ++i;
                continue;
            }
            if (toks[i].kind != Tok::RParen) return std::nullopt;
            ++i;
            break;
        }
    }
    if (toks[i].kind == Tok::Dot) ++i;
    if (toks[i].kind != Tok::End) return std::nullopt;
    return lit;
}

std::optional<Atom> parse_atom(std::string_view text) {
    auto lit = parse_literal(text);
    if (!lit || lit->negative) return std::nullopt;
    return lit->atom;
}

}  // namespace aopl
