#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "apa/core.hpp"
#include "apa/ctl/formula.hpp"
#include "apa/error.hpp"

namespace apa::ctl {

namespace detail {

enum class Tok {
    Ident,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Equals,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Star,
    End,
};

struct Lexeme {
    Tok kind;
    std::string text;
    SourceLocation location;
};

inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline std::vector<Lexeme> lex(std::string_view text) {
    std::vector<Lexeme> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        SourceLocation loc{line, col};
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (is_ident_char(c)) {
            std::size_t j = i;
            while (j < text.size() && is_ident_char(text[j])) ++j;
            out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), loc});
            advance(j - i);
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", loc});
            advance(2);
            continue;
        }
        Tok kind;
        switch (c) {
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '{': kind = Tok::LBrace; break;
            case '}': kind = Tok::RBrace; break;
            case '[': kind = Tok::LBracket; break;
            case ']': kind = Tok::RBracket; break;
            case ',': kind = Tok::Comma; break;
            case ':': kind = Tok::Colon; break;
            case '=': kind = Tok::Equals; break;
            case '!': kind = Tok::Bang; break;
            case '&': kind = Tok::Amp; break;
            case '|': kind = Tok::Pipe; break;
            case '*': kind = Tok::Star; break;
            default:
                throw Error(ErrorKind::SyntaxError, std::string(1, c), "unexpected character", loc);
        }
        out.push_back({kind, std::string(1, c), loc});
        advance(1);
    }
    out.push_back({Tok::End, "", SourceLocation{line, col}});
    return out;
}

inline std::optional<Op> unary_temporal(std::string_view word) {
    if (word == "AX") return Op::AX;
    if (word == "EX") return Op::EX;
    if (word == "AF") return Op::AF;
    if (word == "EF") return Op::EF;
    if (word == "AG") return Op::AG;
    if (word == "EG") return Op::EG;
    return std::nullopt;
}

inline std::optional<Op> until_keyword(std::string_view word) {
    if (word == "A" || word == "AU") return Op::AU;
    if (word == "E" || word == "EU") return Op::EU;
    return std::nullopt;
}

/// Recursive descent over the lexeme stream. Precedence, loosest first:
/// -> (right associative), |, &, then the prefix operators.
class Parser {
public:
    Parser(std::string_view text, const Framework& fw) : toks_(lex(text)), fw_(fw) {}

    Query parse_query() {
        while (peek_word("set")) parse_set_binding();
        expect_word("formula");
        expect(Tok::Colon, "':' after 'formula'");
        query_.formula = parse_formula();
        if (peek().kind != Tok::End) fail(peek(), "trailing input after formula");
        return std::move(query_);
    }

    FormulaPtr parse_formula_only() {
        auto f = parse_formula();
        if (peek().kind != Tok::End) fail(peek(), "trailing input after formula");
        return f;
    }

    Query& query() { return query_; }

private:
    const Lexeme& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Lexeme& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    bool peek_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

    [[noreturn]] void fail(const Lexeme& at, const std::string& message) const {
        throw Error(ErrorKind::SyntaxError, at.kind == Tok::End ? "<end of input>" : at.text, message, at.location);
    }

    const Lexeme& expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) fail(peek(), "expected " + what);
        return next();
    }

    void expect_word(std::string_view w) {
        if (!peek_word(w)) fail(peek(), "expected '" + std::string(w) + "'");
        next();
    }

    const Lexeme& expect_ident(const std::string& what) { return expect(Tok::Ident, what); }

    ArgSet parse_set_literal() {
        expect(Tok::LBrace, "'{'");
        ArgSet members;
        if (peek().kind != Tok::RBrace) {
            for (;;) {
                const auto& tok = expect_ident("argument name");
                members.insert(resolve_argument(tok));
                if (peek().kind != Tok::Comma) break;
                next();
            }
        }
        expect(Tok::RBrace, "'}' or ','");
        return members;
    }

    void parse_set_binding() {
        expect_word("set");
        const auto name = expect_ident("set name");
        if (query_.find(name.text))
            throw Error(ErrorKind::DuplicateName, name.text, "set defined twice", name.location);
        expect(Tok::Equals, "'='");
        auto members = parse_set_literal();
        query_.sets.push_back(NamedSet{name.text, members});
    }

    ArgIndex resolve_argument(const Lexeme& tok) const {
        auto idx = fw_.find(tok.text);
        if (!idx) throw Error(ErrorKind::UnknownName, tok.text, "argument is not declared", tok.location);
        return *idx;
    }

    std::string fresh_name() {
        for (;;) {
            std::string name = "_S" + std::to_string(++fresh_);
            if (!query_.find(name)) return name;
        }
    }

    /// A set operand: a bound name, or a literal that binds a fresh name.
    std::string parse_set_ref() {
        if (peek().kind == Tok::LBrace) {
            auto members = parse_set_literal();
            auto name = fresh_name();
            query_.sets.push_back(NamedSet{name, members});
            return name;
        }
        const auto& tok = expect_ident("set name or set literal");
        if (!query_.find(tok.text)) throw Error(ErrorKind::UnknownName, tok.text, "set is not defined", tok.location);
        return tok.text;
    }

    /// Missing superscript means every reference set.
    SigmaRef parse_sigma() {
        if (peek().kind != Tok::LBrace) return SigmaRef::wildcard();
        next();
        if (peek().kind == Tok::Star) {
            next();
            expect(Tok::RBrace, "'}' after '*'");
            return SigmaRef::wildcard();
        }
        SigmaRef sigma;
        if (peek().kind != Tok::RBrace) {
            for (;;) {
                sigma.sets.push_back(parse_set_ref());
                if (peek().kind != Tok::Comma) break;
                next();
            }
        }
        expect(Tok::RBrace, "'}' or ','");
        return sigma;
    }

    FormulaPtr parse_formula() { return parse_implication(); }

    FormulaPtr parse_implication() {
        auto lhs = parse_disjunction();
        if (peek().kind == Tok::Arrow) {
            auto loc = next().location;
            auto rhs = parse_implication();
            return located(make::implies(std::move(lhs), std::move(rhs)), loc);
        }
        return lhs;
    }

    FormulaPtr parse_disjunction() {
        auto lhs = parse_conjunction();
        while (peek().kind == Tok::Pipe) {
            auto loc = next().location;
            lhs = located(make::disj(std::move(lhs), parse_conjunction()), loc);
        }
        return lhs;
    }

    FormulaPtr parse_conjunction() {
        auto lhs = parse_unary();
        while (peek().kind == Tok::Amp) {
            auto loc = next().location;
            lhs = located(make::conj(std::move(lhs), parse_unary()), loc);
        }
        return lhs;
    }

    FormulaPtr parse_unary() {
        const auto& tok = peek();
        if (tok.kind == Tok::Bang) {
            auto loc = next().location;
            return located(make::negation(parse_unary()), loc);
        }
        if (tok.kind == Tok::Ident) {
            if (auto op = unary_temporal(tok.text)) {
                auto loc = next().location;
                auto sigma = parse_sigma();
                return located(make::temporal(*op, std::move(sigma), parse_unary()), loc);
            }
            if (auto op = until_keyword(tok.text);
                op && (peek(1).kind == Tok::LBrace || peek(1).kind == Tok::LBracket)) {
                auto loc = next().location;
                auto sigma = parse_sigma();
                expect(Tok::LBracket, "'[' to open an until formula");
                auto lhs = parse_formula();
                expect_word("U");
                auto rhs = parse_formula();
                expect(Tok::RBracket, "']' to close an until formula");
                return located(make::until(*op, std::move(sigma), std::move(lhs), std::move(rhs)), loc);
            }
        }
        return parse_atom();
    }

    FormulaPtr parse_atom() {
        const auto tok = next();
        if (tok.kind == Tok::LParen) {
            auto f = parse_formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (tok.kind != Tok::Ident) fail(tok, "expected a formula");
        if (tok.text == "true") return located(make::top(), tok.location);
        if (tok.text == "false") return located(make::bottom(), tok.location);
        if (tok.text == "in") {
            expect(Tok::LParen, "'(' after 'in'");
            const auto arg = expect_ident("argument name");
            resolve_argument(arg);
            expect(Tok::Comma, "','");
            auto set = parse_set_ref();
            expect(Tok::RParen, "')'");
            return located(make::in(arg.text, std::move(set)), tok.location);
        }
        if (tok.text == "sem") {
            expect(Tok::LParen, "'(' after 'sem'");
            const auto w = expect_ident("one of ad, co, pr, st, gr");
            auto semantics = parse_semantics(w.text);
            if (!semantics) fail(w, "expected one of ad, co, pr, st, gr");
            expect(Tok::Comma, "','");
            auto set = parse_set_ref();
            expect(Tok::RParen, "')'");
            return located(make::sem(*semantics, std::move(set)), tok.location);
        }
        if (tok.text == "visible") {
            expect(Tok::LParen, "'(' after 'visible'");
            const auto arg = expect_ident("argument name");
            resolve_argument(arg);
            expect(Tok::RParen, "')'");
            return located(make::visible(arg.text), tok.location);
        }
        if (tok.text == "exact") {
            expect(Tok::LParen, "'(' after 'exact'");
            auto members = query_.find(parse_set_ref())->members;
            expect(Tok::Comma, "','");
            auto target = parse_set_ref();
            expect(Tok::RParen, "')'");
            return expand_exact(members, target, tok.location);
        }
        fail(tok, "expected a formula");
    }

    /// exact(S, X): every argument of S is in X and no other argument is.
    FormulaPtr expand_exact(ArgSet members, const std::string& target, SourceLocation loc) const {
        FormulaPtr out;
        for (ArgIndex a = 0; a < fw_.size(); ++a) {
            FormulaPtr lit = located(make::in(fw_.name(a), target), loc);
            if (!members.contains(a)) lit = located(make::negation(std::move(lit)), loc);
            out = out ? located(make::conj(std::move(out), std::move(lit)), loc) : std::move(lit);
        }
        return out;
    }

    static FormulaPtr located(FormulaPtr f, SourceLocation loc) {
        auto copy = std::const_pointer_cast<Formula>(f);
        copy->location = loc;
        return copy;
    }

    std::vector<Lexeme> toks_;
    std::size_t pos_ = 0;
    const Framework& fw_;
    Query query_;
    std::size_t fresh_ = 0;
};

}  // namespace detail

/// Parses a query file: `set Name = { a, b }` lines followed by one
/// `formula: ...`. Throws SyntaxError, UnknownName or DuplicateName.
inline Query parse_query(std::string_view text, const Framework& fw) {
    return detail::Parser(text, fw).parse_query();
}

/// Parses a bare formula against existing bindings. Set literals inside it
/// are appended to `bindings`.
inline FormulaPtr parse_formula(std::string_view text, const Framework& fw, std::vector<NamedSet>& bindings) {
    detail::Parser parser(text, fw);
    parser.query().sets = bindings;
    auto f = parser.parse_formula_only();
    bindings = parser.query().sets;
    return f;
}

}  // namespace apa::ctl
