#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "apa/core.hpp"
#include "apa/ctl/formula.hpp"
#include "apa/ctl/model_checker.hpp"
#include "apa/dynamics.hpp"
#include "apa/semantics.hpp"

namespace apa::io {

namespace detail {

struct LineToken {
    std::string text;  // identifier text, or one of "->", "=>", ":", ","
    bool ident;
    SourceLocation location;
};

inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline std::vector<LineToken> tokenize_line(std::string_view line, std::size_t line_no, std::size_t first_col) {
    std::vector<LineToken> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        SourceLocation loc{line_no, first_col + i};
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (ident_char(c)) {
            std::size_t j = i;
            while (j < line.size() && ident_char(line[j])) ++j;
            out.push_back({std::string(line.substr(i, j - i)), true, loc});
            i = j;
        } else if ((c == '-' || c == '=') && i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back({std::string(line.substr(i, 2)), false, loc});
            i += 2;
        } else if (c == ':' || c == ',') {
            out.push_back({std::string(1, c), false, loc});
            ++i;
        } else {
            throw Error(ErrorKind::SyntaxError, std::string(1, c), "unexpected character", loc);
        }
    }
    return out;
}

inline Token to_token(const LineToken& t) { return Token{t.text, t.location}; }

}  // namespace detail

/// Framework file:
///
///     arguments: a1 a2 ...
///     initial: a1 ...
///     attack: x -> y
///     induce: s => t
///     convert: s : g => t
///
/// `#` starts a comment. Sections may repeat and appear in any order; a
/// section header with nothing after it is allowed.
inline FrameworkDescription parse_framework_description(std::string_view text) {
    FrameworkDescription d;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::size_t key_begin = 0;
        while (key_begin < line.size() && std::isspace(static_cast<unsigned char>(line[key_begin]))) ++key_begin;
        if (key_begin == line.size()) {
            if (end == text.size()) break;
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw Error(ErrorKind::SyntaxError, std::string(line.substr(key_begin)), "expected 'section:'",
                        {line_no, key_begin + 1});
        std::string_view key = line.substr(key_begin, colon - key_begin);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.remove_suffix(1);
        const SourceLocation key_loc{line_no, key_begin + 1};
        auto toks = detail::tokenize_line(line.substr(colon + 1), line_no, colon + 2);

        auto bad = [&](const std::string& expected) -> Error {
            for (const auto& t : toks)
                if (!t.ident) return Error(ErrorKind::SyntaxError, t.text, "expected " + expected, t.location);
            const auto loc = toks.empty() ? key_loc : toks.back().location;
            return Error(ErrorKind::SyntaxError, std::string(key), "expected " + expected, loc);
        };
        auto shape = [&](std::initializer_list<const char*> pattern) {
            if (toks.size() != pattern.size()) return false;
            std::size_t i = 0;
            for (const char* p : pattern) {
                const auto& t = toks[i++];
                if (p == nullptr ? !t.ident : t.ident || t.text != p) return false;
            }
            return true;
        };

        if (key == "arguments" || key == "initial") {
            auto& list = key == "arguments" ? d.arguments : d.initial;
            for (const auto& t : toks) {
                if (t.text == ",") continue;
                if (!t.ident) throw Error(ErrorKind::SyntaxError, t.text, "expected an argument name", t.location);
                list.push_back(detail::to_token(t));
            }
        } else if (key == "attack") {
            if (toks.empty()) continue;
            if (!shape({nullptr, "->", nullptr})) throw bad("'attacker -> attacked'");
            d.attacks.push_back({detail::to_token(toks[0]), detail::to_token(toks[2])});
        } else if (key == "induce") {
            if (toks.empty()) continue;
            if (!shape({nullptr, "=>", nullptr})) throw bad("'source => target'");
            d.acts.push_back({detail::to_token(toks[0]), std::nullopt, detail::to_token(toks[2])});
        } else if (key == "convert") {
            if (toks.empty()) continue;
            if (!shape({nullptr, ":", nullptr, "=>", nullptr})) throw bad("'source : trigger => target'");
            d.acts.push_back({detail::to_token(toks[0]), detail::to_token(toks[2]), detail::to_token(toks[4])});
        } else {
            throw Error(ErrorKind::SyntaxError, std::string(key),
                        "unknown section (expected arguments, initial, attack, induce or convert)", key_loc);
        }
        if (end == text.size()) break;
    }
    return d;
}

inline Framework parse_framework(std::string_view text) { return validate(parse_framework_description(text)); }

inline std::string print_framework(const Framework& fw) {
    std::ostringstream out;
    out << "arguments:";
    for (const auto& n : fw.names()) out << ' ' << n;
    out << "\ninitial:";
    fw.initial().for_each([&](ArgIndex a) { out << ' ' << fw.name(a); });
    out << '\n';
    for (auto [a, b] : fw.attacks()) out << "attack: " << fw.name(a) << " -> " << fw.name(b) << '\n';
    for (const auto& act : fw.acts()) {
        if (act.trigger)
            out << "convert: " << fw.name(act.source) << " : " << fw.name(*act.trigger) << " => "
                << fw.name(act.target) << '\n';
        else
            out << "induce: " << fw.name(act.source) << " => " << fw.name(act.target) << '\n';
    }
    return out.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// Σ on the command line: `all` (or `*`), or brace literals separated by
// commas, e.g. `{a2},{a2,a5},{}`.

inline Sigma parse_sigma(std::string_view spec, const Framework& fw) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    spec = trim(spec);
    if (spec == "all" || spec == "*" || spec == "{*}") return Sigma::all();

    std::vector<ReferenceSet> selectors;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) {
        return Error(ErrorKind::SyntaxError, std::string(spec), msg, SourceLocation{1, i + 1});
    };
    while (i < spec.size()) {
        while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
        if (i >= spec.size() || spec[i] != '{') throw fail("expected '{' to open a reference set");
        auto close = spec.find('}', i);
        if (close == std::string_view::npos) throw fail("unterminated reference set");
        ReferenceSet set;
        std::string_view body = spec.substr(i + 1, close - i - 1);
        std::size_t p = 0;
        while (p <= body.size()) {
            auto comma = body.find(',', p);
            if (comma == std::string_view::npos) comma = body.size();
            auto name = trim(body.substr(p, comma - p));
            if (!name.empty()) {
                auto idx = fw.find(name);
                if (!idx) throw Error(ErrorKind::UndeclaredArgument, std::string(name), "argument is not declared");
                set.insert(*idx);
            } else if (comma != body.size()) {
                throw fail("empty name in reference set");
            }
            p = comma + 1;
        }
        selectors.push_back(set);
        i = close + 1;
        while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
        if (i < spec.size()) {
            if (spec[i] != ',') throw fail("expected ',' between reference sets");
            ++i;
        }
    }
    if (selectors.empty()) throw fail("expected 'all' or at least one reference set");
    return Sigma::of(std::move(selectors));
}

/// `a,b,c`, `{a,b,c}` or `{}`; whitespace allowed.
inline ArgSet parse_argument_list(std::string_view spec, const Framework& fw) {
    std::string cleaned;
    for (char c : spec)
        if (c != '{' && c != '}') cleaned += c;
    ArgSet out;
    std::stringstream ss(cleaned);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string name;
        for (char c : item)
            if (!std::isspace(static_cast<unsigned char>(c))) name += c;
        if (name.empty()) continue;
        auto idx = fw.find(name);
        if (!idx) throw Error(ErrorKind::UndeclaredArgument, name, "argument is not declared");
        out.insert(*idx);
    }
    return out;
}

// ---------------------------------------------------------------------------
// DOT

/// One node per state labelled with its visible set, one edge per
/// (selector, successor). Deadlocks are double circles; the initial state
/// has a bold outline. `annotations`, when given, adds a line per state.
inline std::string export_dot(const Framework& fw, const LTS& lts, const std::vector<std::string>* annotations = nullptr) {
    std::ostringstream out;
    out << "digraph apa {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (std::size_t s = 0; s < lts.size(); ++s) {
        out << "  s" << s << " [label=\"s" << s << "\\n" << fw.format(lts.states()[s].visible);
        if (annotations && s < annotations->size() && !(*annotations)[s].empty()) out << "\\n" << (*annotations)[s];
        out << '"';
        if (lts.is_deadlock(s)) out << ", shape=doublecircle";
        if (s == lts.initial()) out << ", penwidth=2";
        out << "];\n";
    }
    for (const auto& e : lts.edges())
        out << "  s" << e.from << " -> s" << e.to << " [label=\"" << lts.sigma().label(fw, e.selector) << "\"];\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Result documents: line-oriented text and canonical JSON.

inline std::vector<std::string> names_of(const Framework& fw, ArgSet s) {
    std::vector<std::string> out;
    s.for_each([&](ArgIndex a) { out.push_back(fw.name(a)); });
    return out;
}

inline std::string states_text(const Framework& fw, const LTS& lts) {
    std::ostringstream out;
    for (std::size_t s = 0; s < lts.size(); ++s) {
        out << 's' << s << ' ' << fw.format(lts.states()[s].visible);
        if (s == lts.initial()) out << " initial";
        if (lts.is_deadlock(s)) out << " deadlock";
        out << '\n';
    }
    return out.str();
}

inline std::string transitions_text(const Framework& fw, const LTS& lts) {
    std::ostringstream out;
    for (const auto& e : lts.edges())
        out << 's' << e.from << " -> s" << e.to << " [" << e.selector << ": " << lts.sigma().label(fw, e.selector)
            << "]\n";
    return out.str();
}

inline nlohmann::ordered_json lts_json(const Framework& fw, const LTS& lts, bool with_edges) {
    nlohmann::ordered_json doc;
    doc["initial"] = lts.initial();
    auto& states = doc["states"] = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < lts.size(); ++s)
        states.push_back({{"id", s},
                          {"visible", names_of(fw, lts.states()[s].visible)},
                          {"deadlock", lts.is_deadlock(s)}});
    auto& sigma = doc["sigma"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < lts.sigma().size(); ++i) sigma.push_back(lts.sigma().label(fw, i));
    if (with_edges) {
        auto& edges = doc["edges"] = nlohmann::ordered_json::array();
        for (const auto& e : lts.edges()) edges.push_back({{"from", e.from}, {"selector", e.selector}, {"to", e.to}});
    }
    return doc;
}

inline std::string extensions_text(const Framework& fw, const std::vector<ArgSet>& exts) {
    std::string out;
    for (auto e : exts) out += fw.format(e) + "\n";
    return out;
}

inline nlohmann::ordered_json extensions_json(const Framework& fw, Semantics w, const State& s,
                                              const std::vector<ArgSet>& exts) {
    nlohmann::ordered_json doc;
    doc["state"] = names_of(fw, s.visible);
    doc["semantics"] = std::string(to_string(w));
    auto& arr = doc["extensions"] = nlohmann::ordered_json::array();
    for (auto e : exts) arr.push_back(names_of(fw, e));
    return doc;
}

inline std::string lasso_text(const Framework& fw, const LTS& lts, const ctl::Lasso& lasso) {
    std::ostringstream out;
    auto emit = [&](const char* head, const std::vector<std::size_t>& part) {
        out << head;
        for (auto s : part) out << " s" << s << fw.format(lts.states()[s].visible);
        out << '\n';
    };
    emit("prefix:", lasso.prefix);
    emit("cycle:", lasso.cycle);
    return out.str();
}

inline std::string check_text(const Framework& fw, const ctl::CheckResult& r) {
    std::string out = std::string("verdict: ") + (r.verdict ? "true" : "false") + "\n";
    if (r.witness) {
        out += r.verdict ? "witness:\n" : "counterexample:\n";
        out += lasso_text(fw, r.labeling.lts(), *r.witness);
    }
    return out;
}

inline nlohmann::ordered_json check_json(const Framework& fw, const ctl::CheckResult& r) {
    nlohmann::ordered_json doc;
    doc["verdict"] = r.verdict;
    doc["states"] = r.labeling.lts().size();
    if (r.witness) {
        auto states = [&](const std::vector<std::size_t>& part) {
            auto arr = nlohmann::ordered_json::array();
            for (auto s : part)
                arr.push_back({{"id", s}, {"visible", names_of(fw, r.labeling.lts().states()[s].visible)}});
            return arr;
        };
        doc[r.verdict ? "witness" : "counterexample"] = {{"prefix", states(r.witness->prefix)},
                                                         {"cycle", states(r.witness->cycle)}};
    }
    return doc;
}

}  // namespace apa::io
