#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apa/core.hpp"
#include "apa/error.hpp"
#include "apa/semantics.hpp"

namespace apa::ctl {

enum class Op {
    True,
    False,
    In,       // in(argument, set)
    Sem,      // sem(semantics, set)
    Visible,  // visible(argument)
    Not,
    And,
    Or,
    Implies,
    AX,
    EX,
    AF,
    EF,
    AG,
    EG,
    AU,
    EU,
};

inline bool is_temporal(Op op) { return op >= Op::AX; }
inline bool is_binary(Op op) { return op == Op::And || op == Op::Or || op == Op::Implies; }
inline bool is_until(Op op) { return op == Op::AU || op == Op::EU; }
inline bool is_atom(Op op) { return op <= Op::Visible; }

/// Path restriction of a temporal operator: named reference sets, or every
/// subset of A.
struct SigmaRef {
    bool all = false;
    std::vector<std::string> sets;

    static SigmaRef wildcard() { return SigmaRef{true, {}}; }
    static SigmaRef named(std::vector<std::string> sets) { return SigmaRef{false, std::move(sets)}; }

    friend bool operator==(const SigmaRef&, const SigmaRef&) = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// One AST node. Fields not used by an operator are left empty; the source
/// location is ignored by ==.
struct Formula {
    Op op = Op::True;
    std::string argument;  // In, Visible
    std::string set;       // In, Sem
    Semantics semantics = Semantics::Admissible;
    SigmaRef sigma;        // temporal operators
    std::vector<FormulaPtr> operands;
    SourceLocation location;

    friend bool operator==(const Formula& a, const Formula& b) {
        if (a.op != b.op || a.argument != b.argument || a.set != b.set || a.sigma != b.sigma ||
            a.operands.size() != b.operands.size())
            return false;
        if (a.op == Op::Sem && a.semantics != b.semantics) return false;
        for (std::size_t i = 0; i < a.operands.size(); ++i)
            if (!(*a.operands[i] == *b.operands[i])) return false;
        return true;
    }
};

struct NamedSet {
    std::string name;
    ArgSet members;

    friend bool operator==(const NamedSet&, const NamedSet&) = default;
};

/// A parsed query file: set bindings plus one formula.
struct Query {
    std::vector<NamedSet> sets;
    FormulaPtr formula;

    const NamedSet* find(std::string_view name) const {
        for (const auto& s : sets)
            if (s.name == name) return &s;
        return nullptr;
    }

    friend bool operator==(const Query& a, const Query& b) {
        return a.sets == b.sets && ((!a.formula && !b.formula) || (a.formula && b.formula && *a.formula == *b.formula));
    }
};

// ---------------------------------------------------------------------------
// Builders

namespace make {

inline FormulaPtr node(Op op, std::vector<FormulaPtr> operands = {}, SigmaRef sigma = {}) {
    auto f = std::make_shared<Formula>();
    f->op = op;
    f->operands = std::move(operands);
    f->sigma = std::move(sigma);
    return f;
}

inline FormulaPtr top() { return node(Op::True); }
inline FormulaPtr bottom() { return node(Op::False); }

inline FormulaPtr in(std::string argument, std::string set) {
    auto f = std::make_shared<Formula>();
    f->op = Op::In;
    f->argument = std::move(argument);
    f->set = std::move(set);
    return f;
}

inline FormulaPtr sem(Semantics w, std::string set) {
    auto f = std::make_shared<Formula>();
    f->op = Op::Sem;
    f->semantics = w;
    f->set = std::move(set);
    return f;
}

inline FormulaPtr visible(std::string argument) {
    auto f = std::make_shared<Formula>();
    f->op = Op::Visible;
    f->argument = std::move(argument);
    return f;
}

inline FormulaPtr negation(FormulaPtr f) { return node(Op::Not, {std::move(f)}); }
inline FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return node(Op::And, {std::move(a), std::move(b)}); }
inline FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return node(Op::Or, {std::move(a), std::move(b)}); }
inline FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return node(Op::Implies, {std::move(a), std::move(b)}); }

inline FormulaPtr temporal(Op op, SigmaRef sigma, FormulaPtr f) { return node(op, {std::move(f)}, std::move(sigma)); }
inline FormulaPtr until(Op op, SigmaRef sigma, FormulaPtr a, FormulaPtr b) {
    return node(op, {std::move(a), std::move(b)}, std::move(sigma));
}

}  // namespace make

// ---------------------------------------------------------------------------
// Printing. Binary operands that are themselves binary are parenthesised, so
// the output reparses to the same tree.

inline std::string_view op_keyword(Op op) {
    switch (op) {
        case Op::AX: return "AX";
        case Op::EX: return "EX";
        case Op::AF: return "AF";
        case Op::EF: return "EF";
        case Op::AG: return "AG";
        case Op::EG: return "EG";
        case Op::AU: return "A";
        case Op::EU: return "E";
        case Op::Not: return "!";
        case Op::And: return "&";
        case Op::Or: return "|";
        case Op::Implies: return "->";
        default: return "";
    }
}

inline std::string print_sigma(const SigmaRef& sigma) {
    if (sigma.all) return "{*}";
    std::string out = "{";
    for (std::size_t i = 0; i < sigma.sets.size(); ++i) {
        if (i) out += ',';
        out += sigma.sets[i];
    }
    return out + "}";
}

inline std::string print_formula(const Formula& f) {
    auto sub = [](const FormulaPtr& g) {
        auto s = print_formula(*g);
        return is_binary(g->op) ? "(" + s + ")" : s;
    };
    switch (f.op) {
        case Op::True: return "true";
        case Op::False: return "false";
        case Op::In: return "in(" + f.argument + "," + f.set + ")";
        case Op::Sem: return "sem(" + std::string(to_string(f.semantics)) + "," + f.set + ")";
        case Op::Visible: return "visible(" + f.argument + ")";
        case Op::Not: return "!" + sub(f.operands[0]);
        case Op::And:
        case Op::Or:
        case Op::Implies:
            return sub(f.operands[0]) + " " + std::string(op_keyword(f.op)) + " " + sub(f.operands[1]);
        case Op::AU:
        case Op::EU:
            return std::string(op_keyword(f.op)) + print_sigma(f.sigma) + "[" + print_formula(*f.operands[0]) +
                   " U " + print_formula(*f.operands[1]) + "]";
        default:
            return std::string(op_keyword(f.op)) + print_sigma(f.sigma) + " " + sub(f.operands[0]);
    }
}

inline std::string print_query(const Query& q, const Framework& fw) {
    std::string out;
    for (const auto& s : q.sets) {
        out += "set " + s.name + " = {";
        bool first = true;
        s.members.for_each([&](ArgIndex a) {
            out += first ? " " : ", ";
            out += fw.name(a);
            first = false;
        });
        out += first ? "}\n" : " }\n";
    }
    out += "formula: " + (q.formula ? print_formula(*q.formula) : std::string("true")) + "\n";
    return out;
}

/// Nodes in post-order (operands before parents).
inline void collect_postorder(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    for (const auto& g : f->operands) collect_postorder(g, out);
    out.push_back(f);
}

inline std::size_t depth(const Formula& f) {
    std::size_t d = 0;
    for (const auto& g : f.operands) d = std::max(d, depth(*g));
    return d + (is_atom(f.op) ? 0 : 1);
}

}  // namespace apa::ctl
