#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "apa/error.hpp"

namespace apa {

/// Position of an argument in declaration order.
using ArgIndex = std::size_t;

inline constexpr std::size_t kMaxArguments = 64;

/// A subset of the declared arguments, stored as a bitmask in declaration
/// order. Used for visible sets, reference sets and candidate extensions.
class ArgSet {
public:
    constexpr ArgSet() = default;
    constexpr explicit ArgSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr ArgSet of(std::initializer_list<ArgIndex> members) {
        ArgSet s;
        for (auto m : members) s.insert(m);
        return s;
    }
    /// {0, ..., n-1}
    static constexpr ArgSet first(std::size_t n) {
        return ArgSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool contains(ArgIndex a) const { return (bits_ >> a) & 1U; }
    constexpr void insert(ArgIndex a) { bits_ |= std::uint64_t{1} << a; }
    constexpr void erase(ArgIndex a) { bits_ &= ~(std::uint64_t{1} << a); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool subset_of(ArgSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(ArgSet o) const { return (bits_ & o.bits_) != 0; }

    constexpr ArgSet operator|(ArgSet o) const { return ArgSet(bits_ | o.bits_); }
    constexpr ArgSet operator&(ArgSet o) const { return ArgSet(bits_ & o.bits_); }
    constexpr ArgSet operator-(ArgSet o) const { return ArgSet(bits_ & ~o.bits_); }
    constexpr ArgSet& operator|=(ArgSet o) { bits_ |= o.bits_; return *this; }
    constexpr ArgSet& operator&=(ArgSet o) { bits_ &= o.bits_; return *this; }
    constexpr ArgSet& operator-=(ArgSet o) { bits_ &= ~o.bits_; return *this; }

    friend constexpr bool operator==(ArgSet, ArgSet) = default;
    friend constexpr auto operator<=>(ArgSet, ArgSet) = default;

    /// Members in declaration order.
    std::vector<ArgIndex> members() const {
        std::vector<ArgIndex> out;
        for (std::uint64_t b = bits_; b != 0; b &= b - 1)
            out.push_back(static_cast<ArgIndex>(std::countr_zero(b)));
        return out;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::uint64_t b = bits_; b != 0; b &= b - 1)
            f(static_cast<ArgIndex>(std::countr_zero(b)));
    }

    /// Calls f on every subset of *this, the empty set included.
    template <typename F>
    void for_each_subset(F&& f) const {
        std::uint64_t sub = 0;
        do {
            f(ArgSet(sub));
            sub = (sub - bits_) & bits_;
        } while (sub != 0);
    }

private:
    std::uint64_t bits_ = 0;
};

/// Orders sets by cardinality, then lexicographically by member sequence.
inline bool canonical_less(ArgSet a, ArgSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    auto ma = a.members();
    auto mb = b.members();
    return ma < mb;
}

inline void canonical_sort(std::vector<ArgSet>& sets) {
    std::sort(sets.begin(), sets.end(), canonical_less);
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

enum class ActKind { Induce, Convert };

/// (source, trigger, target); an absent trigger is the empty trigger of an
/// induce act.
struct PersuasionAct {
    ArgIndex source = 0;
    std::optional<ArgIndex> trigger;
    ArgIndex target = 0;

    ActKind kind() const { return trigger ? ActKind::Convert : ActKind::Induce; }

    friend bool operator==(const PersuasionAct&, const PersuasionAct&) = default;
    friend auto operator<=>(const PersuasionAct& a, const PersuasionAct& b) {
        // induce acts sort before converts
        auto key = [](const PersuasionAct& p) {
            return std::tuple(p.trigger.has_value(), p.source, p.trigger.value_or(0), p.target);
        };
        return key(a) <=> key(b);
    }
};

/// A sub-framework F(visible). Attacks are derived from the framework on
/// demand, never stored.
struct State {
    ArgSet visible;

    friend bool operator==(const State&, const State&) = default;
    friend auto operator<=>(const State&, const State&) = default;
};

using ReferenceSet = ArgSet;

// ---------------------------------------------------------------------------
// Unvalidated description, as produced by a parser or built by hand.

struct Token {
    std::string text;
    SourceLocation location;
};

struct AttackDescription {
    Token attacker;
    Token attacked;
};

struct ActDescription {
    Token source;
    std::optional<Token> trigger;
    Token target;
};

struct FrameworkDescription {
    std::vector<Token> arguments;
    std::vector<Token> initial;
    std::vector<AttackDescription> attacks;
    std::vector<ActDescription> acts;
};

inline bool is_reserved_name(std::string_view name) {
    return name == "eps" || name == "epsilon" || name == "\xce\xb5";  // U+03B5
}

// ---------------------------------------------------------------------------

/// The validated tuple (A, R, R_p, A0). Immutable once built; construct
/// through validate().
class Framework {
public:
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(ArgIndex a) const { return names_.at(a); }

    std::optional<ArgIndex> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    ArgSet all() const { return ArgSet::first(size()); }
    ArgSet initial() const { return initial_; }
    State initial_state() const { return State{initial_}; }

    /// Sorted (attacker, attacked) pairs.
    const std::vector<std::pair<ArgIndex, ArgIndex>>& attacks() const { return attacks_; }
    bool attacks(ArgIndex from, ArgIndex to) const { return attackers_[to].contains(from); }
    /// Every declared attacker of a, visible or not.
    ArgSet attackers(ArgIndex a) const { return attackers_.at(a); }
    /// Every argument attacked by a.
    ArgSet attacked_by(ArgIndex a) const { return attacked_by_.at(a); }

    /// Sorted, duplicate-free persuasion acts.
    const std::vector<PersuasionAct>& acts() const { return acts_; }

    /// Attack pairs with both ends visible in the state.
    std::vector<std::pair<ArgIndex, ArgIndex>> induced_attacks(const State& s) const {
        std::vector<std::pair<ArgIndex, ArgIndex>> out;
        for (auto [a, b] : attacks_)
            if (s.visible.contains(a) && s.visible.contains(b)) out.emplace_back(a, b);
        return out;
    }

    State induced_state(ArgSet visible) const { return State{visible & all()}; }

    /// { b visible in s | (b, a) in R }
    ArgSet attackers_of(const State& s, ArgIndex a) const { return attackers_.at(a) & s.visible; }

    /// Resolves a list of names, throwing UndeclaredArgument on the first miss.
    ArgSet set_of(const std::vector<std::string>& names) const {
        ArgSet out;
        for (const auto& n : names) {
            auto idx = find(n);
            if (!idx) throw Error(ErrorKind::UndeclaredArgument, n, "argument is not declared");
            out.insert(*idx);
        }
        return out;
    }

    std::string format(ArgSet s) const {
        std::string out = "{";
        bool first = true;
        s.for_each([&](ArgIndex a) {
            if (!first) out += ',';
            out += names_[a];
            first = false;
        });
        return out + "}";
    }

    std::string format(const PersuasionAct& act) const {
        return "(" + names_[act.source] + "," + (act.trigger ? names_[*act.trigger] : std::string("eps")) +
               "," + names_[act.target] + ")";
    }

    friend bool operator==(const Framework& a, const Framework& b) {
        return a.names_ == b.names_ && a.initial_ == b.initial_ && a.attacks_ == b.attacks_ && a.acts_ == b.acts_;
    }

    friend Framework validate(const FrameworkDescription& description);

private:
    Framework() = default;

    std::vector<std::string> names_;
    std::unordered_map<std::string, ArgIndex> index_;
    std::vector<std::pair<ArgIndex, ArgIndex>> attacks_;
    std::vector<ArgSet> attackers_;
    std::vector<ArgSet> attacked_by_;
    std::vector<PersuasionAct> acts_;
    ArgSet initial_;
};

/// Checks a description and builds the framework. All violations are
/// collected before throwing, so a single Error may carry several
/// diagnostics.
inline Framework validate(const FrameworkDescription& description) {
    Framework fw;
    std::vector<Diagnostic> problems;

    for (const auto& tok : description.arguments) {
        if (tok.text.empty()) {
            problems.push_back({ErrorKind::SyntaxError, tok.text, tok.location, "empty argument name"});
            continue;
        }
        if (is_reserved_name(tok.text)) {
            problems.push_back({ErrorKind::ReservedName, tok.text, tok.location,
                                "the empty trigger is reserved and cannot be declared"});
            continue;
        }
        if (fw.index_.contains(tok.text)) {
            problems.push_back({ErrorKind::DuplicateArgument, tok.text, tok.location, "argument declared twice"});
            continue;
        }
        fw.index_.emplace(tok.text, fw.names_.size());
        fw.names_.push_back(tok.text);
    }

    if (fw.names_.empty() && problems.empty())
        problems.push_back({ErrorKind::BadInitial, "", {}, "a framework needs at least one argument"});
    if (fw.names_.size() > kMaxArguments)
        problems.push_back({ErrorKind::TooLarge, std::to_string(fw.names_.size()), {},
                            "at most " + std::to_string(kMaxArguments) + " arguments are supported"});

    auto resolve = [&](const Token& tok) -> std::optional<ArgIndex> {
        auto it = fw.index_.find(tok.text);
        if (it == fw.index_.end()) {
            problems.push_back({ErrorKind::UndeclaredArgument, tok.text, tok.location, "argument is not declared"});
            return std::nullopt;
        }
        return it->second;
    };

    for (const auto& tok : description.initial) {
        auto it = fw.index_.find(tok.text);
        if (it == fw.index_.end()) {
            problems.push_back({ErrorKind::BadInitial, tok.text, tok.location, "initial argument is not declared"});
            continue;
        }
        fw.initial_.insert(it->second);
    }

    for (const auto& att : description.attacks) {
        auto from = resolve(att.attacker);
        auto to = resolve(att.attacked);
        if (from && to) fw.attacks_.emplace_back(*from, *to);
    }

    for (const auto& act : description.acts) {
        auto source = resolve(act.source);
        std::optional<ArgIndex> trigger;
        bool trigger_ok = true;
        if (act.trigger) {
            trigger = resolve(*act.trigger);
            trigger_ok = trigger.has_value();
        }
        auto target = resolve(act.target);
        if (source && target && trigger_ok) fw.acts_.push_back(PersuasionAct{*source, trigger, *target});
    }

    if (!problems.empty()) throw Error(std::move(problems));

    std::sort(fw.attacks_.begin(), fw.attacks_.end());
    fw.attacks_.erase(std::unique(fw.attacks_.begin(), fw.attacks_.end()), fw.attacks_.end());
    std::sort(fw.acts_.begin(), fw.acts_.end());
    fw.acts_.erase(std::unique(fw.acts_.begin(), fw.acts_.end()), fw.acts_.end());

    fw.attackers_.assign(fw.names_.size(), ArgSet{});
    fw.attacked_by_.assign(fw.names_.size(), ArgSet{});
    for (auto [a, b] : fw.attacks_) {
        fw.attackers_[b].insert(a);
        fw.attacked_by_[a].insert(b);
    }
    return fw;
}

/// Convenience builder for code and tests: plain names instead of tokens.
/// An empty trigger string denotes an induce act.
struct FrameworkSpec {
    std::vector<std::string> arguments;
    std::vector<std::string> initial;
    std::vector<std::pair<std::string, std::string>> attacks;
    std::vector<std::tuple<std::string, std::string, std::string>> acts;
};

inline Framework make_framework(const FrameworkSpec& spec) {
    FrameworkDescription d;
    for (const auto& a : spec.arguments) d.arguments.push_back({a, {}});
    for (const auto& a : spec.initial) d.initial.push_back({a, {}});
    for (const auto& [x, y] : spec.attacks) d.attacks.push_back({{x, {}}, {y, {}}});
    for (const auto& [s, g, t] : spec.acts) {
        ActDescription act{{s, {}}, std::nullopt, {t, {}}};
        if (!g.empty()) act.trigger = Token{g, {}};
        d.acts.push_back(std::move(act));
    }
    return validate(d);
}

}  // namespace apa
