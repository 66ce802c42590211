#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "apa/core.hpp"

namespace apa {

/// A set of persuasion acts, as sorted indices into Framework::acts().
struct ActSet {
    std::vector<std::size_t> indices;

    bool empty() const { return indices.empty(); }
    std::size_t size() const { return indices.size(); }

    friend bool operator==(const ActSet&, const ActSet&) = default;
    friend auto operator<=>(const ActSet&, const ActSet&) = default;
};

// ---------------------------------------------------------------------------
// Possible acts and the transition formula

/// An act is possible at a state under a reference set when its source and
/// trigger are visible (an induce act has no trigger to check) and no
/// visible member of the reference set attacks the source.
inline bool is_possible(const Framework& fw, ReferenceSet refset, const State& s, const PersuasionAct& act) {
    if (!s.visible.contains(act.source)) return false;
    if (act.trigger && !s.visible.contains(*act.trigger)) return false;
    return !fw.attackers(act.source).intersects(refset & s.visible);
}

inline ActSet possible_acts(const Framework& fw, ReferenceSet refset, const State& s) {
    ActSet out;
    const auto& acts = fw.acts();
    for (std::size_t i = 0; i < acts.size(); ++i)
        if (is_possible(fw, refset, s, acts[i])) out.indices.push_back(i);
    return out;
}

/// Visible triggers of convert acts in gamma whose source is visible.
inline ArgSet neg_set(const Framework& fw, const State& s, const ActSet& gamma) {
    ArgSet out;
    for (auto i : gamma.indices) {
        const auto& act = fw.acts().at(i);
        if (act.trigger && s.visible.contains(*act.trigger) && s.visible.contains(act.source))
            out.insert(*act.trigger);
    }
    return out;
}

/// Targets of every act in gamma. Targets range over all arguments, so an
/// invisible target becomes visible.
inline ArgSet pos_set(const Framework& fw, const State& /*s*/, const ActSet& gamma) {
    ArgSet out;
    for (auto i : gamma.indices) out.insert(fw.acts().at(i).target);
    return out;
}

/// (visible \ neg) ∪ pos. An argument in both neg and pos stays visible.
inline State apply(const Framework& fw, const State& s, const ActSet& gamma) {
    if (gamma.empty()) throw Error(ErrorKind::EmptyGamma, "", "a transition needs at least one act");
    return State{(s.visible - neg_set(fw, s, gamma)) | pos_set(fw, s, gamma)};
}

struct Transition {
    ActSet acts;
    State to;

    friend bool operator==(const Transition&, const Transition&) = default;
};

/// Upper bound on |possible acts| for which successors() lists every subset.
inline constexpr std::size_t kMaxEnumeratedActs = 20;

/// One entry per nonempty subset of the possible acts, in increasing
/// subset-bitmask order. States may repeat across entries.
inline std::vector<Transition> successors(const Framework& fw, ReferenceSet refset, const State& s) {
    auto possible = possible_acts(fw, refset, s);
    const auto k = possible.size();
    if (k > kMaxEnumeratedActs)
        throw Error(ErrorKind::TooLarge, std::to_string(k),
                    "too many simultaneously possible acts to list every subset");
    std::vector<Transition> out;
    out.reserve((std::size_t{1} << k) - 1);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        ActSet gamma;
        for (std::size_t j = 0; j < k; ++j)
            if ((mask >> j) & 1U) gamma.indices.push_back(possible.indices[j]);
        auto to = apply(fw, s, gamma);
        out.push_back(Transition{std::move(gamma), to});
    }
    return out;
}

/// Distinct successor states, sorted by visible bitmask.
///
/// Only the pair (neg, pos) of a chosen act subset matters, so subsets are
/// folded act by act into the set of reachable (neg, pos) pairs instead of
/// being listed one by one.
inline std::vector<State> successor_states(const Framework& fw, ReferenceSet refset, const State& s) {
    auto possible = possible_acts(fw, refset, s);
    if (possible.empty()) return {};

    struct Effect {
        std::uint64_t neg;
        std::uint64_t pos;
        bool operator==(const Effect&) const = default;
    };
    struct EffectHash {
        std::size_t operator()(const Effect& e) const noexcept {
            return std::hash<std::uint64_t>{}(e.neg * 0x9e3779b97f4a7c15ULL ^ e.pos);
        }
    };

    // Effects of nonempty subsets seen so far.
    std::unordered_set<Effect, EffectHash> effects;
    for (auto i : possible.indices) {
        const auto& act = fw.acts()[i];
        // Possibility already guarantees a visible source and trigger.
        Effect single{act.trigger ? std::uint64_t{1} << *act.trigger : 0, std::uint64_t{1} << act.target};
        std::vector<Effect> grown;
        grown.reserve(effects.size() + 1);
        grown.push_back(single);
        for (const auto& e : effects) grown.push_back(Effect{e.neg | single.neg, e.pos | single.pos});
        for (const auto& e : grown) effects.insert(e);
    }

    std::vector<State> out;
    out.reserve(effects.size());
    for (const auto& e : effects) out.push_back(State{(s.visible - ArgSet(e.neg)) | ArgSet(e.pos)});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// True iff some transition under refset makes the visible argument a
/// invisible. That happens exactly when a possible convert act has a as its
/// trigger and a different target: firing it alone drops a.
inline bool can_eliminate(const Framework& fw, ReferenceSet refset, const State& s, ArgIndex a) {
    if (!s.visible.contains(a)) return false;
    for (const auto& act : fw.acts())
        if (act.trigger == a && act.target != a && is_possible(fw, refset, s, act)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Reference-set families and the reachable transition system

/// A finite list of reference sets, or the wildcard standing for every
/// subset of A. Every transition under any reference set is also a
/// transition under the empty reference set, so the wildcard is realised
/// by the single selector ∅.
class Sigma {
public:
    static Sigma all() { return Sigma(true, {ReferenceSet{}}); }
    static Sigma of(std::vector<ReferenceSet> selectors) { return Sigma(false, std::move(selectors)); }

    bool is_all() const { return all_; }
    const std::vector<ReferenceSet>& selectors() const { return selectors_; }
    std::size_t size() const { return selectors_.size(); }

    std::string label(const Framework& fw, std::size_t selector) const {
        return all_ ? std::string("*") : fw.format(selectors_.at(selector));
    }

    friend bool operator==(const Sigma&, const Sigma&) = default;

private:
    Sigma(bool all, std::vector<ReferenceSet> selectors) : all_(all), selectors_(std::move(selectors)) {}

    bool all_ = false;
    std::vector<ReferenceSet> selectors_;
};

struct Edge {
    std::size_t from;
    std::size_t selector;
    std::size_t to;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Limits {
    std::size_t max_states = 4096;
    std::size_t max_visible = 20;
};

/// Reachable states in breadth-first discovery order (the initial state is
/// index 0, successors are discovered in increasing bitmask order) and
/// edges sorted by (from, selector, to).
class LTS {
public:
    const std::vector<State>& states() const { return states_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return states_.size(); }
    std::size_t initial() const { return 0; }
    const Sigma& sigma() const { return sigma_; }

    bool is_deadlock(std::size_t s) const { return out_begin_[s] == out_begin_[s + 1]; }
    std::vector<std::size_t> deadlocks() const {
        std::vector<std::size_t> out;
        for (std::size_t s = 0; s < size(); ++s)
            if (is_deadlock(s)) out.push_back(s);
        return out;
    }

    /// Outgoing edges of state s, sorted by (selector, to).
    std::pair<const Edge*, const Edge*> out_edges(std::size_t s) const {
        return {edges_.data() + out_begin_[s], edges_.data() + out_begin_[s + 1]};
    }

    std::optional<std::size_t> index_of(const State& s) const {
        auto it = index_.find(s.visible.bits());
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    friend LTS reachable(const Framework& fw, const Sigma& sigma, const Limits& limits);

private:
    explicit LTS(Sigma sigma) : sigma_(std::move(sigma)) {}

    Sigma sigma_;
    std::vector<State> states_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> out_begin_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Breadth-first closure from F(A0) under every selector of sigma.
inline LTS reachable(const Framework& fw, const Sigma& sigma, const Limits& limits = {}) {
    LTS lts(sigma);
    auto intern = [&](const State& s) {
        auto [it, fresh] = lts.index_.emplace(s.visible.bits(), lts.states_.size());
        if (fresh) {
            if (lts.states_.size() >= limits.max_states)
                throw Error(ErrorKind::TooLarge, std::to_string(limits.max_states),
                            "reachable state space exceeds the state bound");
            lts.states_.push_back(s);
        }
        return it->second;
    };

    intern(fw.initial_state());
    for (std::size_t cur = 0; cur < lts.states_.size(); ++cur) {
        const State here = lts.states_[cur];
        for (std::size_t sel = 0; sel < sigma.size(); ++sel)
            for (const auto& next : successor_states(fw, sigma.selectors()[sel], here))
                lts.edges_.push_back(Edge{cur, sel, intern(next)});
    }

    std::sort(lts.edges_.begin(), lts.edges_.end());
    lts.out_begin_.assign(lts.states_.size() + 1, 0);
    for (const auto& e : lts.edges_) ++lts.out_begin_[e.from + 1];
    for (std::size_t i = 0; i < lts.states_.size(); ++i) lts.out_begin_[i + 1] += lts.out_begin_[i];
    return lts;
}

}  // namespace apa
