#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apa/core.hpp"
#include "apa/dynamics.hpp"

namespace apa {

enum class Semantics { Admissible, Complete, Preferred, Stable, Grounded };

inline constexpr std::array<Semantics, 5> kAllSemantics = {
    Semantics::Admissible, Semantics::Complete, Semantics::Preferred, Semantics::Stable, Semantics::Grounded};

inline std::string_view to_string(Semantics w) {
    switch (w) {
        case Semantics::Admissible: return "ad";
        case Semantics::Complete: return "co";
        case Semantics::Preferred: return "pr";
        case Semantics::Stable: return "st";
        case Semantics::Grounded: return "gr";
    }
    return "?";
}

inline std::optional<Semantics> parse_semantics(std::string_view s) {
    for (auto w : kAllSemantics)
        if (to_string(w) == s) return w;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Point predicates. Each is evaluated directly from the definitions.

/// No visible member of the candidate attacks a visible member.
inline bool is_conflict_free(const Framework& fw, ArgSet candidate, const State& s) {
    const ArgSet members = candidate & s.visible;
    bool ok = true;
    members.for_each([&](ArgIndex a) {
        if (fw.attacked_by(a).intersects(members)) ok = false;
    });
    return ok;
}

inline bool is_proper(ArgSet candidate, const State& s) { return candidate.subset_of(s.visible); }

/// The candidate, used as reference set, defends a in s: a is invisible, or
/// every visible attacker of a is counter-attacked by a visible member of
/// the candidate and no transition under the candidate drops a.
inline bool defends(const Framework& fw, ArgSet candidate, ArgIndex a, const State& s) {
    if (!s.visible.contains(a)) return true;
    const ArgSet defenders = candidate & s.visible;
    bool countered = true;
    fw.attackers_of(s, a).for_each([&](ArgIndex b) {
        if (!fw.attackers(b).intersects(defenders)) countered = false;
    });
    return countered && !can_eliminate(fw, candidate, s, a);
}

inline bool is_defended(const Framework& fw, ArgSet candidate, const State& s) {
    bool ok = true;
    candidate.for_each([&](ArgIndex a) {
        if (ok && !defends(fw, candidate, a, s)) ok = false;
    });
    return ok;
}

inline bool is_admissible(const Framework& fw, ArgSet candidate, const State& s) {
    return is_proper(candidate, s) && is_conflict_free(fw, candidate, s) && is_defended(fw, candidate, s);
}

/// Visible arguments defended by the candidate.
inline ArgSet defended_visible(const Framework& fw, ArgSet candidate, const State& s) {
    ArgSet out;
    s.visible.for_each([&](ArgIndex a) {
        if (defends(fw, candidate, a, s)) out.insert(a);
    });
    return out;
}

/// Admissible and containing every visible argument it defends. Invisible
/// arguments are defended vacuously and are not required to be members.
inline bool is_complete(const Framework& fw, ArgSet candidate, const State& s) {
    return is_admissible(fw, candidate, s) && defended_visible(fw, candidate, s).subset_of(candidate);
}

// ---------------------------------------------------------------------------
// Per-state enumeration

/// Extensions of one state, computed once by enumerating subsets of the
/// visible set. The per-argument data needed by defends() is precomputed so
/// each candidate costs O(|visible|) word operations.
class StateSemantics {
public:
    StateSemantics(const Framework& fw, const State& s, std::size_t max_visible = Limits{}.max_visible)
        : fw_(&fw), state_(s) {
        if (s.visible.size() > max_visible)
            throw Error(ErrorKind::TooLarge, std::to_string(s.visible.size()),
                        "state has more visible arguments than the enumeration bound " +
                            std::to_string(max_visible));
        prepare();
        enumerate();
    }

    const State& state() const { return state_; }

    bool holds(Semantics w, ArgSet candidate) const {
        switch (w) {
            case Semantics::Admissible: return admissible(candidate);
            case Semantics::Complete: return complete(candidate);
            case Semantics::Preferred: return preferred(candidate);
            case Semantics::Stable: return stable(candidate);
            case Semantics::Grounded: return candidate == grounded_;
        }
        return false;
    }

    /// Canonically sorted.
    std::vector<ArgSet> extensions(Semantics w) const {
        std::vector<ArgSet> out;
        switch (w) {
            case Semantics::Admissible: out = admissible_; break;
            case Semantics::Complete: out = complete_; break;
            case Semantics::Grounded: out = {grounded_}; break;
            case Semantics::Preferred:
            case Semantics::Stable:
                for (auto c : complete_)
                    if (holds(w, c)) out.push_back(c);
                break;
        }
        canonical_sort(out);
        return out;
    }

    const std::vector<ArgSet>& complete_sets() const { return complete_; }
    ArgSet grounded() const { return grounded_; }

private:
    void prepare() {
        const ArgSet vis = state_.visible;
        const auto n = fw_->size();
        visible_attackers_.assign(n, ArgSet{});
        counter_attackers_.assign(n, {});
        eliminators_.assign(n, {});
        vis.for_each([&](ArgIndex a) {
            visible_attackers_[a] = fw_->attackers(a) & vis;
            visible_attackers_[a].for_each(
                [&](ArgIndex b) { counter_attackers_[a].push_back(fw_->attackers(b) & vis); });
        });
        // A convert act (src, a, t), t != a, with src and a visible removes a
        // unless some reference-set member visibly attacks src.
        for (const auto& act : fw_->acts()) {
            if (!act.trigger || act.target == *act.trigger) continue;
            if (!vis.contains(act.source) || !vis.contains(*act.trigger)) continue;
            eliminators_[*act.trigger].push_back(fw_->attackers(act.source) & vis);
        }
    }

    bool defends_fast(ArgSet candidate, ArgIndex a) const {
        if (!state_.visible.contains(a)) return true;
        const ArgSet defenders = candidate & state_.visible;
        for (auto need : counter_attackers_[a])
            if (!need.intersects(defenders)) return false;
        for (auto blockers : eliminators_[a])
            if (!blockers.intersects(defenders)) return false;
        return true;
    }

    bool admissible_fast(ArgSet c) const {
        if (!c.subset_of(state_.visible)) return false;
        bool ok = true;
        c.for_each([&](ArgIndex a) {
            if (ok && (visible_attackers_[a].intersects(c) || !defends_fast(c, a))) ok = false;
        });
        return ok;
    }

    bool complete_fast(ArgSet c) const {
        if (!admissible_fast(c)) return false;
        bool ok = true;
        (state_.visible - c).for_each([&](ArgIndex a) {
            if (ok && defends_fast(c, a)) ok = false;
        });
        return ok;
    }

    void enumerate() {
        state_.visible.for_each_subset([&](ArgSet c) {
            if (!admissible_fast(c)) return;
            admissible_.push_back(c);
            if (complete_fast(c)) complete_.push_back(c);
        });
        canonical_sort(admissible_);
        canonical_sort(complete_);
        // At least one complete set always exists; guard anyway so an empty
        // family yields the empty intersection rather than everything.
        if (complete_.empty()) {
            grounded_ = ArgSet{};
        } else {
            grounded_ = state_.visible;
            for (auto c : complete_) grounded_ &= c;
        }
    }

    bool admissible(ArgSet c) const { return admissible_fast(c); }
    bool complete(ArgSet c) const { return complete_fast(c); }

    bool preferred(ArgSet c) const {
        if (!complete_fast(c)) return false;
        for (auto other : complete_)
            if (other != c && c.subset_of(other)) return false;
        return true;
    }

    bool stable(ArgSet c) const {
        if (!preferred(c)) return false;
        ArgSet attacked;
        c.for_each([&](ArgIndex a) { attacked |= fw_->attacked_by(a); });
        return (state_.visible - c).subset_of(attacked);
    }

    const Framework* fw_;
    State state_;
    std::vector<ArgSet> visible_attackers_;
    std::vector<std::vector<ArgSet>> counter_attackers_;
    std::vector<std::vector<ArgSet>> eliminators_;
    std::vector<ArgSet> admissible_;
    std::vector<ArgSet> complete_;
    ArgSet grounded_;
};

inline bool holds(const Framework& fw, Semantics w, ArgSet candidate, const State& s, const Limits& limits = {}) {
    switch (w) {
        case Semantics::Admissible: return is_admissible(fw, candidate, s);
        case Semantics::Complete: return is_complete(fw, candidate, s);
        default: return StateSemantics(fw, s, limits.max_visible).holds(w, candidate);
    }
}

inline std::vector<ArgSet> extensions(const Framework& fw, Semantics w, const State& s, const Limits& limits = {}) {
    return StateSemantics(fw, s, limits.max_visible).extensions(w);
}

inline ArgSet grounded_set(const Framework& fw, const State& s, const Limits& limits = {}) {
    return StateSemantics(fw, s, limits.max_visible).grounded();
}

}  // namespace apa
