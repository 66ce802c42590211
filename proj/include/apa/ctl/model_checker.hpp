#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "apa/core.hpp"
#include "apa/ctl/formula.hpp"
#include "apa/dynamics.hpp"
#include "apa/semantics.hpp"

namespace apa::ctl {

using StateSet = std::vector<bool>;

/// A path ending in a loop: prefix, then cycle repeated forever (the state
/// after the last cycle entry is cycle.front()). Indices refer to LTS states.
struct Lasso {
    std::vector<std::size_t> prefix;
    std::vector<std::size_t> cycle;

    friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// Truth value of every subformula at every state of the transition system
/// the query was checked against.
class Labeling {
public:
    Labeling(std::shared_ptr<const LTS> lts, std::vector<FormulaPtr> order,
             std::unordered_map<const Formula*, StateSet> sat)
        : lts_(std::move(lts)), order_(std::move(order)), sat_(std::move(sat)) {}

    const LTS& lts() const { return *lts_; }
    /// Subformulas in post-order; the root is last.
    const std::vector<FormulaPtr>& subformulas() const { return order_; }

    const StateSet& sat(const Formula& f) const { return sat_.at(&f); }
    bool holds(const Formula& f, std::size_t state) const { return sat(f)[state]; }

private:
    std::shared_ptr<const LTS> lts_;
    std::vector<FormulaPtr> order_;
    std::unordered_map<const Formula*, StateSet> sat_;
};

struct CheckResult {
    bool verdict = false;
    /// Set for a true existential or false universal top-level temporal
    /// formula.
    std::optional<Lasso> witness;
    Labeling labeling;
};

/// Labels a query bottom-up over the transition system reachable from
/// F(A0) under every reference set the query mentions.
///
/// States without an outgoing edge under an operator's Σ get a stutter
/// self-loop for that operator, so every path is infinite. EX, EU and EG
/// are computed directly; AX, AF, AG and AU through their duals.
class ModelChecker {
public:
    ModelChecker(const Framework& fw, Query query, Limits limits = {})
        : fw_(fw), query_(std::move(query)), limits_(limits) {
        if (!query_.formula) query_.formula = make::top();
        collect_selectors(*query_.formula);
        canonical_sort(selectors_);
        lts_ = std::make_shared<const LTS>(reachable(fw_, Sigma::of(selectors_), limits_));
        semantics_.resize(lts_->size());
    }

    const LTS& lts() const { return *lts_; }
    const Query& query() const { return query_; }

    /// Reference sets spanning the LTS, in canonical order; edge selector
    /// ids index into this list.
    const std::vector<ReferenceSet>& selectors() const { return selectors_; }

    Labeling label() {
        std::vector<FormulaPtr> order;
        collect_postorder(query_.formula, order);
        for (const auto& f : order) sat(*f);
        return Labeling(lts_, order, sat_);
    }

    CheckResult check() {
        auto labeling = label();
        const Formula& root = *query_.formula;
        const bool verdict = labeling.holds(root, lts_->initial());
        return CheckResult{verdict, witness(root, verdict), std::move(labeling)};
    }

    /// Successors of s along Σ, stutter-completed. Sorted, duplicate-free.
    const std::vector<std::size_t>& successors(const SigmaRef& sigma, std::size_t s) {
        return relation(sigma).succ[s];
    }

private:
    struct Relation {
        std::vector<std::vector<std::size_t>> succ;
        std::vector<std::vector<std::size_t>> pred;
    };

    ReferenceSet resolve_set(const std::string& name, ErrorKind kind) const {
        const auto* s = query_.find(name);
        if (!s) throw Error(kind, name, "set is not defined");
        return s->members;
    }

    void collect_selectors(const Formula& f) {
        if (is_temporal(f.op)) {
            if (f.sigma.all) {
                selectors_.push_back(ReferenceSet{});
            } else {
                for (const auto& name : f.sigma.sets) selectors_.push_back(resolve_set(name, ErrorKind::UnknownSelector));
            }
        }
        for (const auto& g : f.operands) collect_selectors(*g);
    }

    std::vector<std::size_t> selector_ids(const SigmaRef& sigma) const {
        std::vector<ReferenceSet> sets;
        if (sigma.all) {
            sets.push_back(ReferenceSet{});
        } else {
            for (const auto& name : sigma.sets) sets.push_back(resolve_set(name, ErrorKind::UnknownSelector));
        }
        std::vector<std::size_t> ids;
        for (auto r : sets) {
            auto it = std::find(selectors_.begin(), selectors_.end(), r);
            ids.push_back(static_cast<std::size_t>(it - selectors_.begin()));
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    }

    const Relation& relation(const SigmaRef& sigma) {
        auto ids = selector_ids(sigma);
        auto it = relations_.find(ids);
        if (it != relations_.end()) return it->second;

        const auto n = lts_->size();
        Relation rel;
        rel.succ.resize(n);
        rel.pred.resize(n);
        for (std::size_t s = 0; s < n; ++s) {
            auto [begin, end] = lts_->out_edges(s);
            for (auto e = begin; e != end; ++e)
                if (std::binary_search(ids.begin(), ids.end(), e->selector)) rel.succ[s].push_back(e->to);
            auto& out = rel.succ[s];
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            if (out.empty()) out.push_back(s);  // stutter
            for (auto t : out) rel.pred[t].push_back(s);
        }
        return relations_.emplace(std::move(ids), std::move(rel)).first->second;
    }

    const StateSemantics& state_semantics(std::size_t s) {
        if (!semantics_[s]) semantics_[s].emplace(fw_, lts_->states()[s], limits_.max_visible);
        return *semantics_[s];
    }

    // -- set operations -----------------------------------------------------

    static StateSet complement(StateSet a) {
        a.flip();
        return a;
    }

    static StateSet both(const StateSet& a, const StateSet& b) {
        StateSet out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
        return out;
    }

    static StateSet either(const StateSet& a, const StateSet& b) {
        StateSet out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
        return out;
    }

    StateSet ex(const Relation& rel, const StateSet& target) const {
        StateSet out(target.size(), false);
        for (std::size_t s = 0; s < target.size(); ++s)
            for (auto t : rel.succ[s])
                if (target[t]) {
                    out[s] = true;
                    break;
                }
        return out;
    }

    /// Least fixpoint: backward search from `goal` through `through`.
    StateSet eu(const Relation& rel, const StateSet& through, const StateSet& goal) const {
        StateSet out = goal;
        std::deque<std::size_t> work;
        for (std::size_t s = 0; s < goal.size(); ++s)
            if (goal[s]) work.push_back(s);
        while (!work.empty()) {
            auto t = work.front();
            work.pop_front();
            for (auto p : rel.pred[t])
                if (!out[p] && through[p]) {
                    out[p] = true;
                    work.push_back(p);
                }
        }
        return out;
    }

    /// Greatest fixpoint: repeatedly drop states with no successor left.
    StateSet eg(const Relation& rel, const StateSet& inv) const {
        const auto n = inv.size();
        StateSet out = inv;
        std::vector<std::size_t> live(n, 0);
        std::deque<std::size_t> dead;
        for (std::size_t s = 0; s < n; ++s) {
            if (!out[s]) continue;
            for (auto t : rel.succ[s])
                if (out[t]) ++live[s];
            if (live[s] == 0) dead.push_back(s);
        }
        while (!dead.empty()) {
            auto s = dead.front();
            dead.pop_front();
            if (!out[s]) continue;
            out[s] = false;
            for (auto p : rel.pred[s])
                if (out[p] && --live[p] == 0) dead.push_back(p);
        }
        return out;
    }

    const StateSet& sat(const Formula& f) {
        if (auto it = sat_.find(&f); it != sat_.end()) return it->second;
        StateSet out = compute(f);
        return sat_.emplace(&f, std::move(out)).first->second;
    }

    StateSet compute(const Formula& f) {
        const auto n = lts_->size();
        const auto& states = lts_->states();
        switch (f.op) {
            case Op::True: return StateSet(n, true);
            case Op::False: return StateSet(n, false);
            case Op::In: {
                const bool member = resolve_set(f.set, ErrorKind::UnknownName).contains(argument(f.argument));
                return StateSet(n, member);
            }
            case Op::Visible: {
                const auto a = argument(f.argument);
                StateSet out(n);
                for (std::size_t s = 0; s < n; ++s) out[s] = states[s].visible.contains(a);
                return out;
            }
            case Op::Sem: {
                const auto candidate = resolve_set(f.set, ErrorKind::UnknownName);
                StateSet out(n);
                for (std::size_t s = 0; s < n; ++s) {
                    // An improper candidate fails every label without enumeration.
                    out[s] = candidate.subset_of(states[s].visible) &&
                             state_semantics(s).holds(f.semantics, candidate);
                }
                return out;
            }
            case Op::Not: return complement(sat(*f.operands[0]));
            case Op::And: return both(sat(*f.operands[0]), sat(*f.operands[1]));
            case Op::Or: return either(sat(*f.operands[0]), sat(*f.operands[1]));
            case Op::Implies: return either(complement(sat(*f.operands[0])), sat(*f.operands[1]));
            default: break;
        }

        const auto& rel = relation(f.sigma);
        const StateSet& a = sat(*f.operands[0]);
        switch (f.op) {
            case Op::EX: return ex(rel, a);
            case Op::AX: return complement(ex(rel, complement(a)));
            case Op::EF: return eu(rel, StateSet(n, true), a);
            case Op::AG: return complement(eu(rel, StateSet(n, true), complement(a)));
            case Op::EG: return eg(rel, a);
            case Op::AF: return complement(eg(rel, complement(a)));
            case Op::EU: return eu(rel, a, sat(*f.operands[1]));
            case Op::AU: {
                // A[a U b] = ¬(E[¬b U (¬a ∧ ¬b)] ∨ EG ¬b)
                const StateSet not_b = complement(sat(*f.operands[1]));
                const StateSet bad = both(complement(a), not_b);
                return complement(either(eu(rel, not_b, bad), eg(rel, not_b)));
            }
            default: break;
        }
        return StateSet(n, false);
    }

    ArgIndex argument(const std::string& name) const {
        auto idx = fw_.find(name);
        if (!idx) throw Error(ErrorKind::UnknownName, name, "argument is not declared");
        return *idx;
    }

    // -- witnesses ----------------------------------------------------------

    /// Shortest path from the initial state through `through` to `goal`.
    std::vector<std::size_t> path_to(const Relation& rel, const StateSet& through, const StateSet& goal) const {
        const auto n = lts_->size();
        const std::size_t none = n;
        std::vector<std::size_t> parent(n, none);
        std::vector<bool> seen(n, false);
        std::deque<std::size_t> work{lts_->initial()};
        seen[lts_->initial()] = true;
        while (!work.empty()) {
            auto s = work.front();
            work.pop_front();
            if (goal[s]) {
                std::vector<std::size_t> path;
                for (auto cur = s; cur != none; cur = parent[cur]) path.push_back(cur);
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (!through[s]) continue;
            for (auto t : rel.succ[s])
                if (!seen[t]) {
                    seen[t] = true;
                    parent[t] = s;
                    work.push_back(t);
                }
        }
        return {};
    }

    /// Extends a finite path by following successors, preferring states in
    /// `prefer`, until a state repeats.
    Lasso close_loop(const Relation& rel, std::vector<std::size_t> path, const StateSet* prefer = nullptr) const {
        for (;;) {
            const auto& succ = rel.succ[path.back()];
            std::size_t next = succ.front();
            if (prefer) {
                auto it = std::find_if(succ.begin(), succ.end(), [&](std::size_t t) { return (*prefer)[t]; });
                if (it != succ.end()) next = *it;
            }
            auto seen = std::find(path.begin(), path.end(), next);
            if (seen != path.end()) {
                Lasso lasso;
                lasso.prefix.assign(path.begin(), seen);
                lasso.cycle.assign(seen, path.end());
                return lasso;
            }
            path.push_back(next);
        }
    }

    std::optional<Lasso> witness(const Formula& f, bool verdict) {
        if (!is_temporal(f.op)) return std::nullopt;
        const bool existential = f.op == Op::EX || f.op == Op::EF || f.op == Op::EG || f.op == Op::EU;
        if (existential != verdict) return std::nullopt;

        const auto n = lts_->size();
        const auto& rel = relation(f.sigma);
        const StateSet all(n, true);
        const StateSet& a = sat(*f.operands[0]);
        const auto init = lts_->initial();

        auto step_into = [&](const StateSet& goal) {
            for (auto t : rel.succ[init])
                if (goal[t]) return close_loop(rel, {init, t});
            return close_loop(rel, {init});
        };

        switch (f.op) {
            case Op::EX: return step_into(a);
            case Op::AX: return step_into(complement(a));
            case Op::EF: return close_loop(rel, path_to(rel, all, a));
            case Op::AG: return close_loop(rel, path_to(rel, all, complement(a)));
            case Op::EU: return close_loop(rel, path_to(rel, a, sat(*f.operands[1])));
            case Op::EG: {
                const auto good = eg(rel, a);
                return close_loop(rel, {init}, &good);
            }
            case Op::AF: {
                const auto good = eg(rel, complement(a));
                return close_loop(rel, {init}, &good);
            }
            case Op::AU: {
                const StateSet not_b = complement(sat(*f.operands[1]));
                const StateSet bad = both(complement(a), not_b);
                if (eu(rel, not_b, bad)[init]) return close_loop(rel, path_to(rel, not_b, bad));
                const auto good = eg(rel, not_b);
                return close_loop(rel, {init}, &good);
            }
            default: return std::nullopt;
        }
    }

    const Framework& fw_;
    Query query_;
    Limits limits_;
    std::vector<ReferenceSet> selectors_;
    std::shared_ptr<const LTS> lts_;
    std::map<std::vector<std::size_t>, Relation> relations_;
    std::vector<std::optional<StateSemantics>> semantics_;
    std::unordered_map<const Formula*, StateSet> sat_;
};

inline Labeling label(const Framework& fw, const Query& query, const Limits& limits = {}) {
    return ModelChecker(fw, query, limits).label();
}

inline CheckResult check(const Framework& fw, const Query& query, const Limits& limits = {}) {
    return ModelChecker(fw, query, limits).check();
}

}  // namespace apa::ctl
