#pragma once

// Seeded generators for frameworks and formulas. Every instance is a pure
// function of its spec, seed included.

#include <random>
#include <string>
#include <vector>

#include "apa/core.hpp"
#include "apa/ctl/formula.hpp"
#include "apa/semantics.hpp"

namespace testing_support {

struct RandomInstanceSpec {
    std::size_t arguments = 5;
    double attack_density = 0.2;
    std::size_t induce_acts = 2;
    std::size_t convert_acts = 2;
    double initial_density = 0.5;
    std::uint64_t seed = 0;
};

inline std::string arg_name(std::size_t i) { return "a" + std::to_string(i); }

inline apa::Framework random_framework(const RandomInstanceSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, spec.arguments - 1);

    apa::FrameworkSpec fs;
    for (std::size_t i = 0; i < spec.arguments; ++i) {
        fs.arguments.push_back(arg_name(i));
        if (coin(rng) < spec.initial_density) fs.initial.push_back(arg_name(i));
    }
    for (std::size_t i = 0; i < spec.arguments; ++i)
        for (std::size_t j = 0; j < spec.arguments; ++j)
            if (coin(rng) < spec.attack_density) fs.attacks.emplace_back(arg_name(i), arg_name(j));
    // Sources and triggers lean towards initially visible arguments so that
    // most instances actually move.
    auto live = [&] {
        if (!fs.initial.empty() && coin(rng) < 0.6)
            return fs.initial[std::uniform_int_distribution<std::size_t>(0, fs.initial.size() - 1)(rng)];
        return arg_name(pick(rng));
    };
    for (std::size_t k = 0; k < spec.induce_acts; ++k) {
        auto source = live();
        fs.acts.emplace_back(source, "", arg_name(pick(rng)));
    }
    for (std::size_t k = 0; k < spec.convert_acts; ++k) {
        auto source = live();
        auto trigger = live();
        fs.acts.emplace_back(source, trigger, arg_name(pick(rng)));
    }
    return apa::make_framework(fs);
}

/// A spec with sizes drawn from the given ranges; used by the sweeps.
inline RandomInstanceSpec random_spec(std::mt19937_64& rng, std::size_t max_args, std::size_t max_acts) {
    std::uniform_int_distribution<std::size_t> args(1, max_args);
    std::uniform_int_distribution<std::size_t> acts(max_acts > 0 ? 1 : 0, max_acts);
    std::uniform_real_distribution<double> density(0.0, 0.5);
    RandomInstanceSpec spec;
    spec.arguments = args(rng);
    spec.attack_density = density(rng);
    spec.induce_acts = acts(rng);
    spec.convert_acts = acts(rng);
    spec.initial_density = 0.4 + density(rng);
    spec.seed = rng();
    return spec;
}

/// Random named sets S0..S{count-1}; S0 is always the empty set.
inline std::vector<apa::ctl::NamedSet> random_sets(const apa::Framework& fw, std::mt19937_64& rng, std::size_t count) {
    std::vector<apa::ctl::NamedSet> out;
    std::uniform_int_distribution<std::uint64_t> bits(0, fw.all().bits());
    for (std::size_t i = 0; i < count; ++i) {
        apa::ArgSet s = i == 0 ? apa::ArgSet{} : apa::ArgSet(bits(rng)) & fw.all();
        // bias towards subsets of the initial state so sem() atoms are often true
        if (i % 2 == 1) s &= fw.initial();
        out.push_back({"S" + std::to_string(i), s});
    }
    return out;
}

class FormulaGenerator {
public:
    FormulaGenerator(const apa::Framework& fw, std::vector<apa::ctl::NamedSet> sets, std::mt19937_64& rng)
        : fw_(fw), sets_(std::move(sets)), rng_(rng) {}

    apa::ctl::SigmaRef sigma() {
        using apa::ctl::SigmaRef;
        if (uniform(4) == 0) return SigmaRef::wildcard();
        SigmaRef out;
        const auto count = 1 + uniform(2);
        for (std::size_t i = 0; i < count; ++i) out.sets.push_back(sets_[uniform(sets_.size())].name);
        return out;
    }

    apa::ctl::FormulaPtr atom() {
        namespace mk = apa::ctl::make;
        switch (uniform(6)) {
            case 0: return uniform(2) ? mk::top() : mk::bottom();
            case 1: return mk::in(fw_.name(uniform(fw_.size())), set_name());
            case 2: return mk::visible(fw_.name(uniform(fw_.size())));
            default: return mk::sem(apa::kAllSemantics[uniform(5)], set_name());
        }
    }

    apa::ctl::FormulaPtr formula(std::size_t depth) {
        namespace mk = apa::ctl::make;
        using apa::ctl::Op;
        if (depth == 0 || uniform(5) == 0) return atom();
        switch (uniform(14)) {
            case 0: return mk::negation(formula(depth - 1));
            case 1: return mk::conj(formula(depth - 1), formula(depth - 1));
            case 2: return mk::disj(formula(depth - 1), formula(depth - 1));
            case 3: return mk::implies(formula(depth - 1), formula(depth - 1));
            case 4: return mk::temporal(Op::AX, sigma(), formula(depth - 1));
            case 5: return mk::temporal(Op::EX, sigma(), formula(depth - 1));
            case 6: return mk::temporal(Op::AF, sigma(), formula(depth - 1));
            case 7: return mk::temporal(Op::EF, sigma(), formula(depth - 1));
            case 8: return mk::temporal(Op::AG, sigma(), formula(depth - 1));
            case 9: return mk::temporal(Op::EG, sigma(), formula(depth - 1));
            case 10: return mk::until(Op::AU, sigma(), formula(depth - 1), formula(depth - 1));
            case 11: return mk::until(Op::EU, sigma(), formula(depth - 1), formula(depth - 1));
            default: return atom();
        }
    }

    const std::vector<apa::ctl::NamedSet>& sets() const { return sets_; }

private:
    std::size_t uniform(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    std::string set_name() { return sets_[uniform(sets_.size())].name; }

    const apa::Framework& fw_;
    std::vector<apa::ctl::NamedSet> sets_;
    std::mt19937_64& rng_;
};

}  // namespace testing_support
