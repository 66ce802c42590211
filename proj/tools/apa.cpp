// apa: command-line front end for persuasion argumentation frameworks.
//
// Exit codes: 0 success (or formula true), 2 formula false, 1 any error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "apa/apa.hpp"
#include "apa/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFalse = 2;

struct Common {
    std::string framework_path;
    bool json = false;
    apa::Limits limits;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("framework", c.framework_path, "framework file")->required();
    cmd->add_flag("--json", c.json, "emit JSON instead of text");
    cmd->add_option("--max-states", c.limits.max_states, "refuse transition systems with more states")
        ->capture_default_str();
    cmd->add_option("--max-args", c.limits.max_visible,
                    "refuse extension enumeration above this many visible arguments")
        ->capture_default_str();
}

apa::Framework load(const Common& c) { return apa::io::parse_framework(apa::io::read_file(c.framework_path)); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persuasion argumentation: reachable states, semantics and CTL queries"};
    app.require_subcommand(1);

    Common states_opts, transitions_opts, semantics_opts, check_opts, dot_opts;
    std::string states_sigma = "all", transitions_sigma, dot_sigma = "all";
    std::string state_spec, which = "ad", query_path, dot_which;

    auto* states = app.add_subcommand("states", "list reachable states");
    add_common(states, states_opts);
    states->add_option("--sigma", states_sigma, "'all' or reference sets like {a2},{a2,a5}")->capture_default_str();

    auto* transitions = app.add_subcommand("transitions", "list labelled transitions");
    add_common(transitions, transitions_opts);
    transitions->add_option("--sigma", transitions_sigma, "'all' or reference sets like {a2},{a2,a5}")->required();

    auto* semantics = app.add_subcommand("semantics", "list extensions at a state");
    add_common(semantics, semantics_opts);
    semantics->add_option("--state", state_spec, "visible arguments, e.g. a2,a3,a4 (default: initial)");
    semantics->add_option("--which", which, "ad, co, pr, st or gr")
        ->check(CLI::IsMember({"ad", "co", "pr", "st", "gr"}))
        ->capture_default_str();

    auto* check = app.add_subcommand("check", "model-check a query at the initial state");
    add_common(check, check_opts);
    check->add_option("query", query_path, "query file")->required();

    auto* dot = app.add_subcommand("dot", "emit the transition system as Graphviz DOT");
    add_common(dot, dot_opts);
    dot->add_option("--sigma", dot_sigma, "'all' or reference sets like {a2},{a2,a5}")->capture_default_str();
    dot->add_option("--which", dot_which, "annotate states with extensions (ad, co, pr, st or gr)")
        ->check(CLI::IsMember({"ad", "co", "pr", "st", "gr"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitError;
    }

    try {
        if (*states) {
            auto fw = load(states_opts);
            auto lts = apa::reachable(fw, apa::io::parse_sigma(states_sigma, fw), states_opts.limits);
            if (states_opts.json)
                std::cout << apa::io::lts_json(fw, lts, false).dump(2) << '\n';
            else
                std::cout << apa::io::states_text(fw, lts);
            return kExitOk;
        }
        if (*transitions) {
            auto fw = load(transitions_opts);
            auto lts = apa::reachable(fw, apa::io::parse_sigma(transitions_sigma, fw), transitions_opts.limits);
            if (transitions_opts.json)
                std::cout << apa::io::lts_json(fw, lts, true).dump(2) << '\n';
            else
                std::cout << apa::io::transitions_text(fw, lts);
            return kExitOk;
        }
        if (*semantics) {
            auto fw = load(semantics_opts);
            apa::State s = state_spec.empty() ? fw.initial_state()
                                              : apa::State{apa::io::parse_argument_list(state_spec, fw)};
            auto w = *apa::parse_semantics(which);
            auto exts = apa::extensions(fw, w, s, semantics_opts.limits);
            if (semantics_opts.json)
                std::cout << apa::io::extensions_json(fw, w, s, exts).dump(2) << '\n';
            else
                std::cout << apa::io::extensions_text(fw, exts);
            return kExitOk;
        }
        if (*check) {
            auto fw = load(check_opts);
            auto query = apa::ctl::parse_query(apa::io::read_file(query_path), fw);
            auto result = apa::ctl::check(fw, query, check_opts.limits);
            if (check_opts.json)
                std::cout << apa::io::check_json(fw, result).dump(2) << '\n';
            else
                std::cout << apa::io::check_text(fw, result);
            return result.verdict ? kExitOk : kExitFalse;
        }
        if (*dot) {
            auto fw = load(dot_opts);
            auto lts = apa::reachable(fw, apa::io::parse_sigma(dot_sigma, fw), dot_opts.limits);
            std::vector<std::string> notes;
            if (!dot_which.empty()) {
                auto w = *apa::parse_semantics(dot_which);
                for (const auto& s : lts.states()) {
                    std::string line = dot_which + ":";
                    for (auto e : apa::extensions(fw, w, s, dot_opts.limits)) line += " " + fw.format(e);
                    notes.push_back(line);
                }
            }
            std::cout << apa::io::export_dot(fw, lts, dot_which.empty() ? nullptr : &notes);
            return kExitOk;
        }
    } catch (const apa::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
