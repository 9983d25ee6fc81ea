// Command-line front end over the on-disk formats.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ordauto/automaton_io.hpp"
#include "ordauto/codes.hpp"
#include "ordauto/decider.hpp"
#include "ordauto/fo_compiler.hpp"
#include "ordauto/presentations.hpp"

namespace {

using namespace ordauto;

enum Exit : int { kTrue = 0, kFalse = 1, kUsage = 2, kFormat = 3, kResource = 4 };

struct Options {
    std::size_t level = 1;
    std::string text;
    std::string dir, dir2, out, file, formula, bound, vars;
    bool trace = false;
    std::optional<std::size_t> max_states;
    std::size_t max_peels = DeciderLimits{}.max_peels;
    std::size_t max_level = kDefaultMaxLevel;
};

Limits limits_of(const Options& o) {
    Limits l;
    if (o.max_states) {
        l.max_states = *o.max_states;
    } else if (const char* env = std::getenv("ORDAUTO_MAX_STATES")) {
        std::size_t used = 0;
        try {
            l.max_states = std::stoul(env, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || env[used] != '\0') throw CLI::ValidationError("ORDAUTO_MAX_STATES", "not a number: " + std::string(env));
    }
    return l;
}

DeciderLimits decider_limits(const Options& o) {
    DeciderLimits d;
    d.states = limits_of(o);
    d.max_peels = o.max_peels;
    return d;
}

std::vector<std::string> split_vars(const std::string& s) {
    std::vector<std::string> v;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            v.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) v.push_back(cur);
    return v;
}

int cmd_query(const Options& o) {
    const PresentationBundle b = load_bundle(o.dir);
    Compiler c(b.presentation, limits_of(o));
    const FormulaPtr phi = c.parse(o.formula);
    const auto free = free_variables(*phi);
    if (free.empty() && o.out.empty()) {
        const bool v = c.eval_sentence(phi);
        std::cout << (v ? "true" : "false") << '\n';
        return v ? kTrue : kFalse;
    }
    std::vector<std::string> order = o.vars.empty() ? std::vector<std::string>(free.begin(), free.end()) : split_vars(o.vars);
    const TreeAutomaton a = c.compile(phi, order);
    if (o.out.empty()) std::cout << write_automaton(a);
    else save_automaton(a, o.out);
    return kTrue;
}

int cmd_check(const Options& o) {
    const PresentationBundle b = load_bundle(o.dir);
    bool all = true;
    for (const auto& item : sanity_check(b.presentation, limits_of(o))) {
        std::cout << (item.passed ? "ok   " : "FAIL ") << item.name << '\n';
        all = all && item.passed;
    }
    return all ? kTrue : kFalse;
}

int cmd_cnf(const Options& o) {
    const PresentationBundle b = load_bundle(o.dir);
    DecoderTrace trace;
    const OrdCNF a = cnf_of(b, o.trace ? &trace : nullptr, decider_limits(o));
    if (o.trace) std::cout << trace.text();
    std::cout << render(a) << '\n';
    return kTrue;
}

int cmd_iso(const Options& o) {
    const PresentationBundle a = load_bundle(o.dir);
    const PresentationBundle b = load_bundle(o.dir2);
    const IsoResult r = isomorphic(a, b, decider_limits(o));
    std::cout << (r.isomorphic ? "isomorphic" : "not-isomorphic") << '\n' << render(r.first) << '\n' << render(r.second) << '\n';
    return r.isomorphic ? kTrue : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tree-automatic ordinals with addition: codes, presentations, FO queries, isomorphism"};
    app.require_subcommand(1);
    Options o;

    auto budgets = [&](CLI::App* sub) {
        sub->add_option("--max-states", o.max_states, "State budget for any intermediate automaton");
    };

    auto* encode_cmd = app.add_subcommand("encode", "Print the code of an ordinal");
    encode_cmd->add_option("-n", o.level, "Level")->required();
    encode_cmd->add_option("cnf", o.text, "Ordinal in Cantor normal form")->required();

    auto* decode_cmd = app.add_subcommand("decode", "Print the ordinal of a code");
    decode_cmd->add_option("-n", o.level, "Level")->required();
    decode_cmd->add_option("tree", o.text, "Tree term")->required();

    auto* build_cmd = app.add_subcommand("build-presentation", "Write the presentation of w^(w^n)");
    build_cmd->add_option("-n", o.level, "Level")->required();
    build_cmd->add_option("-o", o.out, "Output bundle directory")->required();
    build_cmd->add_option("--max-level", o.max_level, "Highest level accepted");
    budgets(build_cmd);

    auto* restrict_cmd = app.add_subcommand("restrict", "Restrict a bundle to the ordinals below a bound");
    restrict_cmd->add_option("-p", o.dir, "Input bundle")->required();
    restrict_cmd->add_option("-a", o.bound, "Bound in Cantor normal form")->required();
    restrict_cmd->add_option("-o", o.out, "Output bundle directory")->required();
    budgets(restrict_cmd);

    auto* member_cmd = app.add_subcommand("member", "Test whether an automaton accepts a tree");
    member_cmd->add_option("-A", o.file, "Automaton file")->required();
    member_cmd->add_option("tree", o.text, "Tree term")->required();

    auto* empty_cmd = app.add_subcommand("empty", "Test an automaton for emptiness");
    empty_cmd->add_option("-A", o.file, "Automaton file")->required();

    auto* query_cmd = app.add_subcommand("query", "Evaluate a sentence or compile a formula");
    query_cmd->add_option("-p", o.dir, "Bundle")->required();
    query_cmd->add_option("-f", o.formula, "Formula")->required();
    query_cmd->add_option("-o", o.out, "Write the compiled automaton here");
    query_cmd->add_option("--vars", o.vars, "Comma-separated coordinate order (default: free variables by name)");
    budgets(query_cmd);

    auto* check_cmd = app.add_subcommand("check", "Run the sanity sentences on a bundle");
    check_cmd->add_option("-p", o.dir, "Bundle")->required();
    budgets(check_cmd);

    auto* cnf_cmd = app.add_subcommand("cnf", "Print the Cantor normal form of a bundle's ordinal");
    cnf_cmd->add_option("-p", o.dir, "Bundle")->required();
    cnf_cmd->add_flag("--trace", o.trace, "Print one line per peel first");
    cnf_cmd->add_option("--max-peels", o.max_peels, "Cap on peels");
    budgets(cnf_cmd);

    auto* iso_cmd = app.add_subcommand("iso", "Decide whether two bundles present isomorphic ordinals");
    iso_cmd->add_option("--p1,-1", o.dir, "First bundle")->required();
    iso_cmd->add_option("--p2,-2", o.dir2, "Second bundle")->required();
    iso_cmd->add_option("--max-peels", o.max_peels, "Cap on peels");
    budgets(iso_cmd);

    // CLI11 only takes single-letter short flags; accept the documented -p1/-p2 spellings
    std::vector<std::string> args(argv + 1, argv + argc);
    for (auto& a : args) {
        if (a == "-p1") a = "--p1";
        else if (a == "-p2") a = "--p2";
    }
    std::reverse(args.begin(), args.end());

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*encode_cmd) {
            std::cout << encode(o.level, parse_cnf(o.text)).to_string() << '\n';
        } else if (*decode_cmd) {
            std::cout << render(decode(o.level, parse_tree(o.text))) << '\n';
        } else if (*build_cmd) {
            save_bundle(build_presentation(o.level, limits_of(o), o.max_level), o.out);
        } else if (*restrict_cmd) {
            const OrdCNF a = parse_cnf(o.bound);
            save_bundle(restrict(load_bundle(o.dir), a, limits_of(o)), o.out);
        } else if (*member_cmd) {
            const TreeAutomaton a = load_automaton(o.file);
            const bool v = accepts(a, parse_tree(o.text));
            std::cout << (v ? "true" : "false") << '\n';
            return v ? kTrue : kFalse;
        } else if (*empty_cmd) {
            const bool v = is_empty(load_automaton(o.file));
            std::cout << (v ? "empty" : "nonempty") << '\n';
            return v ? kTrue : kFalse;
        } else if (*query_cmd) {
            return cmd_query(o);
        } else if (*check_cmd) {
            return cmd_check(o);
        } else if (*cnf_cmd) {
            return cmd_cnf(o);
        } else if (*iso_cmd) {
            return cmd_iso(o);
        }
        return kTrue;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResource;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const AlphabetMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return kResource;
    }
}
