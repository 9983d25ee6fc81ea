#ifndef ORDAUTO_AUTOMATON_IO_HPP
#define ORDAUTO_AUTOMATON_IO_HPP

// Line-oriented automaton text format:
//   alphabet <sym>...
//   states <name>...
//   initial <name>...
//   leafaccept <state> <sym>
//   trans <src> <sym> <left> <right>
// '#' starts a comment.  Convolution symbols use '|' between parts.

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "alphabet.hpp"
#include "automaton.hpp"
#include "error.hpp"

namespace ordauto {

class AutomatonFormatError : public FormatError {
public:
    AutomatonFormatError(std::size_t line, const std::string& what)
        : FormatError("automaton line " + std::to_string(line) + ": " + what), line_number(line) {}
    std::size_t line_number;
};

inline TreeAutomaton parse_automaton(std::string_view text) {
    std::optional<Alphabet> alphabet;
    std::set<std::string> listed;
    std::map<std::string, State> names;
    std::vector<State> init;
    std::vector<LeafRule> leaf;
    std::vector<Transition> trans;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) { throw AutomatonFormatError(lineno, what); };
    auto state = [&](const std::string& n) {
        auto it = names.find(n);
        if (it == names.end()) fail("unknown state '" + n + "'");
        return it->second;
    };
    auto symbol = [&](const std::string& s) {
        if (!alphabet) fail("alphabet must come first");
        if (!listed.count(s)) fail("symbol '" + s + "' not in alphabet");
        return *alphabet->parse(s);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        const std::string& d = tok[0];
        if (d == "alphabet") {
            if (alphabet) fail("duplicate alphabet line");
            if (tok.size() < 2) fail("empty alphabet");
            std::set<std::string> base;
            std::size_t arity = 0;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                for (char c : tok[i])
                    if (!is_symbol_char(c)) fail("bad symbol '" + tok[i] + "'");
                auto parts = symbol_parts(tok[i]);
                if (arity == 0) arity = parts.size();
                if (parts.size() != arity) fail("symbols of mixed arity");
                bool all_pad = true;
                for (const auto& p : parts) {
                    if (p.empty()) fail("empty symbol part in '" + tok[i] + "'");
                    if (p != kPad) {
                        base.insert(p);
                        all_pad = false;
                    }
                }
                if (all_pad) fail("all-pad symbol");
                listed.insert(tok[i]);
            }
            try {
                alphabet = Alphabet(std::vector<std::string>(base.begin(), base.end()), arity);
            } catch (const Error& e) {
                fail(e.what());
            }
        } else if (d == "states") {
            for (std::size_t i = 1; i < tok.size(); ++i)
                if (!names.emplace(tok[i], static_cast<State>(names.size())).second) fail("duplicate state '" + tok[i] + "'");
        } else if (d == "initial") {
            for (std::size_t i = 1; i < tok.size(); ++i) init.push_back(state(tok[i]));
        } else if (d == "leafaccept") {
            if (tok.size() != 3) fail("leafaccept takes a state and a symbol");
            leaf.push_back({state(tok[1]), symbol(tok[2])});
        } else if (d == "trans") {
            if (tok.size() != 5) fail("trans takes src sym left right");
            trans.push_back({state(tok[1]), symbol(tok[2]), state(tok[3]), state(tok[4])});
        } else {
            fail("unknown directive '" + d + "'");
        }
    }
    if (!alphabet) throw AutomatonFormatError(lineno, "missing alphabet line");
    return TreeAutomaton(*alphabet, names.size(), std::move(init), std::move(leaf), std::move(trans));
}

/// Canonical text form; states are named q0, q1, ... and every symbol of the alphabet is listed.
inline std::string write_automaton(const TreeAutomaton& a) {
    std::ostringstream out;
    out << "alphabet";
    for (Symbol s = 0; s < a.alphabet().size(); ++s) out << ' ' << a.alphabet().text(s);
    out << "\nstates";
    for (State q = 0; q < a.num_states(); ++q) out << " q" << q;
    out << "\ninitial";
    for (State q : a.initial()) out << " q" << q;
    out << '\n';
    for (const auto& r : a.leaf_rules()) out << "leafaccept q" << r.state << ' ' << a.alphabet().text(r.sym) << '\n';
    for (const auto& t : a.transitions())
        out << "trans q" << t.src << ' ' << a.alphabet().text(t.sym) << " q" << t.left << " q" << t.right << '\n';
    return out.str();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline TreeAutomaton load_automaton(const std::string& path) {
    try {
        return parse_automaton(read_text_file(path));
    } catch (const AutomatonFormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline void save_automaton(const TreeAutomaton& a, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << write_automaton(a);
}

}  // namespace ordauto

#endif
