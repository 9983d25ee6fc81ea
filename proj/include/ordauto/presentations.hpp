#ifndef ORDAUTO_PRESENTATIONS_HPP
#define ORDAUTO_PRESENTATIONS_HPP

// Presentations of w^(w^n) with order and addition, their restrictions to an
// ordinal bound, and the bundle directory format:
//   meta      "level <n>" and optionally "bound <cnf>"
//   dom.aut, le.aut, add.aut

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "automaton_io.hpp"
#include "cnf.hpp"
#include "codes.hpp"
#include "fo_compiler.hpp"
#include "semantic.hpp"

namespace ordauto {

inline constexpr std::size_t kDefaultMaxLevel = 4;

struct PresentationBundle {
    std::size_t level = 1;
    Presentation presentation;
    /// The ordinal the domain was restricted to, if any.
    std::optional<OrdCNF> bound;
};

inline BottomUpDFA le_dfa(std::size_t n, const Limits& limits = {}) { return relation_dfa(Relation::Le, n, limits); }
inline BottomUpDFA add_dfa(std::size_t n, const Limits& limits = {}) { return relation_dfa(Relation::Add, n, limits); }

inline TreeAutomaton le_automaton(std::size_t n, const Limits& limits = {}) { return tidy(to_nta(le_dfa(n, limits)), limits); }
inline TreeAutomaton add_automaton(std::size_t n, const Limits& limits = {}) {
    return tidy(to_nta(add_dfa(n, limits)), limits);
}

inline void check_level(std::size_t n, std::size_t max_level) {
    if (n == 0) throw DomainError("level must be at least 1");
    if (n > max_level)
        throw DomainError("level " + std::to_string(n) + " is above the ceiling " + std::to_string(max_level));
}

/// (w^(w^n); le, add).
inline PresentationBundle build_presentation(std::size_t n, const Limits& limits = {},
                                             std::size_t max_level = kDefaultMaxLevel) {
    check_level(n, max_level);
    PresentationBundle b;
    b.level = n;
    b.presentation.set("dom", minimal_dfa(domain_automaton(n), limits), limits);
    b.presentation.set("le", le_dfa(n, limits), limits);
    b.presentation.set("add", add_dfa(n, limits), limits);
    return b;
}

/// Replaces dom by the unary set `dom` and cuts le and add down to it.
inline PresentationBundle with_domain(const PresentationBundle& b, Compiler& c, const BottomUpDFA& dom,
                                      const Limits& limits = {}) {
    c.define("dom_new", dom);
    PresentationBundle out;
    out.level = b.level;
    out.bound = b.bound;
    out.presentation.set("le", c.compile_dfa("le(x,y) & dom_new(x) & dom_new(y)", {"x", "y"}), limits);
    out.presentation.set("add", c.compile_dfa("add(x,y,z) & dom_new(x) & dom_new(y) & dom_new(z)", {"x", "y", "z"}),
                         limits);
    out.presentation.set("dom", dom, limits);
    return out;
}

/// The elements below a; a must be below w^(w^level) and nonzero.
inline PresentationBundle restrict(const PresentationBundle& b, const OrdCNF& a, const Limits& limits = {}) {
    if (a.is_zero()) throw OutOfRange("restriction bound must be nonzero");
    if (!below_level(a, b.level))
        throw OutOfRange(render(a) + " is not below w^(w^" + std::to_string(b.level) + ")");
    const SigmaTree code = encode(b.level, a);
    Compiler c(b.presentation, limits);
    c.define("bound", minimal_dfa(TreeAutomaton::singleton(b.presentation.base(), code), limits));
    const BottomUpDFA dom = c.compile_dfa("EX c. (bound(c) & le(x,c) & ~x=c)", {"x"});
    PresentationBundle out = with_domain(b, c, dom, limits);
    out.bound = b.bound && cmp(*b.bound, a) < 0 ? *b.bound : a;
    return out;
}

/// Restriction of the full presentation at the given level.
inline PresentationBundle restrict(std::size_t level, const OrdCNF& a, const Limits& limits = {}) {
    return restrict(build_presentation(level, limits), a, limits);
}

inline void save_bundle(const PresentationBundle& b, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream meta(fs::path(dir) / "meta", std::ios::binary);
    if (!meta) throw Error("cannot write " + (fs::path(dir) / "meta").string());
    meta << "level " << b.level << '\n';
    if (b.bound) meta << "bound " << render(*b.bound) << '\n';
    for (const char* name : {"dom", "le", "add"})
        save_automaton(b.presentation.at(name), (fs::path(dir) / (std::string(name) + ".aut")).string());
}

inline PresentationBundle load_bundle(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw FormatError("bundle directory " + dir + " does not exist");
    PresentationBundle b;
    std::istringstream meta(read_text_file((fs::path(dir) / "meta").string()));
    bool have_level = false;
    for (std::string line; std::getline(meta, line);) {
        if (line.empty()) continue;
        const auto sp = line.find(' ');
        const std::string key = line.substr(0, sp);
        const std::string value = sp == std::string::npos ? "" : line.substr(sp + 1);
        if (key == "level") {
            std::size_t n = 0;
            std::size_t used = 0;
            try {
                n = std::stoul(value, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != value.size() || n == 0) throw FormatError("meta: bad level '" + value + "'");
            b.level = n;
            have_level = true;
        } else if (key == "bound") {
            b.bound = parse_cnf(value);
        } else {
            throw FormatError("meta: unknown key '" + key + "'");
        }
    }
    if (!have_level) throw FormatError("meta: missing level");
    for (const char* name : {"dom", "le", "add"})
        b.presentation.relations.insert_or_assign(name, load_automaton((fs::path(dir) / (std::string(name) + ".aut")).string()));
    b.presentation.validate();
    const Signature sig = b.presentation.signature();
    if (sig.at("le") != 2) throw FormatError("le.aut must be binary");
    if (sig.at("add") != 3) throw FormatError("add.aut must be ternary");
    return b;
}

}  // namespace ordauto

#endif
