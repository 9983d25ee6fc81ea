#ifndef ORDAUTO_FORMULA_HPP
#define ORDAUTO_FORMULA_HPP

// First-order formulas over named relations.
//
//   formula := imp
//   imp     := or ["->" imp]
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | ("EX" | "ALL") var "." formula | "(" formula ")"
//            | name "(" var ("," var)* ")" | var "=" var
//
// A quantifier body extends as far right as possible.  Bound variables that
// shadow an enclosing binder or a free variable are renamed apart on parsing.

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace ordauto {

class SyntaxError : public FormatError {
public:
    SyntaxError(std::size_t pos, const std::string& what)
        : FormatError("formula syntax error at " + std::to_string(pos) + ": " + what), position(pos) {}
    std::size_t position;
};

class ArityError : public FormatError {
public:
    ArityError(const std::string& rel, std::size_t expected, std::size_t got)
        : FormatError("relation '" + rel + "' has arity " + std::to_string(expected) + ", used with " +
                      std::to_string(got) + " arguments"),
          name(rel) {}
    std::string name;
};

/// Relation name to arity.
using Signature = std::map<std::string, std::size_t>;

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Atom, Eq, Not, And, Or, Implies, Exists, Forall };

    Kind kind;
    std::string name;               // relation name (Atom)
    std::vector<std::string> vars;  // Atom arguments, Eq operands, or the bound variable
    std::vector<FormulaPtr> kids;

    static FormulaPtr atom(std::string rel, std::vector<std::string> args) {
        return std::make_shared<const Formula>(Formula{Kind::Atom, std::move(rel), std::move(args), {}});
    }
    static FormulaPtr eq(std::string a, std::string b) {
        return std::make_shared<const Formula>(Formula{Kind::Eq, "", {std::move(a), std::move(b)}, {}});
    }
    static FormulaPtr negate(FormulaPtr f) {
        return std::make_shared<const Formula>(Formula{Kind::Not, "", {}, {std::move(f)}});
    }
    static FormulaPtr binary(Kind k, FormulaPtr a, FormulaPtr b) {
        return std::make_shared<const Formula>(Formula{k, "", {}, {std::move(a), std::move(b)}});
    }
    static FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return binary(Kind::And, std::move(a), std::move(b)); }
    static FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return binary(Kind::Or, std::move(a), std::move(b)); }
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return binary(Kind::Implies, std::move(a), std::move(b)); }
    static FormulaPtr exists(std::string v, FormulaPtr body) {
        return std::make_shared<const Formula>(Formula{Kind::Exists, "", {std::move(v)}, {std::move(body)}});
    }
    static FormulaPtr forall(std::string v, FormulaPtr body) {
        return std::make_shared<const Formula>(Formula{Kind::Forall, "", {std::move(v)}, {std::move(body)}});
    }
};

inline bool is_quantifier(const Formula& f) { return f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall; }

/// Free variables, sorted by name.
inline std::set<std::string> free_variables(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Atom:
        case Formula::Kind::Eq:
            return {f.vars.begin(), f.vars.end()};
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            auto s = free_variables(*f.kids[0]);
            s.erase(f.vars[0]);
            return s;
        }
        default: {
            std::set<std::string> s;
            for (const auto& k : f.kids) {
                auto t = free_variables(*k);
                s.insert(t.begin(), t.end());
            }
            return s;
        }
    }
}

inline void all_variables(const Formula& f, std::set<std::string>& out) {
    out.insert(f.vars.begin(), f.vars.end());
    for (const auto& k : f.kids) all_variables(*k, out);
}

/// Text in the input grammar, fully parenthesized.
inline std::string to_text(const Formula& f) {
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
        return s;
    };
    switch (f.kind) {
        case Formula::Kind::Atom: return f.name + "(" + join(f.vars) + ")";
        case Formula::Kind::Eq: return f.vars[0] + "=" + f.vars[1];
        case Formula::Kind::Not: return "~" + to_text(*f.kids[0]);
        case Formula::Kind::And: return "(" + to_text(*f.kids[0]) + " & " + to_text(*f.kids[1]) + ")";
        case Formula::Kind::Or: return "(" + to_text(*f.kids[0]) + " | " + to_text(*f.kids[1]) + ")";
        case Formula::Kind::Implies: return "(" + to_text(*f.kids[0]) + " -> " + to_text(*f.kids[1]) + ")";
        case Formula::Kind::Exists: return "(EX " + f.vars[0] + ". " + to_text(*f.kids[0]) + ")";
        case Formula::Kind::Forall: return "(ALL " + f.vars[0] + ". " + to_text(*f.kids[0]) + ")";
    }
    return "";
}

namespace detail {

class FormulaParser {
public:
    FormulaParser(std::string_view s, const Signature* sig) : s_(s), sig_(sig) {}

    FormulaPtr parse() {
        FormulaPtr f = implication();
        skip();
        if (pos_ != s_.size()) throw SyntaxError(pos_, "unexpected input");
        return f;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(std::string_view tok) {
        skip();
        return s_.substr(pos_, tok.size()) == tok;
    }
    bool eat(std::string_view tok) {
        if (!peek(tok)) return false;
        pos_ += tok.size();
        return true;
    }
    void expect(std::string_view tok) {
        if (!eat(tok)) throw SyntaxError(pos_, "expected '" + std::string(tok) + "'");
    }

    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    std::string word() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string variable() {
        skip();
        const std::size_t at = pos_;
        std::string v = word();
        if (v.empty() || !std::islower(static_cast<unsigned char>(v[0])) ||
            !std::all_of(v.begin(), v.end(), [](char c) { return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)); }))
            throw SyntaxError(at, "expected a variable");
        return v;
    }

    FormulaPtr implication() {
        FormulaPtr a = disjunction();
        if (eat("->")) return Formula::implies(a, implication());
        return a;
    }
    FormulaPtr disjunction() {
        FormulaPtr a = conjunction();
        while (eat("|")) a = Formula::disj(a, conjunction());
        return a;
    }
    FormulaPtr conjunction() {
        FormulaPtr a = unary();
        while (eat("&")) a = Formula::conj(a, unary());
        return a;
    }

    FormulaPtr unary() {
        skip();
        if (eat("~")) return Formula::negate(unary());
        if (eat("(")) {
            FormulaPtr f = implication();
            expect(")");
            return f;
        }
        const std::size_t at = pos_;
        const std::string w = word();
        if (w.empty()) throw SyntaxError(at, "expected a formula");
        if ((w == "EX" || w == "ALL") && !peek("(")) {
            std::string v = variable();
            expect(".");
            FormulaPtr body = implication();
            return w == "EX" ? Formula::exists(std::move(v), body) : Formula::forall(std::move(v), body);
        }
        if (eat("(")) {
            std::vector<std::string> args{variable()};
            while (eat(",")) args.push_back(variable());
            expect(")");
            if (sig_) {
                if (auto it = sig_->find(w); it != sig_->end() && it->second != args.size())
                    throw ArityError(w, it->second, args.size());
            }
            return Formula::atom(w, std::move(args));
        }
        pos_ = at;
        std::string a = variable();
        expect("=");
        std::string b = variable();
        return Formula::eq(std::move(a), std::move(b));
    }

    std::string_view s_;
    const Signature* sig_;
    std::size_t pos_ = 0;
};

class Renamer {
public:
    explicit Renamer(const Formula& root) {
        all_variables(root, used_);
        free_ = free_variables(root);
    }

    FormulaPtr run(const FormulaPtr& f, std::map<std::string, std::string>& env, std::set<std::string>& bound) {
        auto sub = [&](const std::string& v) {
            auto it = env.find(v);
            return it == env.end() ? v : it->second;
        };
        switch (f->kind) {
            case Formula::Kind::Atom: {
                std::vector<std::string> args;
                for (const auto& v : f->vars) args.push_back(sub(v));
                return Formula::atom(f->name, std::move(args));
            }
            case Formula::Kind::Eq: return Formula::eq(sub(f->vars[0]), sub(f->vars[1]));
            case Formula::Kind::Not: return Formula::negate(run(f->kids[0], env, bound));
            case Formula::Kind::And:
            case Formula::Kind::Or:
            case Formula::Kind::Implies:
                return Formula::binary(f->kind, run(f->kids[0], env, bound), run(f->kids[1], env, bound));
            case Formula::Kind::Exists:
            case Formula::Kind::Forall: {
                const std::string& v = f->vars[0];
                std::string name = v;
                if (bound.count(v) || free_.count(v)) name = fresh(v);
                bound.insert(name);
                auto saved = env.find(v) == env.end() ? std::optional<std::string>{} : std::optional<std::string>{env[v]};
                env[v] = name;
                FormulaPtr body = run(f->kids[0], env, bound);
                if (saved) env[v] = *saved;
                else env.erase(v);
                return f->kind == Formula::Kind::Exists ? Formula::exists(name, body) : Formula::forall(name, body);
            }
        }
        return f;
    }

private:
    std::string fresh(const std::string& base) {
        for (std::size_t i = 1;; ++i) {
            std::string cand = base + std::to_string(i);
            if (used_.insert(cand).second) return cand;
        }
    }

    std::set<std::string> used_;
    std::set<std::string> free_;
};

}  // namespace detail

/// Renames bound variables apart from each other and from the free variables.
inline FormulaPtr rename_apart(const FormulaPtr& f) {
    detail::Renamer r(*f);
    std::map<std::string, std::string> env;
    std::set<std::string> bound;
    return r.run(f, env, bound);
}

/// Parses and renames apart; with a signature, arities of known relations are checked.
inline FormulaPtr parse_formula(std::string_view text, const Signature* sig = nullptr) {
    detail::FormulaParser p(text, sig);
    return rename_apart(p.parse());
}

}  // namespace ordauto

#endif
