#ifndef ORDAUTO_CNF_HPP
#define ORDAUTO_CNF_HPP

// Exact ordinal arithmetic below w^w^w in Cantor Normal Form.
//
// A Poly p = a_0 + w*a_1 + ... + w^n*a_n stands for an ordinal below w^w, and an
// OrdCNF is a strictly descending sum of w^{p_i} * c_i with c_i > 0.  Coefficients
// are arbitrary precision.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace ordauto {

using Natural = boost::multiprecision::cpp_int;

class CnfSyntaxError : public FormatError {
public:
    CnfSyntaxError(std::size_t pos, const std::string& what)
        : FormatError("CNF syntax error at " + std::to_string(pos) + ": " + what), position(pos) {}
    std::size_t position;
};

class NonCanonical : public FormatError {
public:
    explicit NonCanonical(std::size_t term, const std::string& what)
        : FormatError("non-canonical CNF (term " + std::to_string(term) + "): " + what), term_index(term) {}
    std::size_t term_index;
};

/// Polynomial in w with natural coefficients; coeffs[i] multiplies w^i.
class Poly {
public:
    Poly() = default;

    /// Trailing zero coefficients are stripped.
    explicit Poly(std::vector<Natural> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static Poly constant(Natural c) { return Poly(std::vector<Natural>{std::move(c)}); }

    static Poly monomial(std::size_t degree, Natural c = 1) {
        std::vector<Natural> v(degree + 1);
        v[degree] = std::move(c);
        return Poly(std::move(v));
    }

    const std::vector<Natural>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Number of stored coefficients; 0 for the zero polynomial.
    std::size_t size() const noexcept { return coeffs_.size(); }

    /// Coefficient of w^i, zero beyond the degree.
    Natural coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Natural(0); }

    /// The part of degree below `n`.
    Poly truncated(std::size_t n) const {
        std::vector<Natural> v(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(n, coeffs_.size())));
        return Poly(std::move(v));
    }

    bool operator==(const Poly&) const = default;

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Natural> coeffs_;
};

/// Ordinal order of p(w) and q(w): higher degree wins, then coefficients from the top.
inline std::strong_ordering cmp_poly(const Poly& p, const Poly& q) {
    if (p.size() != q.size()) return p.size() <=> q.size();
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p.coeffs()[i] != q.coeffs()[i])
            return p.coeffs()[i] < q.coeffs()[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

/// Ordinal sum of two polynomials (as ordinals below w^w).
inline Poly add_poly(const Poly& p, const Poly& q) {
    if (q.is_zero()) return p;
    const std::size_t top = q.size() - 1;
    std::vector<Natural> v(std::max(p.size(), q.size()));
    for (std::size_t i = top + 1; i < p.size(); ++i) v[i] = p.coeffs()[i];
    v[top] = p.coeff(top) + q.coeffs()[top];
    for (std::size_t i = 0; i < top; ++i) v[i] = q.coeffs()[i];
    return Poly(std::move(v));
}

struct CnfTerm {
    Poly exponent;
    Natural coeff;
    bool operator==(const CnfTerm&) const = default;
};

/// Ordinal below w^w^w: sum of w^{exponent} * coeff with strictly descending exponents.
class OrdCNF {
public:
    OrdCNF() = default;

    /// Throws NonCanonical unless exponents strictly descend and coefficients are positive.
    explicit OrdCNF(std::vector<CnfTerm> terms) : terms_(std::move(terms)) {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].coeff <= 0) throw NonCanonical(i, "coefficient must be positive");
            if (i > 0 && cmp_poly(terms_[i - 1].exponent, terms_[i].exponent) != std::strong_ordering::greater)
                throw NonCanonical(i, "exponents must strictly descend");
        }
    }

    static OrdCNF natural(Natural n) {
        if (n == 0) return {};
        return OrdCNF({CnfTerm{Poly{}, std::move(n)}});
    }

    const std::vector<CnfTerm>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool operator==(const OrdCNF&) const = default;

private:
    std::vector<CnfTerm> terms_;
};

inline std::strong_ordering cmp(const OrdCNF& a, const OrdCNF& b) {
    const auto& x = a.terms();
    const auto& y = b.terms();
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (auto c = cmp_poly(x[i].exponent, y[i].exponent); c != 0) return c;
        if (x[i].coeff != y[i].coeff)
            return x[i].coeff < y[i].coeff ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return x.size() <=> y.size();
}

inline bool operator<(const OrdCNF& a, const OrdCNF& b) { return cmp(a, b) < 0; }

/// Ordinal addition: terms of `a` below the leading exponent of `b` are absorbed.
inline OrdCNF add(const OrdCNF& a, const OrdCNF& b) {
    if (b.is_zero()) return a;
    const Poly& lead = b.terms().front().exponent;
    std::vector<CnfTerm> out;
    for (const auto& t : a.terms()) {
        if (cmp_poly(t.exponent, lead) < 0) break;
        out.push_back(t);
    }
    auto rest = b.terms().begin();
    if (!out.empty() && out.back().exponent == lead) {
        out.back().coeff += rest->coeff;
        ++rest;
    }
    out.insert(out.end(), rest, b.terms().end());
    return OrdCNF(std::move(out));
}

inline OrdCNF omega_power(Poly p) { return OrdCNF({CnfTerm{std::move(p), 1}}); }

inline bool is_omega_power(const OrdCNF& a) {
    return a.terms().size() == 1 && a.terms().front().coeff == 1;
}

/// Whether a is closed under addition (g, h < a implies g + h < a).  Zero is
/// vacuously closed; callers that need the distinction test is_zero() first.
inline bool is_add_closed(const OrdCNF& a) { return a.is_zero() || is_omega_power(a); }

namespace detail {

inline std::string render_poly_term(std::size_t degree, const Natural& c) {
    std::string s;
    if (degree == 0) return c.str();
    s = "w";
    if (degree > 1) s += "^" + std::to_string(degree);
    if (c != 1) s += "*" + c.str();
    return s;
}

}  // namespace detail

/// Canonical text of a polynomial: "0", "7", "w^2*3+w+4".
inline std::string render(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p.coeffs()[i] == 0) continue;
        if (!s.empty()) s += "+";
        s += detail::render_poly_term(i, p.coeffs()[i]);
    }
    return s;
}

inline std::string render(const OrdCNF& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (const auto& t : a.terms()) {
        if (!s.empty()) s += "+";
        const Poly& e = t.exponent;
        if (e.is_zero()) {
            s += t.coeff.str();
            continue;
        }
        s += "w";
        if (e.size() == 1) {
            if (e.coeffs()[0] != 1) s += "^" + e.coeffs()[0].str();
        } else {
            s += "^(" + render(e) + ")";
        }
        if (t.coeff != 1) s += "*" + t.coeff.str();
    }
    return s;
}

namespace detail {

class CnfParser {
public:
    explicit CnfParser(std::string_view text) : s_(text) {}

    OrdCNF parse_cnf() {
        if (s_ == "0") return {};
        std::vector<CnfTerm> terms;
        for (;;) {
            terms.push_back(parse_term(terms.size()));
            if (!eat('+')) break;
        }
        if (pos_ != s_.size()) throw CnfSyntaxError(pos_, "unexpected character");
        return OrdCNF(std::move(terms));
    }

    Poly parse_whole_poly() {
        if (s_ == "0") return {};
        Poly p = parse_poly(0);
        if (pos_ != s_.size()) throw CnfSyntaxError(pos_, "unexpected character");
        return p;
    }

private:
    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Natural nat() {
        const std::size_t start = pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw CnfSyntaxError(pos_, "expected a number");
        if (s_[pos_] == '0') throw CnfSyntaxError(pos_, "numbers are positive without leading zeros");
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return Natural(std::string(s_.substr(start, pos_ - start)));
    }

    Natural coefficient(std::size_t term) {
        if (!eat('*')) return 1;
        Natural c = nat();
        if (c == 1) throw NonCanonical(term, "coefficient 1 is written implicitly");
        return c;
    }

    // pterm := "w" ["^" nat] ["*" nat] | nat
    Poly parse_poly(std::size_t term) {
        std::vector<std::pair<std::size_t, Natural>> parts;
        for (;;) {
            std::size_t degree = 0;
            Natural c;
            if (eat('w')) {
                degree = 1;
                if (eat('^')) {
                    Natural d = nat();
                    if (d == 1) throw NonCanonical(term, "w^1 is written w");
                    if (d > 1u << 20) throw CnfSyntaxError(pos_, "exponent polynomial degree too large");
                    degree = static_cast<std::size_t>(d);
                }
                c = coefficient(term);
            } else {
                c = nat();
            }
            if (!parts.empty() && parts.back().first <= degree)
                throw NonCanonical(term, "polynomial terms must strictly descend");
            parts.emplace_back(degree, std::move(c));
            if (!eat('+')) break;
        }
        std::vector<Natural> v(parts.front().first + 1);
        for (auto& [d, c] : parts) v[d] = std::move(c);
        return Poly(std::move(v));
    }

    // term := "w" ["^" pexp] ["*" nat] | nat ; pexp := "(" poly ")" | nat
    CnfTerm parse_term(std::size_t index) {
        if (!eat('w')) return CnfTerm{Poly{}, nat()};
        Poly e = Poly::constant(1);
        if (eat('^')) {
            if (eat('(')) {
                e = parse_poly(index);
                if (!eat(')')) throw CnfSyntaxError(pos_, "expected ')'");
                if (e.size() <= 1) throw NonCanonical(index, "constant exponents are written without parentheses");
            } else {
                Natural d = nat();
                if (d == 1) throw NonCanonical(index, "w^1 is written w");
                e = Poly::constant(std::move(d));
            }
        }
        Natural c = coefficient(index);
        return CnfTerm{std::move(e), std::move(c)};
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the canonical CNF grammar; see render() for the exact shape.
inline OrdCNF parse_cnf(std::string_view text) {
    detail::CnfParser p(text);
    return p.parse_cnf();
}

/// Parses a polynomial in the exponent grammar ("w^2*3+w+4", "0").
inline Poly parse_poly(std::string_view text) {
    detail::CnfParser p(text);
    return p.parse_whole_poly();
}

}  // namespace ordauto

#endif
