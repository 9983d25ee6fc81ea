#ifndef ORDAUTO_ALPHABET_HPP
#define ORDAUTO_ALPHABET_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "tree.hpp"

namespace ordauto {

using Symbol = std::uint32_t;

/// Convolution alphabet of a given arity over a base alphabet.
///
/// A symbol is a tuple of parts, each either the pad (part 0) or a base symbol
/// (part j for base()[j-1]); the all-pad tuple is excluded.  Arity 1 is the plain
/// base alphabet.  Symbols are numbered by their mixed-radix code minus one, so the
/// alphabet is never materialized.
class Alphabet {
public:
    Alphabet() = default;

    Alphabet(std::vector<std::string> base, std::size_t arity) : base_(std::move(base)), arity_(arity) {
        std::sort(base_.begin(), base_.end());
        base_.erase(std::unique(base_.begin(), base_.end()), base_.end());
        if (base_.empty()) throw DomainError("alphabet needs at least one base symbol");
        if (arity_ == 0) throw DomainError("alphabet arity must be at least 1");
        for (const auto& b : base_) {
            if (b.empty() || b == kPad || b.find(kPartSeparator) != std::string::npos ||
                !std::all_of(b.begin(), b.end(), is_symbol_char))
                throw FormatError("invalid base symbol '" + b + "'");
        }
        std::uint64_t total = 1;
        powers_.push_back(1);
        for (std::size_t i = 0; i < arity_; ++i) {
            total *= radix();
            if (total > (1u << 20)) throw ResourceError("convolution alphabet too large");
            powers_.push_back(static_cast<std::uint32_t>(total));
        }
        size_ = static_cast<std::uint32_t>(total - 1);
    }

    const std::vector<std::string>& base() const noexcept { return base_; }
    std::size_t arity() const noexcept { return arity_; }
    std::uint32_t radix() const noexcept { return static_cast<std::uint32_t>(base_.size() + 1); }
    /// Number of symbols.
    std::uint32_t size() const noexcept { return size_; }

    /// Part i of s: 0 for pad, j > 0 for base()[j-1].
    std::uint32_t part(Symbol s, std::size_t i) const noexcept { return ((s + 1) / powers_[i]) % radix(); }

    std::vector<std::uint32_t> parts(Symbol s) const {
        std::vector<std::uint32_t> p(arity_);
        for (std::size_t i = 0; i < arity_; ++i) p[i] = part(s, i);
        return p;
    }

    /// Symbol with the given parts; nullopt for the all-pad tuple.
    std::optional<Symbol> make(std::span<const std::uint32_t> parts) const {
        std::uint32_t code = 0;
        for (std::size_t i = 0; i < arity_; ++i) code += parts[i] * powers_[i];
        if (code == 0) return std::nullopt;
        return code - 1;
    }

    /// Whether every part other than i is the pad.
    bool only_coordinate(Symbol s, std::size_t i) const noexcept {
        return (s + 1) == part(s, i) * powers_[i];
    }

    std::string text(Symbol s) const {
        std::string out;
        for (std::size_t i = 0; i < arity_; ++i) {
            if (i) out += kPartSeparator;
            const auto p = part(s, i);
            out += p == 0 ? std::string(kPad) : base_[p - 1];
        }
        return out;
    }

    std::optional<Symbol> parse(std::string_view label) const {
        const auto pieces = symbol_parts(label);
        if (pieces.size() != arity_) return std::nullopt;
        std::vector<std::uint32_t> p(arity_);
        for (std::size_t i = 0; i < arity_; ++i) {
            if (pieces[i] == kPad) continue;
            auto it = std::lower_bound(base_.begin(), base_.end(), pieces[i]);
            if (it == base_.end() || *it != pieces[i]) return std::nullopt;
            p[i] = static_cast<std::uint32_t>(it - base_.begin()) + 1;
        }
        return make(p);
    }

    /// The plain (arity 1) alphabet over the same base.
    Alphabet plain() const { return Alphabet(base_, 1); }
    Alphabet with_arity(std::size_t k) const { return Alphabet(base_, k); }

    bool operator==(const Alphabet& o) const { return base_ == o.base_ && arity_ == o.arity_; }

    std::string describe() const {
        std::string s = "{";
        for (std::size_t i = 0; i < base_.size(); ++i) s += (i ? "," : "") + base_[i];
        return s + "}^" + std::to_string(arity_);
    }

private:
    std::vector<std::string> base_;
    std::size_t arity_ = 0;
    std::vector<std::uint32_t> powers_;
    std::uint32_t size_ = 0;
};

inline void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
    if (!(a == b)) throw AlphabetMismatch("alphabet mismatch: " + a.describe() + " vs " + b.describe());
}

}  // namespace ordauto

#endif
