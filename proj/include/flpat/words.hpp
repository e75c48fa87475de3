#ifndef FLPAT_WORDS_HPP
#define FLPAT_WORDS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace flpat {

/// Thrown when a configurable exploration cap is exceeded.  Distinguishes
/// "gave up" from "no" for the search procedures.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Caps shared by the bounded search procedures.
struct SearchLimits {
    std::uint64_t max_configs = 1'000'000;  // visited configurations per search
    std::uint64_t max_len = 1'000'000;      // longest word any search may build
};

/// A symbol is an atomic token (no whitespace), not a single character, so
/// gadget alphabets like {#, c1, ..., cn} need no escaping.
using Symbol = std::string;
using Word = std::vector<Symbol>;

/// A pattern is a non-empty word over a variable alphabet.
using Pattern = std::vector<Symbol>;

/// Non-erasing morphism: every image is a non-empty word.
using Morphism = std::map<Symbol, Word>;

/// Ordered set of distinct symbols.  Declaration order fixes the
/// lexicographic order used by every enumerator.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
        if (symbols_.empty())
            throw std::invalid_argument("alphabet must be non-empty");
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            const Symbol& s = symbols_[i];
            if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos)
                throw std::invalid_argument("bad symbol token: '" + s + "'");
            if (!index_.emplace(s, i).second)
                throw std::invalid_argument("duplicate symbol: " + s);
        }
    }

    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }

    bool contains(const Symbol& s) const { return index_.count(s) != 0; }

    std::size_t index(const Symbol& s) const {
        auto it = index_.find(s);
        if (it == index_.end())
            throw std::invalid_argument("symbol not in alphabet: " + s);
        return it->second;
    }

    bool contains_word(const Word& w) const {
        return std::all_of(w.begin(), w.end(),
                           [&](const Symbol& s) { return contains(s); });
    }

    bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }

private:
    std::vector<Symbol> symbols_;
    std::unordered_map<Symbol, std::size_t> index_;
};

/// Merge alphabets left to right, keeping first-seen order.
inline Alphabet merge_alphabets(const std::vector<Alphabet>& as,
                                const std::vector<Symbol>& extra = {}) {
    std::vector<Symbol> out;
    std::unordered_map<Symbol, bool> seen;
    for (const Alphabet& a : as)
        for (const Symbol& s : a.symbols())
            if (!seen[s]) { seen[s] = true; out.push_back(s); }
    for (const Symbol& s : extra)
        if (!seen[s]) { seen[s] = true; out.push_back(s); }
    return Alphabet(out);
}

/// Hash/identity key for a word.  Tokens never contain whitespace, so a
/// space join is injective.
inline std::string word_key(const Word& w) {
    std::string k;
    for (const Symbol& s : w) { k += s; k += ' '; }
    return k;
}

/// Length-then-lexicographic order, lexicographic by alphabet position.
inline bool word_less(const Word& a, const Word& b, const Alphabet& alpha) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return alpha.index(a[i]) < alpha.index(b[i]);
    }
    return false;
}

inline Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline Word repeat(const Word& x, std::size_t k) {
    Word out;
    out.reserve(x.size() * k);
    for (std::size_t i = 0; i < k; ++i)
        out.insert(out.end(), x.begin(), x.end());
    return out;
}

inline Word subword(const Word& w, std::size_t start, std::size_t len) {
    return Word(w.begin() + start, w.begin() + start + len);
}

/// h(p) by concatenating images in pattern order.  Every variable of p must
/// have a (non-empty) image.
inline Word apply_morphism(const Morphism& h, const Pattern& p) {
    Word out;
    for (const Symbol& v : p) {
        auto it = h.find(v);
        if (it == h.end())
            throw std::invalid_argument("morphism has no image for variable " + v);
        if (it->second.empty())
            throw std::invalid_argument("erasing image for variable " + v);
        out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
}

/// Root x with w = x^k, if any.  k = 1 is degenerate and rejected.
inline std::optional<Word> is_k_power(const Word& w, std::size_t k) {
    if (k < 2)
        throw std::invalid_argument("is_k_power requires k >= 2");
    if (w.empty() || w.size() % k != 0) return std::nullopt;
    std::size_t r = w.size() / k;
    for (std::size_t i = r; i < w.size(); ++i)
        if (w[i] != w[i % r]) return std::nullopt;
    return subword(w, 0, r);
}

struct FactorOccurrence {
    std::size_t position = 0;
    std::size_t length = 0;
    bool operator==(const FactorOccurrence& o) const {
        return position == o.position && length == o.length;
    }
};

/// Leftmost, then shortest, non-empty square factor.  Absent iff w is
/// squarefree.  Naive O(|w|^2) scan; fine at desk scale.
inline std::optional<FactorOccurrence> shortest_square_factor(const Word& w) {
    for (std::size_t start = 0; start < w.size(); ++start) {
        for (std::size_t half = 1; start + 2 * half <= w.size(); ++half) {
            bool eq = true;
            for (std::size_t i = 0; i < half; ++i) {
                if (w[start + i] != w[start + half + i]) { eq = false; break; }
            }
            if (eq) return FactorOccurrence{start, 2 * half};
        }
    }
    return std::nullopt;
}

}  // namespace flpat

#endif  // FLPAT_WORDS_HPP
