#ifndef FLPAT_MATCHER_HPP
#define FLPAT_MATCHER_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "flpat/automata.hpp"
#include "flpat/words.hpp"

namespace flpat {

/// A pattern occurrence inside a host word.
struct MatchWitness {
    Morphism morphism;
    std::size_t start = 0;
    std::size_t length = 0;
};

namespace detail {

/// Backtracking matcher.  Variables bind at their first occurrence,
/// shortest image first; later occurrences verify.  The length prefilter
/// (committed images plus one per unbound position must fit) prunes the
/// exponential search.
inline bool match_exact_rec(const Pattern& p, const Word& w, std::size_t j,
                            std::size_t pos, std::map<Symbol, Word>& bindings) {
    if (j == p.size()) return pos == w.size();
    std::size_t min_rest = 0;
    for (std::size_t k = j; k < p.size(); ++k) {
        auto it = bindings.find(p[k]);
        min_rest += (it == bindings.end()) ? 1 : it->second.size();
    }
    if (pos + min_rest > w.size()) return false;
    auto it = bindings.find(p[j]);
    if (it != bindings.end()) {
        const Word& img = it->second;
        if (pos + img.size() > w.size()) return false;
        for (std::size_t i = 0; i < img.size(); ++i)
            if (w[pos + i] != img[i]) return false;
        return match_exact_rec(p, w, j + 1, pos + img.size(), bindings);
    }
    std::size_t min_others = min_rest - 1;
    for (std::size_t len = 1; pos + len + min_others <= w.size(); ++len) {
        bindings[p[j]] = subword(w, pos, len);
        // the new binding also lengthens every later occurrence of p[j];
        // recursion re-derives the prefilter with it in place
        if (match_exact_rec(p, w, j + 1, pos + len, bindings)) return true;
        bindings.erase(p[j]);
    }
    return false;
}

}  // namespace detail

/// Non-erasing h with h(p) = w, or absent.  Deterministic: first witness in
/// left-to-right, shortest-image-first order.
inline std::optional<Morphism> match_exact(const Pattern& p, const Word& w) {
    if (p.empty()) throw std::invalid_argument("pattern must be non-empty");
    std::map<Symbol, Word> bindings;
    if (!detail::match_exact_rec(p, w, 0, 0, bindings)) return std::nullopt;
    return Morphism(bindings.begin(), bindings.end());
}

/// Leftmost-then-shortest factor of w matched by p.
inline std::optional<MatchWitness> match_factor(const Pattern& p, const Word& w) {
    if (p.empty()) throw std::invalid_argument("pattern must be non-empty");
    for (std::size_t start = 0; start + p.size() <= w.size(); ++start) {
        for (std::size_t len = p.size(); start + len <= w.size(); ++len) {
            auto h = match_exact(p, subword(w, start, len));
            if (h) return MatchWitness{*h, start, len};
        }
    }
    return std::nullopt;
}

/// Exact pattern acceptance for a finite-language NFA: some x in L(m) with
/// h(p) = x.  The search runs over subset-simulation state sets, binding
/// each distinct variable at its first occurrence (shortest image first) and
/// replaying bound images deterministically, so the k-power gadgets stay
/// tractable without enumerating L(m).
inline std::optional<std::pair<Word, Morphism>> nfa_pattern_accept(
    const Nfa& m, const Pattern& p, const SearchLimits& limits = {}) {
    if (p.empty()) throw std::invalid_argument("pattern must be non-empty");
    if (!is_finite(m))
        throw std::invalid_argument("nfa_pattern_accept requires a finite language");
    // words of a finite n-state language are shorter than n
    std::size_t maxw = (std::size_t)m.state_count - 1;
    if (p.size() > maxw) return std::nullopt;

    std::map<Symbol, Word> bindings;
    std::uint64_t work = 0;
    auto charge = [&]() {
        if (++work > limits.max_configs)
            throw ResourceError("nfa_pattern_accept: exploration cap exceeded");
    };
    // only prefixes of accepted words are worth extending
    std::vector<bool> useful = detail::coaccessible_states(m);
    auto restrict_useful = [&](std::set<int> s) {
        for (auto it = s.begin(); it != s.end();)
            it = useful[*it] ? std::next(it) : s.erase(it);
        return s;
    };
    auto read_word = [&](const std::set<int>& s, const Word& img) {
        std::set<int> cur = s;
        for (const Symbol& a : img) {
            cur = restrict_useful(detail::step(m, cur, a));
            charge();
            if (cur.empty()) break;
        }
        return cur;
    };
    auto accepting = [&](const std::set<int>& s) {
        for (int q : s)
            if (m.accepting.count(q)) return true;
        return false;
    };

    std::function<bool(std::size_t, const std::set<int>&)> search =
        [&](std::size_t j, const std::set<int>& states) -> bool {
        if (j == p.size()) return accepting(states);
        auto it = bindings.find(p[j]);
        if (it != bindings.end()) {
            std::set<int> next = read_word(states, it->second);
            if (next.empty()) return false;
            return search(j + 1, next);
        }
        std::size_t committed = 0;
        for (std::size_t k = 0; k < j; ++k) committed += bindings.at(p[k]).size();
        std::size_t occ = 0, other_min = 0;
        for (std::size_t k = j; k < p.size(); ++k) {
            if (p[k] == p[j]) ++occ;
            else {
                auto b = bindings.find(p[k]);
                other_min += (b == bindings.end()) ? 1 : b->second.size();
            }
        }
        if (committed + occ + other_min > maxw) return false;
        std::size_t budget = (maxw - committed - other_min) / occ;
        struct Node { Word word; std::set<int> states; };
        std::vector<Node> level{{Word{}, states}};
        for (std::size_t len = 1; len <= budget && !level.empty(); ++len) {
            std::vector<Node> next_level;
            for (const Node& node : level) {
                for (const Symbol& a : m.alphabet.symbols()) {
                    std::set<int> s = restrict_useful(detail::step(m, node.states, a));
                    charge();
                    if (s.empty()) continue;
                    Node child{node.word, std::move(s)};
                    child.word.push_back(a);
                    bindings[p[j]] = child.word;
                    if (search(j + 1, child.states)) return true;
                    bindings.erase(p[j]);
                    next_level.push_back(std::move(child));
                }
            }
            level = std::move(next_level);
        }
        return false;
    };

    std::set<int> start = restrict_useful(detail::epsilon_closure(m, m.starts));
    if (!search(0, start)) return std::nullopt;
    Morphism h(bindings.begin(), bindings.end());
    return std::make_pair(apply_morphism(h, p), h);
}

/// Pattern-as-factor acceptance.  Infinite languages always succeed: the
/// pumping decomposition x y z yields the witness x y^{|p|} z with every
/// variable mapped to y.  Finite languages enumerate and use match_factor.
inline std::optional<std::pair<Word, MatchWitness>> nfa_pattern_factor_accept(
    const Nfa& m, const Pattern& p, const SearchLimits& limits = {}) {
    if (p.empty()) throw std::invalid_argument("pattern must be non-empty");
    auto pump = pumping_decomposition(m);
    if (pump) {
        MatchWitness wit;
        for (const Symbol& v : p) wit.morphism[v] = pump->cycle;
        wit.start = pump->prefix.size();
        wit.length = pump->cycle.size() * p.size();
        Word word = concat(pump->prefix,
                           concat(repeat(pump->cycle, p.size()), pump->suffix));
        return std::make_pair(word, wit);
    }
    std::size_t maxw = (std::size_t)m.state_count - 1;
    for (const Word& w : enumerate(m, maxw, limits)) {
        auto wit = match_factor(p, w);
        if (wit) return std::make_pair(w, *wit);
    }
    return std::nullopt;
}

}  // namespace flpat

#endif  // FLPAT_MATCHER_HPP
