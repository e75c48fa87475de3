#ifndef FLPAT_TEST_HELPERS_HPP
#define FLPAT_TEST_HELPERS_HPP

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "flpat/automata.hpp"
#include "flpat/grammars.hpp"
#include "flpat/io.hpp"
#include "flpat/words.hpp"

namespace testutil {

/// Word from single-character symbols: W("0101") = 0 1 0 1.
inline flpat::Word W(const std::string& s) {
    flpat::Word w;
    for (char c : s) w.push_back(std::string(1, c));
    return w;
}

/// Word from space-separated tokens: T("a c1 #").
inline flpat::Word T(const std::string& s) { return flpat::parse_word(s + "\n"); }

/// Independent exact-match oracle: enumerate every composition of |w| into
/// |p| positive parts, then check consistency and concatenation.  Quadratic
/// blowup is fine at oracle scale.
inline bool oracle_match_exact(const flpat::Pattern& p, const flpat::Word& w) {
    std::vector<std::size_t> parts(p.size(), 1);
    auto check = [&]() {
        std::size_t total = 0;
        for (std::size_t l : parts) total += l;
        if (total != w.size()) return false;
        std::map<flpat::Symbol, flpat::Word> img;
        std::size_t pos = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            flpat::Word piece = flpat::subword(w, pos, parts[i]);
            pos += parts[i];
            auto it = img.find(p[i]);
            if (it == img.end()) img[p[i]] = piece;
            else if (it->second != piece) return false;
        }
        return true;
    };
    // odometer over part lengths 1..|w|
    while (true) {
        if (check()) return true;
        std::size_t i = 0;
        while (i < parts.size()) {
            if (parts[i] < w.size()) { ++parts[i]; break; }
            parts[i] = 1;
            ++i;
        }
        if (i == parts.size()) return false;
    }
}

/// Independent square-factor oracle built on is_k_power over all factors.
inline bool oracle_has_square_factor(const flpat::Word& w) {
    for (std::size_t start = 0; start < w.size(); ++start)
        for (std::size_t len = 2; start + len <= w.size(); len += 2)
            if (flpat::is_k_power(flpat::subword(w, start, len), 2)) return true;
    return false;
}

/// Random finite-language CFG: variable i only references variables with a
/// larger index, so the derives-graph is acyclic and L is finite.
inline flpat::Cfg random_finite_cfg(std::mt19937& rng, int max_vars = 5,
                                    int max_rhs = 3) {
    std::uniform_int_distribution<int> var_count(1, max_vars);
    int v = var_count(rng);
    flpat::Cfg g;
    g.terminals = flpat::Alphabet({"0", "1"});
    for (int i = 0; i < v; ++i) g.variables.push_back("X" + std::to_string(i));
    g.start = g.variables[0];
    std::uniform_int_distribution<int> prods_per_var(1, 2);
    std::uniform_int_distribution<int> rhs_len(0, max_rhs);
    for (int i = 0; i < v; ++i) {
        int np = prods_per_var(rng);
        for (int k = 0; k < np; ++k) {
            flpat::Production p{g.variables[i], {}};
            int len = rhs_len(rng);
            for (int j = 0; j < len; ++j) {
                int pick = std::uniform_int_distribution<int>(0, 2 + (v - i - 2))(rng);
                if (pick == 0) p.rhs.push_back("0");
                else if (pick == 1) p.rhs.push_back("1");
                else p.rhs.push_back(g.variables[i + 1 + (pick - 2)]);
            }
            g.productions.push_back(p);
        }
    }
    return g;
}

/// Random NFA over {0,1}, a handful of states and transitions.
inline flpat::Nfa random_nfa(std::mt19937& rng, int max_states = 5) {
    std::uniform_int_distribution<int> state_count(1, max_states);
    flpat::Nfa m;
    m.state_count = state_count(rng);
    m.alphabet = flpat::Alphabet({"0", "1"});
    std::uniform_int_distribution<int> state(0, m.state_count - 1);
    std::uniform_int_distribution<int> sym(0, 2);  // 2 = epsilon
    int edges = std::uniform_int_distribution<int>(0, 2 * m.state_count)(rng);
    for (int i = 0; i < edges; ++i) {
        flpat::NfaTransition t;
        t.from = state(rng);
        t.to = state(rng);
        int s = sym(rng);
        if (s < 2) t.symbol = std::string(1, char('0' + s));
        m.transitions.push_back(t);
    }
    m.starts = {state(rng)};
    int accepts = std::uniform_int_distribution<int>(0, m.state_count)(rng);
    for (int i = 0; i < accepts; ++i) m.accepting.insert(state(rng));
    return m;
}

}  // namespace testutil

#endif  // FLPAT_TEST_HELPERS_HPP
