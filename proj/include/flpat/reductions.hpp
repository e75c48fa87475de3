#ifndef FLPAT_REDUCTIONS_HPP
#define FLPAT_REDUCTIONS_HPP

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flpat/automata.hpp"
#include "flpat/grammars.hpp"
#include "flpat/words.hpp"

namespace flpat {

/// One 3-CNF literal: 1-based variable index and polarity.
struct Literal {
    int variable = 1;
    bool positive = true;
    bool operator==(const Literal& o) const {
        return variable == o.variable && positive == o.positive;
    }
};

/// 3-CNF instance; duplicate literals within a clause are permitted.
struct SatInstance {
    int variable_count = 0;
    std::vector<std::array<Literal, 3>> clauses;
};

inline void validate(const SatInstance& phi) {
    if (phi.variable_count < 1)
        throw std::invalid_argument("sat instance needs at least one variable");
    if (phi.clauses.empty())
        throw std::invalid_argument("sat instance needs at least one clause");
    for (const auto& c : phi.clauses)
        for (const Literal& l : c)
            if (l.variable < 1 || l.variable > phi.variable_count)
                throw std::invalid_argument("literal index out of range");
}

/// Post correspondence instance: non-empty pairs of non-empty words.
struct PcpInstance {
    std::vector<std::pair<Word, Word>> pairs;
};

inline void validate(const PcpInstance& inst) {
    if (inst.pairs.empty())
        throw std::invalid_argument("pcp instance needs at least one pair");
    for (const auto& [x, y] : inst.pairs)
        if (x.empty() || y.empty())
            throw std::invalid_argument("pcp words must be non-empty");
}

inline bool satisfies(const SatInstance& phi, const std::vector<bool>& assignment) {
    for (const auto& c : phi.clauses) {
        bool sat = false;
        for (const Literal& l : c)
            if (assignment[l.variable - 1] == l.positive) { sat = true; break; }
        if (!sat) return false;
    }
    return true;
}

/// Exhaustive satisfiability oracle, guarded at 24 variables.
inline std::optional<std::vector<bool>> sat_brute_force(const SatInstance& phi) {
    validate(phi);
    if (phi.variable_count > 24)
        throw ResourceError("sat_brute_force: more than 24 variables");
    int n = phi.variable_count;
    for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
        std::vector<bool> a(n);
        for (int i = 0; i < n; ++i) a[i] = (bits >> i) & 1;
        if (satisfies(phi, a)) return a;
    }
    return std::nullopt;
}

/// One DFA per clause over {0,1}, accepting exactly the length-n assignment
/// encodings (1 = true) that satisfy the clause.  States: n "still
/// unsatisfied at position i" states, n "satisfied, i symbols read" states,
/// and a dead state -- 2n+1 in total.
inline std::vector<Dfa> sat_to_clause_dfas(const SatInstance& phi) {
    validate(phi);
    int n = phi.variable_count;
    Alphabet bits({"0", "1"});
    std::vector<Dfa> out;
    for (const auto& clause : phi.clauses) {
        Dfa d;
        d.alphabet = bits;
        d.state_count = 2 * n + 1;
        const int dead = 2 * n;
        auto unsat_state = [&](int i) { return i; };          // i = 0..n-1
        auto sat_state = [&](int i) { return n + i - 1; };    // i = 1..n
        d.start = unsat_state(0);
        d.accepting = {sat_state(n)};
        d.transition.assign(d.state_count, {dead, dead});
        for (int i = 0; i < n; ++i) {
            for (int b = 0; b <= 1; ++b) {
                bool hit = false;
                for (const Literal& l : clause)
                    if (l.variable == i + 1 && l.positive == (b == 1)) { hit = true; break; }
                int target = hit ? sat_state(i + 1)
                                 : (i + 1 < n ? unsat_state(i + 1) : dead);
                d.transition[unsat_state(i)][b] = target;
            }
        }
        for (int i = 1; i < n; ++i)
            d.transition[sat_state(i)] = {dead, dead},
            d.transition[sat_state(i)][0] = sat_state(i + 1),
            d.transition[sat_state(i)][1] = sat_state(i + 1);
        out.push_back(std::move(d));
    }
    return out;
}

/// Machine for L(A_1)# ... L(A_k)# plus the pattern a^k: the machine accepts
/// a k-power iff the intersection of the L(A_i) is non-empty.  Built as an
/// NFA with # bridges, then determinized.
inline std::pair<Dfa, Pattern> dfas_to_kpower_instance(const std::vector<Dfa>& as) {
    if (as.size() < 2)
        throw std::invalid_argument("dfas_to_kpower_instance needs k >= 2");
    for (const Dfa& d : as) {
        if (d.alphabet != as.front().alphabet)
            throw std::invalid_argument("machines must share one alphabet");
        if (d.alphabet.contains("#"))
            throw std::invalid_argument("separator # already in machine alphabet");
        if (!is_finite(d))
            throw std::invalid_argument("dfas_to_kpower_instance requires finite languages");
    }
    std::vector<Symbol> symbols = as.front().alphabet.symbols();
    symbols.push_back("#");
    Nfa m;
    m.alphabet = Alphabet(symbols);
    std::vector<int> offset;
    for (const Dfa& d : as) {
        offset.push_back(m.state_count);
        m.state_count += d.state_count;
    }
    int final_state = m.state_count++;
    m.starts = {offset[0] + as[0].start};
    m.accepting = {final_state};
    for (std::size_t i = 0; i < as.size(); ++i) {
        const Dfa& d = as[i];
        for (int q = 0; q < d.state_count; ++q)
            for (std::size_t a = 0; a < d.alphabet.size(); ++a)
                m.transitions.push_back(
                    {offset[i] + q, d.alphabet.symbols()[a], offset[i] + d.transition[q][a]});
        int next = (i + 1 < as.size()) ? offset[i + 1] + as[i + 1].start : final_state;
        for (int f : d.accepting)
            m.transitions.push_back({offset[i] + f, Symbol("#"), next});
    }
    Pattern p(as.size(), "a");
    return {determinize(m), p};
}

/// The Angluin-style 3-SAT gadget: pattern p, word w, and a chain DFA for
/// {w}.  Both p and w follow the published formulas exactly; the factor
/// padding v^{2n+6m} / 0^{2n+6m} makes factor matching equivalent to exact
/// matching.
inline std::tuple<Pattern, Word, Dfa> sat_to_angluin_gadget(const SatInstance& phi) {
    validate(phi);
    int n = phi.variable_count;
    int m = (int)phi.clauses.size();
    int pad = 2 * n + 6 * m;

    auto xv = [](int i) { return "x" + std::to_string(i); };
    auto yv = [](int i) { return "y" + std::to_string(i); };
    auto zv = [](int j) { return "z" + std::to_string(j); };
    auto uv = [](int j) { return "u" + std::to_string(j); };

    Pattern p;
    for (int i = 0; i < pad; ++i) p.push_back("v");
    for (int i = 1; i <= n; ++i) {
        p.push_back("v");
        p.push_back(xv(i));
        p.push_back(yv(i));
    }
    for (int j = 1; j <= m; ++j) {
        p.push_back("v");
        for (const Literal& l : phi.clauses[j - 1])
            p.push_back(l.positive ? xv(l.variable) : yv(l.variable));
        p.push_back(zv(j));
    }
    for (int j = 1; j <= m; ++j) {
        p.push_back("v");
        p.push_back(zv(j));
        p.push_back(uv(j));
    }
    p.push_back("v");
    for (int i = 0; i < pad; ++i) p.push_back("v");

    Word w;
    auto block = [&](int ones) {
        w.push_back("0");
        for (int i = 0; i < ones; ++i) w.push_back("1");
    };
    for (int i = 0; i < pad; ++i) w.push_back("0");
    for (int i = 0; i < n; ++i) block(3);
    for (int j = 0; j < m; ++j) block(7);
    for (int j = 0; j < m; ++j) block(4);
    w.push_back("0");
    for (int i = 0; i < pad; ++i) w.push_back("0");

    // chain DFA accepting exactly {w}: |w|+1 chain states plus a dead state
    Dfa d;
    d.alphabet = Alphabet({"0", "1"});
    d.state_count = (int)w.size() + 2;
    const int dead = d.state_count - 1;
    d.start = 0;
    d.accepting = {(int)w.size()};
    d.transition.assign(d.state_count, {dead, dead});
    for (std::size_t i = 0; i < w.size(); ++i)
        d.transition[i][d.alphabet.index(w[i])] = (int)i + 1;
    return {p, w, d};
}

/// CFG over Sigma + {#, c1..cn} whose language contains a square iff the
/// PCP instance has a solution:
///   S -> A # B #,  A -> x_i A c_i | x_i c_i,  B -> y_i B c_i | y_i c_i.
inline Cfg pcp_to_square_cfg(const PcpInstance& inst) {
    validate(inst);
    std::set<Symbol> sigma;
    for (const auto& [x, y] : inst.pairs) {
        for (const Symbol& s : x) sigma.insert(s);
        for (const Symbol& s : y) sigma.insert(s);
    }
    std::vector<Symbol> terminals;
    for (const auto& [x, y] : inst.pairs) {
        for (const Symbol& s : x)
            if (std::find(terminals.begin(), terminals.end(), s) == terminals.end())
                terminals.push_back(s);
        for (const Symbol& s : y)
            if (std::find(terminals.begin(), terminals.end(), s) == terminals.end())
                terminals.push_back(s);
    }
    if (sigma.count("#"))
        throw std::invalid_argument("pcp alphabet must not contain #");
    std::vector<Symbol> index_syms;
    for (std::size_t i = 1; i <= inst.pairs.size(); ++i) {
        Symbol c = "c" + std::to_string(i);
        if (sigma.count(c))
            throw std::invalid_argument("pcp alphabet must not contain " + c);
        index_syms.push_back(c);
    }
    terminals.push_back("#");
    for (const Symbol& c : index_syms) terminals.push_back(c);

    std::set<Symbol> taken(terminals.begin(), terminals.end());
    Symbol S = detail::fresh_symbol("S", taken);
    taken.insert(S);
    Symbol A = detail::fresh_symbol("A", taken);
    taken.insert(A);
    Symbol B = detail::fresh_symbol("B", taken);

    Cfg g;
    g.terminals = Alphabet(terminals);
    g.variables = {S, A, B};
    g.start = S;
    g.productions.push_back({S, {A, "#", B, "#"}});
    for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
        const Word& x = inst.pairs[i].first;
        const Word& y = inst.pairs[i].second;
        const Symbol& c = index_syms[i];
        Production rec_a{A, x};
        rec_a.rhs.push_back(A);
        rec_a.rhs.push_back(c);
        Production base_a{A, x};
        base_a.rhs.push_back(c);
        Production rec_b{B, y};
        rec_b.rhs.push_back(B);
        rec_b.rhs.push_back(c);
        Production base_b{B, y};
        base_b.rhs.push_back(c);
        g.productions.push_back(rec_a);
        g.productions.push_back(base_a);
        g.productions.push_back(rec_b);
        g.productions.push_back(base_b);
    }
    return g;
}

/// Shortest index sequence solving the PCP instance, up to max_indices.
/// Breadth-first over index sequences with a prefix-compatibility prune.
inline std::optional<std::vector<int>> pcp_bounded_solve(const PcpInstance& inst,
                                                         std::size_t max_indices) {
    validate(inst);
    if (max_indices > 12)
        throw ResourceError("pcp_bounded_solve: max_indices above the guard of 12");
    struct Node {
        std::vector<int> indices;
        Word top, bottom;
    };
    std::deque<Node> todo{{{}, {}, {}}};
    while (!todo.empty()) {
        Node n = todo.front();
        todo.pop_front();
        if (!n.indices.empty() && n.top == n.bottom) return n.indices;
        if (n.indices.size() == max_indices) continue;
        for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
            Node child = n;
            child.indices.push_back((int)i + 1);
            child.top = concat(child.top, inst.pairs[i].first);
            child.bottom = concat(child.bottom, inst.pairs[i].second);
            std::size_t common = std::min(child.top.size(), child.bottom.size());
            bool compatible = true;
            for (std::size_t k = 0; k < common; ++k)
                if (child.top[k] != child.bottom[k]) { compatible = false; break; }
            if (compatible) todo.push_back(std::move(child));
        }
    }
    return std::nullopt;
}

/// The Leech morphism over {0,1,2}: uniform length 13, iterates from 0 are
/// squarefree.
inline Word leech_image(const Symbol& s) {
    static const std::map<Symbol, std::string> images = {
        {"0", "0121021201210"},
        {"1", "1202102012021"},
        {"2", "2010210120102"},
    };
    Word out;
    for (char c : images.at(s)) out.push_back(std::string(1, c));
    return out;
}

/// Shortest Leech iterate h^t(0) with 13^t >= min_len.
inline Word squarefree_word(std::size_t min_len) {
    if (min_len < 1) throw std::invalid_argument("squarefree_word requires min_len >= 1");
    Word w{"0"};
    while (w.size() < min_len) {
        Word next;
        for (const Symbol& s : w) {
            Word img = leech_image(s);
            next.insert(next.end(), img.begin(), img.end());
        }
        w = std::move(next);
    }
    return w;
}

/// Straight-line grammar for squarefree_word(min_len): variables H{t}_{a}
/// with H0_a -> a and Ht_a expanding h(a) one level down; logarithmic size.
inline Cfg squarefree_slp_grammar(std::size_t min_len) {
    if (min_len < 1)
        throw std::invalid_argument("squarefree_slp_grammar requires min_len >= 1");
    std::size_t levels = 0;
    std::uint64_t len = 1;
    while (len < min_len) { len *= 13; ++levels; }
    Cfg g;
    g.terminals = Alphabet({"0", "1", "2"});
    auto var = [](std::size_t t, const Symbol& a) {
        return "H" + std::to_string(t) + "_" + a;
    };
    for (std::size_t t = 0; t <= levels; ++t)
        for (const Symbol& a : g.terminals.symbols()) g.variables.push_back(var(t, a));
    for (const Symbol& a : g.terminals.symbols())
        g.productions.push_back({var(0, a), {a}});
    for (std::size_t t = 1; t <= levels; ++t)
        for (const Symbol& a : g.terminals.symbols()) {
            Production p{var(t, a), {}};
            for (const Symbol& b : leech_image(a)) p.rhs.push_back(var(t - 1, b));
            g.productions.push_back(p);
        }
    g.start = var(levels, "0");
    return trim(g);
}

/// The k-power-factor hardness gadget: a finite CFG C and the pattern a^k
/// such that C generates a word with a k-power factor iff the DFAs accept a
/// word in common.  Each block grammar B_i generates the perfect shuffles
/// (equal-length interleavings, machine symbol first) of L(M_i) with
/// prefixes of a long squarefree word, so every block word is squarefree.
inline std::pair<Cfg, Pattern> dfas_to_kpower_factor_cfg(const std::vector<Dfa>& ms) {
    if (ms.size() < 2)
        throw std::invalid_argument("dfas_to_kpower_factor_cfg needs k >= 2");
    const Alphabet& sigma = ms.front().alphabet;
    for (const Dfa& d : ms)
        if (d.alphabet != sigma)
            throw std::invalid_argument("machines must share one alphabet");
    for (const Symbol& s : {Symbol("0"), Symbol("1"), Symbol("2"), Symbol("#")})
        if (sigma.contains(s))
            throw std::invalid_argument("machine alphabet collides with gadget symbol " + s);

    std::uint64_t n = 0;
    for (const Dfa& d : ms) n = std::max<std::uint64_t>(n, d.state_count);
    std::uint64_t target = 1;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        target *= n;
        if (target > 1'000'000)
            throw ResourceError("dfas_to_kpower_factor_cfg: n^k too large for desk scale");
    }

    Cfg slp = squarefree_slp_grammar((std::size_t)target);
    Cfg prefixes = prefix_grammar(slp);

    // interleave: every squarefree terminal is preceded by one machine symbol
    std::set<Symbol> taken(prefixes.variables.begin(), prefixes.variables.end());
    for (const Symbol& s : prefixes.terminals.symbols()) taken.insert(s);
    for (const Symbol& s : sigma.symbols()) taken.insert(s);
    Symbol any = detail::fresh_symbol("SIG", taken);
    Cfg shuffled = prefixes;
    shuffled.terminals = merge_alphabets({sigma, prefixes.terminals});
    shuffled.variables.push_back(any);
    for (Production& p : shuffled.productions) {
        std::vector<Symbol> rhs;
        for (const Symbol& s : p.rhs) {
            if (!prefixes.is_variable(s)) rhs.push_back(any);
            rhs.push_back(s);
        }
        p.rhs = std::move(rhs);
    }
    for (const Symbol& s : sigma.symbols())
        shuffled.productions.push_back({any, {s}});

    std::vector<Cfg> blocks;
    for (const Dfa& d : ms) {
        // extend the machine to ignore the squarefree positions
        Dfa ext;
        ext.alphabet = shuffled.terminals;
        ext.state_count = d.state_count;
        ext.start = d.start;
        ext.accepting = d.accepting;
        ext.transition.assign(ext.state_count,
                              std::vector<int>(ext.alphabet.size(), 0));
        for (int q = 0; q < d.state_count; ++q)
            for (std::size_t a = 0; a < ext.alphabet.size(); ++a) {
                const Symbol& s = ext.alphabet.symbols()[a];
                ext.transition[q][a] =
                    sigma.contains(s) ? d.transition[q][sigma.index(s)] : q;
            }
        blocks.push_back(intersect_dfa(shuffled, ext));
    }
    Cfg c = concat_with_separators(blocks, "#");
    Pattern p(ms.size(), "a");
    return {c, p};
}

}  // namespace flpat

#endif  // FLPAT_REDUCTIONS_HPP
