#ifndef FLPAT_AUTOMATA_HPP
#define FLPAT_AUTOMATA_HPP

#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "flpat/words.hpp"

namespace flpat {

/// Total-transition DFA.  Never carries epsilon moves.
struct Dfa {
    int state_count = 0;
    Alphabet alphabet;
    std::vector<std::vector<int>> transition;  // [state][symbol index]
    int start = 0;
    std::set<int> accepting;
};

inline void validate(const Dfa& d) {
    if (d.state_count <= 0) throw std::invalid_argument("dfa needs at least one state");
    if ((int)d.transition.size() != d.state_count)
        throw std::invalid_argument("dfa transition table has wrong row count");
    for (const auto& row : d.transition) {
        if (row.size() != d.alphabet.size())
            throw std::invalid_argument("dfa transition row not total");
        for (int q : row)
            if (q < 0 || q >= d.state_count)
                throw std::invalid_argument("dfa transition target out of range");
    }
    if (d.start < 0 || d.start >= d.state_count)
        throw std::invalid_argument("dfa start state out of range");
    for (int q : d.accepting)
        if (q < 0 || q >= d.state_count)
            throw std::invalid_argument("dfa accepting state out of range");
}

/// Relational NFA; symbol == nullopt is an epsilon move.
struct NfaTransition {
    int from = 0;
    std::optional<Symbol> symbol;
    int to = 0;
};

struct Nfa {
    int state_count = 0;
    Alphabet alphabet;
    std::vector<NfaTransition> transitions;
    std::set<int> starts;
    std::set<int> accepting;
};

inline void validate(const Nfa& m) {
    if (m.state_count <= 0) throw std::invalid_argument("nfa needs at least one state");
    if (m.starts.empty()) throw std::invalid_argument("nfa needs a start state");
    auto in_range = [&](int q) { return q >= 0 && q < m.state_count; };
    for (const auto& t : m.transitions) {
        if (!in_range(t.from) || !in_range(t.to))
            throw std::invalid_argument("nfa transition state out of range");
        if (t.symbol && !m.alphabet.contains(*t.symbol))
            throw std::invalid_argument("nfa transition symbol not in alphabet");
    }
    for (int q : m.starts)
        if (!in_range(q)) throw std::invalid_argument("nfa start state out of range");
    for (int q : m.accepting)
        if (!in_range(q)) throw std::invalid_argument("nfa accepting state out of range");
}

inline Nfa to_nfa(const Dfa& d) {
    Nfa m;
    m.state_count = d.state_count;
    m.alphabet = d.alphabet;
    m.starts = {d.start};
    m.accepting = d.accepting;
    for (int q = 0; q < d.state_count; ++q)
        for (std::size_t a = 0; a < d.alphabet.size(); ++a)
            m.transitions.push_back({q, d.alphabet.symbols()[a], d.transition[q][a]});
    return m;
}

namespace detail {

inline std::vector<std::vector<std::pair<std::optional<std::size_t>, int>>>
adjacency(const Nfa& m) {
    // symbol stored as alphabet index; nullopt = epsilon
    std::vector<std::vector<std::pair<std::optional<std::size_t>, int>>> adj(m.state_count);
    for (const auto& t : m.transitions) {
        std::optional<std::size_t> sym;
        if (t.symbol) sym = m.alphabet.index(*t.symbol);
        adj[t.from].push_back({sym, t.to});
    }
    return adj;
}

inline std::set<int> epsilon_closure(const Nfa& m, const std::set<int>& from) {
    std::set<int> out = from;
    std::deque<int> todo(from.begin(), from.end());
    std::vector<std::vector<int>> eps(m.state_count);
    for (const auto& t : m.transitions)
        if (!t.symbol) eps[t.from].push_back(t.to);
    while (!todo.empty()) {
        int q = todo.front();
        todo.pop_front();
        for (int r : eps[q])
            if (out.insert(r).second) todo.push_back(r);
    }
    return out;
}

inline std::set<int> step(const Nfa& m, const std::set<int>& from, const Symbol& a) {
    std::set<int> out;
    for (const auto& t : m.transitions)
        if (t.symbol && *t.symbol == a && from.count(t.from)) out.insert(t.to);
    return epsilon_closure(m, out);
}

/// States both reachable from a start and able to reach an accepting state.
inline std::vector<bool> useful_states(const Nfa& m) {
    std::vector<std::vector<int>> fwd(m.state_count), bwd(m.state_count);
    for (const auto& t : m.transitions) {
        fwd[t.from].push_back(t.to);
        bwd[t.to].push_back(t.from);
    }
    auto flood = [&](const std::set<int>& seeds, const std::vector<std::vector<int>>& adj) {
        std::vector<bool> seen(m.state_count, false);
        std::deque<int> todo;
        for (int q : seeds) { seen[q] = true; todo.push_back(q); }
        while (!todo.empty()) {
            int q = todo.front();
            todo.pop_front();
            for (int r : adj[q])
                if (!seen[r]) { seen[r] = true; todo.push_back(r); }
        }
        return seen;
    };
    std::vector<bool> acc = flood(m.starts, fwd);
    std::vector<bool> coacc = flood(m.accepting, bwd);
    std::vector<bool> useful(m.state_count, false);
    for (int q = 0; q < m.state_count; ++q) useful[q] = acc[q] && coacc[q];
    return useful;
}

/// States that can still reach an accepting state.
inline std::vector<bool> coaccessible_states(const Nfa& m) {
    std::vector<std::vector<int>> bwd(m.state_count);
    for (const auto& t : m.transitions) bwd[t.to].push_back(t.from);
    std::vector<bool> seen(m.state_count, false);
    std::deque<int> todo;
    for (int q : m.accepting)
        if (!seen[q]) { seen[q] = true; todo.push_back(q); }
    while (!todo.empty()) {
        int q = todo.front();
        todo.pop_front();
        for (int r : bwd[q])
            if (!seen[r]) { seen[r] = true; todo.push_back(r); }
    }
    return seen;
}

/// Iterative Kosaraju over an arbitrary edge list restricted to `keep`.
inline std::vector<int> scc_components(int n,
                                       const std::vector<std::pair<int, int>>& edges,
                                       const std::vector<bool>& keep) {
    std::vector<std::vector<int>> fwd(n), bwd(n);
    for (auto [u, v] : edges) {
        if (!keep[u] || !keep[v]) continue;
        fwd[u].push_back(v);
        bwd[v].push_back(u);
    }
    std::vector<int> order;
    std::vector<bool> seen(n, false);
    for (int s = 0; s < n; ++s) {
        if (seen[s] || !keep[s]) continue;
        std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
        seen[s] = true;
        while (!stack.empty()) {
            auto& [q, i] = stack.back();
            if (i < fwd[q].size()) {
                int r = fwd[q][i++];
                if (!seen[r]) { seen[r] = true; stack.push_back({r, 0}); }
            } else {
                order.push_back(q);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(n, -1);
    int c = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] != -1) continue;
        std::deque<int> todo{*it};
        comp[*it] = c;
        while (!todo.empty()) {
            int q = todo.front();
            todo.pop_front();
            for (int r : bwd[q])
                if (comp[r] == -1) { comp[r] = c; todo.push_back(r); }
        }
        ++c;
    }
    return comp;
}

}  // namespace detail

inline bool accepts(const Dfa& d, const Word& w) {
    int q = d.start;
    for (const Symbol& s : w) q = d.transition[q][d.alphabet.index(s)];
    return d.accepting.count(q) != 0;
}

inline bool accepts(const Nfa& m, const Word& w) {
    std::set<int> cur = detail::epsilon_closure(m, m.starts);
    for (const Symbol& s : w) {
        if (!m.alphabet.contains(s))
            throw std::invalid_argument("word symbol not in automaton alphabet: " + s);
        cur = detail::step(m, cur, s);
        if (cur.empty()) return false;
    }
    for (int q : cur)
        if (m.accepting.count(q)) return true;
    return false;
}

/// True iff L(m) is finite.  A trimmed cycle pumps length only if it carries
/// at least one non-epsilon move; pure epsilon cycles do not count.
inline bool is_finite(const Nfa& m) {
    std::vector<bool> useful = detail::useful_states(m);
    std::vector<std::pair<int, int>> edges;
    for (const auto& t : m.transitions) edges.push_back({t.from, t.to});
    std::vector<int> comp = detail::scc_components(m.state_count, edges, useful);
    for (const auto& t : m.transitions) {
        if (!t.symbol) continue;
        if (!useful[t.from] || !useful[t.to]) continue;
        if (comp[t.from] == comp[t.to]) return false;
    }
    return true;
}

inline bool is_finite(const Dfa& d) { return is_finite(to_nfa(d)); }

/// A pumping decomposition x y z of an infinite-language NFA: every
/// x y^i z is accepted and y is non-empty.
struct PumpingDecomposition {
    Word prefix;  // x
    Word cycle;   // y, |y| >= 1
    Word suffix;  // z
};

namespace detail {

/// Shortest word labelling a path between state sets, by BFS over states.
inline std::optional<std::pair<Word, int>> shortest_path_word(
    const Nfa& m, const std::set<int>& from, const std::set<int>& to,
    const std::vector<bool>& allowed) {
    struct Pred { int state; std::optional<Symbol> symbol; };
    std::vector<std::optional<Pred>> pred(m.state_count);
    std::vector<bool> seen(m.state_count, false);
    std::deque<int> todo;
    for (int q : from)
        if (allowed[q]) { seen[q] = true; todo.push_back(q); }
    auto adj = adjacency(m);
    auto reconstruct = [&](int q) {
        Word w;
        int cur = q;
        while (pred[cur]) {
            if (pred[cur]->symbol) w.push_back(*pred[cur]->symbol);
            cur = pred[cur]->state;
        }
        std::reverse(w.begin(), w.end());
        return std::pair<Word, int>{w, q};
    };
    for (int q : from)
        if (allowed[q] && to.count(q)) return reconstruct(q);
    while (!todo.empty()) {
        int q = todo.front();
        todo.pop_front();
        for (const auto& [sym, r] : adj[q]) {
            if (!allowed[r] || seen[r]) continue;
            seen[r] = true;
            pred[r] = Pred{q, sym ? std::optional<Symbol>(m.alphabet.symbols()[*sym])
                                  : std::nullopt};
            if (to.count(r)) return reconstruct(r);
            todo.push_back(r);
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Decomposition witnessing infiniteness; absent when L(m) is finite.
inline std::optional<PumpingDecomposition> pumping_decomposition(const Nfa& m) {
    std::vector<bool> useful = detail::useful_states(m);
    std::vector<std::pair<int, int>> edges;
    for (const auto& t : m.transitions) edges.push_back({t.from, t.to});
    std::vector<int> comp = detail::scc_components(m.state_count, edges, useful);
    for (const auto& t : m.transitions) {
        if (!t.symbol || !useful[t.from] || !useful[t.to]) continue;
        if (comp[t.from] != comp[t.to]) continue;
        // cycle: t.from --t.symbol--> t.to --...--> t.from within the SCC
        std::vector<bool> in_comp(m.state_count, false);
        for (int q = 0; q < m.state_count; ++q)
            in_comp[q] = useful[q] && comp[q] == comp[t.from];
        auto back = detail::shortest_path_word(m, {t.to}, {t.from}, in_comp);
        if (!back) continue;  // cannot happen inside an SCC, but stay safe
        Word y;
        y.push_back(*t.symbol);
        y.insert(y.end(), back->first.begin(), back->first.end());
        auto pre = detail::shortest_path_word(m, m.starts, {t.from}, useful);
        auto post = detail::shortest_path_word(m, {t.from}, m.accepting, useful);
        if (!pre || !post) continue;
        return PumpingDecomposition{pre->first, y, post->first};
    }
    return std::nullopt;
}

/// All accepted words of length <= max_len, in length-then-lex order.
inline std::vector<Word> enumerate(const Nfa& m, std::size_t max_len,
                                   const SearchLimits& limits = {}) {
    std::vector<Word> out;
    // prune states that cannot reach acceptance, so only prefixes of
    // accepted words are ever extended
    std::vector<bool> useful = detail::coaccessible_states(m);
    auto restrict_useful = [&](std::set<int> s) {
        for (auto it = s.begin(); it != s.end();)
            it = useful[*it] ? std::next(it) : s.erase(it);
        return s;
    };
    struct Node { Word word; std::set<int> states; };
    std::vector<Node> level{
        {Word{}, restrict_useful(detail::epsilon_closure(m, m.starts))}};
    std::uint64_t visited = 0;
    auto emit_if_accepting = [&](const Node& n) {
        for (int q : n.states)
            if (m.accepting.count(q)) { out.push_back(n.word); return; }
    };
    emit_if_accepting(level.front());
    for (std::size_t len = 1; len <= max_len && !level.empty(); ++len) {
        std::vector<Node> next;
        for (const Node& n : level) {
            for (const Symbol& a : m.alphabet.symbols()) {
                std::set<int> s = restrict_useful(detail::step(m, n.states, a));
                if (s.empty()) continue;
                if (++visited > limits.max_configs)
                    throw ResourceError("enumerate: configuration cap exceeded");
                Node child{n.word, std::move(s)};
                child.word.push_back(a);
                emit_if_accepting(child);
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
    return out;
}

inline std::vector<Word> enumerate(const Dfa& d, std::size_t max_len,
                                   const SearchLimits& limits = {}) {
    return enumerate(to_nfa(d), max_len, limits);
}

/// Shortest word accepted by every machine, via BFS over the lazily built
/// product.  Absent iff the intersection is empty.
inline std::optional<Word> shortest_common_word(const std::vector<Dfa>& machines,
                                                const SearchLimits& limits = {}) {
    if (machines.empty())
        throw std::invalid_argument("shortest_common_word needs at least one machine");
    for (const Dfa& d : machines)
        if (d.alphabet != machines.front().alphabet)
            throw std::invalid_argument("machines must share one alphabet");
    const Alphabet& alpha = machines.front().alphabet;

    using Tuple = std::vector<int>;
    Tuple start;
    for (const Dfa& d : machines) start.push_back(d.start);
    auto all_accepting = [&](const Tuple& t) {
        for (std::size_t i = 0; i < machines.size(); ++i)
            if (!machines[i].accepting.count(t[i])) return false;
        return true;
    };
    std::map<Tuple, std::pair<Tuple, Symbol>> pred;
    std::set<Tuple> seen{start};
    std::deque<Tuple> todo{start};
    auto reconstruct = [&](Tuple t) {
        Word w;
        while (t != start) {
            auto& [p, s] = pred.at(t);
            w.push_back(s);
            t = p;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    if (all_accepting(start)) return Word{};
    std::uint64_t visited = 0;
    while (!todo.empty()) {
        Tuple t = todo.front();
        todo.pop_front();
        for (const Symbol& a : alpha.symbols()) {
            Tuple u(t.size());
            std::size_t ai = alpha.index(a);
            for (std::size_t i = 0; i < machines.size(); ++i)
                u[i] = machines[i].transition[t[i]][ai];
            if (!seen.insert(u).second) continue;
            if (++visited > limits.max_configs)
                throw ResourceError("shortest_common_word: configuration cap exceeded");
            pred[u] = {t, a};
            if (all_accepting(u)) return reconstruct(u);
            todo.push_back(u);
        }
    }
    return std::nullopt;
}

/// Subset construction.  State 0 is the closure of the NFA start set; a dead
/// (empty-set) state is added when needed so the result is total.
inline Dfa determinize(const Nfa& m) {
    Dfa d;
    d.alphabet = m.alphabet;
    std::map<std::set<int>, int> id;
    std::vector<std::set<int>> sets;
    auto intern = [&](const std::set<int>& s) {
        auto it = id.find(s);
        if (it != id.end()) return it->second;
        int q = (int)sets.size();
        id[s] = q;
        sets.push_back(s);
        d.transition.emplace_back(m.alphabet.size(), -1);
        return q;
    };
    int start = intern(detail::epsilon_closure(m, m.starts));
    std::deque<int> todo{start};
    std::set<int> done;
    while (!todo.empty()) {
        int q = todo.front();
        todo.pop_front();
        if (!done.insert(q).second) continue;
        for (std::size_t a = 0; a < m.alphabet.size(); ++a) {
            std::set<int> s = detail::step(m, sets[q], m.alphabet.symbols()[a]);
            int r = intern(s);
            d.transition[q][a] = r;
            if (!done.count(r)) todo.push_back(r);
        }
    }
    d.state_count = (int)sets.size();
    d.start = start;
    for (int q = 0; q < d.state_count; ++q)
        for (int f : sets[q])
            if (m.accepting.count(f)) { d.accepting.insert(q); break; }
    return d;
}

}  // namespace flpat

#endif  // FLPAT_AUTOMATA_HPP
