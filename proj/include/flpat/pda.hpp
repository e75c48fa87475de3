#ifndef FLPAT_PDA_HPP
#define FLPAT_PDA_HPP

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "flpat/grammars.hpp"
#include "flpat/words.hpp"

namespace flpat {

/// Normal-form PDA: every move pushes exactly one stack symbol or pops
/// exactly one; acceptance is by empty stack at end of input.
struct PdaMove {
    int from = 0;
    std::optional<Symbol> input;  // nullopt = epsilon
    bool push = true;             // false = pop
    int stack_symbol = 0;         // index into stack_symbols
    int to = 0;
};

struct Pda {
    int state_count = 0;
    Alphabet input_alphabet;
    std::vector<Symbol> stack_symbols;
    std::vector<PdaMove> moves;
    int start = 0;
    int initial_stack = 0;
};

inline void validate(const Pda& m) {
    if (m.state_count <= 0) throw std::invalid_argument("pda needs at least one state");
    if (m.stack_symbols.empty()) throw std::invalid_argument("pda needs a stack alphabet");
    {
        std::set<Symbol> seen(m.stack_symbols.begin(), m.stack_symbols.end());
        if (seen.size() != m.stack_symbols.size())
            throw std::invalid_argument("duplicate pda stack symbol");
    }
    auto state_ok = [&](int q) { return q >= 0 && q < m.state_count; };
    auto stack_ok = [&](int g) { return g >= 0 && g < (int)m.stack_symbols.size(); };
    if (!state_ok(m.start) || !stack_ok(m.initial_stack))
        throw std::invalid_argument("pda start/initial stack out of range");
    for (const PdaMove& mv : m.moves) {
        if (!state_ok(mv.from) || !state_ok(mv.to) || !stack_ok(mv.stack_symbol))
            throw std::invalid_argument("pda move out of range");
        if (mv.input && !m.input_alphabet.contains(*mv.input))
            throw std::invalid_argument("pda move symbol not in input alphabet");
    }
}

/// Lemma bound s*n^2 on the stack height of shortest accepting computations
/// of finite-language PDAs.
inline std::uint64_t stack_bound(const Pda& m) {
    std::uint64_t n = (std::uint64_t)m.state_count;
    return (std::uint64_t)m.stack_symbols.size() * n * n;
}

/// Top-down parser PDA for g.  A bottom marker keeps the stack non-empty
/// while a production is being expanded: state 2 (the start) pushes the
/// start variable on top of the marker, state 0 is the parse loop popping a
/// variable and pushing its production reversed through intermediate
/// states, and the marker is popped only into the halt state 1, so the
/// stack empties exactly at the end of a complete parse.
inline Pda cfg_to_pda(const Cfg& g) {
    validate(g);
    Pda m;
    m.input_alphabet = g.terminals;
    std::map<Symbol, int> stack_id;
    for (const Symbol& v : g.variables) {
        stack_id[v] = (int)m.stack_symbols.size();
        m.stack_symbols.push_back(v);
    }
    for (const Symbol& a : g.terminals.symbols()) {
        stack_id[a] = (int)m.stack_symbols.size();
        m.stack_symbols.push_back(a);
    }
    std::set<Symbol> taken(m.stack_symbols.begin(), m.stack_symbols.end());
    Symbol marker = detail::fresh_symbol("Z", taken);
    int marker_id = (int)m.stack_symbols.size();
    m.stack_symbols.push_back(marker);
    m.state_count = 3;
    m.start = 2;
    m.initial_stack = marker_id;
    m.moves.push_back({2, std::nullopt, true, stack_id.at(g.start), 0});
    m.moves.push_back({0, std::nullopt, false, marker_id, 1});
    for (const Symbol& a : g.terminals.symbols())
        m.moves.push_back({0, a, false, stack_id.at(a), 0});
    for (const Production& p : g.productions) {
        if (p.rhs.empty()) {
            m.moves.push_back({0, std::nullopt, false, stack_id.at(p.lhs), 0});
            continue;
        }
        int first = m.state_count;
        m.state_count += (int)p.rhs.size();
        m.moves.push_back({0, std::nullopt, false, stack_id.at(p.lhs), first});
        for (std::size_t j = 0; j < p.rhs.size(); ++j) {
            int from = first + (int)j;
            int to = (j + 1 == p.rhs.size()) ? 0 : first + (int)j + 1;
            // push the rhs reversed so the leftmost symbol ends on top
            m.moves.push_back(
                {from, std::nullopt, true, stack_id.at(p.rhs[p.rhs.size() - 1 - j]), to});
        }
    }
    return m;
}

namespace detail {

struct PdaConfig {
    int state = 0;
    std::vector<int> stack;  // bottom first, top last
    bool operator==(const PdaConfig& o) const {
        return state == o.state && stack == o.stack;
    }
};

inline std::string config_key(const PdaConfig& c) {
    std::string k = std::to_string(c.state);
    for (int g : c.stack) { k += ','; k += std::to_string(g); }
    return k;
}

inline std::vector<std::vector<const PdaMove*>> moves_by_state(const Pda& m) {
    std::vector<std::vector<const PdaMove*>> out(m.state_count);
    for (const PdaMove& mv : m.moves) out[mv.from].push_back(&mv);
    return out;
}

/// Successors of a configuration; symbol_index is -1 for epsilon moves.
inline void successors(const Pda& m,
                       const std::vector<std::vector<const PdaMove*>>& by_state,
                       const PdaConfig& c, std::uint64_t height_bound,
                       std::vector<std::pair<int, PdaConfig>>& out) {
    out.clear();
    for (const PdaMove* mv : by_state[c.state]) {
        PdaConfig next;
        next.state = mv->to;
        if (mv->push) {
            if (c.stack.size() + 1 > height_bound) continue;
            next.stack = c.stack;
            next.stack.push_back(mv->stack_symbol);
        } else {
            if (c.stack.empty() || c.stack.back() != mv->stack_symbol) continue;
            next.stack.assign(c.stack.begin(), c.stack.end() - 1);
        }
        int sym = mv->input ? (int)m.input_alphabet.index(*mv->input) : -1;
        out.push_back({sym, std::move(next)});
    }
}

/// The configurations reachable from the initial configuration over any
/// input, with the explored edge structure and per-config witness words.
struct ConfigGraph {
    std::vector<PdaConfig> configs;
    std::unordered_map<std::string, int> index;
    std::vector<std::vector<std::pair<int, int>>> out;  // (symbol or -1, target)
    std::vector<int> pred, pred_symbol;                 // BFS tree toward the root
    std::vector<bool> coreachable;
    std::vector<int> next, next_symbol;                 // witness toward empty stack
};

inline ConfigGraph explore_configs(const Pda& m, std::uint64_t height_bound,
                                   const SearchLimits& limits) {
    ConfigGraph g;
    auto by_state = moves_by_state(m);
    PdaConfig init{m.start, {m.initial_stack}};
    g.configs.push_back(init);
    g.index[config_key(init)] = 0;
    g.out.emplace_back();
    g.pred.push_back(-1);
    g.pred_symbol.push_back(-1);
    std::deque<int> todo{0};
    std::vector<std::pair<int, PdaConfig>> succ;
    while (!todo.empty()) {
        int i = todo.front();
        todo.pop_front();
        successors(m, by_state, g.configs[i], height_bound, succ);
        for (auto& [sym, c] : succ) {
            std::string key = config_key(c);
            auto it = g.index.find(key);
            int j;
            if (it == g.index.end()) {
                j = (int)g.configs.size();
                if ((std::uint64_t)j > limits.max_configs)
                    throw ResourceError("pda exploration: configuration cap exceeded");
                g.index[key] = j;
                g.configs.push_back(c);
                g.out.emplace_back();
                g.pred.push_back(i);
                g.pred_symbol.push_back(sym);
                todo.push_back(j);
            } else {
                j = it->second;
            }
            g.out[i].push_back({sym, j});
        }
    }
    // backward pass: which configs can still empty the stack, and how
    g.coreachable.assign(g.configs.size(), false);
    g.next.assign(g.configs.size(), -1);
    g.next_symbol.assign(g.configs.size(), -1);
    std::vector<std::vector<std::pair<int, int>>> in(g.configs.size());
    for (std::size_t i = 0; i < g.configs.size(); ++i)
        for (auto [sym, j] : g.out[i]) in[j].push_back({sym, (int)i});
    std::deque<int> back;
    for (std::size_t i = 0; i < g.configs.size(); ++i)
        if (g.configs[i].stack.empty()) {
            g.coreachable[i] = true;
            back.push_back((int)i);
        }
    while (!back.empty()) {
        int j = back.front();
        back.pop_front();
        for (auto [sym, i] : in[j]) {
            if (g.coreachable[i]) continue;
            g.coreachable[i] = true;
            g.next[i] = j;
            g.next_symbol[i] = sym;
            back.push_back(i);
        }
    }
    return g;
}

inline Word prefix_word(const Pda& m, const ConfigGraph& g, int i) {
    Word w;
    while (g.pred[i] != -1) {
        if (g.pred_symbol[i] != -1)
            w.push_back(m.input_alphabet.symbols()[g.pred_symbol[i]]);
        i = g.pred[i];
    }
    std::reverse(w.begin(), w.end());
    return w;
}

inline Word suffix_word(const Pda& m, const ConfigGraph& g, int i) {
    Word w;
    while (g.next[i] != -1) {
        if (g.next_symbol[i] != -1)
            w.push_back(m.input_alphabet.symbols()[g.next_symbol[i]]);
        i = g.next[i];
    }
    return w;
}

/// Epsilon closure over config indices.
inline void eps_close(const ConfigGraph& g, std::set<int>& s) {
    std::deque<int> todo(s.begin(), s.end());
    while (!todo.empty()) {
        int i = todo.front();
        todo.pop_front();
        for (auto [sym, j] : g.out[i])
            if (sym == -1 && s.insert(j).second) todo.push_back(j);
    }
}

/// Configs reachable from s by (epsilon)* a.
inline std::set<int> step_configs(const ConfigGraph& g, const std::set<int>& s, int sym) {
    std::set<int> closed = s;
    eps_close(g, closed);
    std::set<int> out;
    for (int i : closed)
        for (auto [edge_sym, j] : g.out[i])
            if (edge_sym == sym) out.insert(j);
    return out;
}

inline std::set<int> read_word(const ConfigGraph& g, const Alphabet& alpha,
                               const std::set<int>& s, const Word& m) {
    std::set<int> cur = s;
    for (const Symbol& a : m) {
        cur = step_configs(g, cur, (int)alpha.index(a));
        if (cur.empty()) break;
    }
    return cur;
}

}  // namespace detail

/// True iff some computation reads exactly w to an empty stack without the
/// stack ever exceeding `bound`.  A visited set on (state, stack, position)
/// replaces the epsilon-loop counter.
inline bool accepts_bounded(const Pda& m, const Word& w, std::uint64_t bound,
                            const SearchLimits& limits = {}) {
    if (bound < 1) throw std::invalid_argument("accepts_bounded requires bound >= 1");
    auto by_state = detail::moves_by_state(m);
    struct Node { detail::PdaConfig config; std::size_t pos; };
    auto node_key = [](const Node& n) {
        return std::to_string(n.pos) + ";" + detail::config_key(n.config);
    };
    Node init{{m.start, {m.initial_stack}}, 0};
    std::unordered_set<std::string> seen{node_key(init)};
    std::deque<Node> todo{init};
    std::vector<std::pair<int, detail::PdaConfig>> succ;
    while (!todo.empty()) {
        Node n = todo.front();
        todo.pop_front();
        if (n.pos == w.size() && n.config.stack.empty()) return true;
        detail::successors(m, by_state, n.config, bound, succ);
        for (auto& [sym, c] : succ) {
            Node next{std::move(c), n.pos};
            if (sym != -1) {
                if (n.pos >= w.size()) continue;
                if ((int)m.input_alphabet.index(w[n.pos]) != sym) continue;
                next.pos = n.pos + 1;
            }
            if (!seen.insert(node_key(next)).second) continue;
            if (seen.size() > limits.max_configs)
                throw ResourceError("accepts_bounded: configuration cap exceeded");
            todo.push_back(std::move(next));
        }
    }
    return false;
}

/// A word accepted by every PDA, by joint breadth-first search over tuples
/// of configurations, each component capped at its own stack bound.
inline std::optional<Word> pda_intersection_nonempty(const std::vector<Pda>& ms,
                                                     const SearchLimits& limits = {}) {
    if (ms.empty())
        throw std::invalid_argument("pda_intersection_nonempty needs at least one pda");
    for (const Pda& m : ms)
        if (m.input_alphabet != ms.front().input_alphabet)
            throw std::invalid_argument("pdas must share one input alphabet");
    const Alphabet& alpha = ms.front().input_alphabet;
    std::vector<std::uint64_t> bounds;
    std::vector<std::vector<std::vector<const PdaMove*>>> by_state;
    for (const Pda& m : ms) {
        bounds.push_back(stack_bound(m));
        by_state.push_back(detail::moves_by_state(m));
    }
    using TupleCfg = std::vector<detail::PdaConfig>;
    auto tuple_key = [](const TupleCfg& t) {
        std::string k;
        for (const auto& c : t) { k += detail::config_key(c); k += '|'; }
        return k;
    };
    TupleCfg init;
    for (const Pda& m : ms) init.push_back({m.start, {m.initial_stack}});
    auto all_empty = [](const TupleCfg& t) {
        for (const auto& c : t)
            if (!c.stack.empty()) return false;
        return true;
    };
    struct Pred { std::string prev; int symbol; };
    std::unordered_map<std::string, Pred> pred;
    std::unordered_set<std::string> seen{tuple_key(init)};
    std::deque<TupleCfg> todo{init};
    auto reconstruct = [&](std::string key) {
        Word w;
        while (true) {
            auto it = pred.find(key);
            if (it == pred.end()) break;
            if (it->second.symbol != -1)
                w.push_back(alpha.symbols()[it->second.symbol]);
            key = it->second.prev;
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    if (all_empty(init)) return Word{};
    std::vector<std::pair<int, detail::PdaConfig>> succ;
    while (!todo.empty()) {
        TupleCfg t = todo.front();
        todo.pop_front();
        std::string from_key = tuple_key(t);
        // single-component epsilon moves
        for (std::size_t i = 0; i < ms.size(); ++i) {
            detail::successors(ms[i], by_state[i], t[i], bounds[i], succ);
            for (auto& [sym, c] : succ) {
                if (sym != -1) continue;
                TupleCfg u = t;
                u[i] = c;
                std::string key = tuple_key(u);
                if (!seen.insert(key).second) continue;
                if (seen.size() > limits.max_configs)
                    throw ResourceError("pda_intersection_nonempty: cap exceeded");
                pred[key] = {from_key, -1};
                if (all_empty(u)) return reconstruct(key);
                todo.push_back(std::move(u));
            }
        }
        // joint symbol moves
        for (std::size_t a = 0; a < alpha.size(); ++a) {
            std::vector<std::vector<detail::PdaConfig>> per(ms.size());
            bool viable = true;
            for (std::size_t i = 0; i < ms.size() && viable; ++i) {
                detail::successors(ms[i], by_state[i], t[i], bounds[i], succ);
                for (auto& [sym, c] : succ)
                    if (sym == (int)a) per[i].push_back(c);
                if (per[i].empty()) viable = false;
            }
            if (!viable) continue;
            std::vector<std::size_t> pick(ms.size(), 0);
            while (true) {
                TupleCfg u;
                for (std::size_t i = 0; i < ms.size(); ++i) u.push_back(per[i][pick[i]]);
                std::string key = tuple_key(u);
                if (seen.insert(key).second) {
                    if (seen.size() > limits.max_configs)
                        throw ResourceError("pda_intersection_nonempty: cap exceeded");
                    pred[key] = {from_key, (int)a};
                    if (all_empty(u)) return reconstruct(key);
                    todo.push_back(std::move(u));
                }
                std::size_t i = 0;
                while (i < ms.size() && ++pick[i] == per[i].size()) pick[i++] = 0;
                if (i == ms.size()) break;
            }
        }
    }
    return std::nullopt;
}

/// Some square ww in L(g), found by guessing a midpoint configuration and
/// lock-stepping two copies of the parser PDA on the half word.
inline std::optional<Word> cfg_square_search(const Cfg& g,
                                             const SearchLimits& limits = {}) {
    if (!is_finite(g))
        throw std::invalid_argument("cfg_square_search requires a finite language");
    Cfg t = trim(g);
    if (t.productions.empty()) return std::nullopt;
    Pda m = cfg_to_pda(t);
    detail::ConfigGraph graph = detail::explore_configs(m, stack_bound(m), limits);
    const Alphabet& alpha = m.input_alphabet;

    for (int mid = 0; mid < (int)graph.configs.size(); ++mid) {
        if (!graph.coreachable[mid]) continue;
        // joint state: (copy1 config, copy2 config, consumed >= 1)
        struct Node { int c1, c2; bool consumed; };
        auto key = [&](const Node& n) {
            return ((std::uint64_t)n.c1 << 33) | ((std::uint64_t)n.c2 << 1) |
                   (n.consumed ? 1u : 0u);
        };
        struct Pred { std::uint64_t prev; int symbol; };
        std::unordered_map<std::uint64_t, Pred> pred;
        std::unordered_set<std::uint64_t> seen;
        Node init{0, mid, false};
        seen.insert(key(init));
        std::deque<Node> todo{init};
        auto reconstruct = [&](std::uint64_t k) {
            Word half;
            while (true) {
                auto it = pred.find(k);
                if (it == pred.end()) break;
                if (it->second.symbol != -1)
                    half.push_back(alpha.symbols()[it->second.symbol]);
                k = it->second.prev;
            }
            std::reverse(half.begin(), half.end());
            return concat(half, half);
        };
        while (!todo.empty()) {
            Node n = todo.front();
            todo.pop_front();
            if (n.consumed && n.c1 == mid && graph.configs[n.c2].stack.empty())
                return reconstruct(key(n));
            auto push_node = [&](Node next, int symbol) {
                std::uint64_t k = key(next);
                if (!seen.insert(k).second) return;
                if (seen.size() > limits.max_configs)
                    throw ResourceError("cfg_square_search: configuration cap exceeded");
                pred[k] = {key(n), symbol};
                todo.push_back(next);
            };
            for (auto [sym, j] : graph.out[n.c1])
                if (sym == -1) push_node({j, n.c2, n.consumed}, -1);
            for (auto [sym, j] : graph.out[n.c2])
                if (sym == -1) push_node({n.c1, j, n.consumed}, -1);
            for (auto [sym1, j1] : graph.out[n.c1]) {
                if (sym1 == -1) continue;
                for (auto [sym2, j2] : graph.out[n.c2])
                    if (sym2 == sym1) push_node({j1, j2, true}, sym1);
            }
        }
    }
    return std::nullopt;
}

/// Result of a pattern-as-factor search in a context-free language.
struct CfgFactorMatch {
    Word word;          // a word of L(g)
    Morphism morphism;  // h with h(p) a factor of word
    std::size_t position = 0;
};

namespace detail {

/// Minimal terminal yields, used to materialize derivations when a pumped
/// witness is constructed for an infinite language.
struct YieldExpander {
    const Cfg& g;
    std::map<Symbol, std::uint64_t> min_len;
    std::map<Symbol, std::uint64_t> min_nonempty;  // absent entries: cannot

    explicit YieldExpander(const Cfg& trimmed) : g(trimmed) {
        min_len = min_yield_lengths(trimmed);
        constexpr std::uint64_t kInf = ~0ULL;
        for (const Symbol& v : g.variables) min_nonempty[v] = kInf;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Production& p : g.productions) {
                // force one rhs symbol to contribute non-empty material
                for (std::size_t f = 0; f < p.rhs.size(); ++f) {
                    std::uint64_t sum = 0;
                    bool ok = true;
                    for (std::size_t i = 0; i < p.rhs.size() && ok; ++i) {
                        const Symbol& s = p.rhs[i];
                        if (!g.is_variable(s)) { sum += 1; continue; }
                        std::uint64_t c = (i == f) ? min_nonempty[s] : min_len[s];
                        if (c == kInf) ok = false;
                        else sum += c;
                    }
                    if (ok && sum >= 1 && sum < min_nonempty[p.lhs]) {
                        min_nonempty[p.lhs] = sum;
                        changed = true;
                    }
                }
            }
        }
    }

    Word expand(const Symbol& s) const {
        if (!g.is_variable(s)) return {s};
        const Production* best = nullptr;
        std::uint64_t best_len = ~0ULL;
        for (const Production& p : g.productions) {
            if (p.lhs != s) continue;
            std::uint64_t sum = 0;
            bool ok = true;
            for (const Symbol& r : p.rhs) {
                std::uint64_t c = g.is_variable(r) ? min_len.at(r) : 1;
                if (c == ~0ULL) { ok = false; break; }
                sum += c;
            }
            if (ok && sum < best_len) { best_len = sum; best = &p; }
        }
        if (!best) throw std::logic_error("expand on unproductive variable " + s);
        Word out;
        for (const Symbol& r : best->rhs) {
            Word part = expand(r);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }

    Word expand_nonempty(const Symbol& s) const {
        if (!g.is_variable(s)) return {s};
        constexpr std::uint64_t kInf = ~0ULL;
        const Production* best = nullptr;
        std::size_t best_forced = 0;
        std::uint64_t best_len = kInf;
        for (const Production& p : g.productions) {
            if (p.lhs != s) continue;
            for (std::size_t f = 0; f < p.rhs.size(); ++f) {
                std::uint64_t sum = 0;
                bool ok = true;
                for (std::size_t i = 0; i < p.rhs.size() && ok; ++i) {
                    const Symbol& r = p.rhs[i];
                    if (!g.is_variable(r)) { sum += 1; continue; }
                    std::uint64_t c = (i == f) ? min_nonempty.at(r) : min_len.at(r);
                    if (c == kInf) ok = false;
                    else sum += c;
                }
                if (ok && sum >= 1 && sum < best_len) {
                    best_len = sum;
                    best = &p;
                    best_forced = f;
                }
            }
        }
        if (!best)
            throw std::logic_error("expand_nonempty on epsilon-only variable " + s);
        Word out;
        for (std::size_t i = 0; i < best->rhs.size(); ++i) {
            Word part = (i == best_forced) ? expand_nonempty(best->rhs[i])
                                           : expand(best->rhs[i]);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
};

/// u X0 v pumping loop of an infinite-language trimmed grammar, with the
/// surrounding derivation S =>* left X0 right fully expanded to terminals.
struct GrammarPump {
    Word left, loop_left, core, loop_right, right;
};

inline GrammarPump grammar_pump(const Cfg& t) {
    YieldExpander yx(t);
    std::map<Symbol, int> id;
    for (std::size_t i = 0; i < t.variables.size(); ++i) id[t.variables[i]] = (int)i;
    struct Edge { int from, to; const Production* prod; std::size_t occ; bool growing; };
    std::vector<Edge> edges;
    std::set<Symbol> ne = nonempty_deriving(t);
    for (const Production& p : t.productions)
        for (std::size_t i = 0; i < p.rhs.size(); ++i) {
            if (!t.is_variable(p.rhs[i])) continue;
            bool growing = false;
            for (std::size_t j = 0; j < p.rhs.size(); ++j) {
                if (j == i) continue;
                if (!t.is_variable(p.rhs[j]) || ne.count(p.rhs[j])) { growing = true; break; }
            }
            edges.push_back({id[p.lhs], id[p.rhs[i]], &p, i, growing});
        }
    std::vector<std::pair<int, int>> plain;
    for (const Edge& e : edges) plain.push_back({e.from, e.to});
    std::vector<bool> keep(t.variables.size(), true);
    std::vector<int> comp = scc_components((int)t.variables.size(), plain, keep);

    const Edge* grow = nullptr;
    for (const Edge& e : edges)
        if (e.growing && comp[e.from] == comp[e.to]) { grow = &e; break; }
    if (!grow) throw std::logic_error("grammar_pump on a finite-language grammar");

    // expand one derivation step X -> rhs around the variable occurrence,
    // forcing the side material non-empty when asked
    auto expand_step = [&](const Edge& e, bool force_nonempty, Word& u, Word& v) {
        std::size_t forced = e.prod->rhs.size();
        if (force_nonempty) {
            for (std::size_t j = 0; j < e.prod->rhs.size(); ++j) {
                if (j == e.occ) continue;
                const Symbol& s = e.prod->rhs[j];
                if (!t.is_variable(s) || ne.count(s)) { forced = j; break; }
            }
        }
        for (std::size_t j = 0; j < e.prod->rhs.size(); ++j) {
            if (j == e.occ) continue;
            Word part = (j == forced) ? yx.expand_nonempty(e.prod->rhs[j])
                                      : yx.expand(e.prod->rhs[j]);
            Word& side = (j < e.occ) ? u : v;
            side.insert(side.end(), part.begin(), part.end());
        }
    };

    // close the cycle: shortest edge path grow->to ... grow->from inside the SCC
    std::vector<const Edge*> path;
    if (grow->to != grow->from) {
        std::vector<const Edge*> how(t.variables.size(), nullptr);
        std::vector<bool> seen(t.variables.size(), false);
        std::deque<int> todo{grow->to};
        seen[grow->to] = true;
        while (!todo.empty()) {
            int q = todo.front();
            todo.pop_front();
            if (q == grow->from) break;
            for (const Edge& e : edges) {
                if (e.from != q || seen[e.to] || comp[e.to] != comp[grow->from]) continue;
                seen[e.to] = true;
                how[e.to] = &e;
                todo.push_back(e.to);
            }
        }
        for (int q = grow->from; q != grow->to; q = how[q]->from)
            path.push_back(how[q]);
        std::reverse(path.begin(), path.end());
    }

    GrammarPump out;
    Word u, v;
    expand_step(*grow, true, u, v);
    for (const Edge* e : path) {
        Word eu, ev;
        expand_step(*e, false, eu, ev);
        u = concat(u, eu);
        v = concat(ev, v);
    }
    out.loop_left = u;
    out.loop_right = v;
    out.core = yx.expand(t.variables[grow->from]);

    // S =>* left X0 right
    int target = grow->from;
    std::vector<const Edge*> how(t.variables.size(), nullptr);
    std::vector<bool> seen(t.variables.size(), false);
    int s0 = id[t.start];
    std::deque<int> todo{s0};
    seen[s0] = true;
    while (!todo.empty()) {
        int q = todo.front();
        todo.pop_front();
        for (const Edge& e : edges) {
            if (e.from != q || seen[e.to]) continue;
            seen[e.to] = true;
            how[e.to] = &e;
            todo.push_back(e.to);
        }
    }
    std::vector<const Edge*> down;
    for (int q = target; q != s0; q = how[q]->from) down.push_back(how[q]);
    std::reverse(down.begin(), down.end());
    Word left, right;
    for (const Edge* e : down) {
        Word eu, ev;
        expand_step(*e, false, eu, ev);
        left = concat(left, eu);
        right = concat(ev, right);
    }
    out.left = left;
    out.right = right;
    return out;
}

}  // namespace detail

/// Pattern-as-factor search over L(g).  Infinite languages yield a pumped
/// witness immediately; finite languages are searched through the bounded
/// configuration space of the parser PDA, binding each distinct pattern
/// variable at its first occurrence and replaying it elsewhere.
inline std::optional<CfgFactorMatch> cfg_pattern_factor_search(
    const Cfg& g, const Pattern& p, const SearchLimits& limits = {}) {
    if (p.empty()) throw std::invalid_argument("pattern must be non-empty");
    Cfg t = trim(g);
    if (t.productions.empty()) return std::nullopt;

    std::vector<Symbol> distinct;
    for (const Symbol& v : p)
        if (std::find(distinct.begin(), distinct.end(), v) == distinct.end())
            distinct.push_back(v);

    if (!is_finite(t)) {
        detail::GrammarPump pump = detail::grammar_pump(t);
        Word core = pump.loop_left.empty() ? pump.loop_right : pump.loop_left;
        CfgFactorMatch out;
        for (const Symbol& v : distinct) out.morphism[v] = core;
        Word pumped_left = repeat(pump.loop_left, p.size());
        Word pumped_right = repeat(pump.loop_right, p.size());
        out.word = concat(pump.left,
                          concat(pumped_left,
                                 concat(pump.core, concat(pumped_right, pump.right))));
        out.position = pump.loop_left.empty()
                           ? pump.left.size() + pump.core.size()
                           : pump.left.size();
        return out;
    }

    Pda m = cfg_to_pda(t);
    const Alphabet& alpha = m.input_alphabet;
    detail::ConfigGraph graph = detail::explore_configs(m, stack_bound(m), limits);
    std::uint64_t maxw = detail::max_yield_lengths(t).at(t.start);

    std::map<Symbol, Word> bindings;
    std::uint64_t work = 0;
    auto charge = [&](std::uint64_t amount) {
        work += amount;
        if (work > limits.max_configs * 8)
            throw ResourceError("cfg_pattern_factor_search: exploration cap exceeded");
    };

    // length budget for a fresh image of `var` bound at position j
    auto image_budget = [&](std::size_t j, const Symbol& var) -> std::int64_t {
        std::int64_t committed = 0;
        for (std::size_t k = 0; k < j; ++k) committed += (std::int64_t)bindings.at(p[k]).size();
        std::int64_t occ = 0, other_min = 0;
        for (std::size_t k = j; k < p.size(); ++k) {
            if (p[k] == var) ++occ;
            else if (bindings.count(p[k])) other_min += (std::int64_t)bindings.at(p[k]).size();
            else ++other_min;
        }
        return ((std::int64_t)maxw - committed - other_min) / occ;
    };

    std::optional<CfgFactorMatch> result;
    int start_config = -1;

    std::function<bool(std::size_t, const std::set<int>&)> search =
        [&](std::size_t j, const std::set<int>& configs) -> bool {
        charge(configs.size() + 1);
        if (j == p.size()) {
            for (int i : configs) {
                if (!graph.coreachable[i]) continue;
                CfgFactorMatch out;
                for (const Symbol& v : distinct) out.morphism[v] = bindings.at(v);
                Word prefix = detail::prefix_word(m, graph, start_config);
                out.word = concat(prefix, apply_morphism(out.morphism, p));
                out.position = prefix.size();
                Word suffix = detail::suffix_word(m, graph, i);
                out.word = concat(out.word, suffix);
                result = out;
                return true;
            }
            return false;
        }
        const Symbol& var = p[j];
        auto bound_it = bindings.find(var);
        if (bound_it != bindings.end()) {
            std::set<int> next = detail::read_word(graph, alpha, configs, bound_it->second);
            if (next.empty()) return false;
            return search(j + 1, next);
        }
        std::int64_t budget = image_budget(j, var);
        if (budget < 1) return false;
        struct Node { Word word; std::set<int> configs; };
        std::vector<Node> level{{Word{}, configs}};
        for (std::int64_t len = 1; len <= budget && !level.empty(); ++len) {
            std::vector<Node> next_level;
            for (const Node& node : level) {
                for (std::size_t a = 0; a < alpha.size(); ++a) {
                    std::set<int> s = detail::step_configs(graph, node.configs, (int)a);
                    charge(1);
                    if (s.empty()) continue;
                    Node child{node.word, s};
                    child.word.push_back(alpha.symbols()[a]);
                    bindings[var] = child.word;
                    if (search(j + 1, child.configs)) return true;
                    bindings.erase(var);
                    next_level.push_back(std::move(child));
                }
            }
            level = std::move(next_level);
        }
        return false;
    };

    for (int c0 = 0; c0 < (int)graph.configs.size(); ++c0) {
        start_config = c0;
        if (search(0, {c0})) return result;
    }
    return std::nullopt;
}

}  // namespace flpat

#endif  // FLPAT_PDA_HPP
