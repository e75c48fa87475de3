#ifndef FLPAT_GRAMMARS_HPP
#define FLPAT_GRAMMARS_HPP

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "flpat/automata.hpp"
#include "flpat/words.hpp"

namespace flpat {

struct Production {
    Symbol lhs;
    std::vector<Symbol> rhs;  // mixed variables and terminals; empty = epsilon
};

/// Context-free grammar.  Variable and terminal token sets are disjoint.
struct Cfg {
    std::vector<Symbol> variables;
    Alphabet terminals;
    std::vector<Production> productions;
    Symbol start;

    bool is_variable(const Symbol& s) const {
        for (const Symbol& v : variables)
            if (v == s) return true;
        return false;
    }
};

inline void validate(const Cfg& g) {
    std::set<Symbol> vars(g.variables.begin(), g.variables.end());
    if (vars.size() != g.variables.size())
        throw std::invalid_argument("duplicate grammar variable");
    if (!vars.count(g.start))
        throw std::invalid_argument("start symbol is not a declared variable");
    for (const Symbol& v : g.variables)
        if (g.terminals.contains(v))
            throw std::invalid_argument("variable collides with terminal: " + v);
    for (const Production& p : g.productions) {
        if (!vars.count(p.lhs))
            throw std::invalid_argument("production lhs not a variable: " + p.lhs);
        for (const Symbol& s : p.rhs)
            if (!vars.count(s) && !g.terminals.contains(s))
                throw std::invalid_argument("undeclared symbol in rhs: " + s);
    }
}

namespace detail {

inline std::set<Symbol> productive_variables(const Cfg& g) {
    std::set<Symbol> prod;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions) {
            if (prod.count(p.lhs)) continue;
            bool ok = true;
            for (const Symbol& s : p.rhs)
                if (g.is_variable(s) && !prod.count(s)) { ok = false; break; }
            if (ok) { prod.insert(p.lhs); changed = true; }
        }
    }
    return prod;
}

inline std::set<Symbol> reachable_variables(const Cfg& g) {
    std::set<Symbol> reach{g.start};
    std::deque<Symbol> todo{g.start};
    while (!todo.empty()) {
        Symbol v = todo.front();
        todo.pop_front();
        for (const Production& p : g.productions) {
            if (p.lhs != v) continue;
            for (const Symbol& s : p.rhs)
                if (g.is_variable(s) && reach.insert(s).second) todo.push_back(s);
        }
    }
    return reach;
}

inline std::set<Symbol> nullable_variables(const Cfg& g) {
    std::set<Symbol> nul;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions) {
            if (nul.count(p.lhs)) continue;
            bool ok = true;
            for (const Symbol& s : p.rhs)
                if (!g.is_variable(s) || !nul.count(s)) { ok = false; break; }
            if (ok) { nul.insert(p.lhs); changed = true; }
        }
    }
    return nul;
}

/// Variables that derive some non-empty terminal word.  Assumes a trimmed
/// (all-productive) grammar.
inline std::set<Symbol> nonempty_deriving(const Cfg& g) {
    std::set<Symbol> ne;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions) {
            if (ne.count(p.lhs)) continue;
            for (const Symbol& s : p.rhs) {
                if (!g.is_variable(s) || ne.count(s)) { ne.insert(p.lhs); changed = true; break; }
            }
        }
    }
    return ne;
}

}  // namespace detail

/// Removes non-productive and unreachable variables; L unchanged.  If the
/// start symbol is useless the result is the canonical empty grammar.
inline Cfg trim(const Cfg& g) {
    std::set<Symbol> prod = detail::productive_variables(g);
    Cfg pruned = g;
    if (!prod.count(g.start)) {
        pruned.variables = {g.start};
        pruned.productions.clear();
        return pruned;
    }
    pruned.productions.clear();
    for (const Production& p : g.productions) {
        if (!prod.count(p.lhs)) continue;
        bool ok = true;
        for (const Symbol& s : p.rhs)
            if (g.is_variable(s) && !prod.count(s)) { ok = false; break; }
        if (ok) pruned.productions.push_back(p);
    }
    pruned.variables.clear();
    for (const Symbol& v : g.variables)
        if (prod.count(v)) pruned.variables.push_back(v);

    std::set<Symbol> reach = detail::reachable_variables(pruned);
    Cfg out = pruned;
    out.variables.clear();
    for (const Symbol& v : pruned.variables)
        if (reach.count(v)) out.variables.push_back(v);
    out.productions.clear();
    for (const Production& p : pruned.productions)
        if (reach.count(p.lhs)) out.productions.push_back(p);
    return out;
}

/// True iff L(g) is finite: no useful variable lies on a derives-cycle that
/// can contribute length.  Cycles whose side material only derives epsilon
/// do not pump.
inline bool is_finite(const Cfg& g) {
    Cfg t = trim(g);
    std::map<Symbol, int> id;
    for (std::size_t i = 0; i < t.variables.size(); ++i) id[t.variables[i]] = (int)i;
    std::set<Symbol> ne = detail::nonempty_deriving(t);
    struct Edge { int from, to; bool growing; };
    std::vector<Edge> edges;
    for (const Production& p : t.productions) {
        for (std::size_t i = 0; i < p.rhs.size(); ++i) {
            if (!t.is_variable(p.rhs[i])) continue;
            bool growing = false;
            for (std::size_t j = 0; j < p.rhs.size(); ++j) {
                if (j == i) continue;
                if (!t.is_variable(p.rhs[j]) || ne.count(p.rhs[j])) { growing = true; break; }
            }
            edges.push_back({id[p.lhs], id[p.rhs[i]], growing});
        }
    }
    std::vector<std::pair<int, int>> plain;
    for (const Edge& e : edges) plain.push_back({e.from, e.to});
    std::vector<bool> keep(t.variables.size(), true);
    std::vector<int> comp =
        detail::scc_components((int)t.variables.size(), plain, keep);
    for (const Edge& e : edges)
        if (comp[e.from] == comp[e.to] && e.growing) return false;
    return true;
}

namespace detail {

/// Longest yield per useful variable; requires a finite language.  Values
/// saturate at the cap.
inline std::map<Symbol, std::uint64_t> max_yield_lengths(const Cfg& trimmed) {
    constexpr std::uint64_t kCap = 1'000'000'000ULL;
    std::map<Symbol, std::uint64_t> best;
    for (const Symbol& v : trimmed.variables) best[v] = 0;
    // |V| + 1 rounds reach the fixpoint for a finite-language grammar
    for (std::size_t round = 0; round <= trimmed.variables.size() + 1; ++round) {
        for (const Production& p : trimmed.productions) {
            std::uint64_t sum = 0;
            for (const Symbol& s : p.rhs) {
                if (trimmed.is_variable(s)) sum += best[s];
                else sum += 1;
                if (sum > kCap) sum = kCap;
            }
            if (sum > best[p.lhs]) best[p.lhs] = sum;
        }
    }
    return best;
}

inline std::map<Symbol, std::uint64_t> min_yield_lengths(const Cfg& trimmed) {
    constexpr std::uint64_t kInf = ~0ULL;
    std::map<Symbol, std::uint64_t> best;
    for (const Symbol& v : trimmed.variables) best[v] = kInf;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : trimmed.productions) {
            std::uint64_t sum = 0;
            bool ok = true;
            for (const Symbol& s : p.rhs) {
                if (trimmed.is_variable(s)) {
                    if (best[s] == kInf) { ok = false; break; }
                    sum += best[s];
                } else {
                    sum += 1;
                }
            }
            if (ok && sum < best[p.lhs]) { best[p.lhs] = sum; changed = true; }
        }
    }
    return best;
}

}  // namespace detail

/// Loose but sound word-length bound b^v for finite-language grammars:
/// derivation trees repeat no variable root-to-leaf, so depth <= v and
/// fan-out <= b.
inline std::uint64_t length_bound(const Cfg& g) {
    if (!is_finite(g))
        throw std::invalid_argument("length_bound requires a finite language");
    Cfg t = trim(g);
    std::uint64_t b = 2;
    for (const Production& p : t.productions)
        if (p.rhs.size() > b) b = p.rhs.size();
    std::uint64_t v = t.variables.empty() ? 1 : t.variables.size();
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < v; ++i) {
        if (out > 1'000'000'000'000ULL / b) return 1'000'000'000'000ULL;  // saturate
        out *= b;
    }
    return out;
}

/// All words of L(g) with length <= max_len, deduplicated, length-then-lex.
/// Breadth-first leftmost derivation over an epsilon-free core, pruning any
/// sentential form whose minimum yield already exceeds max_len.
inline std::vector<Word> enumerate(const Cfg& g, std::uint64_t max_len,
                                   const SearchLimits& limits = {}) {
    Cfg t = trim(g);
    std::vector<Word> out;
    if (t.productions.empty()) return out;

    std::set<Symbol> nullable = detail::nullable_variables(t);
    bool has_epsilon = nullable.count(t.start) != 0;

    // epsilon-free core: drop nullable occurrences in every combination
    Cfg core = t;
    core.productions.clear();
    for (const Production& p : t.productions) {
        std::vector<std::size_t> null_pos;
        for (std::size_t i = 0; i < p.rhs.size(); ++i)
            if (t.is_variable(p.rhs[i]) && nullable.count(p.rhs[i]))
                null_pos.push_back(i);
        if (null_pos.size() > 20)
            throw ResourceError("enumerate: too many nullable symbols in one rhs");
        for (std::uint64_t mask = 0; mask < (1ULL << null_pos.size()); ++mask) {
            Production q;
            q.lhs = p.lhs;
            for (std::size_t i = 0; i < p.rhs.size(); ++i) {
                auto it = std::find(null_pos.begin(), null_pos.end(), i);
                if (it != null_pos.end()) {
                    std::size_t bit = (std::size_t)(it - null_pos.begin());
                    if (mask & (1ULL << bit)) continue;  // drop this occurrence
                }
                q.rhs.push_back(p.rhs[i]);
            }
            if (!q.rhs.empty()) core.productions.push_back(q);
        }
    }
    core = trim(core);

    if (has_epsilon) out.push_back(Word{});
    if (core.productions.empty() || !core.is_variable(core.start)) {
        return out;
    }

    std::map<Symbol, std::uint64_t> min_yield = detail::min_yield_lengths(core);
    auto min_len_of = [&](const std::vector<Symbol>& form) {
        std::uint64_t sum = 0;
        for (const Symbol& s : form)
            sum += core.is_variable(s) ? min_yield[s] : 1;
        return sum;
    };

    std::unordered_set<std::string> seen_forms;
    std::unordered_set<std::string> seen_words;
    std::deque<std::vector<Symbol>> todo{{core.start}};
    seen_forms.insert(word_key({core.start}));
    std::uint64_t visited = 0;
    while (!todo.empty()) {
        std::vector<Symbol> form = todo.front();
        todo.pop_front();
        std::size_t var_pos = form.size();
        for (std::size_t i = 0; i < form.size(); ++i)
            if (core.is_variable(form[i])) { var_pos = i; break; }
        if (var_pos == form.size()) {
            if (form.size() <= max_len && seen_words.insert(word_key(form)).second)
                out.push_back(form);
            continue;
        }
        for (const Production& p : core.productions) {
            if (p.lhs != form[var_pos]) continue;
            std::vector<Symbol> next;
            next.reserve(form.size() + p.rhs.size());
            next.insert(next.end(), form.begin(), form.begin() + var_pos);
            next.insert(next.end(), p.rhs.begin(), p.rhs.end());
            next.insert(next.end(), form.begin() + var_pos + 1, form.end());
            if (min_len_of(next) > max_len) continue;
            if (!seen_forms.insert(word_key(next)).second) continue;
            if (++visited > limits.max_configs)
                throw ResourceError("enumerate: sentential form cap exceeded");
            todo.push_back(next);
        }
    }
    std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
        return word_less(a, b, t.terminals);
    });
    return out;
}

namespace detail {

inline Symbol fresh_symbol(Symbol base, const std::set<Symbol>& taken) {
    while (taken.count(base)) base += "'";
    return base;
}

}  // namespace detail

/// L(g1) sep L(g2) sep ... sep L(gk) sep, variables renamed apart.
inline Cfg concat_with_separators(const std::vector<Cfg>& gs, const Symbol& sep) {
    if (gs.empty())
        throw std::invalid_argument("concat_with_separators needs at least one grammar");
    std::vector<Alphabet> alphas;
    for (const Cfg& g : gs) {
        if (g.terminals.contains(sep))
            throw std::invalid_argument("separator collides with a terminal: " + sep);
        alphas.push_back(g.terminals);
    }
    Cfg out;
    out.terminals = merge_alphabets(alphas, {sep});
    std::set<Symbol> taken;
    for (const Symbol& s : out.terminals.symbols()) taken.insert(s);

    std::vector<Symbol> part_starts;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        std::map<Symbol, Symbol> rename;
        for (const Symbol& v : gs[i].variables) {
            Symbol nv = detail::fresh_symbol("B" + std::to_string(i + 1) + "_" + v, taken);
            taken.insert(nv);
            rename[v] = nv;
            out.variables.push_back(nv);
        }
        part_starts.push_back(rename.at(gs[i].start));
        for (const Production& p : gs[i].productions) {
            Production q;
            q.lhs = rename.at(p.lhs);
            for (const Symbol& s : p.rhs)
                q.rhs.push_back(gs[i].is_variable(s) ? rename.at(s) : s);
            out.productions.push_back(q);
        }
    }
    Symbol start = detail::fresh_symbol("S", taken);
    out.variables.insert(out.variables.begin(), start);
    out.start = start;
    Production top;
    top.lhs = start;
    for (const Symbol& ps : part_starts) {
        top.rhs.push_back(ps);
        top.rhs.push_back(sep);
    }
    out.productions.insert(out.productions.begin(), top);
    return out;
}

/// Grammar for { u : uv in L(g) }, epsilon included.  Two-copy construction:
/// each variable X gets a companion generating the prefixes of X's yields.
inline Cfg prefix_grammar(const Cfg& g) {
    Cfg t = trim(g);
    std::set<Symbol> taken(t.variables.begin(), t.variables.end());
    for (const Symbol& s : t.terminals.symbols()) taken.insert(s);
    std::map<Symbol, Symbol> pre;
    for (const Symbol& v : t.variables) {
        Symbol pv = detail::fresh_symbol(v + "'", taken);
        taken.insert(pv);
        pre[v] = pv;
    }
    Cfg out = t;
    if (t.productions.empty()) return out;  // empty language has no prefixes
    for (const Symbol& v : t.variables) out.variables.push_back(pre[v]);
    for (const Symbol& v : t.variables)
        out.productions.push_back({pre[v], {}});  // epsilon
    for (const Production& p : t.productions) {
        for (std::size_t i = 0; i < p.rhs.size(); ++i) {
            Production q;
            q.lhs = pre[p.lhs];
            for (std::size_t j = 0; j < i; ++j) q.rhs.push_back(p.rhs[j]);
            if (t.is_variable(p.rhs[i])) q.rhs.push_back(pre[p.rhs[i]]);
            else q.rhs.push_back(p.rhs[i]);
            out.productions.push_back(q);
        }
    }
    out.start = pre[t.start];
    return out;
}

/// Right-hand sides reduced to epsilon, one terminal, one variable, or two
/// variables.  Language preserved.
inline Cfg binarize(const Cfg& g) {
    Cfg out = g;
    out.productions.clear();
    std::set<Symbol> taken(g.variables.begin(), g.variables.end());
    for (const Symbol& s : g.terminals.symbols()) taken.insert(s);
    std::map<Symbol, Symbol> term_var;
    auto wrap_terminal = [&](const Symbol& a) {
        auto it = term_var.find(a);
        if (it != term_var.end()) return it->second;
        Symbol v = detail::fresh_symbol("T_" + a, taken);
        taken.insert(v);
        term_var[a] = v;
        out.variables.push_back(v);
        out.productions.push_back({v, {a}});
        return v;
    };
    int chain = 0;
    for (const Production& p : g.productions) {
        if (p.rhs.size() <= 1 ||
            (p.rhs.size() == 2 && g.is_variable(p.rhs[0]) && g.is_variable(p.rhs[1]))) {
            out.productions.push_back(p);
            continue;
        }
        std::vector<Symbol> vars;
        for (const Symbol& s : p.rhs)
            vars.push_back(g.is_variable(s) ? s : wrap_terminal(s));
        Symbol cur = p.lhs;
        for (std::size_t i = 0; i + 2 < vars.size(); ++i) {
            Symbol next = detail::fresh_symbol(
                p.lhs + "%" + std::to_string(chain++), taken);
            taken.insert(next);
            out.variables.push_back(next);
            out.productions.push_back({cur, {vars[i], next}});
            cur = next;
        }
        out.productions.push_back({cur, {vars[vars.size() - 2], vars.back()}});
    }
    return out;
}

/// Bar-Hillel product: grammar for L(g) intersected with L(d).  The grammar
/// is binarized internally; the result is trimmed.
inline Cfg intersect_dfa(const Cfg& g, const Dfa& d) {
    for (const Symbol& s : g.terminals.symbols())
        if (!d.alphabet.contains(s))
            throw std::invalid_argument("grammar terminal not in dfa alphabet: " + s);
    Cfg b = binarize(trim(g));
    Cfg out;
    out.terminals = g.terminals;
    int n = d.state_count;
    auto name = [&](int q, const Symbol& x, int r) {
        return "I" + std::to_string(q) + "_" + x + "_" + std::to_string(r);
    };
    std::set<Symbol> declared;
    auto declare = [&](const Symbol& v) {
        if (declared.insert(v).second) out.variables.push_back(v);
    };
    Symbol start = "S&";
    declare(start);
    out.start = start;
    if (b.is_variable(b.start)) {
        for (int f : d.accepting) {
            declare(name(d.start, b.start, f));
            out.productions.push_back({start, {name(d.start, b.start, f)}});
        }
        for (const Production& p : b.productions) {
            if (p.rhs.empty()) {
                for (int q = 0; q < n; ++q) {
                    declare(name(q, p.lhs, q));
                    out.productions.push_back({name(q, p.lhs, q), {}});
                }
            } else if (p.rhs.size() == 1 && !b.is_variable(p.rhs[0])) {
                std::size_t ai = d.alphabet.index(p.rhs[0]);
                for (int q = 0; q < n; ++q) {
                    int r = d.transition[q][ai];
                    declare(name(q, p.lhs, r));
                    out.productions.push_back({name(q, p.lhs, r), {p.rhs[0]}});
                }
            } else if (p.rhs.size() == 1) {
                for (int q = 0; q < n; ++q)
                    for (int r = 0; r < n; ++r) {
                        declare(name(q, p.lhs, r));
                        declare(name(q, p.rhs[0], r));
                        out.productions.push_back(
                            {name(q, p.lhs, r), {name(q, p.rhs[0], r)}});
                    }
            } else {
                for (int q = 0; q < n; ++q)
                    for (int r = 0; r < n; ++r)
                        for (int t2 = 0; t2 < n; ++t2) {
                            declare(name(q, p.lhs, r));
                            declare(name(q, p.rhs[0], t2));
                            declare(name(t2, p.rhs[1], r));
                            out.productions.push_back(
                                {name(q, p.lhs, r),
                                 {name(q, p.rhs[0], t2), name(t2, p.rhs[1], r)}});
                        }
            }
        }
    }
    return trim(out);
}

}  // namespace flpat

#endif  // FLPAT_GRAMMARS_HPP
