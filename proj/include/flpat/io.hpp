#ifndef FLPAT_IO_HPP
#define FLPAT_IO_HPP

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "flpat/automata.hpp"
#include "flpat/grammars.hpp"
#include "flpat/pda.hpp"
#include "flpat/reductions.hpp"
#include "flpat/words.hpp"

namespace flpat {

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline int parse_int(const std::string& tok, const char* what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + ": '" + tok + "'");
    }
}

}  // namespace detail

/// Word format: whitespace-separated tokens on the first line; an empty (or
/// missing) line is the empty word.
inline Word parse_word(const std::string& text) {
    auto lines = detail::split_lines(text);
    Word w;
    if (!lines.empty())
        for (const std::string& t : detail::tokenize(lines[0])) w.push_back(t);
    return w;
}

inline std::string write_word(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += w[i];
    }
    out += '\n';
    return out;
}

/// Pattern format is the word format over variable tokens; patterns must be
/// non-empty.
inline Pattern parse_pattern(const std::string& text) {
    Pattern p = parse_word(text);
    if (p.empty()) throw std::invalid_argument("pattern file is empty");
    return p;
}

inline std::string write_pattern(const Pattern& p) { return write_word(p); }

namespace detail {

/// Shared directive collector for the automaton formats.
struct AutomatonDirectives {
    int state_count = -1;
    std::vector<Symbol> alphabet;
    std::vector<int> starts;
    std::vector<int> accepting;
    std::vector<NfaTransition> transitions;  // symbol nullopt = epsilon
};

inline AutomatonDirectives parse_automaton_directives(const std::string& text) {
    AutomatonDirectives d;
    for (const std::string& line : split_lines(text)) {
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "states") {
            if (toks.size() != 2) throw std::invalid_argument("states wants one count");
            d.state_count = parse_int(toks[1], "state count");
        } else if (kw == "alphabet") {
            d.alphabet.assign(toks.begin() + 1, toks.end());
        } else if (kw == "start") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                d.starts.push_back(parse_int(toks[i], "start state"));
        } else if (kw == "accept") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                d.accepting.push_back(parse_int(toks[i], "accepting state"));
        } else if (kw == "trans") {
            if (toks.size() != 4)
                throw std::invalid_argument("trans wants: trans q s q'");
            NfaTransition t;
            t.from = parse_int(toks[1], "transition source");
            if (toks[2] != "~") t.symbol = toks[2];
            t.to = parse_int(toks[3], "transition target");
            d.transitions.push_back(t);
        } else {
            throw std::invalid_argument("unknown automaton directive: " + kw);
        }
    }
    if (d.state_count < 0) throw std::invalid_argument("missing states directive");
    if (d.alphabet.empty()) throw std::invalid_argument("missing alphabet directive");
    if (d.starts.empty()) throw std::invalid_argument("missing start directive");
    return d;
}

}  // namespace detail

inline Nfa parse_nfa(const std::string& text) {
    auto d = detail::parse_automaton_directives(text);
    Nfa m;
    m.state_count = d.state_count;
    m.alphabet = Alphabet(d.alphabet);
    m.transitions = d.transitions;
    m.starts.insert(d.starts.begin(), d.starts.end());
    m.accepting.insert(d.accepting.begin(), d.accepting.end());
    validate(m);
    return m;
}

inline Dfa parse_dfa(const std::string& text) {
    auto d = detail::parse_automaton_directives(text);
    if (d.starts.size() != 1)
        throw std::invalid_argument("dfa wants exactly one start state");
    Dfa out;
    out.state_count = d.state_count;
    out.alphabet = Alphabet(d.alphabet);
    out.start = d.starts[0];
    out.accepting.insert(d.accepting.begin(), d.accepting.end());
    out.transition.assign(d.state_count,
                          std::vector<int>(out.alphabet.size(), -1));
    for (const NfaTransition& t : d.transitions) {
        if (!t.symbol) throw std::invalid_argument("dfa cannot carry epsilon moves");
        if (t.from < 0 || t.from >= d.state_count)
            throw std::invalid_argument("dfa transition source out of range");
        int& cell = out.transition[t.from][out.alphabet.index(*t.symbol)];
        if (cell != -1)
            throw std::invalid_argument("dfa transition declared twice");
        cell = t.to;
    }
    for (const auto& row : out.transition)
        for (int q : row)
            if (q == -1)
                throw std::invalid_argument("dfa transition function not total");
    validate(out);
    return out;
}

inline std::string write_dfa(const Dfa& d) {
    std::ostringstream out;
    out << "states " << d.state_count << "\n";
    out << "alphabet";
    for (const Symbol& s : d.alphabet.symbols()) out << ' ' << s;
    out << "\n";
    out << "start " << d.start << "\n";
    out << "accept";
    for (int q : d.accepting) out << ' ' << q;
    out << "\n";
    for (int q = 0; q < d.state_count; ++q)
        for (std::size_t a = 0; a < d.alphabet.size(); ++a)
            out << "trans " << q << ' ' << d.alphabet.symbols()[a] << ' '
                << d.transition[q][a] << "\n";
    return out.str();
}

inline std::string write_nfa(const Nfa& m) {
    std::ostringstream out;
    out << "states " << m.state_count << "\n";
    out << "alphabet";
    for (const Symbol& s : m.alphabet.symbols()) out << ' ' << s;
    out << "\n";
    out << "start";
    for (int q : m.starts) out << ' ' << q;
    out << "\n";
    out << "accept";
    for (int q : m.accepting) out << ' ' << q;
    out << "\n";
    for (const NfaTransition& t : m.transitions)
        out << "trans " << t.from << ' ' << (t.symbol ? *t.symbol : Symbol("~"))
            << ' ' << t.to << "\n";
    return out.str();
}

/// Grammar format: `start S`, `terminals s1 ...`, then productions
/// `X -> alpha` with `~` for epsilon and `|` separating alternatives.
/// Variables are every production head plus the start symbol plus any
/// right-hand symbol that is not a terminal.
inline Cfg parse_cfg(const std::string& text) {
    Cfg g;
    bool have_start = false, have_terminals = false;
    std::vector<Symbol> terminals;
    struct RawProduction { Symbol lhs; std::vector<std::vector<Symbol>> alts; };
    std::vector<RawProduction> raw;
    for (const std::string& line : detail::split_lines(text)) {
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "start") {
            if (toks.size() != 2) throw std::invalid_argument("start wants one symbol");
            g.start = toks[1];
            have_start = true;
        } else if (toks[0] == "terminals") {
            terminals.assign(toks.begin() + 1, toks.end());
            have_terminals = true;
        } else {
            if (toks.size() < 2 || toks[1] != "->")
                throw std::invalid_argument("bad production line: " + line);
            RawProduction rp{toks[0], {{}}};
            for (std::size_t i = 2; i < toks.size(); ++i) {
                if (toks[i] == "|") rp.alts.push_back({});
                else if (toks[i] != "~") rp.alts.back().push_back(toks[i]);
            }
            raw.push_back(std::move(rp));
        }
    }
    if (!have_start) throw std::invalid_argument("missing start directive");
    if (!have_terminals) throw std::invalid_argument("missing terminals directive");
    g.terminals = Alphabet(terminals);
    auto add_variable = [&](const Symbol& v) {
        if (std::find(g.variables.begin(), g.variables.end(), v) == g.variables.end())
            g.variables.push_back(v);
    };
    add_variable(g.start);
    for (const auto& rp : raw) add_variable(rp.lhs);
    for (const auto& rp : raw)
        for (const auto& alt : rp.alts) {
            for (const Symbol& s : alt)
                if (!g.terminals.contains(s)) add_variable(s);
            g.productions.push_back({rp.lhs, alt});
        }
    validate(g);
    return g;
}

inline std::string write_cfg(const Cfg& g) {
    std::ostringstream out;
    out << "start " << g.start << "\n";
    out << "terminals";
    for (const Symbol& s : g.terminals.symbols()) out << ' ' << s;
    out << "\n";
    for (const Production& p : g.productions) {
        out << p.lhs << " ->";
        if (p.rhs.empty()) out << " ~";
        for (const Symbol& s : p.rhs) out << ' ' << s;
        out << "\n";
    }
    return out.str();
}

/// PDA format: the automaton directives plus `stack g1 ...`, `initstack g`,
/// and `move q a push|pop g q'` with `~` for an epsilon input.  Acceptance
/// is by empty stack, so there is no accept directive.
inline Pda parse_pda(const std::string& text) {
    Pda m;
    bool have_states = false, have_alpha = false, have_stack = false;
    bool have_start = false, have_init = false;
    std::vector<Symbol> alphabet;
    auto stack_index = [&](const Symbol& s) {
        for (std::size_t i = 0; i < m.stack_symbols.size(); ++i)
            if (m.stack_symbols[i] == s) return (int)i;
        throw std::invalid_argument("unknown stack symbol: " + s);
    };
    for (const std::string& line : detail::split_lines(text)) {
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "states") {
            if (toks.size() != 2) throw std::invalid_argument("states wants one count");
            m.state_count = detail::parse_int(toks[1], "state count");
            have_states = true;
        } else if (kw == "alphabet") {
            alphabet.assign(toks.begin() + 1, toks.end());
            have_alpha = true;
        } else if (kw == "stack") {
            m.stack_symbols.assign(toks.begin() + 1, toks.end());
            have_stack = true;
        } else if (kw == "start") {
            if (toks.size() != 2) throw std::invalid_argument("start wants one state");
            m.start = detail::parse_int(toks[1], "start state");
            have_start = true;
        } else if (kw == "initstack") {
            if (toks.size() != 2) throw std::invalid_argument("initstack wants one symbol");
            if (!have_stack)
                throw std::invalid_argument("initstack before stack directive");
            m.initial_stack = stack_index(toks[1]);
            have_init = true;
        } else if (kw == "move") {
            if (toks.size() != 6 || (toks[3] != "push" && toks[3] != "pop"))
                throw std::invalid_argument("move wants: move q a push|pop g q'");
            if (!have_stack)
                throw std::invalid_argument("move before stack directive");
            PdaMove mv;
            mv.from = detail::parse_int(toks[1], "move source");
            if (toks[2] != "~") mv.input = toks[2];
            mv.push = toks[3] == "push";
            mv.stack_symbol = stack_index(toks[4]);
            mv.to = detail::parse_int(toks[5], "move target");
            m.moves.push_back(mv);
        } else {
            throw std::invalid_argument("unknown pda directive: " + kw);
        }
    }
    if (!have_states) throw std::invalid_argument("missing states directive");
    if (!have_alpha) throw std::invalid_argument("missing alphabet directive");
    if (!have_stack) throw std::invalid_argument("missing stack directive");
    if (!have_start) throw std::invalid_argument("missing start directive");
    if (!have_init) throw std::invalid_argument("missing initstack directive");
    m.input_alphabet = Alphabet(alphabet);
    validate(m);
    return m;
}

inline std::string write_pda(const Pda& m) {
    std::ostringstream out;
    out << "states " << m.state_count << "\n";
    out << "alphabet";
    for (const Symbol& s : m.input_alphabet.symbols()) out << ' ' << s;
    out << "\n";
    out << "stack";
    for (const Symbol& s : m.stack_symbols) out << ' ' << s;
    out << "\n";
    out << "start " << m.start << "\n";
    out << "initstack " << m.stack_symbols[m.initial_stack] << "\n";
    for (const PdaMove& mv : m.moves)
        out << "move " << mv.from << ' ' << (mv.input ? *mv.input : Symbol("~"))
            << ' ' << (mv.push ? "push" : "pop") << ' '
            << m.stack_symbols[mv.stack_symbol] << ' ' << mv.to << "\n";
    return out.str();
}

/// DIMACS-style 3-CNF: optional `c` comment lines, one `p cnf n m` header,
/// then m lines of exactly three non-zero literals terminated by 0.
inline SatInstance parse_dimacs(const std::string& text) {
    SatInstance phi;
    bool have_header = false;
    std::size_t expected = 0;
    for (const std::string& line : detail::split_lines(text)) {
        auto toks = detail::tokenize(line);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] == "p") {
            if (have_header) throw std::invalid_argument("duplicate dimacs header");
            if (toks.size() != 4 || toks[1] != "cnf")
                throw std::invalid_argument("bad dimacs header: " + line);
            phi.variable_count = detail::parse_int(toks[2], "variable count");
            expected = (std::size_t)detail::parse_int(toks[3], "clause count");
            have_header = true;
            continue;
        }
        if (!have_header) throw std::invalid_argument("clause before dimacs header");
        if (toks.size() != 4 || toks[3] != "0")
            throw std::invalid_argument("clause wants three literals then 0: " + line);
        std::array<Literal, 3> clause;
        for (int i = 0; i < 3; ++i) {
            int lit = detail::parse_int(toks[i], "literal");
            if (lit == 0) throw std::invalid_argument("zero literal inside clause");
            clause[i] = Literal{std::abs(lit), lit > 0};
        }
        phi.clauses.push_back(clause);
    }
    if (!have_header) throw std::invalid_argument("missing dimacs header");
    if (phi.clauses.size() != expected)
        throw std::invalid_argument("clause count does not match header");
    validate(phi);
    return phi;
}

inline std::string write_dimacs(const SatInstance& phi) {
    std::ostringstream out;
    out << "p cnf " << phi.variable_count << ' ' << phi.clauses.size() << "\n";
    for (const auto& c : phi.clauses) {
        for (const Literal& l : c) out << (l.positive ? l.variable : -l.variable) << ' ';
        out << "0\n";
    }
    return out.str();
}

/// Post correspondence input: one pair per line, `x y`, each word written as
/// a string of single-character symbols.
inline PcpInstance parse_pcp(const std::string& text) {
    PcpInstance inst;
    auto explode = [](const std::string& s) {
        Word w;
        for (char c : s) w.push_back(std::string(1, c));
        return w;
    };
    for (const std::string& line : detail::split_lines(text)) {
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        if (toks.size() != 2)
            throw std::invalid_argument("pcp line wants two words: " + line);
        inst.pairs.push_back({explode(toks[0]), explode(toks[1])});
    }
    validate(inst);
    return inst;
}

inline std::string write_pcp(const PcpInstance& inst) {
    std::ostringstream out;
    for (const auto& [x, y] : inst.pairs) {
        for (const Symbol& s : x) out << s;
        out << ' ';
        for (const Symbol& s : y) out << s;
        out << "\n";
    }
    return out.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

}  // namespace flpat

#endif  // FLPAT_IO_HPP
