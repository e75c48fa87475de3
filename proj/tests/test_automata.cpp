#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "flpat/automata.hpp"
#include "flpat/reductions.hpp"
#include "helpers.hpp"

using namespace flpat;
using testutil::W;

namespace {

/// Chain DFA accepting exactly {w} over the given alphabet.
Dfa chain_dfa(const Word& w, const Alphabet& alpha) {
    Dfa d;
    d.alphabet = alpha;
    d.state_count = (int)w.size() + 2;
    int dead = d.state_count - 1;
    d.start = 0;
    d.accepting = {(int)w.size()};
    d.transition.assign(d.state_count, std::vector<int>(alpha.size(), dead));
    for (std::size_t i = 0; i < w.size(); ++i)
        d.transition[i][alpha.index(w[i])] = (int)i + 1;
    return d;
}

/// NFA accepting a finite set of words, one branch per word.
Nfa union_nfa(const std::vector<Word>& words, const Alphabet& alpha) {
    Nfa m;
    m.alphabet = alpha;
    m.state_count = 1;
    m.starts = {0};
    for (const Word& w : words) {
        int cur = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            int next = m.state_count++;
            m.transitions.push_back({cur, w[i], next});
            cur = next;
        }
        m.accepting.insert(cur);
    }
    return m;
}

}  // namespace

TEST_CASE("dfa and nfa acceptance") {
    Alphabet bits({"0", "1"});
    Dfa d = chain_dfa(W("01"), bits);
    CHECK(accepts(d, W("01")));
    CHECK_FALSE(accepts(d, W("0")));
    CHECK_FALSE(accepts(d, W("011")));
    CHECK_FALSE(accepts(d, Word{}));
    Nfa m = to_nfa(d);
    CHECK(accepts(m, W("01")));
    CHECK_FALSE(accepts(m, W("10")));
    CHECK_THROWS_AS(accepts(m, W("2")), std::invalid_argument);
}

TEST_CASE("clause machine rejects the falsifying assignment") {
    // C1 = V1 or not V2 or V4 with n = 4; 0100 and 0110 falsify all literals
    SatInstance phi;
    phi.variable_count = 4;
    phi.clauses.push_back({Literal{1, true}, Literal{2, false}, Literal{4, true}});
    Dfa d = sat_to_clause_dfas(phi)[0];
    CHECK_FALSE(accepts(d, W("0100")));
    CHECK_FALSE(accepts(d, W("0110")));
    CHECK(accepts(d, W("1100")));
    CHECK(accepts(d, W("0000")));
    CHECK(accepts(d, W("0101")));
}

TEST_CASE("nfa is_finite") {
    Alphabet bits({"0", "1"});
    SECTION("useful self-loop makes L infinite") {
        Nfa m;
        m.alphabet = bits;
        m.state_count = 2;
        m.starts = {0};
        m.accepting = {1};
        m.transitions = {{0, Symbol("0"), 0}, {0, Symbol("1"), 1}};
        CHECK_FALSE(is_finite(m));
    }
    SECTION("chain DFA is finite") {
        CHECK(is_finite(chain_dfa(W("0101"), bits)));
    }
    SECTION("unreachable cycle does not count") {
        Nfa m;
        m.alphabet = bits;
        m.state_count = 3;
        m.starts = {0};
        m.accepting = {1};
        m.transitions = {{0, Symbol("1"), 1}, {2, Symbol("0"), 2}};
        CHECK(is_finite(m));
    }
    SECTION("pure epsilon cycle does not pump length") {
        Nfa m;
        m.alphabet = bits;
        m.state_count = 2;
        m.starts = {0};
        m.accepting = {1};
        m.transitions = {{0, std::nullopt, 0}, {0, Symbol("1"), 1}};
        CHECK(is_finite(m));
    }
}

TEST_CASE("nfa enumerate") {
    Alphabet bits({"0", "1"});
    SECTION("single word") {
        CHECK(enumerate(chain_dfa(W("01"), bits), 5) == std::vector<Word>{W("01")});
    }
    SECTION("empty language") {
        Dfa d = chain_dfa(W("01"), bits);
        d.accepting = {};
        CHECK(enumerate(d, 5).empty());
    }
    SECTION("length-then-lex order") {
        Nfa m = union_nfa({W("10"), W("0"), W("11"), W("1")}, bits);
        CHECK(enumerate(m, 5) ==
              std::vector<Word>{W("0"), W("1"), W("10"), W("11")});
    }
    SECTION("finite languages stop before the state count") {
        std::mt19937 rng(20260823);
        int finite_seen = 0;
        for (int trial = 0; trial < 200; ++trial) {
            Nfa m = testutil::random_nfa(rng);
            if (!is_finite(m)) continue;
            ++finite_seen;
            std::size_t n = (std::size_t)m.state_count;
            auto words = enumerate(m, n - 1);
            CHECK(words == enumerate(m, 10 * n));
            for (const Word& w : words) CHECK(w.size() < n);
        }
        CHECK(finite_seen > 20);
    }
}

TEST_CASE("shortest_common_word") {
    Alphabet bits({"0", "1"});
    SECTION("examples") {
        Nfa left = union_nfa({W("01"), W("011")}, bits);
        Dfa l = determinize(left);
        Dfa r = chain_dfa(W("01"), bits);
        CHECK(shortest_common_word({l, r}) == W("01"));
        CHECK(shortest_common_word({chain_dfa(Word{}, bits)}) == Word{});
        CHECK_FALSE(shortest_common_word({chain_dfa(W("00"), bits),
                                          chain_dfa(W("11"), bits)}).has_value());
    }
    SECTION("unsatisfiable 3-CNF clause machines have empty intersection") {
        SatInstance phi;
        phi.variable_count = 1;
        phi.clauses.push_back({Literal{1, true}, Literal{1, true}, Literal{1, true}});
        phi.clauses.push_back({Literal{1, false}, Literal{1, false}, Literal{1, false}});
        CHECK_FALSE(shortest_common_word(sat_to_clause_dfas(phi)).has_value());
    }
    SECTION("mismatched alphabets rejected") {
        CHECK_THROWS_AS(shortest_common_word({chain_dfa(W("0"), bits),
                                              chain_dfa(W("a"), Alphabet({"a"}))}),
                        std::invalid_argument);
    }
    SECTION("witness is accepted by every machine and is shortest") {
        std::mt19937 rng(5);
        for (int trial = 0; trial < 100; ++trial) {
            Dfa a = determinize(testutil::random_nfa(rng));
            Dfa b = determinize(testutil::random_nfa(rng));
            auto w = shortest_common_word({a, b}, SearchLimits{100000, 1000});
            std::set<std::string> lang_a, lang_b;
            for (const Word& x : enumerate(a, 8)) lang_a.insert(word_key(x));
            for (const Word& x : enumerate(b, 8)) lang_b.insert(word_key(x));
            bool small_common = false;
            std::size_t best = 99;
            for (const std::string& k : lang_a)
                if (lang_b.count(k)) {
                    small_common = true;
                    std::size_t len = (std::size_t)std::count(k.begin(), k.end(), ' ');
                    best = std::min(best, len);
                }
            if (w && w->size() <= 8) {
                CHECK(accepts(a, *w));
                CHECK(accepts(b, *w));
                CHECK(small_common);
                CHECK(w->size() == best);
            } else if (!w) {
                CHECK_FALSE(small_common);
            }
        }
    }
}

TEST_CASE("pumping_decomposition") {
    Alphabet bits({"0", "1"});
    Nfa m;  // 0 1* 0
    m.alphabet = bits;
    m.state_count = 3;
    m.starts = {0};
    m.accepting = {2};
    m.transitions = {{0, Symbol("0"), 1}, {1, Symbol("1"), 1}, {1, Symbol("0"), 2}};
    auto pump = pumping_decomposition(m);
    REQUIRE(pump.has_value());
    CHECK_FALSE(pump->cycle.empty());
    for (std::size_t i = 0; i <= 3; ++i)
        CHECK(accepts(m, concat(pump->prefix, concat(repeat(pump->cycle, i), pump->suffix))));
    CHECK_FALSE(pumping_decomposition(to_nfa(chain_dfa(W("01"), bits))).has_value());
}

TEST_CASE("determinize preserves the language") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Nfa m = testutil::random_nfa(rng);
        Dfa d = determinize(m);
        auto from_nfa = enumerate(m, 6, SearchLimits{100000, 1000});
        auto from_dfa = enumerate(d, 6, SearchLimits{100000, 1000});
        CHECK(from_nfa == from_dfa);
    }
}
