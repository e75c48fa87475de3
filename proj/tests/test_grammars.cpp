#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "flpat/grammars.hpp"
#include "flpat/io.hpp"
#include "flpat/reductions.hpp"
#include "helpers.hpp"

using namespace flpat;
using testutil::T;
using testutil::W;

namespace {

Cfg G(const std::string& text) { return parse_cfg(text); }

std::set<std::string> keys(const std::vector<Word>& ws) {
    std::set<std::string> out;
    for (const Word& w : ws) out.insert(word_key(w));
    return out;
}

}  // namespace

TEST_CASE("grammar trim") {
    SECTION("unproductive variable empties the language") {
        Cfg g = G("start S\nterminals a\nS -> A B\nA -> a\nB -> B\n");
        Cfg t = trim(g);
        CHECK(enumerate(t, 10).empty());
        CHECK(t.productions.empty());
    }
    SECTION("unreachable variable removed") {
        Cfg g = G("start S\nterminals a b\nS -> a\nX -> b\n");
        Cfg t = trim(g);
        CHECK(t.variables == std::vector<Symbol>{"S"});
        CHECK(t.productions.size() == 1);
        CHECK(enumerate(t, 5) == std::vector<Word>{W("a")});
    }
    SECTION("idempotence") {
        Cfg g = G("start S\nterminals 0 1\nS -> A A\nA -> 0 1\n");
        Cfg once = trim(g);
        Cfg twice = trim(once);
        CHECK(write_cfg(once) == write_cfg(twice));
    }
    SECTION("language preserved on random grammars") {
        std::mt19937 rng(20260823);
        for (int trial = 0; trial < 100; ++trial) {
            Cfg g = testutil::random_finite_cfg(rng);
            CHECK(enumerate(g, 12) == enumerate(trim(g), 12));
        }
    }
}

TEST_CASE("grammar is_finite") {
    CHECK_FALSE(is_finite(G("start S\nterminals a b\nS -> a S b | a b\n")));
    CHECK(is_finite(G("start S\nterminals 0 1\nS -> A A\nA -> 0 1\n")));
    PcpInstance inst{{{W("a"), W("a")}}};
    CHECK_FALSE(is_finite(pcp_to_square_cfg(inst)));
    CHECK(is_finite(G("start S\nterminals a\nS -> S\n")));  // trims to empty
}

TEST_CASE("length_bound") {
    Cfg g = G("start S\nterminals 0 1\nS -> A A\nA -> 0 1\n");
    CHECK(length_bound(g) == 4);
    for (const Word& w : enumerate(g, 20)) CHECK(w.size() <= length_bound(g));
    CHECK(length_bound(G("start S\nterminals a\nS -> a\n")) == 2);
    CHECK(length_bound(G("start S\nterminals a\nS -> ~\n")) >= 0);
    CHECK_THROWS_AS(length_bound(G("start S\nterminals a\nS -> a S | a\n")),
                    std::invalid_argument);
}

TEST_CASE("grammar enumerate") {
    SECTION("examples") {
        CHECK(enumerate(G("start S\nterminals 0 1\nS -> A A\nA -> 0 1\n"), 10) ==
              std::vector<Word>{W("0101")});
        Cfg gadget = pcp_to_square_cfg(PcpInstance{{{W("a"), W("a")}}});
        auto words = keys(enumerate(gadget, 8));
        CHECK(words.count(word_key(T("a c1 # a c1 #"))));
        CHECK(enumerate(G("start S\nterminals a\nS -> S\n"), 5).empty());
    }
    SECTION("epsilon and dedup") {
        Cfg g = G("start S\nterminals a\nS -> ~ | a | A\nA -> a\n");
        CHECK(enumerate(g, 3) == std::vector<Word>{Word{}, W("a")});
    }
    SECTION("order is length then lex by terminal declaration") {
        Cfg g = G("start S\nterminals 1 0\nS -> 0 | 1 | 0 0 | 1 0\n");
        CHECK(enumerate(g, 2) ==
              std::vector<Word>{W("1"), W("0"), W("10"), W("00")});
    }
    SECTION("finite bound saturation") {
        std::mt19937 rng(42);
        for (int trial = 0; trial < 100; ++trial) {
            Cfg g = testutil::random_finite_cfg(rng);
            REQUIRE(is_finite(g));
            std::uint64_t b = length_bound(g);
            if (b > 16) continue;
            CHECK(enumerate(g, b) == enumerate(g, 2 * b));
        }
    }
}

TEST_CASE("concat_with_separators") {
    Cfg a = G("start S\nterminals a\nS -> a\n");
    CHECK(enumerate(concat_with_separators({a}, "#"), 5) ==
          std::vector<Word>{T("a #")});
    Cfg zero = G("start S\nterminals 0 1\nS -> 0\n");
    Cfg one = G("start S\nterminals 0 1\nS -> 1\n");
    CHECK(enumerate(concat_with_separators({zero, one}, "#"), 5) ==
          std::vector<Word>{T("0 # 1 #")});
    Cfg x = G("start S\nterminals 0 1\nS -> 0 1\n");
    auto words = enumerate(concat_with_separators({x, x}, "#"), 8);
    REQUIRE(words.size() == 1);
    CHECK(words[0] == T("0 1 # 0 1 #"));
    CHECK(is_k_power(words[0], 2).has_value());
    CHECK_THROWS_AS(concat_with_separators({a}, "a"), std::invalid_argument);

    SECTION("every word has exactly k separators and splits into members") {
        std::mt19937 rng(17);
        for (int trial = 0; trial < 30; ++trial) {
            Cfg g1 = testutil::random_finite_cfg(rng, 3, 2);
            Cfg g2 = testutil::random_finite_cfg(rng, 3, 2);
            Cfg c = concat_with_separators({g1, g2}, "#");
            auto l1 = keys(enumerate(g1, 8));
            auto l2 = keys(enumerate(g2, 8));
            for (const Word& w : enumerate(c, 12)) {
                std::vector<Word> parts{Word{}};
                std::size_t seps = 0;
                for (const Symbol& s : w) {
                    if (s == "#") { ++seps; parts.push_back(Word{}); }
                    else parts.back().push_back(s);
                }
                REQUIRE(seps == 2);
                REQUIRE(parts.back().empty());
                if (parts[0].size() <= 8) CHECK(l1.count(word_key(parts[0])));
                if (parts[1].size() <= 8) CHECK(l2.count(word_key(parts[1])));
            }
        }
    }
}

TEST_CASE("prefix_grammar") {
    Cfg g = G("start S\nterminals 0 1\nS -> 0 1\n");
    CHECK(keys(enumerate(prefix_grammar(g), 5)) ==
          std::set<std::string>{word_key(Word{}), word_key(W("0")), word_key(W("01"))});
    Cfg abc = G("start S\nterminals a b c\nS -> a b c\n");
    CHECK(enumerate(prefix_grammar(abc), 5).size() == 4);

    SECTION("idempotent and equal to the brute-force prefix closure") {
        std::mt19937 rng(23);
        for (int trial = 0; trial < 40; ++trial) {
            Cfg g2 = testutil::random_finite_cfg(rng, 4, 3);
            Cfg p1 = prefix_grammar(g2);
            std::set<std::string> closure;
            for (const Word& w : enumerate(g2, 8))
                for (std::size_t l = 0; l <= w.size(); ++l)
                    closure.insert(word_key(subword(w, 0, l)));
            std::set<std::string> got;
            for (const Word& w : enumerate(p1, 8))
                if (w.size() <= 8) got.insert(word_key(w));
            // restrict the closure to prefixes no longer than the cut-off
            std::set<std::string> expect;
            for (const std::string& k : closure)
                if ((std::size_t)std::count(k.begin(), k.end(), ' ') <= 8)
                    expect.insert(k);
            if (length_bound(g2) <= 8) CHECK(got == expect);
            CHECK(keys(enumerate(prefix_grammar(p1), 8)) == keys(enumerate(p1, 8)));
        }
    }
}

TEST_CASE("binarize preserves the language") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        Cfg g = testutil::random_finite_cfg(rng);
        CHECK(enumerate(g, 10) == enumerate(binarize(g), 10));
    }
}

TEST_CASE("intersect_dfa keeps exactly the accepted words") {
    std::mt19937 rng(37);
    Alphabet bits({"0", "1"});
    for (int trial = 0; trial < 50; ++trial) {
        Cfg g = testutil::random_finite_cfg(rng);
        Dfa d = determinize(testutil::random_nfa(rng));
        if (d.alphabet != bits) continue;
        Cfg inter = intersect_dfa(g, d);
        std::set<std::string> expect;
        for (const Word& w : enumerate(g, 10))
            if (accepts(d, w)) expect.insert(word_key(w));
        CHECK(keys(enumerate(inter, 10)) == expect);
    }
}
