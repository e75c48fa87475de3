#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "flpat/words.hpp"
#include "helpers.hpp"

using namespace flpat;
using testutil::W;

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(Alphabet(std::vector<Symbol>{}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet({"0", "0"}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet({"a b"}), std::invalid_argument);
    Alphabet a({"#", "c1", "0"});
    CHECK(a.index("#") == 0);
    CHECK(a.index("0") == 2);
    CHECK(a.contains("c1"));
    CHECK_FALSE(a.contains("c2"));
    CHECK_THROWS_AS(a.index("c2"), std::invalid_argument);
}

TEST_CASE("merge_alphabets keeps first-seen order") {
    Alphabet m = merge_alphabets({Alphabet({"a", "b"}), Alphabet({"b", "c"})}, {"#"});
    CHECK(m.symbols() == std::vector<Symbol>{"a", "b", "c", "#"});
}

TEST_CASE("word_less is length-then-lex by alphabet order") {
    Alphabet a({"1", "0"});  // declaration order reverses the usual 0 < 1
    CHECK(word_less(W("11"), W("000"), a));
    CHECK(word_less(W("10"), W("01"), a));
    CHECK_FALSE(word_less(W("01"), W("10"), a));
    CHECK_FALSE(word_less(W("0"), W("0"), a));
}

TEST_CASE("apply_morphism examples") {
    CHECK(apply_morphism({{"a", W("01")}}, W("aa")) == W("0101"));
    CHECK(apply_morphism({{"a", W("0")}, {"b", W("1")}}, W("aba")) == W("010"));
    CHECK(apply_morphism({{"a", W("0121021201210")}}, W("a")) == W("0121021201210"));
}

TEST_CASE("apply_morphism errors") {
    CHECK_THROWS_AS(apply_morphism({{"a", W("0")}}, W("ab")), std::invalid_argument);
    CHECK_THROWS_AS(apply_morphism({{"a", Word{}}}, W("a")), std::invalid_argument);
}

TEST_CASE("apply_morphism distributes over concatenation") {
    std::mt19937 rng(20260823);
    for (int trial = 0; trial < 200; ++trial) {
        Morphism h;
        for (Symbol v : {"a", "b", "c"}) {
            Word img;
            int len = std::uniform_int_distribution<int>(1, 4)(rng);
            for (int i = 0; i < len; ++i)
                img.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? "1" : "0");
            h[v] = img;
        }
        auto random_pattern = [&]() {
            Pattern p;
            int len = std::uniform_int_distribution<int>(1, 5)(rng);
            for (int i = 0; i < len; ++i)
                p.push_back(Symbol(1, char('a' + std::uniform_int_distribution<int>(0, 2)(rng))));
            return p;
        };
        Pattern p = random_pattern(), q = random_pattern();
        CHECK(apply_morphism(h, concat(p, q)) ==
              concat(apply_morphism(h, p), apply_morphism(h, q)));
    }
}

TEST_CASE("is_k_power examples") {
    CHECK(is_k_power(W("0101"), 2) == W("01"));
    CHECK_FALSE(is_k_power(W("010"), 2).has_value());
    CHECK(is_k_power(W("abcabcabc"), 3) == W("abc"));
    CHECK_THROWS_AS(is_k_power(W("00"), 1), std::invalid_argument);
    CHECK_FALSE(is_k_power(Word{}, 2).has_value());
}

TEST_CASE("is_k_power root reproduces the word") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Word w;
        int len = std::uniform_int_distribution<int>(1, 12)(rng);
        for (int i = 0; i < len; ++i)
            w.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? "1" : "0");
        for (std::size_t k = 2; k <= 4; ++k) {
            auto root = is_k_power(w, k);
            if (root) CHECK(repeat(*root, k) == w);
        }
    }
}

TEST_CASE("shortest_square_factor examples") {
    CHECK_FALSE(shortest_square_factor(W("0121021201210")).has_value());
    CHECK(shortest_square_factor(W("00101")) == FactorOccurrence{0, 2});
    CHECK_FALSE(shortest_square_factor(Word{}).has_value());
}

TEST_CASE("shortest_square_factor tie-breaking is leftmost then shortest") {
    // 0110110: squares at (0,6)=011011, (1,2)=11, (1,4), (4,2)=11 -- leftmost
    // start 0 wins even though a shorter square starts later
    CHECK(shortest_square_factor(W("0110110")) == FactorOccurrence{0, 6});
    CHECK(shortest_square_factor(W("01100110")) == FactorOccurrence{0, 8});
    CHECK(shortest_square_factor(W("0110")) == FactorOccurrence{1, 2});
}

TEST_CASE("shortest_square_factor agrees with the factor-pair oracle") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        Word w;
        int len = std::uniform_int_distribution<int>(0, 20)(rng);
        for (int i = 0; i < len; ++i) {
            int c = std::uniform_int_distribution<int>(0, 2)(rng);
            w.push_back(std::string(1, char('0' + c)));
        }
        auto found = shortest_square_factor(w);
        CHECK(found.has_value() == testutil::oracle_has_square_factor(w));
        if (found) {
            Word f = subword(w, found->position, found->length);
            CHECK(is_k_power(f, 2).has_value());
        }
    }
}

TEST_CASE("word utilities") {
    CHECK(concat(W("01"), W("10")) == W("0110"));
    CHECK(repeat(W("ab"), 3) == W("ababab"));
    CHECK(subword(W("01234"), 1, 3) == W("123"));
    CHECK(word_key(W("01")) != word_key(Word{Symbol("01")}));
}
