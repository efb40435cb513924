#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <snowflake/word.hpp>

using namespace snowflake;

TEST_CASE("parsing handles runs, exponents and whitespace") {
    CHECK(print_word(parse_word("a a a")) == "a^3");
    CHECK(print_word(parse_word("a^3 B^2")) == "a^3 B^2");
    CHECK(parse_word("a^3") == parse_word("aaa"));
    CHECK(parse_word("a^-2") == parse_word("A A"));
    CHECK(parse_word("A^-2") == parse_word("a a"));
    CHECK(parse_word("").empty());
    CHECK(parse_word("  \t\n ").empty());
    CHECK(parse_word("s^2 T") == Word{Letter{Gen::s, 1}, Letter{Gen::s, 1}, Letter{Gen::t, -1}});
    CHECK(print_word(Word{}) == "");
}

TEST_CASE("parse errors carry the offending position") {
    CHECK_THROWS_AS(parse_word("a x"), ParseError);
    CHECK_THROWS_AS(parse_word("^2"), ParseError);
    CHECK_THROWS_AS(parse_word("a^"), ParseError);
    CHECK_THROWS_AS(parse_word("a^-"), ParseError);
    try {
        parse_word("ab?c");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position == 2);
        CHECK(std::string(e.what()).find("position 2") != std::string::npos);
    }
}

TEST_CASE("oversized exponents are rejected up front") {
    CHECK_THROWS_AS(parse_word("a^99999999999"), ParseError);
    CHECK_NOTHROW(parse_word("a^100000"));
}

TEST_CASE("print and parse are mutually inverse") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> len(0, 40), pick(0, 11);
    const Letter all[] = {{Gen::a, 1},     {Gen::a, -1}, {Gen::b, 1},     {Gen::b, -1},
                          {Gen::s, 1},     {Gen::s, -1}, {Gen::t, 1},     {Gen::t, -1},
                          {Gen::theta, 1}, {Gen::theta, -1}, {Gen::z, 1}, {Gen::z, -1}};
    for (int i = 0; i < 200; ++i) {
        Word w;
        int n = len(rng);
        for (int j = 0; j < n; ++j) w.push_back(all[pick(rng)]);
        CHECK(parse_word(print_word(w)) == w);
    }
}

TEST_CASE("free reduction cancels adjacent inverses") {
    CHECK(free_reduce(parse_word("a A")).empty());
    CHECK(free_reduce(parse_word("s a A S b")) == parse_word("b"));
    CHECK(free_reduce(parse_word("a b B A s S")).empty());
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> len(0, 30), pick(0, 11);
    const Letter all[] = {{Gen::a, 1},     {Gen::a, -1}, {Gen::b, 1},     {Gen::b, -1},
                          {Gen::s, 1},     {Gen::s, -1}, {Gen::t, 1},     {Gen::t, -1},
                          {Gen::theta, 1}, {Gen::theta, -1}, {Gen::z, 1}, {Gen::z, -1}};
    for (int i = 0; i < 200; ++i) {
        Word w;
        int n = len(rng);
        for (int j = 0; j < n; ++j) w.push_back(all[pick(rng)]);
        Word ww = w;
        ww += inverse_word(w);
        CHECK(free_reduce(ww).empty());
        Word r = free_reduce(w);
        CHECK(free_reduce(r) == r);
    }
}

TEST_CASE("inverse and concatenation behave as group words") {
    Word u = parse_word("a s B"), v = parse_word("t h");
    CHECK(inverse_word(inverse_word(u)) == u);
    CHECK(inverse_word(concat(u, v)) == concat(inverse_word(v), inverse_word(u)));
    CHECK(print_word(inverse_word(u)) == "b S A");
}

TEST_CASE("word powers repeat and invert") {
    Word u = parse_word("a b");
    CHECK(word_power(u, 3) == parse_word("a b a b a b"));
    CHECK(word_power(u, -2) == parse_word("B A B A"));
    CHECK(word_power(u, 0).empty());
    CHECK_THROWS_AS(word_power(u, Int("100000000000000")), std::length_error);
}

TEST_CASE("exponent sums count per generator") {
    Word w = parse_word("a^3 h B h^-2 a");
    CHECK(exponent_sum(w, Gen::a) == 4);
    CHECK(exponent_sum(w, Gen::b) == -1);
    CHECK(exponent_sum(w, Gen::theta) == -1);
    CHECK(exponent_sum(w, Gen::z) == 0);
    CHECK(letter_run(Gen::theta, -3) == parse_word("H^3"));
}

TEST_CASE("maximal root extraction finds the primitive core") {
    auto r = max_root(parse_word("a h h A"));
    CHECK(r.multiplicity == 2);
    CHECK(print_word(r.root) == "a h A");

    r = max_root(parse_word("a b a b"));
    CHECK(r.multiplicity == 2);
    CHECK(print_word(r.root) == "a b");

    r = max_root(parse_word("a b"));
    CHECK(r.multiplicity == 1);

    r = max_root(parse_word(""));
    CHECK(r.multiplicity == 1);
    CHECK(r.root.empty());

    // cyclically reduced only after conjugate stripping
    Word u = parse_word("s a t a t a t S");  // s^-1 (a t)^3 ... as written: strip s
    r = max_root(free_reduce(u));
    CHECK(r.multiplicity == 3);

    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> len(1, 5), mult(1, 4), pick(0, 9);
    const Letter all[] = {{Gen::a, 1}, {Gen::a, -1}, {Gen::b, 1},     {Gen::b, -1},
                          {Gen::s, 1}, {Gen::s, -1}, {Gen::t, 1},     {Gen::t, -1},
                          {Gen::theta, 1}, {Gen::theta, -1}};
    for (int i = 0; i < 100; ++i) {
        Word core;
        int n = len(rng);
        for (int j = 0; j < n; ++j) core.push_back(all[pick(rng)]);
        core = free_reduce(core);
        if (core.empty()) continue;
        int m = mult(rng);
        Word w = word_power(core, m);
        auto rr = max_root(w);
        CHECK(free_reduce(word_power(rr.root, rr.multiplicity)) == free_reduce(w));
        CHECK(rr.multiplicity % m == 0);  // the true root may be finer than core
    }
}
