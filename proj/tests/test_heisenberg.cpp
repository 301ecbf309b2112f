#include "edt0l/battery.hpp"
#include "edt0l/heisenberg.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace edt0l;

namespace {

using M = MalcevElement;

M rand_elem(std::mt19937_64& rng, int r) {
    std::uniform_int_distribution<int> u(-r, r);
    return {u(rng), u(rng), u(rng)};
}

std::string letters(const M& g) {
    std::string s;
    auto put = [&](char c, const BigInt& e) {
        if (e != 0) s += std::string(" ") + c + "^" + str(e);
    };
    put('a', g.i);
    put('b', g.j);
    put('c', g.k);
    return s;
}

}  // namespace

TEST_CASE("multiply, invert, normalize") {
    CHECK(multiply({0, 1, 0}, {1, 0, 0}) == M{1, 1, 1});
    CHECK(multiply({4, -2, 7}, {0, 0, 0}) == M{4, -2, 7});
    CHECK(multiply({1, 2, 3}, {4, 5, 6}) == M{5, 7, 17});
    CHECK(invert({0, 0, 0}) == M{0, 0, 0});
    CHECK(invert({1, 0, 0}) == M{-1, 0, 0});
    CHECK(invert({1, 2, 3}) == M{-1, -2, -1});
    CHECK(normalize_word("ba") == M{1, 1, 1});
    CHECK(normalize_word("b a^-1") == M{-1, 1, -1});
    // With b a = a b c, c is b^-1 a^-1 b a, and a^-1 b^-1 a b is its inverse.
    CHECK(normalize_word("b^-1 a^-1 b a") == M{0, 0, 1});
    CHECK(normalize_word("a^-1 b^-1 a b") == M{0, 0, -1});
    CHECK(normalize_word("a b a^-1 b^-1") == M{0, 0, -1});
    CHECK(normalize_word("") == M{0, 0, 0});
    CHECK(normalize_word("c^5 a^2 b^3") == M{2, 3, 5});
    CHECK(generator('b', -4) == M{0, -4, 0});
}

TEST_CASE("group laws on random triples") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 10000; ++t) {
        M g = rand_elem(rng, 1000), h = rand_elem(rng, 1000), k = rand_elem(rng, 1000);
        CHECK(multiply(multiply(g, h), k) == multiply(g, multiply(h, k)));
        CHECK(multiply(g, invert(g)).is_identity());
        CHECK(multiply(invert(g), g).is_identity());
    }
}

TEST_CASE("normal form agrees with the letter-by-letter oracle") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 500; ++t) {
        M g = rand_elem(rng, 20), h = rand_elem(rng, 20);
        M viaword = normalize_word(letters(g) + letters(h));
        CHECK(viaword == multiply(g, h));
        oracle::H o;
        for (const M* e : {&g, &h}) {
            o.push('a', e->i.get_si());
            o.push('b', e->j.get_si());
            o.push('c', e->k.get_si());
        }
        CHECK(viaword == M{static_cast<long>(o.i), static_cast<long>(o.j), static_cast<long>(o.k)});
    }
}

TEST_CASE("the XYX exponent identity") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> u(-30, 30);
    for (int t = 0; t < 100; ++t) {
        BigInt X1 = u(rng), X2 = u(rng), X3 = u(rng), Y1 = u(rng), Y2 = u(rng), Y3 = u(rng);
        M x{X1, X2, X3}, y{Y1, Y2, Y3};
        M got = normalize_word(letters(x) + letters(y) + letters(x));
        CHECK(got == M{2 * X1 + Y1, 2 * X2 + Y2, 2 * X3 + Y3 + X1 * Y2 + X1 * X2 + Y1 * X2});
    }
}

TEST_CASE("parse_equation") {
    auto e = parse_equation("X a^2 b^-1 X a b^3 c^-2");
    CHECK(e.blocks == std::vector<Block>{{1, 2, -1, 0}, {1, 1, 3, -2}});
    CHECK(parse_equation("X X^-1").blocks == std::vector<Block>{{1, 0, 0, 0}, {-1, 0, 0, 0}});
    CHECK(parse_equation("a X").blocks == std::vector<Block>{{1, 1, 0, 0}});
    CHECK(parse_equation("X^2 a^-2 = 1").blocks == std::vector<Block>{{1, 0, 0, 0}, {1, -2, 0, 0}});
    CHECK(parse_equation("X b a").blocks == std::vector<Block>{{1, 1, 1, 1}});
    CHECK(parse_equation("X^-3").blocks.size() == 3);
    CHECK_THROWS_AS(parse_equation("a b"), EquationSyntaxError);
    CHECK_THROWS_AS(parse_equation("X d"), EquationSyntaxError);
    CHECK_THROWS_AS(parse_equation("X a^"), EquationSyntaxError);
    try {
        parse_equation("X a q");
        FAIL("no error");
    } catch (const EquationSyntaxError& err) {
        CHECK(err.pos() == 4);
    }
    // Round trip through the printed form.
    for (const char* text : {"X a^2 b^-1 X a b^3 c^-2", "X^-1 c X b^-2 X^-1 a"}) {
        auto p = parse_equation(text);
        CHECK(parse_equation(p.str()).blocks == p.blocks);
    }
}

TEST_CASE("derive_z_system") {
    ZSystem z = derive_z_system(parse_equation("X"));
    CHECK(z.holds({0, 0, 0}));
    CHECK_FALSE(z.holds({1, 0, 0}));
    CHECK_FALSE(z.holds({0, 0, 1}));
    CHECK(z.A1 == 1);
    CHECK(z.C1 == 0);
    CHECK(z.cX3 == 1);

    ZSystem u = derive_z_system(parse_equation("X a b X^-1"));
    CHECK(u.A1 == 0);
    CHECK(u.C1 == 1);
    CHECK(heis_bruteforce(parse_equation("X a b X^-1"), 6).empty());
}

TEST_CASE("evaluate_at") {
    auto x1 = parse_equation("X");
    CHECK(evaluate_at(x1, {0, 0, 0}));
    CHECK_FALSE(evaluate_at(x1, {1, 0, 0}));
    auto e = parse_equation("X a X a^-1");
    ZSystem z = derive_z_system(e);
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j)
            for (int k = -3; k <= 3; ++k) {
                M x{i, j, k};
                CHECK(evaluate_at(e, x) == z.holds({i, j, k}));
                CHECK(evaluate_at(e, x) == oracle::heis_solves(e, i, j, k));
            }
    CHECK(evaluate(e, {0, 0, 0}) == M{0, 0, 0});
}

TEST_CASE("Z-system equivalence on random equations") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 60; ++t) {
        OneVarEquation e = random_heis_equation(rng, 8, 3, t % 2 == 0);
        ZSystem z = derive_z_system(e);
        for (int i = -4; i <= 4; ++i)
            for (int j = -4; j <= 4; ++j)
                for (int k = -4; k <= 4; ++k) {
                    bool o = oracle::heis_solves(e, i, j, k);
                    CHECK_MESSAGE(evaluate_at(e, {i, j, k}) == o, e.str());
                    CHECK_MESSAGE(z.holds({i, j, k}) == o, e.str());
                }
    }
}

TEST_CASE("build_solution_system examples") {
    auto s1 = build_solution_system(parse_equation("X a^-1"));
    CHECK(s1.case_id == 2);
    CHECK(s1.solutions_in_box(5) == std::set<Triple>{{1, 0, 0}});
    auto s2 = build_solution_system(parse_equation("X^2 a^-2"));
    CHECK(s2.solutions_in_box(5) == std::set<Triple>{{1, 0, 0}});
    auto s3 = build_solution_system(parse_equation("X X^-1"));
    CHECK(s3.case_id == 1);
    CHECK(s3.solutions_in_box(3) == heis_bruteforce(parse_equation("X X^-1"), 3));
    CHECK(heis_bruteforce(parse_equation("X X^-1"), 1).size() == 27);
    CHECK(heis_bruteforce(parse_equation("X a^-1"), 3) == std::set<Triple>{{1, 0, 0}});
    CHECK_THROWS(heis_bruteforce(parse_equation("X"), 51));

    for (const auto* s : {&s1, &s2, &s3}) CHECK(validate_system(s->system).empty());

    // The singleton language spells the solution in a, b, c order.
    auto s4 = build_solution_system(parse_equation("X a^-2 b c^3"));
    Enumeration en = enumerate_language(s4.system, {4, 64, 100});
    REQUIRE(en.words.size() == 1);
    CHECK(decode_exponents(s4.system, en.words[0], {"a", "b", "c"}) == std::vector<BigInt>{2, -1, -5});
    CHECK(decode_triples(s4.system, en) == std::set<Triple>{{2, -1, -5}});
    CHECK(heis_bruteforce(parse_equation("X a^-2 b c^3"), 5) == std::set<Triple>{{2, -1, -5}});
}

TEST_CASE("the enumerated Case 1 language matches brute force in a small box") {
    // The X exponents sum to zero and the a, b constants cancel, so the solution sets are infinite.
    for (const char* text : {"X a X^-1 a^-1", "X b X^-1 b^-1", "X a b X^-1 b^-1 a^-1", "X a X^-1 a^-1 c^2"}) {
        auto eq = parse_equation(text);
        auto s = build_solution_system(eq);
        REQUIRE(s.case_id == 1);
        CHECK(validate_system(s.system).empty());
        auto brute = heis_bruteforce(eq, 3);
        CHECK_MESSAGE(s.solutions_in_box(3) == brute, text);
        // Every enumerated word decodes to a real solution; small solutions all appear.
        Enumeration en = enumerate_language(s.system, {16, 24, 200000});
        auto words = decode_triples(s.system, en);
        for (const auto& t : words)
            CHECK_MESSAGE(oracle::heis_solves(eq, t[0].get_si(), t[1].get_si(), t[2].get_si()), text);
        for (const auto& t : heis_bruteforce(eq, 1)) CHECK_MESSAGE(words.count(t) == 1, text);
    }
}

TEST_CASE("end to end on a random battery") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 60; ++t) {
        OneVarEquation e = random_heis_equation(rng, 6, 2, t % 3 != 0);
        auto bad = check_heis(e, 6);
        CHECK_MESSAGE(!bad.has_value(), bad.value_or(""));
    }
}
