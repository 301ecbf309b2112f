#include "edt0l/battery.hpp"
#include "edt0l/quad.hpp"

#include <doctest.h>

#include <random>

using namespace edt0l;

namespace {

using S = std::set<Pair, PairLess>;

S signs(std::initializer_list<std::pair<int, int>> ps) {
    S out;
    for (auto [x, y] : ps)
        for (int sx : {1, -1})
            for (int sy : {1, -1}) out.insert({sx * x, sy * y});
    return out;
}

// Scan written out here, separate from quad_bruteforce.
S scan(const QuadraticEquation& e, long B) {
    S out;
    long c[6] = {e.alpha.get_si(), e.beta.get_si(), e.gamma.get_si(), e.delta.get_si(), e.eps.get_si(), e.zeta.get_si()};
    for (long x = -B; x <= B; ++x)
        for (long y = -B; y <= B; ++y)
            if (c[0] * x * x + c[1] * x * y + c[2] * y * y + c[3] * x + c[4] * y + c[5] == 0) out.insert({x, y});
    return out;
}

}  // namespace

TEST_CASE("classify_equation") {
    CHECK(classify_equation({1, 0, -2, 0, 0, -1}) == CaseTag::PellLike);
    CHECK(classify_equation({0, 1, 0, 0, 0, -6}) == CaseTag::HyperbolicDegenerate);
    CHECK(classify_equation({0, 0, 0, 2, 3, 1}) == CaseTag::LinearPair);
    CHECK(classify_equation({0, 0, 0, 0, 0, 5}) == CaseTag::Trivial);
    CHECK(classify_equation({1, 0, 1, 0, 0, -2}) == CaseTag::NonPositiveD);
    CHECK(classify_equation({1, 2, 1, 0, 0, -1}) == CaseTag::Parabolic);
    CHECK(classify_equation({1, 0, -4, 0, 0, -1}) == CaseTag::SquareD);
    // alpha = 0 with gamma != 0 is classified after the swap; D = beta^2 is then a square or zero.
    CHECK(classify_equation({0, 1, -2, 0, 0, 3}) == CaseTag::SquareD);
    CHECK(classify_equation({0, 0, 1, -2, 0, 0}) == CaseTag::Parabolic);
    CHECK(std::string(tag_name(CaseTag::SquareD)) == "SquareD");
}

TEST_CASE("lagrange_reduce") {
    auto r = lagrange_reduce({1, 0, -2, 0, 0, -1});
    CHECK(r.D == 8);
    CHECK(r.E == 0);
    CHECK(r.F == 4);
    CHECK(r.N == -32);
    CHECK(r.uv(5, 7) == Pair{56, 10});
    auto c = lagrange_reduce({1, 0, 1, 0, 0, -1});
    CHECK(c.D == -4);
    CHECK(c.E == 0);
    CHECK(c.F == 4);
    CHECK(c.N == 16);
    CHECK_THROWS_AS(lagrange_reduce({0, 1, 0, 0, 0, -1}), NotApplicable);
    CHECK_THROWS_AS(lagrange_reduce({1, 2, 1, 0, 0, -1}), NotApplicable);
    auto s = lagrange_reduce({0, 1, -2, 0, 0, 3});
    CHECK(s.swapped);
}

TEST_CASE("reduction soundness") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> pt(-50, 50);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        QuadraticEquation eq = random_quadratic(rng);
        LagrangeReduction r;
        try {
            r = lagrange_reduce(eq);
        } catch (const NotApplicable&) {
            continue;
        }
        for (int k = 0; k < 100; ++k) {
            BigInt x = pt(rng), y = pt(rng);
            auto [u, v] = r.uv(x, y);
            CHECK((eq.eval(x, y) == 0) == (u * u - r.D * v * v == r.N));
            auto back = r.xy(u, v);
            REQUIRE(back.has_value());
            CHECK(*back == Pair{x, y});
            ++checked;
        }
    }
    CHECK(checked > 10000);
}

TEST_CASE("build_pair_system examples") {
    CHECK(solutions_in_box(build_pair_system({1, 0, -2, 0, 0, -1}), 100) ==
          signs({{1, 0}, {3, 2}, {17, 12}, {99, 70}}));
    CHECK(solutions_in_box(build_pair_system({0, 1, 0, 0, 0, -6}), 100) ==
          S{{1, 6}, {2, 3}, {3, 2}, {6, 1}, {-1, -6}, {-2, -3}, {-3, -2}, {-6, -1}});
    CHECK(solutions_in_box(build_pair_system({1, 0, 1, 0, 0, -2}), 100) == signs({{1, 1}}));
    CHECK(solutions_in_box(build_pair_system({1, 0, 1, 0, 0, -3}), 100).empty());
    CHECK(solutions_in_box(build_pair_system({0, 0, 0, 0, 0, 0}), 3).size() == 49);

    // The xy = 6 system also enumerates to the same eight pairs.
    AnnotatedSystem h = build_pair_system({0, 1, 0, 0, 0, -6});
    CHECK(validate_system(h.system).empty());
    CHECK(h.system.separated);
    S e;
    for (const auto& w : enumerate_language(h.system, {20, 64, 1000}).words) {
        auto v = decode_exponents(h.system, w, {"a", "b"});
        e.insert({v[0], v[1]});
    }
    CHECK(e == solutions_in_box(h, 100));
}

TEST_CASE("solutions_in_box") {
    CHECK(solutions_in_box(annotate({}), 10).empty());
    AnnotatedSystem p = build_pair_system({1, 0, -2, 0, 0, -1});
    S pos;
    for (const auto& q : solutions_in_box(p, 20))
        if (q.first >= 0 && q.second >= 0) pos.insert(q);
    CHECK(pos == S{{1, 0}, {3, 2}, {17, 12}});
    CHECK(solutions_in_box(finite_set_system({{5, 5}}), 4).empty());
}

TEST_CASE("quad_bruteforce") {
    CHECK(quad_bruteforce({1, 0, 1, 0, 0, -3}, 30).empty());
    CHECK(quad_bruteforce({0, 0, 0, 0, 0, 0}, 2).size() == 25);
    CHECK(quad_bruteforce({0, 1, 0, 0, 0, -6}, 10) == scan({0, 1, 0, 0, 0, -6}, 10));
    CHECK_THROWS(quad_bruteforce({1, 0, 0, 0, 0, 0}, 10001));
}

TEST_CASE("every case tag against brute force") {
    std::map<CaseTag, int> seen;
    for (const auto& eq : quad_battery(99, 150)) {
        seen[classify_equation(eq)]++;
        AnnotatedSystem a = build_pair_system(eq);
        CHECK(validate_system(a.system).empty());
        CHECK(a.system.separated);
        S want = scan(eq, 60);
        CHECK_MESSAGE(quad_bruteforce(eq, 60) == want, eq.str());
        CHECK_MESSAGE(solutions_in_box(a, 60) == want, eq.str());
    }
    for (CaseTag t : {CaseTag::PellLike, CaseTag::SquareD, CaseTag::NonPositiveD, CaseTag::Parabolic,
                      CaseTag::HyperbolicDegenerate, CaseTag::LinearPair, CaseTag::Trivial})
        CHECK_MESSAGE(seen[t] > 0, tag_name(t));
}

TEST_CASE("large coefficients stay exact") {
    // Solutions far outside 64-bit range.
    QuadraticEquation eq{1, 0, -61, 0, 0, -1};
    AnnotatedSystem a = build_pair_system(eq);
    BigInt B("1000000000000000000000000000000");
    auto sols = solutions_in_box(a, B);
    CHECK(sols.size() > 8);
    for (const auto& [x, y] : sols) CHECK(eq.eval(x, y) == 0);
    CHECK(sols.count({BigInt("1766319049"), 226153980}) == 1);
}
