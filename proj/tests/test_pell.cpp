#include "edt0l/pell.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace edt0l;

namespace {

bool square_int(long d) { return oracle::is_square64(d); }

std::set<Pair, PairLess> box_of(const std::vector<Component>& cs, const BigInt& B) {
    std::set<Pair, PairLess> out;
    for (const auto& c : cs) {
        auto s = component_solutions_in_box(c, B);
        out.insert(s.begin(), s.end());
    }
    return out;
}

}  // namespace

TEST_CASE("perfect squares") {
    CHECK(is_perfect_square(0) == BigInt(0));
    CHECK_FALSE(is_perfect_square(2).has_value());
    CHECK(is_perfect_square(49) == BigInt(7));
    CHECK_FALSE(is_perfect_square(-4).has_value());
    CHECK(is_perfect_square(BigInt("100000000000000000000000000000000000000")) == BigInt("10000000000000000000"));
}

TEST_CASE("fundamental solutions against brute force") {
    CHECK(fundamental_solution(2) == Pair{3, 2});
    CHECK(fundamental_solution(5) == Pair{9, 4});
    for (long D = 2; D <= 50; ++D) {
        if (square_int(D)) {
            CHECK_THROWS_AS(fundamental_solution(D), DomainError);
            continue;
        }
        auto [x, y] = oracle::pell_fundamental(D, 100000);
        REQUIRE(y > 0);
        Pair got = fundamental_solution(D);
        CHECK(got == Pair{x, y});
        CHECK(fundamental_bound_holds(D, got));
    }
    Pair p61 = fundamental_solution(61);
    CHECK(p61 == Pair{BigInt("1766319049"), 226153980});
    CHECK(p61.first * p61.first - 61 * p61.second * p61.second == 1);
    CHECK(fundamental_bound_holds(61, p61));
    // The bound is checked in floating point on the log scale; for D = 61 the margin is wide.
    CHECK(std::log(1766319049.0 + 226153980.0 * std::sqrt(61.0)) < std::sqrt(61.0) * (std::log(244.0) + 2.0));
    CHECK_THROWS_AS(fundamental_solution(1), DomainError);
    CHECK_THROWS_AS(fundamental_solution(0), DomainError);
    CHECK_THROWS_AS(fundamental_solution(-3), DomainError);
    // Larger D: the equation still holds exactly.
    for (long D : {151L, 661L, 1000L, 4099L}) {
        auto [x, y] = fundamental_solution(D);
        CHECK(x * x - D * y * y == 1);
        CHECK(fundamental_bound_holds(D, {x, y}));
    }
}

TEST_CASE("pell_solutions") {
    CHECK(pell_solutions(2, 4) == std::vector<Pair>{{1, 0}, {3, 2}, {17, 12}, {99, 70}});
    CHECK(pell_solutions(7, 1) == std::vector<Pair>{{1, 0}});
    CHECK(pell_solutions(3, 3) == std::vector<Pair>{{1, 0}, {2, 1}, {7, 4}});
    for (long D = 2; D <= 50; ++D) {
        if (square_int(D)) continue;
        auto brute = oracle::pell_scan(D, 1, 10000);
        std::vector<Pair> got;
        for (const auto& p : pell_solutions(D, 20))
            if (p.first <= 10000) got.push_back(p);
        CHECK(got == brute);
    }
    for (const auto& [x, y] : pell_solutions(13, 30)) CHECK(x * x - 13 * y * y == 1);
}

TEST_CASE("second-order identities") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(0, 10);
    for (long D : {2L, 3L, 5L, 7L, 13L, 29L}) {
        auto s = pell_solutions(D, 13);
        BigInt x1 = s[1].first;
        for (std::size_t n = 2; n <= 12; ++n) {
            CHECK(s[n].first == 2 * x1 * s[n - 1].first - s[n - 2].first);
            CHECK(s[n].second == 2 * x1 * s[n - 1].second - s[n - 2].second);
        }
        for (int t = 0; t < 5; ++t) {
            int a = coef(rng), b = coef(rng);
            auto z = [&](std::size_t n) -> BigInt { return a * s[n].first + b * s[n].second; };
            for (std::size_t n = 2; n <= 12; ++n) CHECK(z(n) == 2 * x1 * z(n - 1) - z(n - 2));
        }
    }
}

TEST_CASE("genpell fundamentals") {
    auto f = genpell_fundamentals(2, 7);
    std::vector<Pair> got;
    for (const auto& c : f) got.push_back(c.fundamental);
    CHECK(got == std::vector<Pair>{{3, 1}, {5, 3}});
    CHECK(genpell_fundamentals(2, 3).empty());
    auto m1 = genpell_fundamentals(2, -1);
    REQUIRE(m1.size() == 1);
    CHECK(m1[0].fundamental == Pair{1, 1});
    CHECK_THROWS_AS(genpell_fundamentals(2, 0), DomainError);
}

TEST_CASE("genpell solutions in a box") {
    using S = std::set<Pair, PairLess>;
    S want7;
    for (auto [x, y] : std::vector<std::pair<int, int>>{{3, 1}, {5, 3}, {13, 9}, {27, 19}})
        for (int sx : {1, -1})
            for (int sy : {1, -1}) want7.insert({sx * x, sy * y});
    CHECK(genpell_solutions(2, 7, 30) == want7);
    CHECK(genpell_solutions(2, 4, 10) == S{{2, 0}, {-2, 0}, {6, 4}, {6, -4}, {-6, 4}, {-6, -4}});
    CHECK(genpell_solutions(3, 1, 8) ==
          S{{1, 0}, {-1, 0}, {2, 1}, {2, -1}, {-2, 1}, {-2, -1}, {7, 4}, {7, -4}, {-7, 4}, {-7, -4}});

    for (long D = 2; D <= 20; ++D) {
        if (square_int(D)) continue;
        for (long N = -50; N <= 50; ++N) {
            if (N == 0) continue;
            auto want = oracle::genpell_box(D, N, 200);
            auto got = genpell_solutions(D, N, 200);
            CHECK_MESSAGE(got == want, "D=" << D << " N=" << N);
        }
    }
}

TEST_CASE("class partition") {
    for (long D = 2; D <= 20; ++D) {
        if (square_int(D)) continue;
        for (long N = -50; N <= 50; ++N) {
            if (N == 0) continue;
            auto classes = genpell_fundamentals(D, N);
            for (long y = 0; y <= 1000; ++y) {
                long v = N + D * y * y;
                if (v < 0 || !oracle::is_square64(v)) continue;
                long x = oracle::isqrt64(v);
                if (std::gcd(x, y) != 1) continue;
                int hits = 0;
                for (const auto& c : classes) {
                    for (Pair p = c.fundamental; p.second <= y && p.first <= x; p = c.step(p)) {
                        if (p == Pair{x, y}) ++hits;
                    }
                }
                CHECK_MESSAGE(hits == 1, "D=" << D << " N=" << N << " (" << x << ", " << y << ")");
            }
        }
    }
}

TEST_CASE("pair system decodes to Pell solutions") {
    Edt0lSystem s = pell_pair_system(3);
    CHECK(validate_system(s).empty());
    std::vector<Pair> got;
    for (const auto& w : enumerate_language(s, {5, 400, 100}).words) {
        auto v = decode_exponents(s, w, {"a", "a"});
        got.push_back({v[0], v[1]});
    }
    std::sort(got.begin(), got.end(), PairLess());
    CHECK(got == oracle::pell_scan(3, 1, 100));
}

TEST_CASE("stabilized linear images") {
    auto cls = genpell_fundamentals(2, 1);
    REQUIRE(cls.size() == 1);
    const SolutionClass& c = cls[0];
    CHECK(c.fundamental == Pair{1, 0});

    auto id = stabilized_linear_image(c, {1, 0, 0}, {0, 1, 0});
    std::set<Pair, PairLess> pell;
    for (const auto& p : pell_solutions(2, 12))
        if (p.first <= 100000) pell.insert(p);
    CHECK(box_of(id.components, 100000) == pell);

    auto t1 = stabilized_linear_image(c, {1, -1, 0}, {0, 1, 0});
    CHECK(t1.a.terms(6) == std::vector<BigInt>{1, 1, 5, 29, 169, 985});
    auto t2 = stabilized_linear_image(c, {1, -2, 0}, {0, 1, 0});
    CHECK(t2.a.terms(6) == std::vector<BigInt>{1, -1, -7, -41, -239, -1393});

    for (const auto* spec : {&t1, &t2}) {
        std::set<Pair, PairLess> want;
        for (std::size_t n = 0; n < 14; ++n) {
            Pair p = c.at(n);
            BigInt a = spec == &t1 ? BigInt(p.first - p.second) : BigInt(p.first - 2 * p.second);
            if (babs(a) <= 100000 && p.second <= 100000) want.insert({a, p.second});
        }
        CHECK(box_of(spec->components, 100000) == want);
        for (const auto& comp : spec->components)
            if (auto* r = std::get_if<RecurrentComponent>(&comp)) {
                CHECK(r->a.spec.violations().empty());
                CHECK(r->b.spec.violations().empty());
            }
    }

    // Mixed signs with an offset, on a non-trivial class of N = 7.
    for (const auto& k : genpell_fundamentals(2, 7)) {
        auto s = stabilized_linear_image(k, {2, -3, 5}, {-1, 1, -4});
        std::set<Pair, PairLess> want;
        for (std::size_t n = 0; n < 14; ++n) {
            Pair p = k.at(n);
            Pair img{2 * p.first - 3 * p.second + 5, -p.first + p.second - 4};
            if (babs(img.first) <= 100000 && babs(img.second) <= 100000) want.insert(img);
        }
        CHECK(box_of(s.components, 100000) == want);
    }
}
