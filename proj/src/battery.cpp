#include "edt0l/battery.hpp"

#include <algorithm>
#include <sstream>

namespace edt0l {

QuadraticEquation random_quadratic(std::mt19937_64& rng, int range) {
    std::uniform_int_distribution<int> u(-range, range);
    return {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
}

std::vector<QuadraticEquation> quad_battery(std::uint64_t seed, std::size_t random) {
    std::vector<QuadraticEquation> out = {
        {1, 0, -2, 0, 0, -1},   // x^2 - 2y^2 = 1
        {1, 0, -2, 0, 0, -7},   // x^2 - 2y^2 = 7
        {1, 0, -3, 0, 0, -1},   // x^2 - 3y^2 = 1
        {2, 0, -3, 1, -1, -5},  // Pell-like with linear terms
        {1, 1, -1, 1, 0, -1},   // D = 5
        {-1, 0, 2, 0, 0, 1},    // negative alpha
        {3, 1, -2, 0, 2, -1},   // D = 25, square
        {1, 0, -2, 0, 0, 0},    // Pell-like with N = 0
        {1, 3, 1, 0, 0, 0},     // D = 5, N = 0
        {0, 1, 0, 0, 0, -6},    // xy = 6
        {0, 2, 0, 1, 3, -1},    // hyperbolic with divisibility filter
        {0, 1, 0, 1, 0, 0},     // x(y + 1) = 0: two lines
        {0, 2, 0, 2, 0, 0},     // 2x(y + 1) = 0
        {0, 0, 0, 2, 3, 1},     // line
        {0, 0, 0, 2, 4, 1},     // no integer points
        {0, 0, 0, 0, 3, -6},    // y = 2
        {0, 0, 0, 0, 0, 0},     // the plane
        {0, 0, 0, 0, 0, 1},     // nothing
        {0, 0, 1, -2, 0, 0},    // alpha = 0: y^2 = 2x after the swap
        {0, 1, 1, 0, 0, -1},    // alpha = 0, D square
        {0, 1, -2, 0, 0, 3},    // alpha = 0, square D after the swap
        {1, 0, 0, 0, -1, 0},    // y = x^2
        {1, 2, 1, 1, 0, 0},     // (x + y)^2 + x = 0
        {2, 4, 2, 1, -3, 2},    // parabolic, both residue directions
        {-3, 0, 0, 2, 3, 1},    // parabolic, negative alpha
        {1, 0, 0, 0, 0, -4},    // x = +-2
        {1, 2, 1, 0, 0, -1},    // x + y = +-1
        {1, 2, 1, 0, 0, -2},    // no square root
        {1, 0, 1, 0, 0, -2},    // circle
        {1, 0, 1, 0, 0, -3},    // empty circle
        {2, 1, 3, -1, 2, -30},  // ellipse
        {1, 0, -1, 0, 0, -5},   // x^2 - y^2 = 5
        {1, 0, -1, 0, 0, 0},    // x = +-y
        {1, 0, -4, 1, 0, 0},    // square D with N = 0 and a linear term
        {2, -3, 1, 0, 0, 0},    // (2x - y)(x - y) = 0
    };
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random; ++i) out.push_back(random_quadratic(rng));
    return out;
}

OneVarEquation random_heis_equation(std::mt19937_64& rng, std::size_t max_blocks, int c, bool balanced) {
    std::uniform_int_distribution<int> u(-c, c);
    std::uniform_int_distribution<std::size_t> len(1, max_blocks);
    std::size_t n = len(rng);
    if (balanced && n % 2 == 1) n = n == max_blocks ? n - 1 : n + 1;
    if (n == 0) n = 2;
    std::vector<int> eps(n);
    if (balanced) {
        for (std::size_t r = 0; r < n; ++r) eps[r] = r < n / 2 ? 1 : -1;
        std::shuffle(eps.begin(), eps.end(), rng);
    } else {
        std::bernoulli_distribution coin(0.5);
        int total = 0;
        for (auto& e : eps) total += e = coin(rng) ? 1 : -1;
        if (total == 0) eps[0] = -eps[0];
    }
    OneVarEquation eq;
    for (std::size_t r = 0; r < n; ++r) eq.blocks.push_back({eps[r], u(rng), u(rng), u(rng)});
    // Balanced equations only have solutions when the a and b exponents cancel; make that
    // the common case so the quadratic part gets exercised.
    if (balanced && std::bernoulli_distribution(0.75)(rng)) {
        BigInt si = 0, sj = 0;
        for (std::size_t r = 0; r + 1 < n; ++r) {
            si += eq.blocks[r].i;
            sj += eq.blocks[r].j;
        }
        eq.blocks.back().i = -si;
        eq.blocks.back().j = -sj;
    }
    return eq;
}

namespace {

std::string pair_str(const Pair& p) { return "(" + str(p.first) + ", " + str(p.second) + ")"; }

std::string triple_str(const Triple& t) { return "(" + str(t[0]) + ", " + str(t[1]) + ", " + str(t[2]) + ")"; }

template <class Set, class F>
std::optional<std::string> diff(const Set& built, const Set& brute, F show) {
    for (const auto& p : brute)
        if (!built.count(p)) return "missing " + show(p);
    for (const auto& p : built)
        if (!brute.count(p)) return "spurious " + show(p);
    return std::nullopt;
}

}  // namespace

std::optional<std::string> check_quad(const QuadraticEquation& eq, const BigInt& box) {
    AnnotatedSystem a = build_pair_system(eq);
    auto v = validate_system(a.system);
    if (!v.empty()) return "invalid system: " + v.front();
    auto r = diff(solutions_in_box(a, box), quad_bruteforce(eq, box), pair_str);
    if (r) return "eq " + eq.str() + ": " + *r;
    return std::nullopt;
}

std::optional<std::string> check_heis(const OneVarEquation& eq, const BigInt& box) {
    HeisenbergSolution s = build_solution_system(eq);
    auto v = validate_system(s.system);
    if (!v.empty()) return "invalid system: " + v.front();
    auto r = diff(s.solutions_in_box(box), heis_bruteforce(eq, box), triple_str);
    if (r) return "eq \"" + eq.str() + "\": " + *r;
    return std::nullopt;
}

}  // namespace edt0l
