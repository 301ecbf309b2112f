#include "edt0l/pell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edt0l {

std::optional<BigInt> is_perfect_square(const BigInt& n) { return exact_sqrt(n); }

double log_big(const BigInt& v) {
    if (v <= 0) throw DomainError("log of a non-positive integer");
    long e = 0;
    double d = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log(d) + static_cast<double>(e) * std::log(2.0);
}

bool fundamental_bound_holds(const BigInt& D, const Pair& xy) {
    // x + y sqrt D = x (1 + sqrt(1 - 1/x^2)), so the log splits without big floats.
    double lx = log_big(xy.first);
    double r = 1.0 - std::exp(-2.0 * lx);
    double lhs = lx + std::log1p(std::sqrt(std::max(0.0, r)));
    double d = D.get_d();
    return lhs < std::sqrt(d) * (std::log(4.0 * d) + 2.0);
}

Pair fundamental_solution(const BigInt& D) {
    if (D < 2) throw DomainError("D must be at least 2");
    if (is_perfect_square(D)) throw DomainError("D is a perfect square: " + str(D));
    const BigInt a0 = isqrt(D);
    BigInt m = 0, d = 1, a = a0;
    BigInt h_prev = 1, h = a0, k_prev = 0, k = 1;
    while (h * h - D * k * k != 1) {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        BigInt h2 = a * h + h_prev, k2 = a * k + k_prev;
        h_prev = h;
        k_prev = k;
        h = h2;
        k = k2;
    }
    Pair out{h, k};
    if (!fundamental_bound_holds(D, out)) throw std::logic_error("fundamental solution exceeds its bound");
    return out;
}

std::vector<Pair> pell_solutions(const BigInt& D, std::size_t count) {
    const auto [x1, y1] = fundamental_solution(D);
    std::vector<Pair> out;
    Pair cur{1, 0};
    for (std::size_t n = 0; n < count; ++n) {
        out.push_back(cur);
        cur = {x1 * cur.first + D * y1 * cur.second, y1 * cur.first + x1 * cur.second};
    }
    return out;
}

Edt0lSystem pell_pair_system(const BigInt& D) {
    const auto [x1, y1] = fundamental_solution(D);
    Edt0lSystem s;
    for (const auto& n : {"a_x", "ā_x", "a_y", "ā_y"}) s.intern(n);
    s.intern(kSep, true);
    s.intern("a", true);
    s.start = s.word({"a_x", kSep, "ā_x"});
    s.separated = true;
    auto img = [&](const std::string& p, const BigInt& e, const std::string& q, const BigInt& f) {
        Word w = s.power(p, e);
        w.append(s.power(q, f));
        return w;
    };
    s.set_image("phi", "a_x", img("a_x", x1, "ā_y", y1));
    s.set_image("phi", "ā_x", img("ā_x", x1, "a_y", y1));
    s.set_image("phi", "a_y", img("ā_x", D * y1, "a_y", x1));
    s.set_image("phi", "ā_y", img("a_x", D * y1, "ā_y", x1));
    s.set_image("theta", "a_x", s.word({"a"}));
    s.set_image("theta", "a_y", s.word({"a"}));
    s.set_image("theta", "ā_x", Word{});
    s.set_image("theta", "ā_y", Word{});
    s.control.states = 2;
    s.control.add(0, "phi", 0);
    s.control.add(0, "theta", 1);
    s.control.accepting = {1};
    return s;
}

Pair SolutionClass::step(const Pair& p) const {
    const auto& [u, v] = generator;
    return {u * p.first + D * v * p.second, v * p.first + u * p.second};
}

Pair SolutionClass::back(const Pair& p) const {
    const auto& [u, v] = generator;
    return {u * p.first - D * v * p.second, u * p.second - v * p.first};
}

Pair SolutionClass::at(std::size_t n) const {
    Pair p = fundamental;
    for (std::size_t i = 0; i < n; ++i) p = step(p);
    return p;
}

Law SolutionClass::image_law(const BigInt& alpha, const BigInt& beta, const BigInt& gamma) const {
    Pair p1 = step(fundamental);
    BigInt T = 2 * generator.first;
    return {alpha * fundamental.first + beta * fundamental.second + gamma, alpha * p1.first + beta * p1.second + gamma,
            T, gamma * (2 - T)};
}

namespace {

bool nonneg(const Pair& p) { return p.first >= 0 && p.second >= 0; }

}  // namespace

std::vector<SolutionClass> genpell_fundamentals(const BigInt& D, const BigInt& N) {
    if (N == 0) throw DomainError("N must be nonzero");
    const Pair gen = fundamental_solution(D);
    const auto& [u1, v1] = gen;
    BigInt denom = N > 0 ? BigInt(2 * (u1 + 1)) : BigInt(2 * (u1 - 1));
    BigInt yb = isqrt(v1 * v1 * babs(N) / denom) + 1;

    std::set<Pair, PairLess> starts;
    SolutionClass proto{D, N, {0, 0}, gen};
    for (BigInt y = 0; y <= yb; ++y) {
        auto x = exact_sqrt(N + D * y * y);
        if (!x) continue;
        for (const BigInt& xs : {*x, BigInt(-*x)}) {
            if (gcd(xs, y) != 1) continue;
            Pair p{xs, y};
            // Put p on the branch with x + y sqrt D > 0, then walk to the first
            // non-negative point of its orbit.
            if (p.first < 0 && N > 0) p = {-p.first, -p.second};
            while (!nonneg(p)) p = proto.step(p);
            for (;;) {
                Pair q = proto.back(p);
                if (!nonneg(q) || q.second >= p.second) break;
                p = q;
            }
            starts.insert(p);
        }
    }
    std::vector<SolutionClass> out;
    for (const auto& p : starts) out.push_back({D, N, p, gen});
    return out;
}

std::vector<SolutionClass> genpell_rays(const BigInt& D, const BigInt& N) {
    std::vector<SolutionClass> out;
    BigInt aN = babs(N);
    for (BigInt k = 1; k * k <= aN; ++k) {
        if (!divides(k * k, N)) continue;
        for (auto c : genpell_fundamentals(D, N / (k * k))) {
            c.N = N;
            c.fundamental = {c.fundamental.first * k, c.fundamental.second * k};
            out.push_back(c);
        }
    }
    return out;
}

std::set<Pair, PairLess> genpell_solutions(const BigInt& D, const BigInt& N, const BigInt& bound) {
    std::set<Pair, PairLess> out;
    for (const auto& c : genpell_rays(D, N)) {
        for (Pair p = c.fundamental; p.first <= bound && p.second <= bound; p = c.step(p)) {
            for (int sx : {1, -1})
                for (int sy : {1, -1}) out.insert({sx * p.first, sy * p.second});
        }
    }
    return out;
}

LinearImageSpec stabilized_linear_image(const SolutionClass& c, const std::array<BigInt, 3>& a,
                                        const std::array<BigInt, 3>& b) {
    LinearImageSpec s;
    s.a = c.image_law(a[0], a[1], a[2]);
    s.b = c.image_law(b[0], b[1], b[2]);
    s.components = law_pair_components(s.a, s.b);
    return s;
}

}  // namespace edt0l
