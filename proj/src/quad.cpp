#include "edt0l/quad.hpp"

#include <sstream>

namespace edt0l {

BigInt QuadraticEquation::eval(const BigInt& x, const BigInt& y) const {
    return alpha * x * x + beta * x * y + gamma * y * y + delta * x + eps * y + zeta;
}

std::string QuadraticEquation::str() const {
    std::ostringstream o;
    o << alpha << "," << beta << "," << gamma << "," << delta << "," << eps << "," << zeta;
    return o.str();
}

const char* tag_name(CaseTag t) {
    switch (t) {
        case CaseTag::PellLike: return "PellLike";
        case CaseTag::SquareD: return "SquareD";
        case CaseTag::NonPositiveD: return "NonPositiveD";
        case CaseTag::Parabolic: return "Parabolic";
        case CaseTag::HyperbolicDegenerate: return "HyperbolicDegenerate";
        case CaseTag::LinearPair: return "LinearPair";
        case CaseTag::Trivial: return "Trivial";
    }
    return "?";
}

CaseTag classify_equation(const QuadraticEquation& eq) {
    if (eq.alpha == 0 && eq.beta == 0 && eq.gamma == 0)
        return eq.delta == 0 && eq.eps == 0 ? CaseTag::Trivial : CaseTag::LinearPair;
    if (eq.alpha == 0 && eq.gamma == 0) return CaseTag::HyperbolicDegenerate;
    if (eq.alpha == 0) return classify_equation(eq.swapped());
    BigInt D = eq.beta * eq.beta - 4 * eq.alpha * eq.gamma;
    if (D == 0) return CaseTag::Parabolic;
    if (D < 0) return CaseTag::NonPositiveD;
    if (is_perfect_square(D)) return CaseTag::SquareD;
    return CaseTag::PellLike;
}

namespace {

LagrangeReduction reduce_direct(const QuadraticEquation& e) {
    LagrangeReduction r;
    r.D = e.beta * e.beta - 4 * e.alpha * e.gamma;
    r.E = e.beta * e.delta - 2 * e.alpha * e.eps;
    r.F = e.delta * e.delta - 4 * e.alpha * e.zeta;
    r.N = r.E * r.E - r.D * r.F;
    r.alpha = e.alpha;
    r.beta = e.beta;
    r.delta = e.delta;
    return r;
}

}  // namespace

LagrangeReduction lagrange_reduce(const QuadraticEquation& eq) {
    if (eq.alpha == 0 && eq.gamma == 0) throw NotApplicable("no square term");
    const bool swap = eq.alpha == 0;
    LagrangeReduction r = reduce_direct(swap ? eq.swapped() : eq);
    if (r.D == 0) throw NotApplicable("D = 0");
    r.swapped = swap;
    return r;
}

Pair LagrangeReduction::uv(const BigInt& x0, const BigInt& y0) const {
    const BigInt& x = swapped ? y0 : x0;
    const BigInt& y = swapped ? x0 : y0;
    return {D * y + E, 2 * alpha * x + beta * y + delta};
}

std::optional<Pair> LagrangeReduction::xy(const BigInt& U, const BigInt& V) const {
    BigInt yn = U - E;
    if (!divides(D, yn)) return std::nullopt;
    BigInt xn = V * D - beta * U + beta * E - delta * D;
    BigInt xd = 2 * alpha * D;
    if (!divides(xd, xn)) return std::nullopt;
    BigInt x = xn / xd, y = yn / D;
    if (swapped) std::swap(x, y);
    return Pair{x, y};
}

namespace {

std::vector<Component> finite(const std::vector<Pair>& pairs) {
    if (pairs.empty()) return {};
    return {FiniteComponent{pairs}};
}

void append(std::vector<Component>& out, const std::vector<Component>& more) {
    out.insert(out.end(), more.begin(), more.end());
}

// Both directions of the line (x0 + t dx, y0 + t dy), t in Z.
std::vector<Component> line_components(const BigInt& x0, const BigInt& y0, const BigInt& dx, const BigInt& dy) {
    std::vector<Component> out;
    append(out, law_pair_components(Law{x0, x0 + dx, 2, 0}, Law{y0, y0 + dy, 2, 0}));
    append(out, law_pair_components(Law{x0 - dx, x0 - 2 * dx, 2, 0}, Law{y0 - dy, y0 - 2 * dy, 2, 0}));
    return out;
}

// a x + b y + c = 0.
std::vector<Component> linear_components(const BigInt& a, const BigInt& b, const BigInt& c) {
    if (a == 0 && b == 0) return c == 0 ? plane_components() : std::vector<Component>{};
    ExtGcd g = ext_gcd(a, b);
    if (!divides(g.g, c)) return {};
    BigInt q = -c / g.g;
    return line_components(g.s * q, g.t * q, b / g.g, -a / g.g);
}

std::vector<BigInt> divisors(const BigInt& n) {
    std::vector<BigInt> out;
    BigInt m = babs(n);
    for (BigInt d = 1; d * d <= m; ++d) {
        if (!divides(d, m)) continue;
        for (const BigInt& e : {d, BigInt(m / d)}) {
            out.push_back(e);
            out.push_back(-e);
        }
    }
    return out;
}

std::vector<Component> hyperbolic(const QuadraticEquation& eq) {
    // (beta x + eps)(beta y + delta) = eps delta - beta zeta
    const BigInt& b = eq.beta;
    BigInt R = eq.eps * eq.delta - b * eq.zeta;
    if (R != 0) {
        std::set<Pair, PairLess> pts;
        for (const auto& d : divisors(R)) {
            BigInt xn = d - eq.eps, yn = R / d - eq.delta;
            if (divides(b, xn) && divides(b, yn)) pts.insert({xn / b, yn / b});
        }
        return finite({pts.begin(), pts.end()});
    }
    std::vector<Component> out;
    if (divides(b, eq.eps)) append(out, line_components(-eq.eps / b, 0, 0, 1));
    if (divides(b, eq.delta)) append(out, line_components(0, -eq.delta / b, 1, 0));
    return out;
}

std::vector<Component> parabolic(const QuadraticEquation& eq, const LagrangeReduction& r) {
    // V^2 = 2 E y + F with V = 2 alpha x + beta y + delta.
    const BigInt& a = eq.alpha;
    if (r.E == 0) {
        auto s = exact_sqrt(r.F);
        if (!s) return {};
        std::vector<Component> out;
        append(out, linear_components(2 * a, eq.beta, eq.delta - *s));
        if (*s != 0) append(out, linear_components(2 * a, eq.beta, eq.delta + *s));
        return out;
    }
    const BigInt m = 4 * babs(a * r.E);
    auto point = [&](const BigInt& V) -> std::optional<Pair> {
        BigInt yn = V * V - r.F;
        if (!divides(2 * r.E, yn)) return std::nullopt;
        BigInt y = yn / (2 * r.E);
        BigInt xn = V - eq.beta * y - eq.delta;
        if (!divides(2 * a, xn)) return std::nullopt;
        return Pair{xn / (2 * a), y};
    };
    std::vector<Component> out;
    for (BigInt v = 0; v < m; ++v) {
        if (!point(v)) continue;
        // V = v + m t and V = v - m - m t, t >= 0; x and y are quadratic in t.
        for (const auto& [v0, dv] : {std::pair<BigInt, BigInt>{v, m}, std::pair<BigInt, BigInt>{v - m, -m}}) {
            Pair p0 = *point(v0), p1 = *point(v0 + dv), p2 = *point(v0 + 2 * dv);
            Law lx{p0.first, p1.first, 2, p2.first - 2 * p1.first + p0.first};
            Law ly{p0.second, p1.second, 2, p2.second - 2 * p1.second + p0.second};
            append(out, law_pair_components(lx, ly));
        }
    }
    return out;
}

std::vector<Component> back_substitute(const LagrangeReduction& r, const std::vector<Pair>& uvs) {
    std::set<Pair, PairLess> pts;
    for (const auto& [U, V] : uvs)
        if (auto p = r.xy(U, V)) pts.insert(*p);
    return finite({pts.begin(), pts.end()});
}

std::vector<Component> nonpositive(const LagrangeReduction& r) {
    // U^2 + |D| V^2 = N
    if (r.N < 0) return {};
    std::vector<Pair> uvs;
    BigInt vb = isqrt(r.N / -r.D);
    for (BigInt V = -vb; V <= vb; ++V) {
        auto u = exact_sqrt(r.N + r.D * V * V);
        if (!u) continue;
        uvs.push_back({*u, V});
        uvs.push_back({-*u, V});
    }
    return back_substitute(r, uvs);
}

std::vector<Component> square_d(const QuadraticEquation& eq, const LagrangeReduction& r) {
    const BigInt s = *exact_sqrt(r.D);
    if (r.N == 0) {
        // U = +-s V: (-+2 alpha s) x + (D -+ s beta) y + (E -+ s delta) = 0
        std::vector<Component> out;
        append(out, linear_components(-2 * eq.alpha * s, r.D - s * eq.beta, r.E - s * eq.delta));
        append(out, linear_components(2 * eq.alpha * s, r.D + s * eq.beta, r.E + s * eq.delta));
        return out;
    }
    // (U - s V)(U + s V) = N
    std::vector<Pair> uvs;
    for (const auto& d : divisors(r.N)) {
        BigInt e = r.N / d;
        if (!divides(BigInt(2), d + e) || !divides(2 * s, e - d)) continue;
        uvs.push_back({(d + e) / 2, (e - d) / (2 * s)});
    }
    return back_substitute(r, uvs);
}

std::vector<Component> pell_like(const QuadraticEquation& eq, const LagrangeReduction& r) {
    if (r.N == 0) return back_substitute(r, {{0, 0}});
    std::vector<Component> scaled;
    const BigInt off = eq.beta * r.E - eq.delta * r.D;
    for (const auto& c : genpell_rays(r.D, r.N)) {
        for (int su : {1, -1})
            for (int sv : {1, -1}) {
                // X' = D V - beta U + beta E - delta D and Y' = U - E on (U, V) = (su U_n, sv V_n).
                auto spec = stabilized_linear_image(c, {-eq.beta * su, r.D * sv, off}, {BigInt(su), 0, -r.E});
                append(scaled, spec.components);
            }
    }
    std::vector<Component> out;
    for (const auto& comp : scaled) append(out, resample_component(comp, 2 * eq.alpha * r.D, r.D));
    return out;
}

Component swap_sides(const Component& c) {
    if (auto f = std::get_if<FiniteComponent>(&c)) {
        FiniteComponent g;
        for (const auto& [x, y] : f->pairs) g.pairs.push_back({y, x});
        return g;
    }
    if (auto r = std::get_if<RecurrentComponent>(&c)) return RecurrentComponent{r->b, r->a};
    const auto& g = std::get<GridComponent>(c);
    return GridComponent{g.b, g.a};
}

}  // namespace

std::vector<Component> solution_components(const QuadraticEquation& eq) {
    switch (classify_equation(eq)) {
        case CaseTag::Trivial: return eq.zeta == 0 ? plane_components() : std::vector<Component>{};
        case CaseTag::LinearPair: return linear_components(eq.delta, eq.eps, eq.zeta);
        case CaseTag::HyperbolicDegenerate: return hyperbolic(eq);
        default: break;
    }
    if (eq.alpha == 0) {
        std::vector<Component> out;
        for (const auto& c : solution_components(eq.swapped())) out.push_back(swap_sides(c));
        return out;
    }
    LagrangeReduction r = reduce_direct(eq);
    switch (classify_equation(eq)) {
        case CaseTag::Parabolic: return parabolic(eq, r);
        case CaseTag::NonPositiveD: return nonpositive(r);
        case CaseTag::SquareD: return square_d(eq, r);
        default: return pell_like(eq, r);
    }
}

AnnotatedSystem build_pair_system(const QuadraticEquation& eq) { return annotate(solution_components(eq)); }

std::set<Pair, PairLess> quad_bruteforce(const QuadraticEquation& eq, const BigInt& B) {
    if (B < 0 || B > 10000) throw DomainError("box bound must be in [0, 10^4]");
    std::set<Pair, PairLess> out;
    const BigInt* cs[6] = {&eq.alpha, &eq.beta, &eq.gamma, &eq.delta, &eq.eps, &eq.zeta};
    bool small = true;
    for (auto* c : cs)
        if (babs(*c) > BigInt("1000000000000")) small = false;
    const long b = B.get_si();
    if (small) {
        __int128 k[6];
        for (int i = 0; i < 6; ++i) k[i] = to_i64(*cs[i]);
        for (long x = -b; x <= b; ++x)
            for (long y = -b; y <= b; ++y) {
                __int128 X = x, Y = y;
                if (k[0] * X * X + k[1] * X * Y + k[2] * Y * Y + k[3] * X + k[4] * Y + k[5] == 0)
                    out.insert({BigInt(x), BigInt(y)});
            }
        return out;
    }
    for (long x = -b; x <= b; ++x)
        for (long y = -b; y <= b; ++y)
            if (eq.eval(x, y) == 0) out.insert({BigInt(x), BigInt(y)});
    return out;
}

}  // namespace edt0l
