#include "edt0l/heisenberg.hpp"

#include <cctype>
#include <sstream>

namespace edt0l {

MalcevElement multiply(const MalcevElement& g, const MalcevElement& h) {
    return {g.i + h.i, g.j + h.j, g.k + h.k + g.j * h.i};
}

MalcevElement invert(const MalcevElement& g) { return {-g.i, -g.j, g.i * g.j - g.k}; }

MalcevElement generator(char sym, const BigInt& e) {
    switch (sym) {
        case 'a': return {e, 0, 0};
        case 'b': return {0, e, 0};
        case 'c': return {0, 0, e};
    }
    throw DomainError(std::string("not a generator: ") + sym);
}

namespace {

struct Term {
    char sym;
    BigInt exp;
    std::size_t pos;
};

std::vector<Term> tokenize(const std::string& text, bool allow_x) {
    std::vector<Term> out;
    std::size_t p = 0;
    auto skip = [&] {
        while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
    };
    for (;;) {
        skip();
        if (p >= text.size()) break;
        const std::size_t at = p;
        char c = text[p];
        if (c == '=') {
            ++p;
            skip();
            if (p >= text.size() || text[p] != '1') throw EquationSyntaxError(p, "expected 1 after =");
            ++p;
            skip();
            if (p != text.size()) throw EquationSyntaxError(p, "trailing input after = 1");
            break;
        }
        if (c != 'a' && c != 'b' && c != 'c' && !(allow_x && c == 'X'))
            throw EquationSyntaxError(at, std::string("unexpected character '") + c + "'");
        ++p;
        BigInt e = 1;
        skip();
        if (p < text.size() && text[p] == '^') {
            ++p;
            skip();
            std::size_t q = p;
            if (q < text.size() && text[q] == '-') ++q;
            std::size_t d = q;
            while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) ++q;
            if (q == d) throw EquationSyntaxError(p, "expected an integer exponent");
            e = parse_bigint(text.substr(p, q - p));
            p = q;
        }
        if (e != 0) out.push_back({c, e, at});
    }
    return out;
}

MalcevElement fold(const std::vector<Term>& ts, std::size_t from, std::size_t to) {
    MalcevElement g{0, 0, 0};
    for (std::size_t t = from; t < to; ++t) g = multiply(g, generator(ts[t].sym, ts[t].exp));
    return g;
}

}  // namespace

MalcevElement normalize_word(const std::string& text) {
    auto ts = tokenize(text, false);
    return fold(ts, 0, ts.size());
}

OneVarEquation parse_equation(const std::string& text) {
    auto ts = tokenize(text, true);
    std::vector<std::size_t> xs;
    for (std::size_t t = 0; t < ts.size(); ++t)
        if (ts[t].sym == 'X') xs.push_back(t);
    if (xs.empty()) throw EquationSyntaxError(0, "the equation has no occurrence of X");
    for (std::size_t t : xs)
        if (babs(ts[t].exp) > 1000) throw EquationSyntaxError(ts[t].pos, "exponent of X too large");

    const MalcevElement lead = fold(ts, 0, xs.front());
    OneVarEquation eq;
    for (std::size_t n = 0; n < xs.size(); ++n) {
        const std::size_t t = xs[n];
        const std::size_t end = n + 1 < xs.size() ? xs[n + 1] : ts.size();
        MalcevElement g = fold(ts, t + 1, end);
        if (n + 1 == xs.size()) g = multiply(g, lead);
        const int s = ts[t].exp > 0 ? 1 : -1;
        const long reps = babs(ts[t].exp).get_si();
        for (long r = 0; r + 1 < reps; ++r) eq.blocks.push_back({s, 0, 0, 0});
        eq.blocks.push_back({s, g.i, g.j, g.k});
    }
    return eq;
}

std::string OneVarEquation::str() const {
    std::ostringstream o;
    bool first = true;
    auto put = [&](const std::string& sym, const BigInt& e) {
        if (e == 0) return;
        if (!first) o << ' ';
        first = false;
        o << sym;
        if (e != 1) o << '^' << e;
    };
    for (const auto& b : blocks) {
        put("X", b.eps);
        put("a", b.i);
        put("b", b.j);
        put("c", b.k);
    }
    return o.str();
}

bool ZSystem::holds(const Triple& x) const {
    return A1 * x[0] + C1 == 0 && A2 * x[1] + C2 == 0 &&
           cX1X2 * x[0] * x[1] + cX1 * x[0] + cX2 * x[1] + cX3 * x[2] + c0 == 0;
}

ZSystem derive_z_system(const OneVarEquation& eq) {
    ZSystem z;
    z.A1 = z.A2 = z.C1 = z.C2 = z.cX1X2 = z.cX1 = z.cX2 = z.cX3 = z.c0 = 0;
    // Running sums over earlier blocks, and the current one for the s <= r sum.
    BigInt eps_before = 0, j_before = 0;
    for (const auto& b : eq.blocks) {
        const BigInt e = b.eps;
        z.A1 += e;
        z.C1 += b.i;
        z.C2 += b.j;
        z.c0 += b.k + b.i * j_before;
        z.cX1X2 += (b.eps < 0 ? 1 : 0) + e * eps_before;
        z.cX1 += e * j_before;
        z.cX2 += b.i * (eps_before + e);
        eps_before += e;
        j_before += b.j;
    }
    z.A2 = z.cX3 = z.A1;
    return z;
}

MalcevElement evaluate(const OneVarEquation& eq, const MalcevElement& x) {
    const MalcevElement xi = invert(x);
    MalcevElement g{0, 0, 0};
    for (const auto& b : eq.blocks) {
        g = multiply(g, b.eps > 0 ? x : xi);
        g = multiply(g, MalcevElement{b.i, b.j, b.k});
    }
    return g;
}

bool evaluate_at(const OneVarEquation& eq, const MalcevElement& x) { return evaluate(eq, x).is_identity(); }

namespace {

std::vector<std::string> power_names(const std::string& base, const BigInt& n) {
    std::vector<std::string> out;
    const std::string name = n < 0 ? inverse_name(base) : base;
    for (BigInt k = 0; k < babs(n); ++k) out.push_back(name);
    return out;
}

}  // namespace

HeisenbergSolution build_solution_system(const OneVarEquation& eq) {
    HeisenbergSolution s;
    s.z = derive_z_system(eq);
    const ZSystem& z = s.z;
    if (z.A1 == 0) {
        s.case_id = 1;
        Edt0lSystem pairs_sys;
        if (z.C1 == 0 && z.C2 == 0) {
            s.pair_equation = QuadraticEquation{0, z.cX1X2, 0, z.cX1, z.cX2, z.c0};
            s.pairs = build_pair_system(*s.pair_equation);
            pairs_sys = s.pairs->system;
        } else {
            pairs_sys = empty_separated_system();
        }
        std::map<std::string, std::vector<std::string>> h{
            {"a", {"a"}}, {"a^-1", {"a^-1"}}, {"b", {"b"}}, {"b^-1", {"b^-1"}}, {kSep, {}}};
        Edt0lSystem ab = map_homomorphism(pairs_sys, h);
        Edt0lSystem cs = union_systems({star_system(single_word_system({"c"})), star_system(single_word_system({"c^-1"}))});
        s.system = concatenate_systems(ab, cs);
        return s;
    }
    s.case_id = 2;
    const BigInt& A = z.A1;
    bool ok = divides(A, z.C1) && divides(A, z.C2);
    if (ok) {
        BigInt x1 = -z.C1 / A, x2 = -z.C2 / A;
        BigInt rest = z.cX1X2 * x1 * x2 + z.cX1 * x1 + z.cX2 * x2 + z.c0;
        if (divides(A, rest)) s.single = Triple{x1, x2, -rest / A};
    }
    if (s.single) {
        std::vector<std::string> w = power_names("a", (*s.single)[0]);
        for (const auto& n : power_names("b", (*s.single)[1])) w.push_back(n);
        for (const auto& n : power_names("c", (*s.single)[2])) w.push_back(n);
        s.system = single_word_system(w, true);
        for (const auto& n : {"a", "a^-1", "b", "b^-1", "c", "c^-1"}) s.system.intern(n, true);
    } else {
        s.system = single_word_system({}, false);
    }
    return s;
}

std::set<Triple> HeisenbergSolution::solutions_in_box(const BigInt& B) const {
    std::set<Triple> out;
    if (single) {
        const auto& t = *single;
        if (babs(t[0]) <= B && babs(t[1]) <= B && babs(t[2]) <= B) out.insert(t);
    } else if (pairs) {
        for (const auto& [x, y] : edt0l::solutions_in_box(*pairs, B))
            for (BigInt k = -B; k <= B; ++k) out.insert({x, y, k});
    }
    return out;
}

std::set<Triple> decode_triples(const Edt0lSystem& sys, const Enumeration& e) {
    std::set<Triple> out;
    for (const auto& w : e.words) {
        auto v = decode_exponents(sys, w, {"a", "b", "c"});
        out.insert({v[0], v[1], v[2]});
    }
    return out;
}

std::set<Triple> heis_bruteforce(const OneVarEquation& eq, const BigInt& B) {
    if (B < 0 || B > 50) throw DomainError("box bound must be in [0, 50]");
    std::set<Triple> out;
    const long b = B.get_si();
    bool small = true;
    for (const auto& blk : eq.blocks)
        if (!fits_i64(blk.i) || !fits_i64(blk.j) || !fits_i64(blk.k) || babs(blk.i) > 1000000 ||
            babs(blk.j) > 1000000 || babs(blk.k) > 1000000)
            small = false;
    for (long x1 = -b; x1 <= b; ++x1)
        for (long x2 = -b; x2 <= b; ++x2)
            for (long x3 = -b; x3 <= b; ++x3) {
                bool id;
                if (small) {
                    // Same product law in machine integers; bounded by the guards above.
                    __int128 g[3] = {0, 0, 0};
                    const __int128 X[3] = {x1, x2, x3}, Xi[3] = {-x1, -x2, static_cast<__int128>(x1) * x2 - x3};
                    auto mul = [&](const __int128* h) {
                        g[2] += h[2] + g[1] * h[0];
                        g[0] += h[0];
                        g[1] += h[1];
                    };
                    for (const auto& blk : eq.blocks) {
                        mul(blk.eps > 0 ? X : Xi);
                        const __int128 c[3] = {blk.i.get_si(), blk.j.get_si(), blk.k.get_si()};
                        mul(c);
                    }
                    id = g[0] == 0 && g[1] == 0 && g[2] == 0;
                } else {
                    id = evaluate_at(eq, {x1, x2, x3});
                }
                if (id) out.insert({BigInt(x1), BigInt(x2), BigInt(x3)});
            }
    return out;
}

}  // namespace edt0l
