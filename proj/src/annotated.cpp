#include "edt0l/annotated.hpp"

#include <algorithm>
#include <map>

namespace edt0l {

using nlohmann::json;

std::vector<BigInt> Law::terms(std::size_t count) const {
    std::vector<BigInt> out;
    if (count == 0) return out;
    out.push_back(o0);
    if (count == 1) return out;
    out.push_back(o1);
    while (out.size() < count) out.push_back(next(out[out.size() - 2], out.back()));
    return out;
}

BigInt Law::term(std::size_t k) const {
    BigInt a = o0, b = o1;
    for (std::size_t i = 0; i < k; ++i) {
        BigInt c = next(a, b);
        a = std::move(b);
        b = std::move(c);
    }
    return a;
}

Law Law::shifted(std::size_t k) const {
    BigInt a = o0, b = o1;
    for (std::size_t i = 0; i < k; ++i) {
        BigInt c = next(a, b);
        a = std::move(b);
        b = std::move(c);
    }
    return {a, b, T, K};
}

BigInt lucas_trace(const BigInt& T, std::size_t P) {
    BigInt v0 = 2, v1 = T;
    if (P == 0) return v0;
    for (std::size_t i = 1; i < P; ++i) {
        BigInt v2 = T * v1 - v0;
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    return v1;
}

Law Law::strided(std::size_t r, std::size_t P) const {
    if (P == 0) throw ConstructionError("stride must be positive");
    std::vector<BigInt> t = terms(r + 2 * P + 1);
    BigInt TP = lucas_trace(T, P);
    BigInt KP = t[r + 2 * P] - TP * t[r + P] + t[r];
    return {t[r], t[r + P], TP, KP};
}

Side Side::advanced(std::size_t k) const {
    Side s = *this;
    s.spec.seeds = spec.state_at(k);
    if (law) s.law = law->shifted(k);
    return s;
}

Side Side::negated() const {
    Side s = *this;
    for (auto& v : s.spec.seeds) v = -v;
    if (law) s.law = law->negated();
    return s;
}

std::optional<Side> realize_law_at(const Law& law, std::size_t k) {
    if (law.T < 2) throw ConstructionError("law trace must be at least 2");
    BigInt prev, cur;
    if (k == 0) {
        prev = law.before(law.o0, law.o1);
        cur = law.o0;
    } else {
        Law s = law.shifted(k - 1);
        prev = s.o0;
        cur = s.o1;
    }
    for (int sigma : {1, -1}) {
        BigInt m = 0;
        if (sigma * law.K < 0) {
            if (law.T == 2) continue;
            m = sigma * ceil_div(-sigma * law.K, law.T - 2);
        }
        BigInt kappa = sigma * (law.K + (law.T - 2) * m);
        BigInt y = cur - m, w = cur - prev;
        if (sigma * y < 0 || sigma * w < 0 || kappa < 0) continue;
        Side s;
        s.spec.seeds = {y, w, BigInt(sigma)};
        s.spec.matrix = {Vec3{law.T - 1, 1, kappa}, Vec3{law.T - 2, 1, kappa}, Vec3{0, 0, 1}};
        s.spec.weights = {1, 0, sigma * m};
        s.law = law.shifted(k);
        return s;
    }
    return std::nullopt;
}

Stabilized stabilize(const Law& law, std::size_t cap) {
    if (law.T < 2) throw ConstructionError("law trace must be at least 2");
    Law cur = law;
    BigInt prev = law.before(law.o0, law.o1);
    for (std::size_t k = 0; k <= cap; ++k) {
        // Same test as realize_law_at, inlined to avoid re-walking the sequence.
        for (int sigma : {1, -1}) {
            BigInt m = 0;
            if (sigma * law.K < 0) {
                if (law.T == 2) continue;
                m = sigma * ceil_div(-sigma * law.K, law.T - 2);
            }
            BigInt kappa = sigma * (law.K + (law.T - 2) * m);
            BigInt y = cur.o0 - m, w = cur.o0 - prev;
            if (sigma * y < 0 || sigma * w < 0 || kappa < 0) continue;
            Side s;
            s.spec.seeds = {y, w, BigInt(sigma)};
            s.spec.matrix = {Vec3{law.T - 1, 1, kappa}, Vec3{law.T - 2, 1, kappa}, Vec3{0, 0, 1}};
            s.spec.weights = {1, 0, sigma * m};
            s.law = cur;
            return {k, s};
        }
        prev = cur.o0;
        cur = {cur.o1, cur.next(cur.o0, cur.o1), cur.T, cur.K};
    }
    throw ConstructionError("law does not stabilize within the scan cap");
}

Side constant_side(const BigInt& v) { return stabilize(Law{v, v, 2, 0}).side; }

Side counting_side(const BigInt& start, const BigInt& step) {
    Stabilized s = stabilize(Law{start, start + step, 2, 0});
    if (s.index != 0) throw ConstructionError("counting side must be monotone away from zero");
    return s.side;
}

namespace {

// A side still to be realized: either ready from index 0, or a bare law.
using Pending = std::variant<Side, Law>;

struct Piece {
    std::vector<BigInt> head;
    Side tail;  // realizes the sequence from index head.size()
};

Piece make_piece(const Pending& p) {
    if (auto s = std::get_if<Side>(&p)) return {{}, *s};
    const Law& law = std::get<Law>(p);
    Stabilized st = stabilize(law);
    return {law.terms(st.index), st.side};
}

BigInt piece_value(const Piece& p, std::size_t j) {
    if (j < p.head.size()) return p.head[j];
    return p.tail.spec.output(p.tail.spec.state_at(j - p.head.size()));
}

std::vector<Component> pair_components(const Pending& a, const Pending& b) {
    Piece pa = make_piece(a), pb = make_piece(b);
    std::size_t M = std::max(pa.head.size(), pb.head.size());
    std::vector<Component> out;
    if (M > 0) {
        FiniteComponent f;
        for (std::size_t j = 0; j < M; ++j) f.pairs.push_back({piece_value(pa, j), piece_value(pb, j)});
        out.push_back(f);
    }
    out.push_back(RecurrentComponent{pa.tail.advanced(M - pa.head.size()), pb.tail.advanced(M - pb.head.size())});
    return out;
}

// Residues of one side modulo |g|, tracked on a state that determines all later residues.
struct Tracker {
    std::int64_t g;
    bool use_law;
    std::int64_t T = 0, K = 0;
    std::int64_t M[3][3]{};
    std::int64_t w[3]{};
    std::vector<std::int64_t> state;

    static std::int64_t red(const BigInt& v, std::int64_t g) { return to_i64(mod_pos(v, BigInt(static_cast<long>(g)))); }

    Tracker(const Side& s, std::int64_t mod) : g(mod), use_law(s.law.has_value()) {
        if (use_law) {
            T = red(s.law->T, g);
            K = red(s.law->K, g);
            state = {red(s.law->o0, g), red(s.law->o1, g)};
        } else {
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) M[i][j] = red(s.spec.matrix[i][j], g);
                w[i] = red(s.spec.weights[i], g);
                state.push_back(red(s.spec.seeds[i], g));
            }
        }
    }
    std::int64_t residue() const {
        if (use_law) return state[0];
        __int128 r = 0;
        for (int i = 0; i < 3; ++i) r += static_cast<__int128>(w[i]) * state[i];
        return static_cast<std::int64_t>(r % g);
    }
    void step() {
        if (use_law) {
            __int128 n = static_cast<__int128>(T) * state[1] - state[0] + K;
            n %= g;
            if (n < 0) n += g;
            state = {state[1], static_cast<std::int64_t>(n)};
        } else {
            std::vector<std::int64_t> n(3);
            for (int i = 0; i < 3; ++i) {
                __int128 acc = 0;
                for (int j = 0; j < 3; ++j) acc += static_cast<__int128>(M[i][j]) * state[j];
                n[i] = static_cast<std::int64_t>(acc % g);
            }
            state = n;
        }
    }
};

struct Schedule {
    std::size_t mu = 0, period = 1;
    std::vector<std::size_t> head;     // admissible indices below mu
    std::vector<std::size_t> classes;  // admissible residues r in [mu, mu + period)
};

Schedule schedule(const std::vector<const Side*>& sides, const std::vector<BigInt>& moduli) {
    std::vector<Tracker> tr;
    for (std::size_t i = 0; i < sides.size(); ++i) {
        BigInt m = babs(moduli[i]);
        if (m > BigInt("2147483647")) throw ConstructionError("divisor too large");
        tr.emplace_back(*sides[i], to_i64(m));
    }
    std::map<std::vector<std::int64_t>, std::size_t> seen;
    std::vector<char> ok;
    const std::size_t cap = 20000000;
    for (std::size_t k = 0;; ++k) {
        std::vector<std::int64_t> key;
        bool adm = true;
        for (auto& t : tr) {
            key.insert(key.end(), t.state.begin(), t.state.end());
            if (t.residue() != 0) adm = false;
        }
        auto it = seen.find(key);
        if (it != seen.end()) {
            Schedule s;
            s.mu = it->second;
            s.period = k - it->second;
            for (std::size_t j = 0; j < s.mu; ++j)
                if (ok[j]) s.head.push_back(j);
            for (std::size_t j = s.mu; j < k; ++j)
                if (ok[j]) s.classes.push_back(j);
            return s;
        }
        if (k > cap) throw ConstructionError("residue period too long");
        seen.emplace(std::move(key), k);
        ok.push_back(adm);
        for (auto& t : tr) t.step();
    }
}

Law divide_law(const Law& l, const BigInt& g) {
    if (!divides(g, l.o0) || !divides(g, l.o1) || !divides(g, l.K))
        throw ConstructionError("strided law is not divisible");
    return {l.o0 / g, l.o1 / g, l.T, l.K / g};
}

Pending stride_side(const Side& s, std::size_t r, std::size_t P, const BigInt& g) {
    if (s.law) return divide_law(s.law->strided(r, P), g);
    Vec3 st = s.spec.state_at(r);
    for (const auto& v : st)
        if (!divides(g, v)) throw ConstructionError("side without a law is not divisible on its state");
    Side out;
    out.spec.seeds = {st[0] / g, st[1] / g, st[2] / g};
    out.spec.matrix = mat_pow(s.spec.matrix, P);
    out.spec.weights = s.spec.weights;
    return out;
}

BigInt side_value(const Side& s, std::size_t k) { return s.spec.output(s.spec.state_at(k)); }

// All values of one side split into finitely many constants and strided tails, divided by g.
std::vector<Pending> resample_side(const Side& s, const BigInt& g) {
    Schedule sch = schedule({&s}, {g});
    std::vector<Pending> out;
    for (std::size_t k : sch.head) {
        BigInt v = side_value(s, k) / g;
        out.push_back(Law{v, v, 2, 0});
    }
    for (std::size_t r : sch.classes) out.push_back(stride_side(s, r, sch.period, g));
    return out;
}

bool is_fixed(const RecurrenceSpec& spec, const Vec3& s) { return spec.step(s) == s; }

std::set<BigInt> side_values_in_box(const Side& s, const BigInt& B) {
    std::set<BigInt> out;
    std::set<Vec3> states;
    Vec3 st = s.spec.seeds;
    const bool mono = s.spec.monotone();
    for (std::size_t k = 0;; ++k) {
        BigInt v = s.spec.output(st);
        if (babs(v) <= B) out.insert(v);
        else if (mono) break;
        if (is_fixed(s.spec, st)) break;
        if (!mono) {
            if (!states.insert(st).second) break;
            if (k > 100000) throw ConstructionError("non-monotone side does not settle");
        }
        st = s.spec.step(st);
    }
    return out;
}

}  // namespace

std::vector<Component> law_pair_components(const Law& a, const Law& b) { return pair_components(a, b); }

std::vector<Component> plane_components() {
    std::vector<Component> out;
    Side up = counting_side(0, 1), down = counting_side(-1, -1);
    for (const Side* x : {&up, &down})
        for (const Side* y : {&up, &down}) out.push_back(GridComponent{*x, *y});
    return out;
}

std::vector<Component> resample_component(const Component& c, const BigInt& gamma, const BigInt& zeta) {
    if (gamma == 0 || zeta == 0) throw ConstructionError("division by zero");
    if (auto f = std::get_if<FiniteComponent>(&c)) {
        FiniteComponent out;
        for (const auto& [x, y] : f->pairs)
            if (divides(gamma, x) && divides(zeta, y)) out.pairs.push_back({x / gamma, y / zeta});
        if (out.pairs.empty()) return {};
        return {out};
    }
    if (auto r = std::get_if<RecurrentComponent>(&c)) {
        if (babs(gamma) == 1 && babs(zeta) == 1) {
            RecurrentComponent out{gamma < 0 ? r->a.negated() : r->a, zeta < 0 ? r->b.negated() : r->b};
            return {out};
        }
        Schedule sch = schedule({&r->a, &r->b}, {gamma, zeta});
        std::vector<Component> out;
        FiniteComponent head;
        for (std::size_t k : sch.head) head.pairs.push_back({side_value(r->a, k) / gamma, side_value(r->b, k) / zeta});
        if (!head.pairs.empty()) out.push_back(head);
        for (std::size_t rr : sch.classes) {
            auto parts = pair_components(stride_side(r->a, rr, sch.period, gamma),
                                         stride_side(r->b, rr, sch.period, zeta));
            out.insert(out.end(), parts.begin(), parts.end());
        }
        return out;
    }
    const auto& g = std::get<GridComponent>(c);
    std::vector<Component> out;
    auto as = resample_side(g.a, gamma), bs = resample_side(g.b, zeta);
    for (const auto& pa : as) {
        Piece x = make_piece(pa);
        for (const auto& pb : bs) {
            Piece y = make_piece(pb);
            // Head values of a grid side pair with every value of the other side.
            std::vector<Side> xs{x.tail}, ys{y.tail};
            for (const auto& v : x.head) xs.push_back(constant_side(v));
            for (const auto& v : y.head) ys.push_back(constant_side(v));
            for (const auto& sx : xs)
                for (const auto& sy : ys) out.push_back(GridComponent{sx, sy});
        }
    }
    return out;
}

Edt0lSystem component_system(const Component& c) {
    if (auto f = std::get_if<FiniteComponent>(&c)) return finite_pair_system(f->pairs);
    Edt0lSystem s = empty_separated_system();
    for (const auto& n : {"a", "a^-1", "b", "b^-1"}) s.intern(n, true);
    if (auto r = std::get_if<RecurrentComponent>(&c)) {
        add_recurrence_side(s, r->a.spec, "a", "⊥1", "theta", "phi", "psi");
        add_recurrence_side(s, r->b.spec, "b", "⊥2", "theta", "phi", "psi");
        s.control.states = 3;
        s.control.add(0, "theta", 1);
        s.control.add(1, "phi", 1);
        s.control.add(1, "psi", 2);
        s.control.accepting = {2};
        return s;
    }
    const auto& g = std::get<GridComponent>(c);
    add_recurrence_side(s, g.a.spec, "a", "⊥1", "theta", "phi_a", "psi");
    add_recurrence_side(s, g.b.spec, "b", "⊥2", "theta", "phi_b", "psi");
    s.control.states = 4;
    s.control.add(0, "theta", 1);
    s.control.add(1, "phi_a", 1);
    s.control.add(1, "phi_b", 2);
    s.control.add(2, "phi_b", 2);
    s.control.add(1, "psi", 3);
    s.control.add(2, "psi", 3);
    s.control.accepting = {3};
    return s;
}

AnnotatedSystem annotate(std::vector<Component> components) {
    std::vector<Edt0lSystem> parts;
    for (const auto& c : components) parts.push_back(component_system(c));
    AnnotatedSystem a;
    a.system = union_separated_systems(parts);
    if (parts.size() == 1) {
        // A lone finite or recurrent system is already separated over the same letters.
        a.system.separated = true;
    }
    a.components = std::move(components);
    return a;
}

AnnotatedSystem finite_set_system(const std::vector<Pair>& pairs) {
    AnnotatedSystem a;
    a.system = finite_pair_system(pairs);
    a.components.push_back(FiniteComponent{pairs});
    return a;
}

AnnotatedSystem union_separated(const std::vector<AnnotatedSystem>& xs) {
    std::vector<Edt0lSystem> parts;
    AnnotatedSystem out;
    for (const auto& x : xs) {
        parts.push_back(x.system);
        out.components.insert(out.components.end(), x.components.begin(), x.components.end());
    }
    out.system = union_separated_systems(parts);
    return out;
}

AnnotatedSystem divide_separated(const AnnotatedSystem& x, const BigInt& gamma, const BigInt& zeta) {
    if (gamma == 0 || zeta == 0) throw ConstructionError("division by zero");
    if (gamma == 1 && zeta == 1) return x;
    std::vector<Component> out;
    for (const auto& c : x.components) {
        auto parts = resample_component(c, gamma, zeta);
        out.insert(out.end(), parts.begin(), parts.end());
    }
    return annotate(std::move(out));
}

std::set<Pair, PairLess> component_solutions_in_box(const Component& c, const BigInt& B) {
    std::set<Pair, PairLess> out;
    if (auto f = std::get_if<FiniteComponent>(&c)) {
        for (const auto& p : f->pairs)
            if (babs(p.first) <= B && babs(p.second) <= B) out.insert(p);
        return out;
    }
    if (auto g = std::get_if<GridComponent>(&c)) {
        auto xs = side_values_in_box(g->a, B), ys = side_values_in_box(g->b, B);
        for (const auto& x : xs)
            for (const auto& y : ys) out.insert({x, y});
        return out;
    }
    const auto& r = std::get<RecurrentComponent>(c);
    const bool mono = r.a.spec.monotone() && r.b.spec.monotone();
    Vec3 sa = r.a.spec.seeds, sb = r.b.spec.seeds;
    std::set<std::pair<Vec3, Vec3>> states;
    for (std::size_t k = 0;; ++k) {
        BigInt x = r.a.spec.output(sa), y = r.b.spec.output(sb);
        bool out_a = babs(x) > B, out_b = babs(y) > B;
        if (!out_a && !out_b) out.insert({x, y});
        if (mono && (out_a || out_b)) break;
        if (is_fixed(r.a.spec, sa) && is_fixed(r.b.spec, sb)) break;
        if (!mono) {
            if (!states.insert({sa, sb}).second) break;
            if (k > 100000) throw ConstructionError("non-monotone component does not settle");
        }
        sa = r.a.spec.step(sa);
        sb = r.b.spec.step(sb);
    }
    return out;
}

std::set<Pair, PairLess> solutions_in_box(const AnnotatedSystem& x, const BigInt& B) {
    std::set<Pair, PairLess> out;
    for (const auto& c : x.components) {
        auto part = component_solutions_in_box(c, B);
        out.insert(part.begin(), part.end());
    }
    return out;
}

namespace {

json vec_json(const Vec3& v) { return json::array({bigint_to_json(v[0]), bigint_to_json(v[1]), bigint_to_json(v[2])}); }

Vec3 vec_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw ParseError(where, "expected three integers");
    return {bigint_from_json(j[0], where + "/0"), bigint_from_json(j[1], where + "/1"),
            bigint_from_json(j[2], where + "/2")};
}

json side_json(const Side& s) {
    json j;
    j["seeds"] = vec_json(s.spec.seeds);
    j["matrix"] = json::array({vec_json(s.spec.matrix[0]), vec_json(s.spec.matrix[1]), vec_json(s.spec.matrix[2])});
    j["weights"] = vec_json(s.spec.weights);
    if (s.law)
        j["law"] = {{"o0", bigint_to_json(s.law->o0)},
                    {"o1", bigint_to_json(s.law->o1)},
                    {"T", bigint_to_json(s.law->T)},
                    {"K", bigint_to_json(s.law->K)}};
    return j;
}

Side side_from(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "seeds" && it.key() != "matrix" && it.key() != "weights" && it.key() != "law")
            throw ParseError(where + "/" + it.key(), "unknown field");
    if (!j.contains("seeds") || !j.contains("matrix")) throw ParseError(where, "side needs seeds and matrix");
    Side s;
    s.spec.seeds = vec_from(j["seeds"], where + "/seeds");
    const json& m = j["matrix"];
    if (!m.is_array() || m.size() != 3) throw ParseError(where + "/matrix", "expected three rows");
    for (int i = 0; i < 3; ++i) s.spec.matrix[i] = vec_from(m[i], where + "/matrix/" + std::to_string(i));
    if (j.contains("weights")) s.spec.weights = vec_from(j["weights"], where + "/weights");
    if (j.contains("law")) {
        const json& l = j["law"];
        const std::string at = where + "/law";
        for (const char* k : {"o0", "o1", "T", "K"})
            if (!l.is_object() || !l.contains(k)) throw ParseError(at, std::string("missing ") + k);
        s.law = Law{bigint_from_json(l["o0"], at + "/o0"), bigint_from_json(l["o1"], at + "/o1"),
                    bigint_from_json(l["T"], at + "/T"), bigint_from_json(l["K"], at + "/K")};
    }
    auto v = s.spec.violations();
    if (!v.empty()) throw ParseError(where, v.front());
    return s;
}

}  // namespace

json annotated_to_json(const AnnotatedSystem& x) {
    json j = system_to_json(x.system);
    json comps = json::array();
    for (const auto& c : x.components) {
        if (auto f = std::get_if<FiniteComponent>(&c)) {
            json ps = json::array();
            for (const auto& [a, b] : f->pairs) ps.push_back(json::array({bigint_to_json(a), bigint_to_json(b)}));
            comps.push_back({{"finite", ps}});
        } else if (auto r = std::get_if<RecurrentComponent>(&c)) {
            comps.push_back({{"recurrent", {{"a", side_json(r->a)}, {"b", side_json(r->b)}}}});
        } else {
            const auto& g = std::get<GridComponent>(c);
            comps.push_back({{"grid", {{"a", side_json(g.a)}, {"b", side_json(g.b)}}}});
        }
    }
    j["components"] = comps;
    return j;
}

AnnotatedSystem annotated_from_json(const json& in) {
    if (!in.is_object()) throw ParseError("/", "expected an object");
    if (!in.contains("components")) throw ParseError("/components", "missing field");
    json sys = in;
    sys.erase("components");
    AnnotatedSystem a;
    a.system = system_from_json(sys);
    const json& comps = in["components"];
    if (!comps.is_array()) throw ParseError("/components", "expected an array");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string at = "/components/" + std::to_string(i);
        const json& c = comps[i];
        if (!c.is_object() || c.size() != 1) throw ParseError(at, "expected one of finite, recurrent, grid");
        if (c.contains("finite")) {
            FiniteComponent f;
            const json& ps = c["finite"];
            if (!ps.is_array()) throw ParseError(at + "/finite", "expected an array of pairs");
            for (std::size_t k = 0; k < ps.size(); ++k) {
                const std::string pk = at + "/finite/" + std::to_string(k);
                if (!ps[k].is_array() || ps[k].size() != 2) throw ParseError(pk, "expected [x, y]");
                f.pairs.push_back({bigint_from_json(ps[k][0], pk + "/0"), bigint_from_json(ps[k][1], pk + "/1")});
            }
            a.components.push_back(f);
        } else if (c.contains("recurrent") || c.contains("grid")) {
            const bool rec = c.contains("recurrent");
            const std::string key = rec ? "recurrent" : "grid";
            const json& body = c[key];
            if (!body.is_object() || !body.contains("a") || !body.contains("b") || body.size() != 2)
                throw ParseError(at + "/" + key, "expected sides a and b");
            Side sa = side_from(body["a"], at + "/" + key + "/a"), sb = side_from(body["b"], at + "/" + key + "/b");
            if (rec)
                a.components.push_back(RecurrentComponent{sa, sb});
            else
                a.components.push_back(GridComponent{sa, sb});
        } else {
            throw ParseError(at, "unknown component kind");
        }
    }
    return a;
}

std::string serialize_annotated(const AnnotatedSystem& x) { return annotated_to_json(x).dump(2) + "\n"; }

AnnotatedSystem deserialize_annotated(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
    return annotated_from_json(j);
}

}  // namespace edt0l
