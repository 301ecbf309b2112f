#include "edt0l/ops.hpp"

#include <algorithm>

namespace edt0l {

namespace {

const char* kAux[3] = {"_p", "_q", "_r"};

Word remap(const Word& w, const std::vector<int>& ids) {
    Word out;
    for (const Run& r : w.runs()) out.push(ids.at(r.letter), r.count);
    return out;
}

std::string fresh_name(const Edt0lSystem& sys, std::string base) {
    while (sys.find(base) >= 0) base += "'";
    return base;
}

std::string fresh_endo(const Edt0lSystem& sys, std::string base) {
    while (sys.endos.count(base)) base += "'";
    return base;
}

std::pair<int, int> start_sides(const Edt0lSystem& sys) {
    const auto& r = sys.start.runs();
    if (!sys.separated || r.size() != 3 || sys.name(r[1].letter) != kSep)
        throw ConstructionError("expected a #-separated system");
    return {r[0].letter, r[2].letter};
}

}  // namespace

int RecurrenceSpec::sign() const {
    for (const auto& s : seeds)
        if (s < 0) return -1;
    return 1;
}

std::vector<std::string> RecurrenceSpec::violations() const {
    std::vector<std::string> v;
    for (const auto& row : matrix)
        for (const auto& e : row)
            if (e < 0) v.push_back("negative matrix entry");
    for (const auto& w : weights)
        if (w < 0) v.push_back("negative weight");
    bool pos = false, neg = false;
    for (const auto& s : seeds) {
        if (s > 0) pos = true;
        if (s < 0) neg = true;
    }
    if (pos && neg) v.push_back("seeds of mixed sign");
    return v;
}

Vec3 RecurrenceSpec::step(const Vec3& s) const {
    Vec3 r{0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (matrix[i][j] != 0 && s[j] != 0) r[i] += matrix[i][j] * s[j];
    return r;
}

BigInt RecurrenceSpec::output(const Vec3& s) const { return weights[0] * s[0] + weights[1] * s[1] + weights[2] * s[2]; }

Vec3 RecurrenceSpec::state_at(std::size_t n) const {
    Vec3 s = seeds;
    for (std::size_t k = 0; k < n; ++k) s = step(s);
    return s;
}

std::vector<BigInt> RecurrenceSpec::terms(std::size_t count) const {
    std::vector<BigInt> out;
    Vec3 s = seeds;
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(output(s));
        s = step(s);
    }
    return out;
}

bool RecurrenceSpec::monotone() const {
    for (int j = 0; j < 3; ++j) {
        BigInt c = 0;
        for (int i = 0; i < 3; ++i) c += weights[i] * matrix[i][j];
        if (c < weights[j]) return false;
    }
    return true;
}

Mat3 identity3() {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = i == j ? 1 : 0;
    return m;
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            c[i][j] = 0;
            for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Mat3 mat_pow(const Mat3& m, std::size_t e) {
    Mat3 r = identity3(), base = m;
    while (e) {
        if (e & 1) r = mat_mul(r, base);
        base = mat_mul(base, base);
        e >>= 1;
    }
    return r;
}

void add_recurrence_side(Edt0lSystem& sys, const RecurrenceSpec& spec, const std::string& base,
                         const std::string& start_letter, const std::string& theta, const std::string& phi,
                         const std::string& psi) {
    auto v = spec.violations();
    if (!v.empty()) throw ConstructionError("recurrence spec: " + v.front());
    sys.intern(base, true);
    sys.intern(inverse_name(base), true);
    std::string aux[3], inv[3];
    for (int j = 0; j < 3; ++j) {
        aux[j] = base + kAux[j];
        inv[j] = inverse_name(aux[j]);
        sys.intern(aux[j]);
        sys.intern(inv[j]);
    }
    sys.intern(start_letter);

    Word seed;
    for (int j = 0; j < 3; ++j) seed.append(signed_power(sys, aux[j], spec.seeds[j], false));
    sys.set_image(theta, start_letter, seed);

    for (int j = 0; j < 3; ++j) {
        Word up, down;
        for (int i = 0; i < 3; ++i) {
            up.push(sys.id(aux[i]), spec.matrix[i][j]);
            down.push(sys.id(inv[i]), spec.matrix[i][j]);
        }
        sys.set_image(phi, aux[j], up);
        sys.set_image(phi, inv[j], down);
        sys.set_image(psi, aux[j], sys.power(base, spec.weights[j]));
        sys.set_image(psi, inv[j], sys.power(inverse_name(base), spec.weights[j]));
    }
}

Edt0lSystem build_recurrence_system(const RecurrenceSpec& spec, const std::string& letter) {
    Edt0lSystem sys;
    const std::string bottom = "⊥";
    add_recurrence_side(sys, spec, letter, bottom, "theta", "phi", "psi");
    sys.start = sys.word({bottom});
    sys.control.states = 3;
    sys.control.add(0, "theta", 1);
    sys.control.add(1, "phi", 1);
    sys.control.add(1, "psi", 2);
    sys.control.accepting = {2};
    return sys;
}

Edt0lSystem rename_apart(const Edt0lSystem& sys, const std::string& suffix, const std::set<std::string>& keep) {
    Edt0lSystem r;
    for (const auto& l : sys.alphabet) {
        if (keep.count(l.name))
            r.alphabet.push_back(l);
        else
            r.alphabet.push_back({l.name + suffix, false});
    }
    r.start = sys.start;
    for (const auto& [eid, e] : sys.endos) {
        Endomorphism& ne = r.endo(eid + suffix);
        ne.images = e.images;
    }
    r.control = sys.control;
    for (auto& t : r.control.transitions) t.endo += suffix;
    r.separated = sys.separated;
    return r;
}

int merge_into(Edt0lSystem& dst, const Edt0lSystem& src) {
    std::vector<int> ids;
    for (const auto& l : src.alphabet) ids.push_back(dst.intern(l.name, l.terminal));
    for (const auto& [eid, e] : src.endos) {
        if (dst.endos.count(eid)) throw ConstructionError("endomorphism id collision: " + eid);
        Endomorphism& ne = dst.endo(eid);
        for (const auto& [l, img] : e.images) ne.images[ids.at(l)] = remap(img, ids);
    }
    int offset = dst.control.states;
    dst.control.states += src.control.states;
    for (const auto& t : src.control.transitions) dst.control.add(t.from + offset, t.endo, t.to + offset);
    return offset;
}

namespace {

std::vector<int> ids_in(const Edt0lSystem& dst, const Edt0lSystem& src) {
    std::vector<int> ids;
    for (const auto& l : src.alphabet) ids.push_back(dst.id(l.name));
    return ids;
}

}  // namespace

Edt0lSystem concatenate_systems(const Edt0lSystem& x, const Edt0lSystem& y) {
    // Both operands are fully renamed so neither can rewrite the other's letters; a final
    // endomorphism restores the terminal names.
    Edt0lSystem X = rename_apart(x, "~1", {}), Y = rename_apart(y, "~2", {});
    Edt0lSystem r;
    r.control.states = 0;
    for (const auto* s : {&x, &y})
        for (const auto& l : s->alphabet)
            if (l.terminal) r.intern(l.name, true);
    int ox = merge_into(r, X), oy = merge_into(r, Y);
    r.start = remap(X.start, ids_in(r, X));
    r.start.append(remap(Y.start, ids_in(r, Y)));
    r.control.initial = ox + X.control.initial;

    std::vector<int> mid;
    for (int f : X.control.accepting) {
        for (const auto& t : Y.control.transitions)
            if (t.from == Y.control.initial) r.control.add(ox + f, t.endo, oy + t.to);
        if (Y.control.is_accepting(Y.control.initial)) mid.push_back(ox + f);
    }
    for (int f : Y.control.accepting) mid.push_back(oy + f);

    const std::string rho = fresh_endo(r, "rho");
    Endomorphism& e = r.endo(rho);
    for (const auto* s : {&x, &y}) {
        const std::string suffix = s == &x ? "~1" : "~2";
        for (const auto& l : s->alphabet)
            if (l.terminal) e.images[r.id(l.name + suffix)] = r.word({l.name});
    }
    int fin = r.control.add_state();
    for (int s : mid) r.control.add(s, rho, fin);
    r.control.accepting = {fin};
    return r;
}

Edt0lSystem star_system(const Edt0lSystem& x) {
    Edt0lSystem X = rename_apart(x, "~1", {});
    Edt0lSystem r;
    r.control.states = 0;
    for (const auto& l : x.alphabet)
        if (l.terminal) r.intern(l.name, true);
    const std::string S = fresh_name(r, "S"), F = fresh_name(r, "F");
    r.intern(S);
    r.intern(F);
    int home = r.control.add_state();
    int ox = merge_into(r, X);
    int fin = r.control.add_state();
    r.start = r.word({S});

    // sigma opens a fresh copy before S; rho freezes a finished copy (leftover
    // non-terminals become the dead letter F); kappa closes the word.
    const std::string sigma = fresh_endo(r, "sigma"), rho = fresh_endo(r, "rho"), kappa = fresh_endo(r, "kappa");
    Word open = remap(X.start, ids_in(r, X));
    open.push(r.id(S));
    r.endo(sigma).images[r.id(S)] = open;
    Endomorphism& freeze = r.endo(rho);
    for (const auto& l : x.alphabet)
        freeze.images[r.id(l.name + "~1")] = l.terminal ? r.word({l.name}) : r.word({F});
    r.endo(kappa).images[r.id(S)] = Word{};

    r.control.initial = home;
    r.control.add(home, sigma, ox + X.control.initial);
    for (int f : X.control.accepting) r.control.add(ox + f, rho, home);
    r.control.add(home, kappa, fin);
    r.control.accepting = {fin};
    return r;
}

Edt0lSystem map_homomorphism(const Edt0lSystem& x, const std::map<std::string, std::vector<std::string>>& h) {
    Edt0lSystem X = rename_apart(x, "~1", {});
    Edt0lSystem r;
    r.control.states = 0;
    for (const auto& [src, img] : h)
        for (const auto& n : img) r.intern(n, true);
    int ox = merge_into(r, X);
    r.start = remap(X.start, ids_in(r, X));
    r.control.initial = ox + X.control.initial;
    const std::string eid = fresh_endo(r, "hom");
    Endomorphism& e = r.endo(eid);
    for (const auto& l : x.alphabet) {
        if (!l.terminal) continue;
        auto it = h.find(l.name);
        if (it == h.end()) throw ConstructionError("homomorphism undefined on terminal " + l.name);
        e.images[r.id(l.name + "~1")] = r.word(it->second);
    }
    int fin = r.control.add_state();
    for (int f : X.control.accepting) r.control.add(ox + f, eid, fin);
    r.control.accepting = {fin};
    return r;
}

Edt0lSystem union_systems(const std::vector<Edt0lSystem>& xs) {
    std::set<std::string> keep;
    for (const auto& x : xs)
        for (const auto& l : x.alphabet)
            if (l.terminal) keep.insert(l.name);
    Edt0lSystem r;
    r.control.states = 0;
    for (const auto& n : keep) r.intern(n, true);
    const std::string S = fresh_name(r, "S");
    r.intern(S);
    r.start = r.word({S});
    int home = r.control.add_state();
    r.control.initial = home;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Edt0lSystem X = rename_apart(xs[i], "~" + std::to_string(i + 1), keep);
        int o = merge_into(r, X);
        const std::string theta = fresh_endo(r, "theta" + std::to_string(i + 1));
        r.endo(theta).images[r.id(S)] = remap(X.start, ids_in(r, X));
        r.control.add(home, theta, o + X.control.initial);
        for (int f : X.control.accepting) r.control.accepting.push_back(o + f);
    }
    return r;
}

Edt0lSystem empty_separated_system() {
    Edt0lSystem s;
    s.intern("⊥1");
    s.intern(kSep, true);
    s.intern("⊥2");
    s.start = s.word({"⊥1", kSep, "⊥2"});
    s.separated = true;
    return s;
}

Edt0lSystem union_separated_systems(const std::vector<Edt0lSystem>& xs) {
    for (const auto& x : xs) start_sides(x);
    if (xs.empty()) return empty_separated_system();
    if (xs.size() == 1) return xs[0];

    std::set<std::string> keep{kSep};
    for (const auto& x : xs)
        for (const auto& l : x.alphabet)
            if (l.terminal) keep.insert(l.name);
    Edt0lSystem r;
    r.control.states = 0;
    r.separated = true;
    for (const auto& n : keep) r.intern(n, true);

    const std::size_t n = xs.size();
    std::vector<std::string> left(n - 1), right(n - 1);
    for (std::size_t l = 0; l + 1 < n; ++l) {
        left[l] = fresh_name(r, "⊥" + std::to_string(l));
        r.intern(left[l]);
        right[l] = fresh_name(r, "$" + std::to_string(l));
        r.intern(right[l]);
    }
    std::vector<int> level(n - 1);
    for (auto& s : level) s = r.control.add_state();
    r.control.initial = level[0];
    r.start = r.word({left[0], kSep, right[0]});

    std::vector<std::pair<int, int>> sides(n);
    std::vector<int> init(n);
    for (std::size_t i = 0; i < n; ++i) {
        Edt0lSystem X = rename_apart(xs[i], "~" + std::to_string(i + 1), keep);
        int o = merge_into(r, X);
        auto [lt, rt] = start_sides(X);
        auto ids = ids_in(r, X);
        sides[i] = {ids[lt], ids[rt]};
        init[i] = o + X.control.initial;
        for (int f : X.control.accepting) r.control.accepting.push_back(o + f);
    }
    for (std::size_t l = 0; l + 1 < n; ++l) {
        const std::string t1 = fresh_endo(r, "dispatch" + std::to_string(l) + "a");
        Endomorphism& e1 = r.endo(t1);
        e1.images[r.id(left[l])] = Word{sides[l].first};
        e1.images[r.id(right[l])] = Word{sides[l].second};
        r.control.add(level[l], t1, init[l]);

        const std::string t2 = fresh_endo(r, "dispatch" + std::to_string(l) + "b");
        Endomorphism& e2 = r.endo(t2);
        if (l + 2 < n) {
            e2.images[r.id(left[l])] = r.word({left[l + 1]});
            e2.images[r.id(right[l])] = r.word({right[l + 1]});
            r.control.add(level[l], t2, level[l + 1]);
        } else {
            e2.images[r.id(left[l])] = Word{sides[n - 1].first};
            e2.images[r.id(right[l])] = Word{sides[n - 1].second};
            r.control.add(level[l], t2, init[n - 1]);
        }
    }
    return r;
}

Edt0lSystem finite_pair_system(const std::vector<Pair>& in, const std::string& a, const std::string& b) {
    std::vector<Pair> pairs = in;
    std::sort(pairs.begin(), pairs.end(), PairLess());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    Edt0lSystem s = empty_separated_system();
    for (const auto& n : {a, inverse_name(a), b, inverse_name(b)}) s.intern(n, true);
    s.control.states = 2;
    s.control.accepting = {1};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string eid = "f" + std::to_string(i);
        s.set_image(eid, "⊥1", signed_power(s, a, pairs[i].first, true));
        s.set_image(eid, "⊥2", signed_power(s, b, pairs[i].second, true));
        s.control.add(0, eid, 1);
    }
    return s;
}

Edt0lSystem single_word_system(const std::vector<std::string>& word, bool accept) {
    Edt0lSystem s;
    for (const auto& n : word) s.intern(n, true);
    if (accept) {
        s.start = s.word(word);
        s.control.accepting = {0};
    } else {
        s.intern("S");
        s.start = s.word({"S"});
    }
    return s;
}

}  // namespace edt0l
