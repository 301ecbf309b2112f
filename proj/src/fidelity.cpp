#include "edt0l/fidelity.hpp"

#include <deque>
#include <functional>
#include <map>
#include <tuple>

namespace edt0l {

namespace {

// (side, letter, ¢ count, $ count); undivided sides use index (0, 0) throughout.
using Key = std::tuple<int, int, int, int>;
using Form = std::map<Key, long>;

struct Idx {
    int c, d;
};

void add(Form& f, const Key& k, long n) {
    if (n == 0) return;
    f[k] += n;
}

Form sum(const Form& a, const Form& b) {
    Form r = a;
    for (const auto& [k, n] : b) add(r, k, n);
    return r;
}

struct Divider {
    const Edt0lSystem& sys;
    int g[2];
    std::size_t work = 0, work_cap;
    bool cut = false;

    // All ways to hand out (C, D) index symbols over the image letters of one occurrence,
    // each image letter taking at most g symbols. Image letters of the same kind are
    // interchangeable, so only how many copies get each index matters.
    void spread(int side, const std::vector<std::pair<int, long>>& kinds, int C, int D, std::vector<Form>& out) {
        std::vector<Idx> types;
        for (int c = 0; c <= g[side]; ++c)
            for (int d = 0; c + d <= g[side]; ++d)
                if (c + d > 0) types.push_back({c, d});
        std::vector<std::vector<long>> pick(kinds.size(), std::vector<long>(types.size(), 0));
        std::function<void(std::size_t, std::size_t, long, int, int)> go = [&](std::size_t kind, std::size_t t,
                                                                              long used, int rc, int rd) {
            if (kind == kinds.size()) {
                if (rc != 0 || rd != 0) return;
                Form f;
                for (std::size_t i = 0; i < kinds.size(); ++i) {
                    long rest = kinds[i].second;
                    for (std::size_t j = 0; j < types.size(); ++j) {
                        add(f, {side, kinds[i].first, types[j].c, types[j].d}, pick[i][j]);
                        rest -= pick[i][j];
                    }
                    add(f, {side, kinds[i].first, 0, 0}, rest);
                }
                out.push_back(f);
                return;
            }
            if (t == types.size()) {
                go(kind + 1, 0, 0, rc, rd);
                return;
            }
            const Idx ty = types[t];
            for (long k = 0; used + k <= kinds[kind].second && k * ty.c <= rc && k * ty.d <= rd; ++k) {
                pick[kind][t] = k;
                go(kind, t + 1, used + k, rc - static_cast<int>(k) * ty.c, rd - static_cast<int>(k) * ty.d);
            }
            pick[kind][t] = 0;
        };
        go(0, 0, 0, C, D);
    }

    // Possible images of a single occurrence of key k; nullopt-like empty vector if dead.
    std::vector<Form> options(const Key& k, const Word& image) {
        const auto [side, letter, c, d] = k;
        std::vector<std::pair<int, long>> kinds;
        for (const Run& r : image.runs()) {
            if (!r.count.fits_slong_p()) throw DomainError("image too long for fidelity mode");
            bool merged = false;
            for (auto& kd : kinds)
                if (kd.first == r.letter) {
                    kd.second += r.count.get_si();
                    merged = true;
                }
            if (!merged) kinds.push_back({r.letter, r.count.get_si()});
        }
        std::vector<Form> out;
        if (g[side] == 1) {
            Form f;
            for (const auto& [l, n] : kinds) add(f, {side, l, 0, 0}, n);
            out.push_back(f);
            return out;
        }
        if (kinds.empty()) {
            if (c == 0 && d == 0) out.push_back({});
            return out;  // a non-empty index on an erased letter becomes the fail symbol
        }
        spread(side, kinds, c, d, out);
        spread(side, kinds, c + g[side] - 1, d + 1, out);
        return out;
    }

    // Every combination of independent choices for n occurrences.
    std::set<Form> occurrences(const std::vector<Form>& opts, long n) {
        std::set<Form> acc{Form{}};
        for (long i = 0; i < n; ++i) {
            std::set<Form> next;
            for (const auto& a : acc)
                for (const auto& o : opts) {
                    if (++work > work_cap) {
                        cut = true;
                        return {};
                    }
                    next.insert(sum(a, o));
                }
            acc.swap(next);
        }
        return acc;
    }
};

}  // namespace

FidelityResult fidelity_divide(const Edt0lSystem& sys, const BigInt& gamma, const BigInt& zeta, const Budget& b,
                               std::size_t max_nodes) {
    if (gamma == 0 || zeta == 0) throw DomainError("division by zero");
    if (babs(gamma) > 3 || babs(zeta) > 3) throw DomainError("fidelity mode needs |gamma|, |zeta| <= 3");
    const auto& st = sys.start.runs();
    if (!sys.separated || st.size() != 3 || sys.name(st[1].letter) != kSep || st[0].count != 1 || st[2].count != 1)
        throw DomainError("fidelity mode needs a separated system");

    Divider dv{sys, {static_cast<int>(babs(gamma).get_si()), static_cast<int>(babs(zeta).get_si())}, 0,
               max_nodes * 64};
    FidelityResult res;

    struct Node {
        int state;
        Form form;
        std::size_t depth;
    };
    Form start;
    add(start, {0, st[0].letter, 0, 0}, 1);
    add(start, {1, st[2].letter, 0, 0}, 1);
    std::set<std::pair<int, Form>> seen{{sys.control.initial, start}};
    std::deque<Node> queue{{sys.control.initial, start, 0}};

    std::map<int, std::vector<const Transition*>> out_edges;
    for (const auto& t : sys.control.transitions) out_edges[t.from].push_back(&t);

    auto emit = [&](const Form& f) {
        BigInt v[2] = {0, 0};
        bool plus[2] = {false, false}, minus[2] = {false, false};
        for (const auto& [k, n] : f) {
            const auto [side, letter, c, d] = k;
            if (!sys.is_terminal(letter)) return;
            bool keep;
            if (dv.g[side] == 1) {
                keep = true;
            } else if (c == 0 && d == 1) {
                keep = true;
            } else if (c == 1 && d == 0) {
                keep = false;
            } else {
                return;  // fail symbol
            }
            if (!keep) continue;
            const std::string& nm = sys.name(letter);
            const bool inv = nm.size() > 3 && nm.compare(nm.size() - 3, 3, "^-1") == 0;
            (inv ? minus : plus)[side] = true;
            v[side] += inv ? -n : n;
        }
        for (int s = 0; s < 2; ++s)
            if (plus[s] && minus[s]) throw DomainError("decode: mixed signs");
        res.pairs.insert({gamma < 0 ? BigInt(-v[0]) : v[0], zeta < 0 ? BigInt(-v[1]) : v[1]});
    };

    while (!queue.empty()) {
        Node nd = std::move(queue.front());
        queue.pop_front();
        ++res.nodes;
        if (sys.control.is_accepting(nd.state)) emit(nd.form);
        if (nd.depth >= b.max_path_len) {
            if (out_edges.count(nd.state)) res.complete = false;
            continue;
        }
        for (const Transition* t : out_edges[nd.state]) {
            const Endomorphism& e = sys.endos.at(t->endo);
            std::set<Form> acc{Form{}};
            bool dead = false;
            for (const auto& [k, n] : nd.form) {
                const int letter = std::get<1>(k);
                const Word* img = e.image(letter);
                Word fixed;
                fixed.push(letter);
                auto opts = dv.options(k, img ? *img : fixed);
                if (opts.empty()) {
                    dead = true;
                    break;
                }
                auto occ = dv.occurrences(opts, n);
                if (dv.cut) break;
                std::set<Form> next;
                for (const auto& a : acc)
                    for (const auto& o : occ) {
                        if (++dv.work > dv.work_cap) {
                            dv.cut = true;
                            break;
                        }
                        next.insert(sum(a, o));
                    }
                acc.swap(next);
                if (dv.cut) break;
            }
            if (dv.cut) {
                res.complete = false;
                dv.cut = false;
                continue;
            }
            if (dead) continue;
            for (const auto& f : acc) {
                long len = 0;
                for (const auto& [k, n] : f) len += n;
                if (static_cast<std::size_t>(len) > b.max_form_len) {
                    res.complete = false;
                    continue;
                }
                if (seen.size() >= max_nodes) {
                    res.complete = false;
                    continue;
                }
                if (seen.insert({t->to, f}).second) queue.push_back({t->to, f, nd.depth + 1});
            }
        }
    }
    return res;
}

}  // namespace edt0l
