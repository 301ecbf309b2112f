#include "edt0l/core.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace edt0l {

void Word::push(int letter, const BigInt& count) {
    if (count == 0) return;
    if (count < 0) throw std::invalid_argument("negative run length");
    if (!runs_.empty() && runs_.back().letter == letter)
        runs_.back().count += count;
    else
        runs_.push_back({letter, count});
}

void Word::append(const Word& w) {
    for (const Run& r : w.runs_) push(r.letter, r.count);
}

BigInt Word::length() const {
    BigInt n = 0;
    for (const Run& r : runs_) n += r.count;
    return n;
}

bool Word::contains(int letter) const {
    return std::any_of(runs_.begin(), runs_.end(), [&](const Run& r) { return r.letter == letter; });
}

std::vector<int> Word::flatten(std::size_t cap) const {
    if (length() > BigInt(static_cast<unsigned long>(cap))) throw std::length_error("word too long to flatten");
    std::vector<int> out;
    for (const Run& r : runs_) out.insert(out.end(), r.count.get_ui(), r.letter);
    return out;
}

Word Word::from_flat(const std::vector<int>& letters) {
    Word w;
    for (int l : letters) w.push(l);
    return w;
}

bool RationalControl::is_accepting(int s) const {
    return std::find(accepting.begin(), accepting.end(), s) != accepting.end();
}

int Edt0lSystem::find(const std::string& n) const {
    if (index_.size() != alphabet.size()) {
        index_.clear();
        for (std::size_t i = 0; i < alphabet.size(); ++i) index_.emplace(alphabet[i].name, static_cast<int>(i));
        if (index_.size() != alphabet.size()) {  // duplicate names: fall back to a scan
            index_.clear();
            for (std::size_t i = 0; i < alphabet.size(); ++i)
                if (alphabet[i].name == n) return static_cast<int>(i);
            return -1;
        }
    }
    auto it = index_.find(n);
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> Edt0lSystem::terminals() const {
    std::vector<int> t;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i].terminal) t.push_back(static_cast<int>(i));
    return t;
}

int Edt0lSystem::id(const std::string& n) const {
    int i = find(n);
    if (i < 0) throw DomainError("unknown letter " + n);
    return i;
}

int Edt0lSystem::intern(const std::string& n, bool terminal) {
    int i = find(n);
    if (i >= 0) {
        if (terminal) alphabet[i].terminal = true;
        return i;
    }
    alphabet.push_back({n, terminal});
    int id = static_cast<int>(alphabet.size()) - 1;
    if (index_.size() + 1 == alphabet.size()) index_.emplace(n, id);
    return id;
}

Word Edt0lSystem::word(const std::vector<std::string>& names) const {
    Word w;
    for (const auto& n : names) w.push(id(n));
    return w;
}

Word Edt0lSystem::power(const std::string& n, const BigInt& count) const {
    Word w;
    w.push(id(n), count);
    return w;
}

Endomorphism& Edt0lSystem::endo(const std::string& eid) {
    auto& e = endos[eid];
    e.id = eid;
    return e;
}

void Edt0lSystem::set_image(const std::string& eid, const std::string& letter, const Word& image) {
    endo(eid).images[id(letter)] = image;
}

Word signed_power(Edt0lSystem& sys, const std::string& base, const BigInt& n, bool terminal) {
    Word w;
    if (n > 0) w.push(sys.intern(base, terminal), n);
    if (n < 0) w.push(sys.intern(inverse_name(base), terminal), -n);
    return w;
}

Word apply_endomorphism(const Edt0lSystem& sys, const Endomorphism& e, const Word& w) {
    Word out;
    for (const Run& r : w.runs()) {
        if (r.letter < 0 || r.letter >= static_cast<int>(sys.alphabet.size()))
            throw DomainError("letter outside the extended alphabet");
        const Word* img = e.image(r.letter);
        if (!img) {
            out.push(r.letter, r.count);
        } else if (r.count == 1) {
            out.append(*img);
        } else if (img->runs().size() == 1) {
            out.push(img->runs()[0].letter, img->runs()[0].count * r.count);
        } else {
            if (r.count > 1000000) throw DomainError("image of a long run is not representable compactly");
            for (unsigned long k = 0; k < r.count.get_ui(); ++k) out.append(*img);
        }
    }
    return out;
}

namespace {

struct FormKey {
    int state;
    std::vector<int> form;
    bool operator==(const FormKey& o) const { return state == o.state && form == o.form; }
};

struct FormKeyHash {
    std::size_t operator()(const FormKey& k) const {
        std::size_t h = std::hash<int>()(k.state) * 0x9e3779b97f4a7c15ULL;
        for (int l : k.form) h = (h ^ static_cast<std::size_t>(l + 1)) * 0x100000001b3ULL;
        return h;
    }
};

// Per-endomorphism images, flattened once. `len` is the image length, or -1 when the
// image alone is longer than the form cap.
struct FlatEndo {
    std::vector<std::vector<int>> img;
    std::vector<long long> len;
};

}  // namespace

Enumeration enumerate_language(const Edt0lSystem& sys, const Budget& b) {
    Enumeration res;
    const std::size_t nl = sys.alphabet.size();
    const BigInt cap(static_cast<unsigned long>(b.max_form_len));

    std::unordered_map<std::string, std::size_t> endo_index;
    std::vector<FlatEndo> flat;
    for (const auto& [eid, e] : sys.endos) {
        FlatEndo f;
        f.img.resize(nl);
        f.len.assign(nl, 1);
        for (std::size_t l = 0; l < nl; ++l) {
            const Word* w = e.image(static_cast<int>(l));
            if (!w) {
                f.img[l] = {static_cast<int>(l)};
                continue;
            }
            BigInt n = w->length();
            if (n > cap) {
                f.len[l] = -1;
            } else {
                f.img[l] = w->flatten();
                f.len[l] = static_cast<long long>(f.img[l].size());
            }
        }
        endo_index[eid] = flat.size();
        flat.push_back(std::move(f));
    }

    std::vector<std::vector<std::pair<std::size_t, int>>> adj(sys.control.states);
    for (const auto& t : sys.control.transitions) {
        auto it = endo_index.find(t.endo);
        if (it == endo_index.end()) throw DomainError("unknown endomorphism " + t.endo);
        adj.at(t.from).push_back({it->second, t.to});
    }
    std::vector<char> accepting(sys.control.states, 0);
    for (int s : sys.control.accepting) accepting.at(s) = 1;

    if (sys.start.length() > cap) {
        res.complete = false;
        return res;
    }

    std::set<std::vector<int>> found;
    std::unordered_set<FormKey, FormKeyHash> seen;
    std::vector<FormKey> frontier{{sys.control.initial, sys.start.flatten()}};
    seen.insert(frontier[0]);

    for (std::size_t depth = 0; !frontier.empty(); ++depth) {
        std::vector<FormKey> next;
        for (const FormKey& node : frontier) {
            if (accepting[node.state]) {
                bool all_terminal = std::all_of(node.form.begin(), node.form.end(),
                                                [&](int l) { return sys.alphabet[l].terminal; });
                if (all_terminal) {
                    found.insert(node.form);
                    if (found.size() >= b.max_words) {
                        res.complete = false;
                        goto done;
                    }
                }
            }
            if (depth >= b.max_path_len) {
                if (!adj[node.state].empty()) res.complete = false;
                continue;
            }
            for (const auto& [ei, to] : adj[node.state]) {
                const FlatEndo& f = flat[ei];
                long long total = 0;
                bool over = false;
                for (int l : node.form) {
                    if (f.len[l] < 0) { over = true; break; }
                    total += f.len[l];
                    if (total > static_cast<long long>(b.max_form_len)) { over = true; break; }
                }
                if (over) {
                    res.complete = false;
                    continue;
                }
                FormKey child{to, {}};
                child.form.reserve(static_cast<std::size_t>(total));
                for (int l : node.form) child.form.insert(child.form.end(), f.img[l].begin(), f.img[l].end());
                if (seen.insert(child).second) next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
done:
    std::vector<std::pair<std::vector<std::string>, std::vector<int>>> keyed;
    for (const auto& w : found) {
        std::vector<std::string> names;
        for (int l : w) names.push_back(sys.alphabet[l].name);
        keyed.push_back({std::move(names), w});
    }
    std::sort(keyed.begin(), keyed.end());
    for (auto& [names, w] : keyed) res.words.push_back(Word::from_flat(w));
    return res;
}

namespace {

std::vector<BigInt> decode_runs(const std::vector<std::pair<std::string, BigInt>>& runs,
                                const std::vector<std::string>& tmpl) {
    // A two-entry template is the pair shape a^x # b^y; other templates are juxtaposed blocks.
    const bool need_sep = tmpl.size() == 2;
    std::vector<BigInt> out;
    std::size_t pos = 0;
    for (std::size_t t = 0; t < tmpl.size(); ++t) {
        if (t > 0 && need_sep) {
            if (pos >= runs.size() || runs[pos].first != kSep || runs[pos].second != 1)
                throw DomainError("decode: missing separator");
            ++pos;
        }
        const std::string& base = tmpl[t];
        const std::string inv = inverse_name(base);
        BigInt value = 0;
        int sign = 0;
        while (pos < runs.size() && (runs[pos].first == base || runs[pos].first == inv)) {
            int s = runs[pos].first == base ? 1 : -1;
            if (sign != 0 && s != sign) throw DomainError("decode: mixed signs in block " + base);
            sign = s;
            value += s * runs[pos].second;
            ++pos;
        }
        out.push_back(value);
    }
    if (pos != runs.size()) throw DomainError("decode: stray letter " + runs[pos].first);
    return out;
}

}  // namespace

std::vector<BigInt> decode_exponents(const Edt0lSystem& sys, const Word& w, const std::vector<std::string>& tmpl) {
    std::vector<std::pair<std::string, BigInt>> runs;
    for (const Run& r : w.runs()) runs.push_back({sys.name(r.letter), r.count});
    return decode_runs(runs, tmpl);
}

std::vector<BigInt> decode_exponents(const std::vector<std::string>& names, const std::vector<std::string>& tmpl) {
    std::vector<std::pair<std::string, BigInt>> runs;
    for (const auto& n : names) {
        if (!runs.empty() && runs.back().first == n && n != kSep)
            runs.back().second += 1;
        else
            runs.push_back({n, 1});
    }
    return decode_runs(runs, tmpl);
}

std::vector<std::string> validate_system(const Edt0lSystem& sys) {
    std::vector<std::string> v;
    const int nl = static_cast<int>(sys.alphabet.size());
    auto in_alpha = [&](int l) { return l >= 0 && l < nl; };
    auto word_ok = [&](const Word& w) {
        return std::all_of(w.runs().begin(), w.runs().end(), [&](const Run& r) { return in_alpha(r.letter); });
    };

    std::set<std::string> names;
    for (const auto& l : sys.alphabet) {
        if (l.name.empty()) v.push_back("empty letter name");
        if (!names.insert(l.name).second) v.push_back("duplicate letter " + l.name);
    }
    if (!word_ok(sys.start)) v.push_back("start word uses a letter outside the extended alphabet");

    for (const auto& [eid, e] : sys.endos) {
        if (e.id != eid) v.push_back("endomorphism key " + eid + " does not match id " + e.id);
        for (const auto& [l, img] : e.images) {
            if (!in_alpha(l)) v.push_back("endomorphism " + eid + " maps an unknown letter");
            if (!word_ok(img)) v.push_back("endomorphism " + eid + " has an image outside the extended alphabet");
        }
    }

    const auto& c = sys.control;
    if (c.states < 1) v.push_back("control has no states");
    if (c.initial < 0 || c.initial >= c.states) v.push_back("initial state out of range");
    for (int s : c.accepting)
        if (s < 0 || s >= c.states) v.push_back("accepting state " + std::to_string(s) + " out of range");
    std::set<std::string> reported;
    for (const auto& t : c.transitions) {
        if (t.from < 0 || t.from >= c.states || t.to < 0 || t.to >= c.states)
            v.push_back("transition on " + t.endo + " has a state out of range");
        if (!sys.endos.count(t.endo) && reported.insert(t.endo).second) v.push_back("unknown endomorphism " + t.endo);
    }

    if (sys.separated) {
        int sep = sys.find(kSep);
        const auto& r = sys.start.runs();
        bool shape = sep >= 0 && r.size() == 3 && r[1].letter == sep && r[0].letter != sep && r[2].letter != sep &&
                     r[0].count == 1 && r[1].count == 1 && r[2].count == 1;
        if (!shape) v.push_back("start word is not of the form x # y");
        if (sep >= 0 && !sys.alphabet[sep].terminal) v.push_back("separator is not terminal");
        if (sep >= 0) {
            for (const auto& [eid, e] : sys.endos) {
                for (const auto& [l, img] : e.images) {
                    if (l == sep) {
                        if (!(img.runs().size() == 1 && img.runs()[0].letter == sep && img.runs()[0].count == 1))
                            v.push_back("separator not fixed by " + eid);
                    } else if (img.contains(sep)) {
                        v.push_back("endomorphism " + eid + " puts the separator in the image of " +
                                    (in_alpha(l) ? sys.alphabet[l].name : std::string("?")));
                    }
                }
            }
        }
    }
    return v;
}

std::vector<std::string> word_names(const Edt0lSystem& sys, const Word& w, std::size_t cap) {
    std::vector<std::string> out;
    for (int l : w.flatten(cap)) out.push_back(sys.name(l));
    return out;
}

std::string format_word(const Edt0lSystem& sys, const Word& w) {
    std::string s;
    for (const Run& r : w.runs()) {
        if (r.count <= 16) {
            for (unsigned long k = 0; k < r.count.get_ui(); ++k) {
                if (!s.empty()) s += ' ';
                s += sys.name(r.letter);
            }
        } else {
            if (!s.empty()) s += ' ';
            s += "(" + sys.name(r.letter) + ")^" + str(r.count);
        }
    }
    return s;
}

}  // namespace edt0l
