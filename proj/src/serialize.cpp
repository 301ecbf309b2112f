#include "edt0l/serialize.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace edt0l {

using nlohmann::json;

namespace {

// Runs at most this long are written out letter by letter.
constexpr unsigned long kExpandRun = 16;

void require_keys(const json& j, const std::string& where, const std::set<std::string>& allowed,
                  const std::set<std::string>& required) {
    if (!j.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ParseError(where + "/" + it.key(), "unknown field");
    for (const auto& k : required)
        if (!j.contains(k)) throw ParseError(where + "/" + k, "missing field");
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where, "expected a string");
    return j.get<std::string>();
}

int state_index(const std::map<std::string, int>& states, const json& j, const std::string& where) {
    std::string key;
    if (j.is_number_integer())
        key = std::to_string(j.get<long long>());
    else if (j.is_string())
        key = j.get<std::string>();
    else
        throw ParseError(where, "expected a state");
    auto it = states.find(key);
    if (it == states.end()) throw ParseError(where, "unknown state " + key);
    return it->second;
}

}  // namespace

json bigint_to_json(const BigInt& v) {
    if (fits_i64(v)) return json(to_i64(v));
    return json(str(v));
}

BigInt bigint_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        try {
            return parse_bigint(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ParseError(where, e.what());
        }
    }
    throw ParseError(where, "expected an integer");
}

json word_to_json(const Edt0lSystem& sys, const Word& w) {
    json a = json::array();
    for (const Run& r : w.runs()) {
        if (r.count <= kExpandRun) {
            for (unsigned long k = 0; k < r.count.get_ui(); ++k) a.push_back(sys.name(r.letter));
        } else {
            a.push_back(json::array({sys.name(r.letter), bigint_to_json(r.count)}));
        }
    }
    return a;
}

Word word_from_json(const Edt0lSystem& sys, const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array of letters");
    Word w;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "/" + std::to_string(i);
        const json& e = j[i];
        std::string name;
        BigInt count = 1;
        if (e.is_string()) {
            name = e.get<std::string>();
        } else if (e.is_array() && e.size() == 2) {
            name = as_string(e[0], at + "/0");
            count = bigint_from_json(e[1], at + "/1");
            if (count < 1) throw ParseError(at + "/1", "run length must be positive");
        } else {
            throw ParseError(at, "expected a letter name or [name, count]");
        }
        int id = sys.find(name);
        if (id < 0) throw ParseError(at, "unknown letter " + name);
        w.push(id, count);
    }
    return w;
}

Edt0lSystem canonicalize_states(const Edt0lSystem& sys) {
    const auto& c = sys.control;
    std::vector<std::vector<const Transition*>> out(c.states);
    for (const auto& t : c.transitions)
        if (t.from >= 0 && t.from < c.states) out[t.from].push_back(&t);
    for (auto& v : out)
        std::sort(v.begin(), v.end(), [](const Transition* a, const Transition* b) {
            return std::tie(a->endo, a->to) < std::tie(b->endo, b->to);
        });

    std::vector<int> order, rename(c.states, -1);
    std::deque<int> queue;
    if (c.initial >= 0 && c.initial < c.states) {
        queue.push_back(c.initial);
        rename[c.initial] = 0;
        order.push_back(c.initial);
    }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (const Transition* t : out[s]) {
            if (t->to >= 0 && t->to < c.states && rename[t->to] < 0) {
                rename[t->to] = static_cast<int>(order.size());
                order.push_back(t->to);
                queue.push_back(t->to);
            }
        }
    }
    for (int s = 0; s < c.states; ++s)
        if (rename[s] < 0) {
            rename[s] = static_cast<int>(order.size());
            order.push_back(s);
        }

    Edt0lSystem r = sys;
    r.control.initial = c.initial >= 0 && c.initial < c.states ? rename[c.initial] : c.initial;
    r.control.accepting.clear();
    for (int s : c.accepting) r.control.accepting.push_back(s >= 0 && s < c.states ? rename[s] : s);
    std::sort(r.control.accepting.begin(), r.control.accepting.end());
    r.control.accepting.erase(std::unique(r.control.accepting.begin(), r.control.accepting.end()),
                              r.control.accepting.end());
    r.control.transitions.clear();
    for (const auto& t : c.transitions) {
        auto m = [&](int s) { return s >= 0 && s < c.states ? rename[s] : s; };
        r.control.transitions.push_back({m(t.from), t.endo, m(t.to)});
    }
    std::sort(r.control.transitions.begin(), r.control.transitions.end(),
              [](const Transition& a, const Transition& b) {
                  return std::tie(a.from, a.endo, a.to) < std::tie(b.from, b.endo, b.to);
              });
    r.control.transitions.erase(std::unique(r.control.transitions.begin(), r.control.transitions.end()),
                                r.control.transitions.end());
    return r;
}

json system_to_json(const Edt0lSystem& in) {
    Edt0lSystem sys = canonicalize_states(in);
    json j;
    json terminal = json::array(), extended = json::array();
    for (const auto& l : sys.alphabet) {
        extended.push_back(l.name);
        if (l.terminal) terminal.push_back(l.name);
    }
    j["terminal"] = terminal;
    j["extended"] = extended;
    j["start"] = word_to_json(sys, sys.start);
    json endos = json::object();
    for (const auto& [eid, e] : sys.endos) {
        json m = json::object();
        for (const auto& [l, img] : e.images) m[sys.name(l)] = word_to_json(sys, img);
        endos[eid] = m;
    }
    j["endomorphisms"] = endos;
    json states = json::array();
    for (int s = 0; s < sys.control.states; ++s) states.push_back(s);
    json trans = json::array();
    for (const auto& t : sys.control.transitions) trans.push_back(json::array({t.from, t.endo, t.to}));
    j["control"] = {{"states", states},
                    {"initial", sys.control.initial},
                    {"accepting", sys.control.accepting},
                    {"transitions", trans}};
    j["separated"] = sys.separated;
    return j;
}

Edt0lSystem system_from_json(const json& j, const std::string& where) {
    static const std::set<std::string> fields = {"terminal", "extended", "start", "endomorphisms", "control",
                                                 "separated"};
    require_keys(j, where, fields, fields);
    Edt0lSystem sys;

    const json& ext = j["extended"];
    if (!ext.is_array()) throw ParseError(where + "/extended", "expected an array");
    for (std::size_t i = 0; i < ext.size(); ++i) {
        std::string n = as_string(ext[i], where + "/extended/" + std::to_string(i));
        if (sys.find(n) >= 0) throw ParseError(where + "/extended/" + std::to_string(i), "duplicate letter " + n);
        sys.alphabet.push_back({n, false});
    }
    const json& term = j["terminal"];
    if (!term.is_array()) throw ParseError(where + "/terminal", "expected an array");
    for (std::size_t i = 0; i < term.size(); ++i) {
        std::string at = where + "/terminal/" + std::to_string(i);
        std::string n = as_string(term[i], at);
        int id = sys.find(n);
        if (id < 0) throw ParseError(at, "terminal letter " + n + " is not in the extended alphabet");
        sys.alphabet[id].terminal = true;
    }

    sys.start = word_from_json(sys, j["start"], where + "/start");

    const json& endos = j["endomorphisms"];
    if (!endos.is_object()) throw ParseError(where + "/endomorphisms", "expected an object");
    for (auto it = endos.begin(); it != endos.end(); ++it) {
        const std::string at = where + "/endomorphisms/" + it.key();
        if (!it.value().is_object()) throw ParseError(at, "expected an object");
        Endomorphism& e = sys.endo(it.key());
        for (auto im = it.value().begin(); im != it.value().end(); ++im) {
            int l = sys.find(im.key());
            if (l < 0) throw ParseError(at + "/" + im.key(), "unknown letter " + im.key());
            e.images[l] = word_from_json(sys, im.value(), at + "/" + im.key());
        }
    }

    const std::string cw = where + "/control";
    static const std::set<std::string> cfields = {"states", "initial", "accepting", "transitions"};
    require_keys(j["control"], cw, cfields, cfields);
    const json& c = j["control"];
    if (!c["states"].is_array() || c["states"].empty()) throw ParseError(cw + "/states", "expected a non-empty array");
    std::map<std::string, int> states;
    for (std::size_t i = 0; i < c["states"].size(); ++i) {
        const json& s = c["states"][i];
        std::string key;
        if (s.is_number_integer())
            key = std::to_string(s.get<long long>());
        else if (s.is_string())
            key = s.get<std::string>();
        else
            throw ParseError(cw + "/states/" + std::to_string(i), "expected a state name");
        if (!states.emplace(key, static_cast<int>(i)).second)
            throw ParseError(cw + "/states/" + std::to_string(i), "duplicate state " + key);
    }
    sys.control.states = static_cast<int>(states.size());
    sys.control.initial = state_index(states, c["initial"], cw + "/initial");
    if (!c["accepting"].is_array()) throw ParseError(cw + "/accepting", "expected an array");
    for (std::size_t i = 0; i < c["accepting"].size(); ++i)
        sys.control.accepting.push_back(state_index(states, c["accepting"][i], cw + "/accepting/" + std::to_string(i)));
    if (!c["transitions"].is_array()) throw ParseError(cw + "/transitions", "expected an array");
    for (std::size_t i = 0; i < c["transitions"].size(); ++i) {
        const std::string at = cw + "/transitions/" + std::to_string(i);
        const json& t = c["transitions"][i];
        if (!t.is_array() || t.size() != 3) throw ParseError(at, "expected [from, endomorphism, to]");
        sys.control.transitions.push_back(
            {state_index(states, t[0], at + "/0"), as_string(t[1], at + "/1"), state_index(states, t[2], at + "/2")});
    }
    if (!j["separated"].is_boolean()) throw ParseError(where + "/separated", "expected a boolean");
    sys.separated = j["separated"].get<bool>();
    return sys;
}

std::string serialize_system(const Edt0lSystem& sys) { return system_to_json(sys).dump(2) + "\n"; }

Edt0lSystem deserialize_system(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
    return system_from_json(j);
}

}  // namespace edt0l
