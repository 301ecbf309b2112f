#include "edt0l/ops.hpp"
#include "edt0l/pell.hpp"
#include "edt0l/serialize.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace edt0l;

namespace {

// {a^(2^n + 1)}: start ac, phi doubles a, theta turns c into a, control phi* theta.
Edt0lSystem doubling_system() {
    Edt0lSystem s;
    s.intern("a", true);
    s.intern("c");
    s.start = s.word({"a", "c"});
    s.set_image("phi", "a", s.word({"a", "a"}));
    s.set_image("theta", "c", s.word({"a"}));
    s.control.states = 2;
    s.control.add(0, "phi", 0);
    s.control.add(0, "theta", 1);
    s.control.accepting = {1};
    return s;
}

std::set<std::string> as_strings(const Edt0lSystem& s, const Enumeration& e) {
    std::set<std::string> out;
    for (const auto& w : e.words) out.insert(format_word(s, w));
    return out;
}

std::vector<Pair> decode_pairs(const Edt0lSystem& s, const Enumeration& e, const std::vector<std::string>& t) {
    std::vector<Pair> out;
    for (const auto& w : e.words) {
        auto v = decode_exponents(s, w, t);
        out.push_back({v[0], v[1]});
    }
    std::sort(out.begin(), out.end(), PairLess());
    return out;
}

}  // namespace

TEST_CASE("apply_endomorphism rewrites letter by letter") {
    Edt0lSystem s = doubling_system();
    const Endomorphism& phi = s.endos.at("phi");
    const Endomorphism& theta = s.endos.at("theta");
    CHECK(apply_endomorphism(s, phi, s.word({"a", "c"})) == s.word({"a", "a", "c"}));
    CHECK(apply_endomorphism(s, theta, s.word({"a", "a", "c"})) == s.word({"a", "a", "a"}));
    Endomorphism id{"id", {}};
    Word w = s.word({"c", "a", "c"});
    CHECK(apply_endomorphism(s, id, w) == w);
    CHECK_THROWS_AS(apply_endomorphism(s, phi, Word{7}), DomainError);
}

TEST_CASE("enumeration of the doubling example") {
    Edt0lSystem s = doubling_system();
    Enumeration e = enumerate_language(s, {5, 64, 100});
    // Paths phi^n theta with n + 1 <= 5, so n = 0..4.
    std::set<std::string> want;
    for (int n = 0; n <= 4; ++n) want.insert(format_word(s, s.power("a", (1 << n) + 1)));
    CHECK(as_strings(s, e) == want);
    CHECK_FALSE(e.complete);

    Edt0lSystem t;
    t.intern("a", true);
    t.start = t.word({"a"});
    t.control.accepting = {0};
    Enumeration f = enumerate_language(t, {1, 1, 1});
    REQUIRE(f.words.size() == 1);
    CHECK(f.words[0] == t.word({"a"}));
}

TEST_CASE("Pell pair system enumerates Pell solutions") {
    Edt0lSystem s = pell_pair_system(2);
    CHECK(validate_system(s).empty());
    std::vector<Pair> brute = oracle::pell_scan(2, 1, 100);
    // Path budget 4 allows phi^0..phi^3; phi^3 needs a form of 2 * (99 + 70) + 1 letters.
    Enumeration small = enumerate_language(s, {4, 256, 100});
    auto got = decode_pairs(s, small, {"a", "a"});
    CHECK(got == std::vector<Pair>(brute.begin(), brute.begin() + 3));
    CHECK_FALSE(small.complete);
    Enumeration big = enumerate_language(s, {4, 400, 100});
    CHECK(decode_pairs(s, big, {"a", "a"}) == brute);
}

TEST_CASE("decode_exponents") {
    std::vector<std::string> w1{"a", "a", "#", "b^-1", "b^-1", "b^-1"};
    CHECK(decode_exponents(w1, {"a", "b"}) == std::vector<BigInt>{2, -3});
    CHECK(decode_exponents(std::vector<std::string>{"#"}, {"a", "b"}) == std::vector<BigInt>{0, 0});
    std::vector<std::string> w3{"a^-1", "b", "b", "c^-1"};
    CHECK(decode_exponents(w3, {"a", "b", "c"}) == std::vector<BigInt>{-1, 2, -1});
    CHECK_THROWS_AS(decode_exponents(std::vector<std::string>{"a", "a^-1", "#"}, {"a", "b"}), DomainError);
    CHECK_THROWS_AS(decode_exponents(std::vector<std::string>{"a", "b"}, {"a", "b"}), DomainError);
    CHECK_THROWS_AS(decode_exponents(std::vector<std::string>{"a", "#", "c"}, {"a", "b"}), DomainError);
}

TEST_CASE("validate_system") {
    CHECK(validate_system(doubling_system()).empty());

    Edt0lSystem s = finite_pair_system({{1, 2}});
    CHECK(validate_system(s).empty());
    Edt0lSystem bad = s;
    bad.set_image("f0", "#", Word{});
    auto v = validate_system(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "separator not fixed by f0");

    Edt0lSystem missing = doubling_system();
    missing.control.add(1, "zz", 0);
    auto m = validate_system(missing);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == "unknown endomorphism zz");
}

TEST_CASE("serialization round trip") {
    Edt0lSystem s = doubling_system();
    std::string text = serialize_system(s);
    Edt0lSystem back = deserialize_system(text);
    CHECK(serialize_system(back) == text);
    CHECK(as_strings(back, enumerate_language(back, {5, 64, 100})) ==
          as_strings(s, enumerate_language(s, {5, 64, 100})));

    auto j = nlohmann::json::parse(text);
    j.erase("start");
    CHECK_THROWS_AS(deserialize_system(j.dump()), ParseError);
    j = nlohmann::json::parse(text);
    j["extra"] = 1;
    CHECK_THROWS_AS(deserialize_system(j.dump()), ParseError);

    Edt0lSystem none = doubling_system();
    none.control.accepting.clear();
    Edt0lSystem none2 = deserialize_system(serialize_system(none));
    CHECK(none2.control.accepting.empty());
    CHECK(enumerate_language(none2, {5, 64, 100}).words.empty());

    // Long runs are written compactly and survive.
    Edt0lSystem big = finite_pair_system({{BigInt("123456789012345678901234567890"), -40}});
    CHECK(serialize_system(deserialize_system(serialize_system(big))) == serialize_system(big));
}

TEST_CASE("accepted paths replay into the enumeration") {
    // A union of small systems gives a control with several branches.
    Edt0lSystem s = union_separated_systems(
        {finite_pair_system({{1, 0}, {2, -1}}), pell_pair_system(3), finite_pair_system({{-3, 3}})});
    REQUIRE(validate_system(s).empty());
    Enumeration e = enumerate_language(s, {8, 200, 1000});
    std::set<std::vector<std::string>> emitted;
    for (const auto& w : e.words) emitted.insert(word_names(s, w));

    std::mt19937_64 rng(11);
    int replayed = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int state = s.control.initial;
        Word w = s.start;
        std::size_t len = 0;
        std::size_t max_len = 0;
        bool ok = true;
        int steps = std::uniform_int_distribution<int>(0, 6)(rng);
        for (int k = 0; k < steps; ++k) {
            std::vector<const Transition*> out;
            for (const auto& t : s.control.transitions)
                if (t.from == state) out.push_back(&t);
            if (out.empty()) break;
            const Transition* t = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
            w = apply_endomorphism(s, s.endos.at(t->endo), w);
            if (w.length() > 200) {
                ok = false;
                break;
            }
            max_len = std::max<std::size_t>(max_len, w.length().get_ui());
            state = t->to;
            ++len;
        }
        if (!ok || !s.control.is_accepting(state)) continue;
        bool terminal = true;
        for (const Run& r : w.runs()) terminal = terminal && s.is_terminal(r.letter);
        if (!terminal) continue;
        ++replayed;
        CHECK(emitted.count(word_names(s, w)) == 1);
    }
    CHECK(replayed > 20);
}

TEST_CASE("enumeration is deterministic, monotone in the budget, and separated words have one #") {
    Edt0lSystem s = union_separated_systems({pell_pair_system(2), finite_pair_system({{4, 4}, {0, 0}})});
    auto a = as_strings(s, enumerate_language(s, {5, 120, 100}));
    CHECK(a == as_strings(s, enumerate_language(s, {5, 120, 100})));
    for (Budget b : {Budget{6, 120, 100}, Budget{5, 400, 100}, Budget{7, 400, 1000}}) {
        auto bigger = as_strings(s, enumerate_language(s, b));
        for (const auto& w : a) CHECK(bigger.count(w) == 1);
    }
    for (const auto& w : enumerate_language(s, {7, 400, 1000}).words) {
        int seps = 0;
        for (const Run& r : w.runs())
            if (s.name(r.letter) == kSep) seps += static_cast<int>(r.count.get_si());
        CHECK(seps == 1);
    }
}
