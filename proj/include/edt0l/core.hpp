#pragma once

#include "edt0l/bigint.hpp"

#include <map>
#include <unordered_map>
#include <stdexcept>
#include <string>
#include <vector>

namespace edt0l {

inline const std::string kSep = "#";

struct Letter {
    std::string name;
    bool terminal = false;
};

// Run-length encoded word. Adjacent runs of the same letter are always merged,
// so two words are equal iff their run vectors are equal.
struct Run {
    int letter;
    BigInt count;
    bool operator==(const Run& o) const { return letter == o.letter && count == o.count; }
};

class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters) {
        for (int l : letters) push(l);
    }

    void push(int letter, const BigInt& count = 1);
    void append(const Word& w);
    BigInt length() const;
    bool empty() const { return runs_.empty(); }
    const std::vector<Run>& runs() const { return runs_; }
    bool contains(int letter) const;

    // Only valid for short words; throws if the length exceeds `cap`.
    std::vector<int> flatten(std::size_t cap = 1u << 20) const;
    static Word from_flat(const std::vector<int>& letters);

    bool operator==(const Word& o) const { return runs_ == o.runs_; }
    bool operator!=(const Word& o) const { return !(*this == o); }

private:
    std::vector<Run> runs_;
};

struct Endomorphism {
    std::string id;
    std::map<int, Word> images;  // letters absent from the map are fixed

    const Word* image(int letter) const {
        auto it = images.find(letter);
        return it == images.end() ? nullptr : &it->second;
    }
};

struct Transition {
    int from;
    std::string endo;
    int to;
    bool operator==(const Transition& o) const { return from == o.from && endo == o.endo && to == o.to; }
};

struct RationalControl {
    int states = 1;
    int initial = 0;
    std::vector<int> accepting;
    std::vector<Transition> transitions;

    int add_state() { return states++; }
    void add(int from, const std::string& endo, int to) { transitions.push_back({from, endo, to}); }
    bool is_accepting(int s) const;
};

class DomainError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edt0lSystem {
    std::vector<Letter> alphabet;  // the extended alphabet; terminals carry the flag
    Word start;
    std::map<std::string, Endomorphism> endos;
    RationalControl control;
    bool separated = false;

    int find(const std::string& name) const;
    int id(const std::string& name) const;  // throws DomainError if absent
    // Adds the letter if missing; a letter once terminal stays terminal.
    int intern(const std::string& name, bool terminal = false);
    const std::string& name(int letter) const { return alphabet.at(letter).name; }
    bool is_terminal(int letter) const { return alphabet.at(letter).terminal; }

    Word word(const std::vector<std::string>& names) const;
    std::vector<int> terminals() const;
    Word power(const std::string& name, const BigInt& count) const;
    Endomorphism& endo(const std::string& eid);
    void set_image(const std::string& eid, const std::string& letter, const Word& image);

private:
    // Name lookup cache, rebuilt whenever the alphabet size changes behind our back.
    mutable std::unordered_map<std::string, int> index_;
};

struct Budget {
    std::size_t max_path_len = 1;
    std::size_t max_form_len = 1;
    std::size_t max_words = 1;
};

struct Enumeration {
    std::vector<Word> words;  // sorted by letter-name sequence
    bool complete = true;     // false when some branch was cut by the budget
};

Word apply_endomorphism(const Edt0lSystem& sys, const Endomorphism& e, const Word& w);

Enumeration enumerate_language(const Edt0lSystem& sys, const Budget& b);

// Template entries are base letter names; a block may use the letter or its inverse.
// A two-entry template is the pair shape x # y; longer templates are juxtaposed blocks.
std::vector<BigInt> decode_exponents(const Edt0lSystem& sys, const Word& w,
                                     const std::vector<std::string>& tmpl);
std::vector<BigInt> decode_exponents(const std::vector<std::string>& names,
                                     const std::vector<std::string>& tmpl);

std::vector<std::string> validate_system(const Edt0lSystem& sys);

std::vector<std::string> word_names(const Edt0lSystem& sys, const Word& w, std::size_t cap = 1u << 20);
std::string format_word(const Edt0lSystem& sys, const Word& w);

inline std::string inverse_name(const std::string& base) { return base + "^-1"; }

// Word for base^n: n copies of base, or |n| copies of its inverse.
Word signed_power(Edt0lSystem& sys, const std::string& base, const BigInt& n, bool terminal);

}  // namespace edt0l
