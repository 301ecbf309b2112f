#pragma once

#include "edt0l/core.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace edt0l {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

// Renumbers states in breadth-first order from the initial state (transitions visited in
// (endomorphism id, target) order); unreachable states keep their relative order at the end.
// Ties between edges with the same id out of one state are broken by the current numbering.
Edt0lSystem canonicalize_states(const Edt0lSystem& sys);

nlohmann::json system_to_json(const Edt0lSystem& sys);
Edt0lSystem system_from_json(const nlohmann::json& j, const std::string& where = "");

// Word elements are letter names; a long run may be written as [name, count].
nlohmann::json word_to_json(const Edt0lSystem& sys, const Word& w);
Word word_from_json(const Edt0lSystem& sys, const nlohmann::json& j, const std::string& where);

nlohmann::json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const nlohmann::json& j, const std::string& where);

std::string serialize_system(const Edt0lSystem& sys);
Edt0lSystem deserialize_system(const std::string& text);

}  // namespace edt0l
