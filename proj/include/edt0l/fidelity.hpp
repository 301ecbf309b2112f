#pragma once

#include "edt0l/core.hpp"

#include <set>

namespace edt0l {

// Division through the indexed-alphabet system: each letter on a divided side carries an
// index word over {¢, $}; every endomorphism phi is replaced by the family of maps that
// spread a letter's index over its image, optionally adding one $ and |g| - 1 ¢; a final
// map keeps $-indexed terminals, drops ¢-indexed ones and fails on anything else.
//
// The family is expanded lazily while enumerating. Index words are tracked by their
// (¢, $) counts and each letter occurrence chooses its image independently, which can only
// add derivations relative to one shared choice per indexed letter. Words are tracked as
// letter multisets per side, which is exact for decoding a^x # b^y.
struct FidelityResult {
    std::set<Pair, PairLess> pairs;  // decoded (x / gamma, y / zeta)
    bool complete = true;            // false when the budget or the node cap cut a branch
    std::size_t nodes = 0;
};

// Requires a separated system and 1 <= |gamma|, |zeta| <= 3. The budget's path length
// counts the original endomorphisms; the final map is not counted.
FidelityResult fidelity_divide(const Edt0lSystem& sys, const BigInt& gamma, const BigInt& zeta, const Budget& b,
                               std::size_t max_nodes = 400000);

}  // namespace edt0l
