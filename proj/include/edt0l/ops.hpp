#pragma once

#include "edt0l/core.hpp"

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace edt0l {

using Vec3 = std::array<BigInt, 3>;
using Mat3 = std::array<Vec3, 3>;

// State (p, q, r) evolves by s' = matrix * s, so row i gives the new i-th count and
// column j is the image of the j-th auxiliary letter. The emitted exponent is
// weights . s; the plain generalized-Fibonacci construction has weights (1, 0, 0).
struct RecurrenceSpec {
    Vec3 seeds{0, 0, 0};
    Mat3 matrix{};
    Vec3 weights{1, 0, 0};

    int sign() const;  // -1 when the seeds are non-positive and not all zero
    std::vector<std::string> violations() const;
    Vec3 step(const Vec3& s) const;
    BigInt output(const Vec3& s) const;
    Vec3 state_at(std::size_t n) const;
    std::vector<BigInt> terms(std::size_t count) const;
    // weights * matrix >= weights entrywise: the output is then |.|-nondecreasing.
    bool monotone() const;

    bool operator==(const RecurrenceSpec& o) const {
        return seeds == o.seeds && matrix == o.matrix && weights == o.weights;
    }
};

class ConstructionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

Mat3 mat_mul(const Mat3& a, const Mat3& b);
Mat3 mat_pow(const Mat3& m, std::size_t e);
Mat3 identity3();

// Adds the auxiliary letters of one recurrence side: theta seeds `start_letter`, phi
// steps the counts, psi emits the exponent as a power of `base`.
void add_recurrence_side(Edt0lSystem& sys, const RecurrenceSpec& spec, const std::string& base,
                         const std::string& start_letter, const std::string& theta, const std::string& phi,
                         const std::string& psi);

// Language {letter^{p_n} : n >= 0} with control theta phi* psi.
Edt0lSystem build_recurrence_system(const RecurrenceSpec& spec, const std::string& letter);

// Copy of `sys` in which every letter outside `keep` and every endomorphism id gets `suffix`.
Edt0lSystem rename_apart(const Edt0lSystem& sys, const std::string& suffix, const std::set<std::string>& keep);

// Copies letters, endomorphisms and control states of `src` into `dst`; returns the state offset.
int merge_into(Edt0lSystem& dst, const Edt0lSystem& src);

Edt0lSystem concatenate_systems(const Edt0lSystem& x, const Edt0lSystem& y);
Edt0lSystem star_system(const Edt0lSystem& x);
Edt0lSystem map_homomorphism(const Edt0lSystem& x, const std::map<std::string, std::vector<std::string>>& h);
// Plain union of arbitrary systems (fresh start letter, one dispatch per input).
Edt0lSystem union_systems(const std::vector<Edt0lSystem>& xs);

// Separated-system union: right fold of the two-system dispatch on fresh start letters.
Edt0lSystem union_separated_systems(const std::vector<Edt0lSystem>& xs);

Edt0lSystem empty_separated_system();
Edt0lSystem finite_pair_system(const std::vector<Pair>& pairs, const std::string& a = "a",
                               const std::string& b = "b");
// Language {w}; with `accept` false, the empty language.
Edt0lSystem single_word_system(const std::vector<std::string>& terminal_word, bool accept = true);

}  // namespace edt0l
