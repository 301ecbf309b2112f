#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace edt0l {

using BigInt = mpz_class;
using Pair = std::pair<BigInt, BigInt>;

inline std::string str(const BigInt& v) { return v.get_str(); }

// Throws std::invalid_argument on anything that is not an optionally signed decimal.
BigInt parse_bigint(const std::string& text);

inline int sgn(const BigInt& v) { return ::sgn(v); }
inline BigInt babs(const BigInt& v) { return abs(v); }

// Floor division and non-negative remainder.
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);
BigInt mod_pos(const BigInt& a, const BigInt& m);
bool divides(const BigInt& d, const BigInt& n);

BigInt isqrt(const BigInt& n);
std::optional<BigInt> exact_sqrt(const BigInt& n);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
struct ExtGcd { BigInt g, s, t; };
ExtGcd ext_gcd(const BigInt& a, const BigInt& b);

bool fits_i64(const BigInt& v);
std::int64_t to_i64(const BigInt& v);

struct PairLess {
    bool operator()(const Pair& p, const Pair& q) const {
        int c = cmp(p.first, q.first);
        if (c != 0) return c < 0;
        return cmp(p.second, q.second) < 0;
    }
};

}  // namespace edt0l
