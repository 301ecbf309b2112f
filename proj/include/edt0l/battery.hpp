#pragma once

#include "edt0l/heisenberg.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace edt0l {

// Coefficients uniform in [-range, range].
QuadraticEquation random_quadratic(std::mt19937_64& rng, int range = 3);

// Hand-picked equations covering every case tag and sub-branch, then `random` draws.
std::vector<QuadraticEquation> quad_battery(std::uint64_t seed, std::size_t random);

// 1..max_blocks blocks, constants in [-c, c]. With `balanced`, the X exponents sum to zero.
OneVarEquation random_heis_equation(std::mt19937_64& rng, std::size_t max_blocks, int c, bool balanced);

// First disagreement between the constructed system and the brute-force scan, if any.
std::optional<std::string> check_quad(const QuadraticEquation& eq, const BigInt& box);
std::optional<std::string> check_heis(const OneVarEquation& eq, const BigInt& box);

}  // namespace edt0l
