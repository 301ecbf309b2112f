#pragma once

#include "edt0l/pell.hpp"

#include <array>
#include <set>
#include <string>

namespace edt0l {

// alpha x^2 + beta xy + gamma y^2 + delta x + eps y + zeta = 0
struct QuadraticEquation {
    BigInt alpha, beta, gamma, delta, eps, zeta;

    BigInt eval(const BigInt& x, const BigInt& y) const;
    QuadraticEquation swapped() const { return {gamma, beta, alpha, eps, delta, zeta}; }
    std::string str() const;
};

enum class CaseTag { PellLike, SquareD, NonPositiveD, Parabolic, HyperbolicDegenerate, LinearPair, Trivial };
const char* tag_name(CaseTag t);

// Equations with alpha = 0 and gamma != 0 are classified after swapping x and y.
CaseTag classify_equation(const QuadraticEquation& eq);

// U = D y + E, V = 2 alpha x + beta y + delta turn the equation into U^2 - D V^2 = N.
struct LagrangeReduction {
    BigInt D, E, F, N;
    BigInt alpha, beta, delta;  // of the reduced (possibly swapped) equation
    bool swapped = false;       // the reduction is of eq.swapped()

    // Both directions use the caller's (x, y) order; the swap is handled inside.
    Pair uv(const BigInt& x, const BigInt& y) const;
    // Back-substitution; nullopt when x or y would not be integral.
    std::optional<Pair> xy(const BigInt& U, const BigInt& V) const;
};

class NotApplicable : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throws NotApplicable when alpha = gamma = 0 or D = 0.
LagrangeReduction lagrange_reduce(const QuadraticEquation& eq);

// Components whose union is exactly the solution set.
std::vector<Component> solution_components(const QuadraticEquation& eq);
AnnotatedSystem build_pair_system(const QuadraticEquation& eq);

// Exhaustive scan of [-B, B]^2; B is capped at 10^4.
std::set<Pair, PairLess> quad_bruteforce(const QuadraticEquation& eq, const BigInt& B);

}  // namespace edt0l
