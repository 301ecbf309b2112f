#pragma once

#include "edt0l/annotated.hpp"

#include <optional>
#include <set>
#include <vector>

namespace edt0l {

std::optional<BigInt> is_perfect_square(const BigInt& n);

// Natural log of a positive integer of any size.
double log_big(const BigInt& v);

// Minimal solution of x^2 - D y^2 = 1 other than (1, 0), from the continued fraction of
// sqrt(D). Throws DomainError for D < 2 or square D, and std::logic_error if the result
// breaks log(x + y sqrt D) < sqrt D (log 4D + 2).
Pair fundamental_solution(const BigInt& D);
bool fundamental_bound_holds(const BigInt& D, const Pair& xy);

// (1, 0), then the recurrence x_n = x1 x_{n-1} + D y1 y_{n-1}, y_n = y1 x_{n-1} + x1 y_{n-1}.
std::vector<Pair> pell_solutions(const BigInt& D, std::size_t count);

// Pairs {a^{x_n} # a^{y_n}}: start a_x # ā_x, control phi* theta.
Edt0lSystem pell_pair_system(const BigInt& D);

// A ray of non-negative solutions of x^2 - D y^2 = N: (x_n, y_n) = (x0 u_n + D y0 v_n,
// y0 u_n + x0 v_n) for n >= 0, where (u_n, v_n) are the Pell solutions.
struct SolutionClass {
    BigInt D, N;
    Pair fundamental;
    Pair generator;  // (u1, v1)

    Pair step(const Pair& p) const;
    Pair back(const Pair& p) const;
    Pair at(std::size_t n) const;
    // Law for alpha x_n + beta y_n + gamma.
    Law image_law(const BigInt& alpha, const BigInt& beta, const BigInt& gamma) const;
};

// Starts of the rays of non-negative primitive solutions, one per class.
std::vector<SolutionClass> genpell_fundamentals(const BigInt& D, const BigInt& N);

// Every integer solution with |x|, |y| <= bound, including non-primitive ones.
std::set<Pair, PairLess> genpell_solutions(const BigInt& D, const BigInt& N, const BigInt& bound);

// Every non-negative solution of x^2 - D y^2 = N as rays: primitive classes of N / k^2
// scaled by k, for each k with k^2 | N.
std::vector<SolutionClass> genpell_rays(const BigInt& D, const BigInt& N);

struct LinearImageSpec {
    Law a, b;
    std::vector<Component> components;  // head pairs, then the stabilized tail
};

// {(alpha x_n + beta y_n + gamma, delta x_n + eps y_n + zeta) : n >= 0} over one ray.
LinearImageSpec stabilized_linear_image(const SolutionClass& c, const std::array<BigInt, 3>& a,
                                        const std::array<BigInt, 3>& b);

}  // namespace edt0l
