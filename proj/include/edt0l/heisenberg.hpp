#pragma once

#include "edt0l/quad.hpp"

#include <array>
#include <set>
#include <string>
#include <vector>

namespace edt0l {

// a^i b^j c^k with c = b^-1 a^-1 b a central, so that b a = a b c.
struct MalcevElement {
    BigInt i, j, k;
    bool operator==(const MalcevElement& o) const { return i == o.i && j == o.j && k == o.k; }
    bool is_identity() const { return i == 0 && j == 0 && k == 0; }
};

MalcevElement multiply(const MalcevElement& g, const MalcevElement& h);
MalcevElement invert(const MalcevElement& g);
MalcevElement generator(char sym, const BigInt& e);  // sym in {a, b, c}

// Letters a, b, c with optional ^-1 (or ^n), whitespace separated or juxtaposed.
MalcevElement normalize_word(const std::string& text);

class EquationSyntaxError : public std::runtime_error {
public:
    EquationSyntaxError(std::size_t pos, const std::string& what)
        : std::runtime_error("position " + std::to_string(pos) + ": " + what), pos_(pos) {}
    std::size_t pos() const { return pos_; }

private:
    std::size_t pos_;
};

// X^{eps_r} a^{i_r} b^{j_r} c^{k_r}, r = 1..n, multiplied in order; the equation reads w = 1.
struct Block {
    int eps;
    BigInt i, j, k;
    bool operator==(const Block& o) const { return eps == o.eps && i == o.i && j == o.j && k == o.k; }
};

struct OneVarEquation {
    std::vector<Block> blocks;
    std::string str() const;
};

// A leading constant is moved to the end: w0 X ... = 1 has the same solutions as X ... w0 = 1.
OneVarEquation parse_equation(const std::string& text);

using Triple = std::array<BigInt, 3>;

// A1 X1 + C1 = 0, A2 X2 + C2 = 0, cX1X2 X1 X2 + cX1 X1 + cX2 X2 + cX3 X3 + c0 = 0.
struct ZSystem {
    BigInt A1, C1, A2, C2;
    BigInt cX1X2, cX1, cX2, cX3, c0;

    bool holds(const Triple& x) const;
};

ZSystem derive_z_system(const OneVarEquation& eq);

MalcevElement evaluate(const OneVarEquation& eq, const MalcevElement& x);
bool evaluate_at(const OneVarEquation& eq, const MalcevElement& x);

struct HeisenbergSolution {
    ZSystem z;
    int case_id = 0;  // 1 when the exponent sum of X is zero, else 2
    Edt0lSystem system;
    // Case 1 with C1 = C2 = 0: the (X1, X2) pairs; X3 is free.
    std::optional<QuadraticEquation> pair_equation;
    std::optional<AnnotatedSystem> pairs;
    // Case 2: the unique solution, if any.
    std::optional<Triple> single;

    std::set<Triple> solutions_in_box(const BigInt& B) const;
};

HeisenbergSolution build_solution_system(const OneVarEquation& eq);

std::set<Triple> decode_triples(const Edt0lSystem& sys, const Enumeration& e);

// Scan of [-B, B]^3 by direct evaluation; B is capped at 50.
std::set<Triple> heis_bruteforce(const OneVarEquation& eq, const BigInt& B);

}  // namespace edt0l
