#pragma once

#include "edt0l/ops.hpp"
#include "edt0l/serialize.hpp"

#include <optional>
#include <set>
#include <variant>

namespace edt0l {

// o_k = T o_{k-1} - o_{k-2} + K with T >= 2. Pell-type linear images, their strided
// subsequences, lines (T = 2, K = 0) and integer quadratics (T = 2) all have this shape.
struct Law {
    BigInt o0, o1, T, K;

    BigInt next(const BigInt& older, const BigInt& newer) const { return T * newer - older + K; }
    BigInt before(const BigInt& o_0, const BigInt& o_1) const { return T * o_0 - o_1 + K; }
    std::vector<BigInt> terms(std::size_t count) const;
    BigInt term(std::size_t k) const;
    Law shifted(std::size_t k) const;
    Law negated() const { return {-o0, -o1, T, -K}; }
    // Subsequence o_{r + jP}, j >= 0.
    Law strided(std::size_t r, std::size_t P) const;

    bool operator==(const Law& o) const { return o0 == o.o0 && o1 == o.o1 && T == o.T && K == o.K; }
};

// Lucas V_P(T): the trace of the P-th power of the companion matrix [[T, -1], [1, 0]].
BigInt lucas_trace(const BigInt& T, std::size_t P);

// One coordinate of a component: a non-negative recurrence realization, valid from index 0,
// plus the second-order law its outputs obey when one is known.
struct Side {
    RecurrenceSpec spec;
    std::optional<Law> law;

    Side advanced(std::size_t k) const;
    Side negated() const;
    std::vector<BigInt> terms(std::size_t count) const { return spec.terms(count); }
};

// Realization of a law from index k on, when the stability conditions hold there: the state
// (o_k - m, o_k - o_{k-1}, sigma) is sign-constant and the offset terms are non-negative.
std::optional<Side> realize_law_at(const Law& law, std::size_t k);

struct Stabilized {
    std::size_t index;  // first index from which the realization is valid
    Side side;          // realization of o_{index + j}
};
// Scans upward for the first realizable index; throws ConstructionError past `cap`.
Stabilized stabilize(const Law& law, std::size_t cap = 100000);

struct FiniteComponent {
    std::vector<Pair> pairs;
};
// {(a_n, b_n) : n >= 0}, both sides stepping together.
struct RecurrentComponent {
    Side a, b;
};
// {(a_m, b_n) : m, n >= 0}, sides stepping independently.
struct GridComponent {
    Side a, b;
};
using Component = std::variant<FiniteComponent, RecurrentComponent, GridComponent>;

struct AnnotatedSystem {
    Edt0lSystem system;
    std::vector<Component> components;
};

Edt0lSystem component_system(const Component& c);
// Compiles the components into a separated system (union of the per-component systems).
AnnotatedSystem annotate(std::vector<Component> components);

AnnotatedSystem finite_set_system(const std::vector<Pair>& pairs);
AnnotatedSystem union_separated(const std::vector<AnnotatedSystem>& xs);

// Head terms as a finite component and the stabilized tail as a recurrent one.
std::vector<Component> law_pair_components(const Law& a, const Law& b);
// All of Z^2 as four quadrant grids.
std::vector<Component> plane_components();
Side constant_side(const BigInt& v);
Side counting_side(const BigInt& start, const BigInt& step);  // start + j*step, j >= 0

std::vector<Component> resample_component(const Component& c, const BigInt& gamma, const BigInt& zeta);
AnnotatedSystem divide_separated(const AnnotatedSystem& x, const BigInt& gamma, const BigInt& zeta);

std::set<Pair, PairLess> component_solutions_in_box(const Component& c, const BigInt& B);
std::set<Pair, PairLess> solutions_in_box(const AnnotatedSystem& x, const BigInt& B);

nlohmann::json annotated_to_json(const AnnotatedSystem& x);
AnnotatedSystem annotated_from_json(const nlohmann::json& j);
std::string serialize_annotated(const AnnotatedSystem& x);
AnnotatedSystem deserialize_annotated(const std::string& text);

}  // namespace edt0l
