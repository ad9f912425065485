#pragma once

#include <vector>

#include "htseq/poly.hpp"

namespace htseq {

struct FactorResult {
    Rational content;                            // rational content incl. sign
    std::vector<std::pair<QPoly, int>> factors;  // monic irreducible over Q, with multiplicity
};

// Full factorization over Q: squarefree decomposition, factorization modulo a
// small prime, Hensel lifting, subset recombination (Zassenhaus). Factors are
// monic irreducible, deterministically ordered by (degree, coefficient
// lexicographic). Degree cap 32.
FactorResult factor_over_Q(const QPoly& a);

inline constexpr long kFactorDegreeCap = 32;

// Exactly the integer roots of a, via divisors of the trailing coefficient of
// the primitive part after stripping n^k. Sorted ascending.
std::vector<Integer> integer_roots(const QPoly& a);

// Rational roots (from the linear factors of the full factorization).
std::vector<Rational> rational_roots(const QPoly& a);

// Yun's squarefree decomposition: a = content * prod_i part_i^i with each
// part_i squarefree and pairwise coprime, parts monic.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& a);

// Basis of the polynomial solutions C of sum_i coeffs[i](n) * C(n + i) = 0,
// echelonized deterministically (primitive, positive leading coefficient,
// descending degree). The degree bound comes from the first non-vanishing
// asymptotic layer of the operator applied to n^e.
std::vector<QPoly> polynomial_solutions(const std::vector<QPoly>& coeffs);

}  // namespace htseq
