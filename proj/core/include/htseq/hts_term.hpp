#pragma once

#include <string>
#include <vector>

#include "htseq/expr.hpp"
#include "htseq/hyper.hpp"
#include "htseq/indicator.hpp"

namespace htseq {

// One summand of a normal form: (sum_k const_k * h_k(sigma(n))) * chi,
// sigma(n) = (n - j)/m fixed by the indicator.
struct HTSCoeffTerm {
    CycloNumber constant;
    HyperTerm term;
};

struct HTSComponent {
    IndicatorTerm chi;
    std::vector<HTSCoeffTerm> coeff;
};

// A hypergeometric-type normal form. Invariants: indicators pairwise
// distinct and sorted, no (0,0) indicator, no empty coefficient list; the
// zero sequence is the empty component list.
struct HTSTerm {
    std::vector<HTSComponent> components;

    bool is_zero() const { return components.empty(); }
};

// Normalizes raw components into a well-formed HTSTerm: merges equal
// indicators, combines parallel terms (same fold/remainder/ratio after
// re-anchoring), drops zero constants and empty components.
HTSTerm make_hts(std::vector<HTSComponent> components);

CycloNumber hts_eval(const HTSTerm& t, long n);

// Ring operations (Theorem-style closure): addition merges components by
// indicator; multiplication distributes, multiplies indicators, and
// re-anchors hypergeometric sections onto the product indicator's section.
HTSTerm hts_add(const HTSTerm& a, const HTSTerm& b);
HTSTerm hts_mul(const HTSTerm& a, const HTSTerm& b);
HTSTerm hts_scale(const HTSTerm& a, const CycloNumber& c);

std::string hts_str(const HTSTerm& t);
std::string hts_latex(const HTSTerm& t);
std::string hts_json(const HTSTerm& t);
HTSTerm hts_from_json(const std::string& text);

// Interprets an expression with indicator terms / fractional geometric powers
// as an element of the hypergeometric-type ring (products of constants,
// chi(m,j), c^(affine), factorials, binomials, polynomials in n, and
// quotients by polynomials, combined with + - * ^).
HTSTerm expr_to_hts(const ExprPtr& e);

}  // namespace htseq
