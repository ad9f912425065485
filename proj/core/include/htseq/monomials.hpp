#pragma once

#include <map>
#include <optional>
#include <vector>

#include "htseq/expr.hpp"
#include "htseq/ratfunc.hpp"

namespace htseq {

// One "hypergeometric monomial": coeff(n) * geo^n * prod_a ((a*n)!)^e_a,
// with coeff a rational function over a cyclotomic field. Monomials with the
// same (geo, factorial signature) span the same shift-stable line, so they
// are merged; the coefficient absorbs polynomial shifts like (a*n+b)!/(a*n)!.
struct Monomial {
    CRat coeff;
    CycloNumber geo = CycloNumber(1);
    std::map<long, long> facts;  // slope -> net exponent, slope >= 1, exponent != 0

    bool same_class(const Monomial& o) const { return geo == o.geo && facts == o.facts; }
    // E(n+1)/E(n) for the class representative E(n) = geo^n prod ((a n)!)^e.
    CRat class_ratio() const;
};

struct MonomialSum {
    std::vector<Monomial> terms;

    bool is_zero() const { return terms.empty(); }
    // largest cyclotomic order appearing in coefficients or bases
    long field_order() const;
};

// Rewrites the expression into a sum of hypergeometric monomials over a
// cyclotomic field: trig atoms via Euler's formulas, tan and nested trig via
// exact evaluation over one period and a root-of-unity filter. Throws
// UnsupportedStructureError for indicator terms and fractional geometric
// powers (those take the normal-form ingestion path).
MonomialSum to_monomials(const ExprPtr& e);

// Exact value at n (for cross-checking against eval_at).
CycloNumber eval_monomials(const MonomialSum& s, long n);

}  // namespace htseq
