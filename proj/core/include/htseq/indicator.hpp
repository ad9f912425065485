#pragma once

#include <string>

#include "htseq/ratfunc.hpp"

namespace htseq {

// chi_{n = j mod m}. Conventions: (0,0) is the zero sequence, (1,0) the one
// sequence; for m >= 1, 0 <= j < m.
struct IndicatorTerm {
    long m = 1;
    long j = 0;

    bool operator==(const IndicatorTerm& o) const { return m == o.m && j == o.j; }
    bool operator<(const IndicatorTerm& o) const { return m != o.m ? m < o.m : j < o.j; }

    bool is_zero() const { return m == 0; }
    bool is_one() const { return m == 1; }
};

IndicatorTerm make_indicator(long m, long j);

int indicator_eval(const IndicatorTerm& t, long n);

// Pointwise product via the residue scan up to lcm(m_a, m_b): either the
// empty coincidence set (zero sequence) or the unique common residue.
IndicatorTerm indicator_product(const IndicatorTerm& a, const IndicatorTerm& b);

// Generating function z^j / (1 - z^m); zero-modulus error for (0,0).
QRat indicator_gf(const IndicatorTerm& t);

std::string indicator_str(const IndicatorTerm& t);    // "chi(n mod m = j)"
std::string indicator_latex(const IndicatorTerm& t);  // \chi_{\{\mathit{modp}(n,m)=j\}}

}  // namespace htseq
