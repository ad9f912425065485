#pragma once

#include <optional>
#include <string>
#include <vector>

#include "htseq/hts_term.hpp"
#include "htseq/monomials.hpp"
#include "htseq/recurrence.hpp"

namespace htseq {

// Common-basis recurrence discovery: writes e(n), e(n+t), ..., e(n+N*t) over
// the monomial classes of the expression and searches, for N = 1..max_order,
// for a dependency with coefficients in Q(n) (each cyclotomic coordinate is
// split into rational equations). Expressions containing indicator terms are
// routed through expr_to_hts + re_from_normal_form instead.
std::optional<Recurrence> find_recurrence(const ExprPtr& e, long max_order = 10, long step = 1,
                                          std::vector<std::string>* trace = nullptr);

// Coefficients v_0..v_{d-1} with a(n+N) = sum_i v_i(n) a(n+i), obtained by
// repeated application of the (step-1) recurrence.
std::vector<QRat> shift_reduce(const Recurrence& rec, long n_shift);

// All reduction rows 0..up_to at once (row k = shift_reduce(rec, k)).
std::vector<std::vector<QRat>> shift_reduce_table(const Recurrence& rec, long up_to);

// Recurrence satisfied by the section b(k) = a(m*k + j).
Recurrence m_section(const Recurrence& rec, long m, long j);
// Same, against a precomputed reduction table (rows 0..d*m needed).
Recurrence m_section_cached(const std::vector<std::vector<QRat>>& table, long order, long m, long j);

// Annihilator of every sum u + v with r1(u) = 0, r2(v) = 0; order <= d1 + d2.
Recurrence sum_closure(const Recurrence& r1, const Recurrence& r2);

// Holonomic recurrence for a normal form, per the sectioning construction:
// per component, annihilate the coefficient combination in the section
// variable, dilate back to n, then combine components by sum closure.
Recurrence re_from_normal_form(const HTSTerm& t);

}  // namespace htseq
