#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "htseq/holonomic.hpp"
#include "htseq/mfold.hpp"

namespace htseq {

struct VerifyReport {
    bool ok = false;
    long first_mismatch = -1;
    std::string detail;  // guaranteed range or mismatch description
};

struct HTSOutcome {
    enum class Status { NormalForm, NotHyperType, Failed } status;
    HTSTerm term;                                         // NormalForm
    std::optional<Recurrence> recurrence;                 // NotHyperType (and NormalForm: the one used)
    std::vector<std::pair<long, CycloNumber>> initials;   // NotHyperType: a_0..a_{r-1}
    std::string reason;                                   // Failed
    VerifyReport verification;                            // NormalForm
    std::vector<std::string> trace;
};

struct HtsOptions {
    long max_order = 10;
    long max_m = 0;          // 0: recurrence order
    bool shift_retry = true; // extension-avoidance ladder t = 2, 3, 4, 6
};

// Algorithm steps 3..10: basis via mfold_hyper, ansatz over all folds,
// ratios and remainders, index choice avoiding singular points, exact solve
// over the smallest cyclotomic field containing the evaluations, canonical
// solution, verification.
HTSOutcome re_to_hts(const Recurrence& rec, const InitialSegment& init, long max_m = 0);

// End-to-end: recurrence discovery, then re_to_hts with the expression as
// exact provider; on NotHyperType with cyclotomic coefficients, retries with
// shift steps 2, 3, 4, 6.
HTSOutcome hts(const ExprPtr& e, const HtsOptions& opts = {});
HTSOutcome hts(const std::string& expression, const HtsOptions& opts = {});

// The evaluation set for the ansatz: indices avoiding the integer roots of
// the trailing coefficient (at n) and leading coefficient (at n - d*step),
// accumulated until the evaluation matrix has rank p, plus d consistency
// indices. Throws RankDeficiencyError past the scan cap.
std::vector<long> choose_E0(const Recurrence& rec, const std::vector<HyperTerm>& pieces,
                            long extra);

// Deterministic equality certificate: re_from_normal_form(candidate) and rec
// jointly annihilate candidate - provider (sum closure); checking the window
// [0, n0 + order) with n0 past the integer roots of the combined leading
// coefficient forces equality everywhere.
VerifyReport verify(const HTSTerm& candidate, const Recurrence& rec,
                    const std::function<CycloNumber(long)>& provider);

}  // namespace htseq
