#pragma once

#include <string>
#include <vector>

#include "htseq/hyper.hpp"
#include "htseq/recurrence.hpp"

namespace htseq {

struct BasisEntry {
    long m = 1;
    std::vector<QRat> ratios;
};

// Basis of m-fold hypergeometric solution pieces. `entries` summarizes the
// (m, ratio) pairs; `pieces` carries the selected masked building blocks
// (every remainder kept only when independent as a sequence).
struct SolutionBasis {
    std::vector<BasisEntry> entries;
    std::vector<HyperTerm> pieces;

    bool empty() const { return pieces.empty(); }
    std::string json() const;
    std::string str() const;
};

// Section-based mfold solving: for each fold m = 1..max_m and remainder j,
// runs Hyper on the (m, j)-section; a candidate ratio is kept only when the
// masked piece exactly solves the recurrence (symbolic residual check), and
// the final set is a maximal independent family, larger folds first.
// Accepts recurrences with step > 1 (they are read as step-1 relations).
SolutionBasis mfold_hyper(const Recurrence& rec, long max_m = 0);

inline constexpr long kMaxFold = 24;

}  // namespace htseq
