#pragma once

#include <optional>
#include <string>
#include <vector>

#include "htseq/cyclo.hpp"
#include "htseq/recurrence.hpp"

namespace htseq {

// Certificate of a hypergeometric ratio in Gosper-Petkovsek form
// z * A(n)/B(n) * C(n+1)/C(n).
struct HyperCertificate {
    Rational z;
    QPoly a, b, c;
};

struct HyperRatio {
    QRat ratio;
    std::optional<HyperCertificate> cert;
};

// Petkovsek's Hyper over Q: all hypergeometric solutions of the recurrence
// (step 1), as normalized ratios r with a(n+1) = r(n) a(n). Deterministic
// ordering; empty when there are none.
std::vector<HyperRatio> hyper(const Recurrence& rec);

// An m-fold hypergeometric building block: the masked sequence
//   h((n-j)/m) * chi(n mod m = j),
// where h is pinned down by its section ratio h(k+1) = ratio(k) h(k) and the
// anchor h(anchor_k) = anchor_v. Below the anchor, values extend backward
// through nonzero ratio values and are 0 where the ratio has a pole.
struct HyperTerm {
    long m = 1;
    long j = 0;
    QRat ratio;
    long anchor_k = 0;
    CycloNumber anchor_v = CycloNumber(1);
    std::optional<HyperCertificate> cert;  // display hint

    std::string section_str() const;  // closed form in the section variable k
};

// Smallest anchor index such that the ratio's numerator and denominator are
// nonzero at every k >= anchor.
long safe_anchor(const QRat& ratio);

// Exact value of the masked sequence at n; 0 off the residue class.
CycloNumber term_value(const HyperTerm& h, long n);

// Value of the section h(k) itself.
CycloNumber section_value(const HyperTerm& h, long k);

}  // namespace htseq
