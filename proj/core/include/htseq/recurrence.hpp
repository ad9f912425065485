#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "htseq/ratfunc.hpp"

namespace htseq {

// P_0(n) a(n) + P_1(n) a(n+t) + ... + P_d(n) a(n+d*t) = 0, with polynomial
// coefficients over Q, P_0 != 0, P_d != 0. Normalized: coefficient contents
// have gcd 1 and the leading coefficient has a positive leading term.
struct Recurrence {
    std::vector<QPoly> coeffs;  // index i multiplies a(n + i*step)
    long step = 1;

    long order() const { return static_cast<long>(coeffs.size()) - 1; }
    const QPoly& trailing() const { return coeffs.front(); }
    const QPoly& leading() const { return coeffs.back(); }

    // The same relation read as a step-1 recurrence of order order()*step
    // (zero coefficients in between).
    Recurrence to_step1() const;

    std::string str() const;
    std::string json() const;

    bool operator==(const Recurrence& o) const { return step == o.step && coeffs == o.coeffs; }
};

// Builds a normalized recurrence from raw coefficients: strips zero ends by
// index shifting, divides by the rational content, fixes the sign.
Recurrence make_recurrence(std::vector<QPoly> coeffs, long step = 1);

// Parses a polynomial / rational-function string in the given variable
// (integer or p/q coefficients, "^" powers, "*" products).
QPoly parse_poly(const std::string& text, const std::string& var = "n");
QRat parse_ratfunc(const std::string& text, const std::string& var = "n");

Recurrence recurrence_from_json(const std::string& text);
// Text form "P0(n)*a(n) + ... + Pd(n)*a(n+d) = 0" (negative shifts accepted
// and normalized away; "a(n) = ..." rearranged).
Recurrence recurrence_from_text(const std::string& text);
// Accepts either form.
Recurrence parse_recurrence(const std::string& text);

// Exact values of a sequence under a recurrence: seeded with known values,
// optionally backed by a provider, extended forward with the recurrence where
// the leading coefficient permits.
class RecurrenceSequence {
  public:
    RecurrenceSequence(Recurrence rec, std::vector<std::pair<long, CycloNumber>> values,
                       std::function<CycloNumber(long)> provider = nullptr);

    // Throws InsufficientValuesError when the index cannot be reached.
    CycloNumber at(long n);
    const Recurrence& recurrence() const { return rec_; }

  private:
    Recurrence rec_;
    std::map<long, CycloNumber> known_;
    std::function<CycloNumber(long)> provider_;
};

// Initial data for re_to_hts: explicit values plus an optional exact provider.
struct InitialSegment {
    std::vector<std::pair<long, CycloNumber>> values;  // strictly increasing indices
    std::function<CycloNumber(long)> provider;         // optional

    static InitialSegment from_values(std::vector<CycloNumber> vals, long start = 0);
    static InitialSegment from_provider(std::function<CycloNumber(long)> p);
};

}  // namespace htseq
