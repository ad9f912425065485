#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "htseq/rational.hpp"

namespace htseq {

// Hard cap on phi(N) for any cyclotomic field we agree to work in.
// Every example in scope fits in Q(zeta_24) (phi = 8); the bound guards
// against lcm cascades.
inline constexpr long kMaxCycloDegree = 64;

long euler_phi(long n);

// Coefficients of the N-th cyclotomic polynomial Phi_N, lowest degree first.
// Integer coefficients, cached.
const std::vector<Integer>& cyclotomic_poly(long n);

// An exact element of Q(zeta_N), stored in the power basis
// 1, zeta, ..., zeta^{phi(N)-1} modulo Phi_N, with zeta = e^{2*pi*i/N}.
// Values are immutable after construction.
class CycloNumber {
  public:
    CycloNumber() : order_(1), coords_(1) {}
    CycloNumber(long v) : order_(1), coords_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
    CycloNumber(const Rational& v) : order_(1), coords_{v} {}  // NOLINT(google-explicit-constructor)
    CycloNumber(long order, std::vector<Rational> coords);

    static CycloNumber zeta(long n) { return zeta_pow(n, 1); }
    static CycloNumber zeta_pow(long n, long k);
    static CycloNumber i() { return zeta(4); }
    // sqrt(d) for d in {-1, 2, -2, 3, -3, 5} inside Q(zeta_order), if it embeds.
    static std::optional<CycloNumber> sqrt_in(long d, long order);

    long order() const { return order_; }
    long degree() const { return static_cast<long>(coords_.size()); }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_one() const;
    std::optional<Rational> as_rational() const;
    // a + b*sqrt(d) decomposition for a given d, if the element lies in that
    // quadratic subfield.
    std::optional<std::pair<Rational, Rational>> as_quadratic(long d) const;

    CycloNumber operator-() const;
    CycloNumber operator+(const CycloNumber& o) const;
    CycloNumber operator-(const CycloNumber& o) const;
    CycloNumber operator*(const CycloNumber& o) const;
    CycloNumber operator/(const CycloNumber& o) const;
    CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
    CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
    CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }
    CycloNumber& operator/=(const CycloNumber& o) { return *this = *this / o; }
    bool operator==(const CycloNumber& o) const;
    bool operator!=(const CycloNumber& o) const { return !(*this == o); }

    CycloNumber inverse() const;
    CycloNumber pow(long e) const;
    CycloNumber conj() const;  // complex conjugation zeta -> zeta^{-1}

    // Embedding into Q(zeta_L); L must be a multiple of order().
    CycloNumber to_order(long L) const;
    // Rewrites over the smallest cyclotomic subfield that contains the value.
    // Display/normalization concern only; never affects equality semantics.
    CycloNumber reduced() const;

    // "p/q", "a+b*sqrt(d)", or "cyclo(N; c0, c1, ...)".
    std::string str() const;

  private:
    long order_;
    std::vector<Rational> coords_;  // length phi(order_)
};

CycloNumber operator*(const Rational& a, const CycloNumber& b);
CycloNumber operator*(const CycloNumber& a, const Rational& b);
CycloNumber operator+(const Rational& a, const CycloNumber& b);
std::ostream& operator<<(std::ostream& os, const CycloNumber& c);

// Both arguments rewritten in Q(zeta_L), L = lcm of the orders.
// Throws CapacityError if phi(L) > kMaxCycloDegree.
std::pair<CycloNumber, CycloNumber> cyclo_promote(const CycloNumber& a, const CycloNumber& b);

enum class TrigKind { Sin, Cos, Tan };

// Exact value of sin/cos/tan at the angle (p/q)*pi.
// tan at a pole of cos throws UndefinedValueError (index -1; callers that
// know the sequence index rethrow with it).
CycloNumber trig_value(TrigKind kind, const Rational& angle_over_pi);

inline std::optional<Rational> cyclo_is_rational(const CycloNumber& a) { return a.as_rational(); }
std::string cyclo_pretty(const CycloNumber& a);

}  // namespace htseq
