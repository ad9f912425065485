#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace htseq {

using Integer = mpz_class;
using Rational = mpq_class;

// Error hierarchy. Every error names its failing stage via what().
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct ParseError : Error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : Error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};
struct DomainError : Error {
    using Error::Error;
};
// A sequence value does not exist at some index (tan pole, 1/0, (-3)!).
struct UndefinedValueError : Error {
    long index;
    UndefinedValueError(const std::string& msg, long n)
        : Error(msg + " at index n = " + std::to_string(n)), index(n) {}
};
struct NonCyclotomicError : Error {
    using Error::Error;
};
struct CapacityError : Error {
    using Error::Error;
};
struct UnsupportedStructureError : Error {
    using Error::Error;
};
struct InsufficientValuesError : Error {
    using Error::Error;
};
struct RankDeficiencyError : Error {
    using Error::Error;
};

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer to_integer(const Rational& r) {
    if (!is_integer(r)) throw DomainError("expected an integer, got " + r.get_str());
    return r.get_num();
}

inline bool fits_long(const Integer& z) { return z.fits_slong_p(); }

inline long to_long(const Integer& z) {
    if (!z.fits_slong_p()) throw CapacityError("integer too large for machine word: " + z.get_str());
    return z.get_si();
}

inline Integer int_pow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rational rat_pow(const Rational& b, long e) {
    if (e == 0) return Rational(1);
    if (e < 0) {
        if (b == 0) throw DomainError("0 to a negative power");
        Rational inv = Rational(1) / b;
        return rat_pow(inv, -e);
    }
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

inline Integer int_gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer int_lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline long lcm_long(long a, long b) {
    Integer l = int_lcm(Integer(a), Integer(b));
    return to_long(l);
}

inline Integer factorial(long n) {
    if (n < 0) throw DomainError("factorial of negative integer " + std::to_string(n));
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// binomial(x, y) with the combinatorial zero convention for y < 0 or y > x >= 0.
inline Integer binomial_int(const Integer& x, const Integer& y) {
    if (y < 0 || (x >= 0 && y > x)) return Integer(0);
    if (x < 0) throw DomainError("binomial with negative upper argument " + x.get_str());
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), x.get_mpz_t(), y.get_ui());
    return r;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

// Parses "p", "-p", or "p/q".
inline Rational rat_parse(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw DomainError("bad rational literal: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw DomainError("zero denominator in rational literal: " + s);
    return r;
}

// All positive divisors, ascending. Trial division; fine at desk scale.
inline std::vector<Integer> divisors(const Integer& n) {
    Integer a = abs(n);
    std::vector<Integer> lo, hi;
    if (a == 0) return {};
    for (Integer d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            lo.push_back(d);
            Integer q = a / d;
            if (q != d) hi.push_back(q);
        }
    }
    for (auto it = hi.rbegin(); it != hi.rend(); ++it) lo.push_back(*it);
    return lo;
}

}  // namespace htseq
