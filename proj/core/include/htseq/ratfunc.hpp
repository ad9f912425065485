#pragma once

#include <optional>
#include <string>

#include "htseq/poly.hpp"

namespace htseq {

// Reduced fraction of polynomials over K: gcd(num, den) = 1, den monic.
template <class K>
class RatFunc {
  public:
    RatFunc() : num_(), den_(K(1)) {}
    RatFunc(K c) : num_(std::move(c)), den_(K(1)) {}  // NOLINT(google-explicit-constructor)
    RatFunc(Poly<K> num) : num_(std::move(num)), den_(K(1)) {}  // NOLINT(google-explicit-constructor)
    RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFunc var() { return RatFunc(Poly<K>::var()); }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    std::optional<K> as_constant() const {
        if (num_.is_zero()) return K(0);
        if (num_.degree() == 0 && den_.degree() == 0) return num_[0];
        return std::nullopt;
    }

    RatFunc operator-() const { return RatFunc(-num_, den_, no_normalize_tag{}); }
    RatFunc operator+(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
    RatFunc operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw DomainError("rational function division by zero");
        return RatFunc(num_ * o.den_, den_ * o.num_);
    }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc shift(long k) const { return RatFunc(num_.shift(k), den_.shift(k)); }
    RatFunc compose_affine(const K& a, const K& b) const {
        return RatFunc(num_.compose_affine(a, b), den_.compose_affine(a, b));
    }
    RatFunc pow(long e) const {
        if (e < 0) return RatFunc(K(1)) / pow(-e);
        RatFunc acc(K(1)), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Evaluation; nullopt at a pole.
    std::optional<K> eval(const K& x) const {
        K d = den_.eval(x);
        if (d == K(0)) return std::nullopt;
        return num_.eval(x) / d;
    }

    std::string str(const std::string& var = "n") const {
        if (is_polynomial()) return num_.str(var);
        std::string ns = num_.str(var);
        std::string ds = den_.str(var);
        if (num_.degree() > 0 || ns.find_first_of("+-") != std::string::npos) ns = "(" + ns + ")";
        if (den_.degree() > 0 || ds.find_first_of("+-") != std::string::npos) ds = "(" + ds + ")";
        return ns + "/" + ds;
    }

  private:
    struct no_normalize_tag {};
    RatFunc(Poly<K> num, Poly<K> den, no_normalize_tag) : num_(std::move(num)), den_(std::move(den)) {}
    void normalize() {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly<K>(K(1));
            return;
        }
        Poly<K> g = Poly<K>::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.div_exact(g);
            den_ = den_.div_exact(g);
        }
        K lc_inv = K(1) / den_.leading();
        num_ = num_ * lc_inv;
        den_ = den_ * lc_inv;
    }
    Poly<K> num_, den_;
};

using QRat = RatFunc<Rational>;
using CRat = RatFunc<CycloNumber>;

}  // namespace htseq
