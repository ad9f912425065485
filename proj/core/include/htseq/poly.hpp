#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "htseq/cyclo.hpp"
#include "htseq/rational.hpp"

namespace htseq {

// Dense univariate polynomial over a field K (Rational or CycloNumber),
// coefficients lowest degree first; the zero polynomial is the empty vector.
template <class K>
class Poly {
  public:
    Poly() = default;
    Poly(K c) {  // NOLINT(google-explicit-constructor)
        if (!coeff_is_zero(c)) coeffs_.push_back(std::move(c));
    }
    explicit Poly(std::vector<K> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly var() { return Poly(std::vector<K>{K(0), K(1)}); }
    static Poly monomial(K c, long deg) {
        std::vector<K> v(static_cast<std::size_t>(deg) + 1, K(0));
        v[static_cast<std::size_t>(deg)] = std::move(c);
        return Poly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }  // -1 for zero
    const std::vector<K>& coeffs() const { return coeffs_; }
    const K& operator[](std::size_t i) const {
        static const K zero = K(0);
        return i < coeffs_.size() ? coeffs_[i] : zero;
    }
    const K& leading() const {
        if (is_zero()) throw DomainError("leading coefficient of the zero polynomial");
        return coeffs_.back();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    Poly operator+(const Poly& o) const {
        std::vector<K> v(std::max(coeffs_.size(), o.coeffs_.size()), K(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] = v[i] + o.coeffs_[i];
        return Poly(std::move(v));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<K> v(coeffs_.size() + o.coeffs_.size() - 1, K(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeff_is_zero(coeffs_[i])) continue;
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] = v[i + j] + coeffs_[i] * o.coeffs_[j];
        }
        return Poly(std::move(v));
    }
    Poly operator*(const K& c) const {
        Poly r = *this;
        for (auto& x : r.coeffs_) x = x * c;
        r.trim();
        return r;
    }
    bool operator==(const Poly& o) const {
        if (coeffs_.size() != o.coeffs_.size()) return false;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!(coeffs_[i] == o.coeffs_[i])) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Euclidean division; the divisor's leading coefficient must be invertible.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        r = a;
        q = Poly();
        K lc_inv = K(1) / b.leading();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            long d = r.degree() - b.degree();
            K f = r.leading() * lc_inv;
            q = q + monomial(f, d);
            Poly sub = b * monomial(f, d);
            r = r - sub;
        }
    }
    Poly div_exact(const Poly& b) const {
        Poly q, r;
        divmod(*this, b, q, r);
        if (!r.is_zero()) throw DomainError("inexact polynomial division");
        return q;
    }
    Poly rem(const Poly& b) const {
        Poly q, r;
        divmod(*this, b, q, r);
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        K inv = K(1) / leading();
        return *this * inv;
    }

    // gcd(a, 0) = monic(a); result is monic. Over Q a primitive-PRS keeps
    // the coefficients integral and small.
    static Poly gcd(Poly a, Poly b) {
        if constexpr (std::is_same_v<K, Rational>) {
            return gcd_primitive(std::move(a), std::move(b));
        } else {
            while (!b.is_zero()) {
                b = b.monic();
                Poly r = a.rem(b);
                a = b;
                b = r;
            }
            return a.monic();
        }
    }
    static Poly lcm(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        return (a * b).div_exact(gcd(a, b)).monic();
    }

    K eval(const K& x) const {
        K acc = K(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<K> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * K(static_cast<long>(i));
        return Poly(std::move(v));
    }

    // p(n) -> p(a*n + b) for scalars a, b.
    Poly compose_affine(const K& a, const K& b) const {
        Poly lin(std::vector<K>{b, a});
        Poly acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + Poly(*it);
        return acc;
    }
    // p(n) -> p(n + k)
    Poly shift(long k) const { return compose_affine(K(1), K(k)); }

    std::string str(const std::string& var = "n") const;

  private:
    static Poly gcd_primitive(Poly a, Poly b);
    static bool coeff_is_zero(const K& c) { return c == K(0); }
    void trim() {
        while (!coeffs_.empty() && coeff_is_zero(coeffs_.back())) coeffs_.pop_back();
    }
    std::vector<K> coeffs_;
};

template <class K>
inline Poly<K> operator*(const K& c, const Poly<K>& p) {
    return p * c;
}

namespace detail {
inline std::string coeff_str(const Rational& c) { return rat_str(c); }
inline std::string coeff_str(const CycloNumber& c) { return c.str(); }
inline bool coeff_is_negative_literal(const Rational& c) { return c < 0; }
inline bool coeff_is_negative_literal(const CycloNumber& c) {
    auto q = c.as_rational();
    return q && *q < 0;
}
}  // namespace detail

template <class K>
std::string Poly<K>::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long d = degree(); d >= 0; --d) {
        const K& c = coeffs_[static_cast<std::size_t>(d)];
        if (coeff_is_zero(c)) continue;
        K c_abs = c;
        bool neg = detail::coeff_is_negative_literal(c);
        if (neg) c_abs = -c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::string cs = detail::coeff_str(c_abs);
        bool unit = (c_abs == K(1));
        if (d == 0) {
            os << cs;
        } else {
            if (!unit) {
                bool needs_parens = cs.find_first_of("+-*") != std::string::npos;
                os << (needs_parens ? "(" + cs + ")" : cs) << "*";
            }
            os << var;
            if (d > 1) os << "^" << d;
        }
    }
    return os.str();
}

using QPoly = Poly<Rational>;
using CPoly = Poly<CycloNumber>;

// --- Rational-specific helpers ---

namespace detail {
// strips the rational content: integer coefficients with gcd 1, positive lead
inline void make_primitive(std::vector<Rational>& cs) {
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& c : cs) {
        if (c == 0) continue;
        den_lcm = int_lcm(den_lcm, c.get_den());
        num_gcd = int_gcd(num_gcd, c.get_num());
    }
    if (num_gcd == 0) return;
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (cs.back() * scale < 0) scale = -scale;
    for (auto& c : cs) c *= scale;
}
}  // namespace detail

template <class K>
Poly<K> Poly<K>::gcd_primitive(Poly a, Poly b) {
    static_assert(std::is_same_v<K, Rational>);
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    std::vector<Rational> u = a.coeffs(), v = b.coeffs();
    detail::make_primitive(u);
    detail::make_primitive(v);
    if (u.size() < v.size()) std::swap(u, v);
    while (true) {
        // pseudo-remainder of u by v over Z, then content strip
        long du = static_cast<long>(u.size()) - 1;
        long dv = static_cast<long>(v.size()) - 1;
        Rational lead = v.back();
        std::vector<Rational> r = u;
        for (long k = du; k >= dv; --k) {
            Rational top = r[static_cast<std::size_t>(k)];
            if (top == 0) continue;
            // scale r by lead, subtract top * v shifted
            for (auto& c : r) c *= lead;
            for (long i = 0; i <= dv; ++i)
                r[static_cast<std::size_t>(k - dv + i)] -= top * v[static_cast<std::size_t>(i)];
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) break;
        detail::make_primitive(r);
        u = std::move(v);
        v = std::move(r);
        if (static_cast<long>(v.size()) - 1 == 0) return Poly(K(1));
    }
    Poly g{std::vector<Rational>(v.begin(), v.end())};
    return g.monic();
}

// Multiplier m with m*p integer-coefficient and primitive (content 1),
// positive leading coefficient. Returns (primitive integer poly as Poly<Rational>, m).
inline std::pair<Poly<Rational>, Rational> primitive_part(const Poly<Rational>& p) {
    if (p.is_zero()) return {p, Rational(1)};
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& c : p.coeffs()) {
        if (c == 0) continue;
        den_lcm = int_lcm(den_lcm, c.get_den());
        num_gcd = int_gcd(num_gcd, c.get_num());
    }
    Rational m(den_lcm, num_gcd);
    m.canonicalize();
    if (p.leading() * m < 0) m = -m;
    return {p * m, m};
}

inline Poly<Rational> poly_from_longs(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return Poly<Rational>(std::move(v));
}

// p((n - j) / m) cleared to a polynomial by the minimal power of m:
// returns (m^deg(p) * p((n-j)/m), clearing factor m^deg(p)).
inline std::pair<Poly<Rational>, Rational> poly_dilate(const Poly<Rational>& p, long m, long j) {
    if (m < 1) throw DomainError("dilation modulus must be positive");
    if (p.is_zero()) return {p, Rational(1)};
    long deg = p.degree();
    Rational factor = rat_pow(Rational(m), deg);
    // m^deg * p((n-j)/m) = sum_i c_i (n-j)^i m^(deg-i)
    Poly<Rational> lin = poly_from_longs({-j, 1});
    Poly<Rational> acc, pw(Rational(1));
    for (long i = 0; i <= deg; ++i) {
        Rational scale = p[static_cast<std::size_t>(i)] * rat_pow(Rational(m), deg - i);
        acc = acc + pw * scale;
        pw = pw * lin;
    }
    return {acc, factor};
}

inline CycloNumber eval_poly_cyclo(const Poly<Rational>& p, const CycloNumber& x) {
    CycloNumber acc(0);
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + CycloNumber(*it);
    return acc;
}

}  // namespace htseq
