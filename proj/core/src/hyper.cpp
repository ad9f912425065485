#include "htseq/hyper.hpp"

#include <algorithm>
#include <map>

#include "htseq/factor.hpp"

namespace htseq {

namespace {

// all monic divisors of p (products of sub-multiplicities of its factors)
std::vector<QPoly> monic_divisors(const QPoly& p) {
    auto fr = factor_over_Q(p);
    std::vector<QPoly> out{QPoly(Rational(1))};
    for (const auto& [g, mult] : fr.factors) {
        std::vector<QPoly> next;
        QPoly pw(Rational(1));
        for (int e = 0; e <= mult; ++e) {
            for (const auto& d : out) next.push_back(d * pw);
            pw = pw * g;
        }
        out = std::move(next);
    }
    return out;
}

std::string ratio_key(const QRat& r) { return r.str(); }

}  // namespace

namespace {

// f(n) == g(n+h) for some integer h >= 0 (both monic, same degree)?
bool shift_collides(const QPoly& f, const QPoly& g) {
    if (f.degree() != g.degree() || f.degree() < 1) return f == g;
    long k = f.degree();
    // compare the n^{k-1} coefficients: g(n+h) has g_{k-1} + k h there
    Rational h = (f[static_cast<std::size_t>(k - 1)] - g[static_cast<std::size_t>(k - 1)]) / Rational(k);
    if (h < 0 || !is_integer(h)) return false;
    return g.shift(to_long(to_integer(h))) == f;
}

}  // namespace

std::vector<HyperRatio> hyper(const Recurrence& rec) {
    if (rec.step != 1) throw DomainError("hyper expects a step-1 recurrence");
    long d = rec.order();
    if (d < 1) throw DomainError("hyper expects order >= 1");

    std::vector<HyperRatio> out;
    std::map<std::string, bool> seen;

    // Gosper-Petkovsek form: A(n) | P_0(n) and B(n+d-1) | P_d(n),
    // i.e. B(n) | P_d(n-d+1); additionally gcd(A(n), B(n+h)) = 1 for all
    // h >= 0, so factor pairs with f(n) = g(n+h) never occur together.
    FactorResult f0 = factor_over_Q(rec.trailing());
    FactorResult fd = factor_over_Q(rec.leading().shift(-(d - 1)));
    std::vector<QPoly> As = monic_divisors(rec.trailing());
    std::vector<QPoly> Bs_all = monic_divisors(rec.leading().shift(-(d - 1)));

    for (const QPoly& A : As) {
        // B may not contain a factor g with gcd(A(n), g(n+h)) != 1, h >= 0
        std::vector<QPoly> Bs;
        {
            std::vector<const QPoly*> banned;
            for (const auto& [f, mf] : f0.factors) {
                (void)mf;
                if (A.rem(f).is_zero()) {
                    for (const auto& [g, mg] : fd.factors) {
                        (void)mg;
                        if (shift_collides(f, g)) banned.push_back(&g);
                    }
                }
            }
            for (const QPoly& B : Bs_all) {
                bool ok = true;
                for (const QPoly* g : banned)
                    if (B.rem(*g).is_zero()) {
                        ok = false;
                        break;
                    }
                if (ok) Bs.push_back(B);
            }
        }
        std::vector<QPoly> a_pref(static_cast<std::size_t>(d) + 1, QPoly(Rational(1)));
        for (long i = 1; i <= d; ++i)
            a_pref[static_cast<std::size_t>(i)] = a_pref[static_cast<std::size_t>(i - 1)] * A.shift(i - 1);
        for (const QPoly& B : Bs) {
            // Q_i(n) = P_i(n) * prod_{k<i} A(n+k) * prod_{i<=k<d} B(n+k).
            // A and B are monic, so deg Q_i and its leading coefficient are
            // known without forming the products; most pairs admit no
            // rational z and are rejected on that alone.
            long deg_max = -1;
            for (long i = 0; i <= d; ++i) {
                if (rec.coeffs[static_cast<std::size_t>(i)].is_zero()) continue;
                long deg = rec.coeffs[static_cast<std::size_t>(i)].degree() + i * A.degree() +
                           (d - i) * B.degree();
                deg_max = std::max(deg_max, deg);
            }
            std::vector<Rational> alpha(static_cast<std::size_t>(d) + 1, Rational(0));
            for (long i = 0; i <= d; ++i) {
                if (rec.coeffs[static_cast<std::size_t>(i)].is_zero()) continue;
                long deg = rec.coeffs[static_cast<std::size_t>(i)].degree() + i * A.degree() +
                           (d - i) * B.degree();
                if (deg == deg_max) alpha[static_cast<std::size_t>(i)] =
                    rec.coeffs[static_cast<std::size_t>(i)].leading();
            }
            QPoly alpha_poly{std::vector<Rational>(alpha.begin(), alpha.end())};
            if (alpha_poly.is_zero()) continue;
            std::vector<Rational> zs = rational_roots(alpha_poly);
            bool any = false;
            for (const Rational& z : zs) any = any || z != 0;
            if (!any) continue;
            std::vector<QPoly> q(static_cast<std::size_t>(d) + 1);
            std::vector<QPoly> b_suff(static_cast<std::size_t>(d) + 2, QPoly(Rational(1)));
            for (long i = d - 1; i >= 0; --i)
                b_suff[static_cast<std::size_t>(i)] = b_suff[static_cast<std::size_t>(i + 1)] * B.shift(i);
            for (long i = 0; i <= d; ++i)
                q[static_cast<std::size_t>(i)] = rec.coeffs[static_cast<std::size_t>(i)] *
                                                 a_pref[static_cast<std::size_t>(i)] *
                                                 b_suff[static_cast<std::size_t>(i)];
            for (const Rational& z : zs) {
                if (z == 0) continue;
                std::vector<QPoly> op(static_cast<std::size_t>(d) + 1);
                for (long i = 0; i <= d; ++i)
                    op[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i)] * rat_pow(z, i);
                for (const QPoly& c : polynomial_solutions(op)) {
                    QRat ratio = QRat{QPoly(z)} * QRat(A, B) * QRat(c.shift(1), c);
                    std::string key = ratio_key(ratio);
                    if (seen.count(key)) continue;
                    seen[key] = true;
                    out.push_back(HyperRatio{ratio, HyperCertificate{z, A, B, c}});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const HyperRatio& x, const HyperRatio& y) {
        long dx = x.ratio.num().degree() + x.ratio.den().degree();
        long dy = y.ratio.num().degree() + y.ratio.den().degree();
        if (dx != dy) return dx < dy;
        return ratio_key(x.ratio) < ratio_key(y.ratio);
    });
    return out;
}

long safe_anchor(const QRat& ratio) {
    long k0 = 0;
    for (const QPoly* p : {&ratio.num(), &ratio.den()}) {
        if (p->degree() < 1) continue;
        for (const Integer& r : integer_roots(*p))
            if (r >= 0) k0 = std::max(k0, to_long(r) + 1);
    }
    return k0;
}

CycloNumber section_value(const HyperTerm& h, long k) {
    if (k < 0) throw DomainError("section index must be non-negative");
    CycloNumber v = h.anchor_v;
    if (k >= h.anchor_k) {
        for (long u = h.anchor_k; u < k; ++u) {
            auto r = h.ratio.eval(Rational(u));
            if (!r) throw UndefinedValueError("hypergeometric ratio has a pole above its anchor", u);
            v = v * CycloNumber(*r);
        }
        return v;
    }
    // Backward: v(u) = v(u+1)/ratio(u). A pole of the ratio pins v(u) = 0
    // (matching polynomial-certificate sections, whose roots sit below the
    // anchor); a zero ratio with a nonzero value above is not derivable.
    for (long u = h.anchor_k - 1; u >= k; --u) {
        auto r = h.ratio.eval(Rational(u));
        if (!r) {
            v = CycloNumber(0);
            continue;
        }
        if (*r == 0) {
            if (v.is_zero()) continue;
            throw UndefinedValueError("section value not derivable backward through a zero ratio", u);
        }
        v = v / CycloNumber(*r);
    }
    return v;
}

CycloNumber term_value(const HyperTerm& h, long n) {
    if (n < 0) throw DomainError("sequence index must be non-negative");
    if (h.m == 0 || n % h.m != h.j) return CycloNumber(0);
    return section_value(h, (n - h.j) / h.m);
}

std::string HyperTerm::section_str() const {
    if (auto z = ratio.as_constant()) return "(" + rat_str(*z) + ")^k";
    if (cert && cert->a.degree() == 0 && cert->b.degree() == 0) {
        std::string zs = cert->z == 1 ? "" : "(" + rat_str(cert->z) + ")^k * ";
        return zs + "(" + cert->c.str("k") + ")";
    }
    return "h[k; h(k+1)/h(k) = " + ratio.str("k") + ", h(" + std::to_string(anchor_k) + ") = " +
           anchor_v.str() + "]";
}

}  // namespace htseq
