#include "htseq/factor.hpp"

#include <algorithm>
#include <numeric>

namespace htseq {

namespace {

// --- integer polynomials (lowest degree first) ---

using ZPoly = std::vector<Integer>;

void zp_trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qp_from_z(const ZPoly& p) {
    std::vector<Rational> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = Rational(p[i]);
    return QPoly(std::move(v));
}

ZPoly zp_from_q(const QPoly& p) {
    auto [prim, mult] = primitive_part(p);
    (void)mult;
    ZPoly z(prim.coeffs().size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = to_integer(prim.coeffs()[i]);
    return z;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    zp_trim(c);
    return c;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly c(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    zp_trim(c);
    return c;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
    ZPoly c(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    zp_trim(c);
    return c;
}

// symmetric representatives in (-q/2, q/2]
ZPoly zp_mod(const ZPoly& f, const Integer& q) {
    ZPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        r[i] = f[i] % q;
        if (r[i] < 0) r[i] += q;
        if (2 * r[i] > q) r[i] -= q;
    }
    zp_trim(r);
    return r;
}

// division by a monic divisor
void zp_divmod_monic(const ZPoly& a, const ZPoly& b, ZPoly& q, ZPoly& r) {
    r = a;
    zp_trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 1, Integer(0));
    while (r.size() >= b.size() && !r.empty()) {
        Integer f = r.back();
        std::size_t off = r.size() - b.size();
        q[off] = f;
        for (std::size_t i = 0; i < b.size(); ++i) r[off + i] -= f * b[i];
        zp_trim(r);
    }
    zp_trim(q);
}

bool zp_divides(const ZPoly& f, const ZPoly& g) {
    if (g.empty()) return false;
    QPoly q, r;
    QPoly::divmod(qp_from_z(f), qp_from_z(g), q, r);
    return r.is_zero();
}

// --- polynomials modulo a small odd prime ---

struct ModP {
    long p;
    long add(long a, long b) const { return (a + b) % p; }
    long sub(long a, long b) const { return ((a - b) % p + p) % p; }
    long mul(long a, long b) const { return static_cast<long>(static_cast<__int128>(a) * b % p); }
    long inv(long a) const {
        long t = 0, new_t = 1, r = p, new_r = ((a % p) + p) % p;
        while (new_r != 0) {
            long q = r / new_r;
            long tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        return ((t % p) + p) % p;
    }
};

using PPoly = std::vector<long>;

void pp_trim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PPoly pp_from_z(const ZPoly& f, const ModP& m) {
    PPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Integer c = f[i] % Integer(m.p);
        if (c < 0) c += m.p;
        r[i] = to_long(c);
    }
    pp_trim(r);
    return r;
}

ZPoly zp_from_pp(const PPoly& f, long p) {
    ZPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Integer c(f[i]);
        if (2 * c > p) c -= p;
        r[i] = c;
    }
    zp_trim(r);
    return r;
}

PPoly pp_mul(const PPoly& a, const PPoly& b, const ModP& m) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = m.add(c[i + j], m.mul(a[i], b[j]));
    pp_trim(c);
    return c;
}

void pp_divmod(const PPoly& a, const PPoly& b, PPoly& q, PPoly& r, const ModP& m) {
    r = a;
    pp_trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 1, 0);
    long lc_inv = m.inv(b.back());
    while (r.size() >= b.size() && !r.empty()) {
        long f = m.mul(r.back(), lc_inv);
        std::size_t off = r.size() - b.size();
        q[off] = f;
        for (std::size_t i = 0; i < b.size(); ++i) r[off + i] = m.sub(r[off + i], m.mul(f, b[i]));
        pp_trim(r);
    }
    pp_trim(q);
}

PPoly pp_rem(const PPoly& a, const PPoly& b, const ModP& m) {
    PPoly q, r;
    pp_divmod(a, b, q, r, m);
    return r;
}

PPoly pp_monic(PPoly f, const ModP& m) {
    pp_trim(f);
    if (f.empty()) return f;
    long inv = m.inv(f.back());
    for (auto& c : f) c = m.mul(c, inv);
    return f;
}

PPoly pp_gcd(PPoly a, PPoly b, const ModP& m) {
    pp_trim(a);
    pp_trim(b);
    while (!b.empty()) {
        PPoly r = pp_rem(a, b, m);
        a = b;
        b = r;
    }
    return pp_monic(a, m);
}

PPoly pp_deriv(const PPoly& f, const ModP& m) {
    if (f.size() <= 1) return {};
    PPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = m.mul(f[i], static_cast<long>(i % m.p));
    pp_trim(d);
    return d;
}

PPoly pp_powmod(PPoly base, Integer e, const PPoly& mod, const ModP& m) {
    PPoly acc{1};
    base = pp_rem(base, mod, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = pp_rem(pp_mul(acc, base, m), mod, m);
        base = pp_rem(pp_mul(base, base, m), mod, m);
        e /= 2;
    }
    return acc;
}

// extended gcd for coprime a, b: s*a + t*b = 1
void pp_ext_gcd(const PPoly& a, const PPoly& b, PPoly& s, PPoly& t, const ModP& m) {
    PPoly r0 = a, r1 = b;
    PPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        PPoly q, r;
        pp_divmod(r0, r1, q, r, m);
        PPoly qs = pp_mul(q, s1, m), qt = pp_mul(q, t1, m);
        PPoly s2 = s0, t2 = t0;
        s2.resize(std::max(s2.size(), qs.size()), 0);
        t2.resize(std::max(t2.size(), qt.size()), 0);
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = m.sub(s2[i], qs[i]);
        for (std::size_t i = 0; i < qt.size(); ++i) t2[i] = m.sub(t2[i], qt[i]);
        pp_trim(s2);
        pp_trim(t2);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.size() != 1) throw Error("internal: pp_ext_gcd on non-coprime inputs");
    long inv = m.inv(r0[0]);
    s = s0;
    t = t0;
    for (auto& c : s) c = m.mul(c, inv);
    for (auto& c : t) c = m.mul(c, inv);
}

// Berlekamp factorization of a monic squarefree polynomial over F_p.
std::vector<PPoly> berlekamp(const PPoly& f, const ModP& m) {
    std::size_t n = f.size() - 1;
    if (n <= 1) return {f};
    std::vector<std::vector<long>> mat(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        PPoly xpi = pp_powmod(PPoly{0, 1}, Integer(m.p) * static_cast<long>(i), f, m);
        for (std::size_t j = 0; j < xpi.size(); ++j) mat[j][i] = xpi[j];  // column i = x^{p i}
    }
    for (std::size_t i = 0; i < n; ++i) mat[i][i] = m.sub(mat[i][i], 1);  // Q^T - I acting on coeff vectors
    // nullspace of mat (v with mat*v = 0 <=> v(x)^p = v(x) mod f)
    std::vector<long> pivot_of_col(n, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
        std::size_t p = r;
        while (p < n && mat[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(mat[p], mat[r]);
        long inv = m.inv(mat[r][c]);
        for (std::size_t j = 0; j < n; ++j) mat[r][j] = m.mul(mat[r][j], inv);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || mat[i][c] == 0) continue;
            long f2 = mat[i][c];
            for (std::size_t j = 0; j < n; ++j) mat[i][j] = m.sub(mat[i][j], m.mul(f2, mat[r][j]));
        }
        pivot_of_col[c] = static_cast<long>(r);
        ++r;
    }
    std::vector<PPoly> basis;
    for (std::size_t c = 0; c < n; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        PPoly v(n, 0);
        v[c] = 1;
        for (std::size_t c2 = 0; c2 < n; ++c2) {
            long pr = pivot_of_col[c2];
            if (pr >= 0) v[c2] = m.sub(0, mat[static_cast<std::size_t>(pr)][c]);
        }
        pp_trim(v);
        basis.push_back(std::move(v));
    }
    std::size_t k = basis.size();  // the number of irreducible factors
    std::vector<PPoly> factors{pp_monic(f, m)};
    for (const auto& v : basis) {
        if (factors.size() >= k) break;
        if (v.size() <= 1) continue;  // constants split nothing
        std::vector<PPoly> next;
        for (const auto& g : factors) {
            if (g.size() <= 2) {
                next.push_back(g);
                continue;
            }
            PPoly rest = g;
            for (long s = 0; s < m.p && rest.size() > 2; ++s) {
                PPoly vs = v;
                vs[0] = m.sub(vs[0], s);
                pp_trim(vs);
                PPoly d = pp_gcd(rest, vs, m);
                if (d.size() > 1 && d.size() < rest.size()) {
                    next.push_back(d);
                    PPoly q, rr;
                    pp_divmod(rest, d, q, rr, m);
                    rest = pp_monic(q, m);
                }
            }
            next.push_back(rest);
        }
        factors = std::move(next);
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

// --- Hensel lifting (quadratic, binary tree over the modular factors) ---

struct LiftPair {
    ZPoly g, h, s, t;
};

// f = g*h, s*g + t*h = 1 (mod q), g and h monic  ->  same mod q^2.
void hensel_step(const ZPoly& f, LiftPair& lp, const Integer& q) {
    Integer q2 = q * q;
    ZPoly e = zp_mod(zp_sub(f, zp_mul(lp.g, lp.h)), q2);
    ZPoly q1, r1;
    zp_divmod_monic(zp_mul(lp.s, e), lp.h, q1, r1);
    ZPoly g_new = zp_mod(zp_add(lp.g, zp_add(zp_mul(lp.t, e), zp_mul(q1, lp.g))), q2);
    ZPoly h_new = zp_mod(zp_add(lp.h, r1), q2);
    ZPoly b = zp_mod(zp_sub(zp_add(zp_mul(lp.s, g_new), zp_mul(lp.t, h_new)), ZPoly{Integer(1)}), q2);
    ZPoly q2p, r2;
    zp_divmod_monic(zp_mul(lp.s, b), h_new, q2p, r2);
    ZPoly s_new = zp_mod(zp_sub(lp.s, r2), q2);
    ZPoly t_new = zp_mod(zp_sub(lp.t, zp_add(zp_mul(lp.t, b), zp_mul(q2p, g_new))), q2);
    lp = {g_new, h_new, s_new, t_new};
}

// Lifts monic f = prod(factors) from mod p to mod p^{2^rounds}.
std::vector<ZPoly> hensel_lift_tree(const ZPoly& f, const std::vector<PPoly>& factors, const ModP& m,
                                    int rounds) {
    if (factors.size() == 1) return {f};
    std::size_t half = factors.size() / 2;
    PPoly gp{1}, hp{1};
    for (std::size_t i = 0; i < half; ++i) gp = pp_mul(gp, factors[i], m);
    for (std::size_t i = half; i < factors.size(); ++i) hp = pp_mul(hp, factors[i], m);
    PPoly sp, tp;
    pp_ext_gcd(gp, hp, sp, tp, m);
    LiftPair lp{zp_from_pp(gp, m.p), zp_from_pp(hp, m.p), zp_from_pp(sp, m.p), zp_from_pp(tp, m.p)};
    Integer q(m.p);
    for (int i = 0; i < rounds; ++i) {
        hensel_step(f, lp, q);
        q = q * q;
    }
    std::vector<PPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<PPoly> right(factors.begin() + static_cast<long>(half), factors.end());
    std::vector<ZPoly> out = hensel_lift_tree(lp.g, left, m, rounds);
    std::vector<ZPoly> out2 = hensel_lift_tree(lp.h, right, m, rounds);
    out.insert(out.end(), out2.begin(), out2.end());
    return out;
}

// Factors a primitive squarefree integer polynomial of degree >= 1 into
// irreducible primitive integer polynomials.
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f) {
    if (f.size() <= 2) return {f};
    Integer lc = f.back();
    std::size_t deg = f.size() - 1;

    // monicize: fstar(x) = lc^{deg-1} * f(x/lc) has integer coefficients
    ZPoly fstar(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        long e = static_cast<long>(deg) - 1 - static_cast<long>(i);
        fstar[i] = (e >= 0) ? Integer(f[i] * int_pow(lc, static_cast<unsigned long>(e))) : Integer(1);
    }
    fstar[deg] = 1;

    // prime choice: p odd, p does not divide lc, fstar squarefree mod p
    static const long primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31,  37,  41,  43, 47,
                                  53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109};
    ModP m{0};
    PPoly fp;
    bool found = false;
    for (long p : primes) {
        if (lc % p == 0) continue;
        m.p = p;
        fp = pp_from_z(fstar, m);
        if (fp.size() != fstar.size()) continue;  // degree dropped (cannot happen: monic)
        PPoly g = pp_gcd(fp, pp_deriv(fp, m), m);
        if (g.size() == 1) {
            found = true;
            break;
        }
    }
    if (!found) throw Error("factorization: no suitable prime found");

    std::vector<PPoly> mod_factors = berlekamp(pp_monic(fp, m), m);
    if (mod_factors.size() == 1) return {f};  // irreducible mod p => irreducible over Z

    // lift beyond twice the coefficient bound for factors of fstar
    Integer height = 0;
    for (const auto& c : fstar) height += abs(c);
    Integer bound = (Integer(1) << deg) * height;
    int rounds = 0;
    {
        Integer q(m.p);
        while (q <= 2 * bound) {
            q = q * q;
            ++rounds;
        }
    }
    std::vector<ZPoly> lifted = hensel_lift_tree(fstar, mod_factors, m, rounds);
    Integer qk(m.p);
    for (int i = 0; i < rounds; ++i) qk = qk * qk;

    // subset recombination over the monic fstar
    std::vector<ZPoly> star_factors;
    ZPoly rest = fstar;
    std::vector<ZPoly> pool = lifted;
    std::vector<bool> used(pool.size(), false);
    std::size_t live = pool.size();
    for (std::size_t take = 1; take <= live; ++take) {
        bool progress = true;
        while (progress && take <= live) {
            progress = false;
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (!used[i]) idx.push_back(i);
            if (take > idx.size()) break;
            std::vector<std::size_t> comb(take);
            std::iota(comb.begin(), comb.end(), 0);
            while (true) {
                ZPoly cand{Integer(1)};
                for (std::size_t t = 0; t < take; ++t) cand = zp_mul(cand, pool[idx[comb[t]]]);
                cand = zp_mod(cand, qk);
                if (zp_divides(rest, cand)) {
                    star_factors.push_back(cand);
                    rest = zp_from_q(qp_from_z(rest).div_exact(qp_from_z(cand)));
                    for (std::size_t t = 0; t < take; ++t) used[idx[comb[t]]] = true;
                    live -= take;
                    progress = true;
                    break;
                }
                long pos = static_cast<long>(take) - 1;
                while (pos >= 0 &&
                       comb[static_cast<std::size_t>(pos)] == idx.size() - take + static_cast<std::size_t>(pos))
                    --pos;
                if (pos < 0) break;
                ++comb[static_cast<std::size_t>(pos)];
                for (std::size_t t = static_cast<std::size_t>(pos) + 1; t < take; ++t) comb[t] = comb[t - 1] + 1;
            }
        }
    }
    if (rest.size() > 1) star_factors.push_back(rest);

    // undo x -> x/lc: a monic factor G of fstar maps to primitive(G(lc*x)) | f
    std::vector<ZPoly> out;
    for (const auto& g : star_factors) {
        QPoly glc = qp_from_z(g).compose_affine(Rational(lc), Rational(0));
        out.push_back(zp_from_q(glc));
    }
    return out;
}

}  // namespace

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& a) {
    std::vector<std::pair<QPoly, int>> out;
    QPoly f = a.monic();
    if (f.degree() <= 0) return out;
    QPoly fp = f.derivative();
    QPoly g = QPoly::gcd(f, fp);
    QPoly c = f.div_exact(g);
    QPoly d = fp.div_exact(g) - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        QPoly p = QPoly::gcd(c, d);
        if (p.degree() > 0) out.emplace_back(p.monic(), i);
        c = c.div_exact(p);
        d = d.div_exact(p) - c.derivative();
        ++i;
    }
    return out;
}

FactorResult factor_over_Q(const QPoly& a) {
    if (a.is_zero()) throw DomainError("factorization of the zero polynomial");
    if (a.degree() > kFactorDegreeCap)
        throw CapacityError("factorization degree cap exceeded: " + std::to_string(a.degree()));
    FactorResult res;
    res.content = a.leading();
    if (a.degree() == 0) return res;
    QPoly check(Rational(1));
    for (auto& [part, mult] : squarefree_decomposition(a)) {
        ZPoly z = zp_from_q(part);
        for (auto& g : factor_squarefree_z(z)) {
            QPoly gq = qp_from_z(g).monic();
            res.factors.emplace_back(gq, mult);
            for (int t = 0; t < mult; ++t) check = check * gq;
        }
    }
    std::sort(res.factors.begin(), res.factors.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        const auto& xc = x.first.coeffs();
        const auto& yc = y.first.coeffs();
        for (std::size_t i = xc.size(); i-- > 0;)
            if (xc[i] != yc[i]) return xc[i] < yc[i];
        return x.second < y.second;
    });
    if (!(check * res.content == a)) throw Error("internal: factorization does not multiply back");
    return res;
}

std::vector<Integer> integer_roots(const QPoly& a) {
    if (a.is_zero()) throw DomainError("integer roots of the zero polynomial");
    std::vector<Integer> roots;
    auto [prim, mult] = primitive_part(a);
    (void)mult;
    std::vector<Rational> cs = prim.coeffs();
    std::size_t k = 0;
    while (k < cs.size() && cs[k] == 0) ++k;
    if (k > 0) roots.push_back(Integer(0));
    QPoly p(std::vector<Rational>(cs.begin() + static_cast<long>(k), cs.end()));
    if (p.degree() >= 1) {
        Integer trailing = to_integer(p.coeffs()[0]);
        for (const Integer& d : divisors(trailing)) {
            for (int sign : {1, -1}) {
                Integer cand = sign * d;
                if (p.eval(Rational(cand)) == 0) roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<Rational> rational_roots(const QPoly& a) {
    std::vector<Rational> roots;
    for (const auto& [g, mult] : factor_over_Q(a).factors) {
        (void)mult;
        if (g.degree() == 1) roots.push_back(-g.coeffs()[0]);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<QPoly> polynomial_solutions(const std::vector<QPoly>& coeffs) {
    long d = static_cast<long>(coeffs.size()) - 1;
    long b = -1;
    for (const auto& c : coeffs) b = std::max(b, c.degree());
    if (b < 0) return {};

    auto binom_poly = [](long t) {
        QPoly num(Rational(1));
        Rational fact(1);
        for (long u = 0; u < t; ++u) {
            num = num * QPoly(std::vector<Rational>{Rational(-u), Rational(1)});
            fact *= Rational(u + 1);
        }
        return num * (Rational(1) / fact);
    };

    // Degree bound: first non-vanishing asymptotic layer of L(n^e).
    long degree_bound = -1;
    bool layer_found = false;
    for (long s = 0; s <= b + d + 2 && !layer_found; ++s) {
        QPoly phi;
        for (long i = 0; i <= d; ++i) {
            const QPoly& ci = coeffs[static_cast<std::size_t>(i)];
            for (long t = 0; t <= s; ++t) {
                long u = s - t;
                if (b - u < 0 || b - u > ci.degree()) continue;
                Rational coef = ci[static_cast<std::size_t>(b - u)];
                if (coef == 0) continue;
                phi = phi + binom_poly(t) * (coef * rat_pow(Rational(i), t));
            }
        }
        if (phi.is_zero()) continue;
        layer_found = true;
        for (const Integer& root : integer_roots(phi))
            if (root >= 0) degree_bound = std::max(degree_bound, to_long(root));
    }
    if (layer_found && degree_bound < 0) return {};
    if (!layer_found) degree_bound = b + d + 8;

    long ncols = degree_bound + 1;
    long nrows = b + degree_bound + 1;
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(nrows),
                                         std::vector<Rational>(static_cast<std::size_t>(ncols), Rational(0)));
    for (long j = 0; j <= degree_bound; ++j) {
        QPoly img;
        for (long i = 0; i <= d; ++i)
            img = img + coeffs[static_cast<std::size_t>(i)] * QPoly::monomial(Rational(1), j).shift(i);
        for (long r = 0; r < nrows; ++r)
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = img[static_cast<std::size_t>(r)];
    }

    std::size_t rows = m.size(), cols = static_cast<std::size_t>(ncols);
    std::vector<long> pivot_of_col(cols, -1);
    std::size_t rr = 0;
    for (std::size_t c = 0; c < cols && rr < rows; ++c) {
        std::size_t p = rr;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rr]);
        Rational inv = Rational(1) / m[rr][c];
        for (std::size_t j = 0; j < cols; ++j) m[rr][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rr || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[rr][j];
        }
        pivot_of_col[c] = static_cast<long>(rr);
        ++rr;
    }
    std::vector<QPoly> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[c] = 1;
        for (std::size_t c2 = 0; c2 < cols; ++c2) {
            long pr = pivot_of_col[c2];
            if (pr >= 0) v[c2] = -m[static_cast<std::size_t>(pr)][c];
        }
        auto [prim, mult] = primitive_part(QPoly(std::move(v)));
        (void)mult;
        basis.push_back(prim);
    }
    std::sort(basis.begin(), basis.end(), [](const QPoly& x, const QPoly& y) {
        if (x.degree() != y.degree()) return x.degree() < y.degree();
        const auto& xc = x.coeffs();
        const auto& yc = y.coeffs();
        for (std::size_t i = xc.size(); i-- > 0;)
            if (xc[i] != yc[i]) return xc[i] < yc[i];
        return false;
    });
    return basis;
}

}  // namespace htseq
