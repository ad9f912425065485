#include "htseq/holonomic.hpp"

#include <algorithm>

#include "htseq/linalg.hpp"

namespace htseq {

namespace {

// Splits a polynomial over Q(zeta_L) into its phi(L) rational coordinate
// polynomials (the rational-coordinate splitting of the dependency solve).
std::vector<QPoly> split_coordinates(const CPoly& p, long order) {
    long phi = euler_phi(order);
    std::vector<std::vector<Rational>> coords(static_cast<std::size_t>(phi));
    for (auto& c : coords) c.assign(p.coeffs().size(), Rational(0));
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        CycloNumber c = p.coeffs()[i].to_order(order);
        for (long t = 0; t < phi; ++t)
            coords[static_cast<std::size_t>(t)][i] = c.coords()[static_cast<std::size_t>(t)];
    }
    std::vector<QPoly> out;
    out.reserve(static_cast<std::size_t>(phi));
    for (auto& v : coords) out.emplace_back(std::move(v));
    return out;
}

CPoly lcm_cpoly(const CPoly& a, const CPoly& b) { return CPoly::lcm(a, b); }

}  // namespace

std::optional<Recurrence> find_recurrence(const ExprPtr& e, long max_order, long step,
                                          std::vector<std::string>* trace) {
    if (step < 1) throw DomainError("shift step must be positive");
    if (needs_normal_form_path(e)) {
        HTSTerm t = expr_to_hts(e);
        Recurrence rec = re_from_normal_form(t);
        if (trace)
            trace->push_back("normal-form input: constructed recurrence " + rec.str());
        return rec;
    }
    MonomialSum ms = to_monomials(e);
    if (ms.is_zero()) {
        // the zero sequence: the difference operator annihilates it
        Recurrence rec = make_recurrence({QPoly(Rational(-1)), QPoly(Rational(1))}, 1);
        if (trace) trace->push_back("expression is identically zero: " + rec.str());
        return rec;
    }
    long order = ms.field_order();
    std::size_t classes = ms.terms.size();

    // comp[j][cl] = coefficient of class cl in e(n + j*step), expressed at n
    std::vector<std::vector<CRat>> comp(1);
    comp[0].resize(classes);
    std::vector<CRat> ratios(classes);
    std::vector<CRat> cumulative(classes, CRat(CycloNumber(1)));  // prod of ratios over [n, n+j*step)
    for (std::size_t cl = 0; cl < classes; ++cl) {
        comp[0][cl] = ms.terms[cl].coeff;
        ratios[cl] = ms.terms[cl].class_ratio();
    }

    for (long bign = 1; bign <= max_order; ++bign) {
        // extend cumulative products by `step` more shifts and add row bign
        comp.emplace_back(classes);
        for (std::size_t cl = 0; cl < classes; ++cl) {
            for (long u = (bign - 1) * step; u < bign * step; ++u)
                cumulative[cl] = cumulative[cl] * ratios[cl].shift(u);
            comp[static_cast<std::size_t>(bign)][cl] =
                ms.terms[cl].coeff.shift(bign * step) * cumulative[cl];
        }
        // equations over Q(n): for each class, comp[N] + sum_k C_k comp[k-1] = 0,
        // split into phi(order) rational coordinate equations
        std::vector<std::vector<QPoly>> a;
        std::vector<QPoly> b;
        for (std::size_t cl = 0; cl < classes; ++cl) {
            CPoly den(CycloNumber(1));
            for (long k = 0; k <= bign; ++k)
                den = lcm_cpoly(den, comp[static_cast<std::size_t>(k)][cl].den());
            std::vector<CPoly> cleared(static_cast<std::size_t>(bign) + 1);
            for (long k = 0; k <= bign; ++k) {
                const CRat& r = comp[static_cast<std::size_t>(k)][cl];
                cleared[static_cast<std::size_t>(k)] = r.num() * den.div_exact(r.den());
            }
            std::vector<std::vector<QPoly>> split(static_cast<std::size_t>(bign) + 1);
            for (long k = 0; k <= bign; ++k)
                split[static_cast<std::size_t>(k)] = split_coordinates(cleared[static_cast<std::size_t>(k)], order);
            long phi = euler_phi(order);
            for (long t = 0; t < phi; ++t) {
                std::vector<QPoly> row(static_cast<std::size_t>(bign));
                bool all_zero = true;
                for (long k = 1; k <= bign; ++k) {
                    row[static_cast<std::size_t>(k - 1)] =
                        split[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(t)];
                    if (!row[static_cast<std::size_t>(k - 1)].is_zero()) all_zero = false;
                }
                QPoly rhs = -split[static_cast<std::size_t>(bign)][static_cast<std::size_t>(t)];
                if (all_zero && rhs.is_zero()) continue;
                a.push_back(std::move(row));
                b.push_back(std::move(rhs));
            }
        }
        auto sol = solve_poly_system(std::move(a), std::move(b));
        if (!sol.consistent) continue;
        // recurrence: e(n + N t) + sum_k C_k e(n + (k-1) t) = 0
        std::vector<QRat> cs = sol.x;
        QPoly den(Rational(1));
        for (const auto& c : cs) den = QPoly::lcm(den, c.den());
        std::vector<QPoly> coeffs(static_cast<std::size_t>(bign) + 1);
        for (long k = 1; k <= bign; ++k) {
            const QRat& c = cs[static_cast<std::size_t>(k - 1)];
            coeffs[static_cast<std::size_t>(k - 1)] = c.num() * den.div_exact(c.den());
        }
        coeffs[static_cast<std::size_t>(bign)] = den;
        Recurrence rec = make_recurrence(std::move(coeffs), step);
        if (trace)
            trace->push_back("found order-" + std::to_string(rec.order()) +
                             (step > 1 ? " (step " + std::to_string(step) + ")" : "") +
                             " recurrence: " + rec.str());
        return rec;
    }
    if (trace)
        trace->push_back("no dependency up to order " + std::to_string(max_order) +
                         (step > 1 ? " at step " + std::to_string(step) : ""));
    return std::nullopt;
}

std::vector<std::vector<QRat>> shift_reduce_table(const Recurrence& rec, long up_to) {
    if (rec.step != 1) throw DomainError("shift_reduce expects a step-1 recurrence");
    long d = rec.order();
    if (up_to < 0) throw DomainError("shift_reduce expects a non-negative shift");
    std::vector<std::vector<QRat>> rows;
    rows.reserve(static_cast<std::size_t>(up_to) + 1);
    for (long k = 0; k <= up_to; ++k) {
        std::vector<QRat> row(static_cast<std::size_t>(d));
        if (k < d) {
            row[static_cast<std::size_t>(k)] = QRat(Rational(1));
        } else {
            // a(n+k) = -sum_i P_i(n+k-d)/P_d(n+k-d) a(n+k-d+i)
            QRat lead{rec.leading().shift(k - d)};
            for (long i = 0; i < d; ++i) {
                QRat ci{rec.coeffs[static_cast<std::size_t>(i)].shift(k - d)};
                if (ci.is_zero()) continue;
                QRat f = -(ci / lead);
                const std::vector<QRat>& base = rows[static_cast<std::size_t>(k - d + i)];
                for (long t = 0; t < d; ++t)
                    if (!base[static_cast<std::size_t>(t)].is_zero())
                        row[static_cast<std::size_t>(t)] =
                            row[static_cast<std::size_t>(t)] + f * base[static_cast<std::size_t>(t)];
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<QRat> shift_reduce(const Recurrence& rec, long n_shift) {
    return shift_reduce_table(rec, n_shift).back();
}

namespace {

// minimal dependency among the given rows (in order), returned as a
// normalized recurrence in the row index
Recurrence dependency_to_recurrence(const std::vector<std::vector<QRat>>& rows) {
    auto [ell, w] = minimal_prefix_dependency(rows);
    if (ell == 0) {
        // first row already zero: the relation is b(k) = 0; represent as
        // b(k+1) - b(k) = 0 joined with b(k) = 0 is degenerate, so reject
        throw DomainError("degenerate section: leading row vanished");
    }
    // rows[ell] = sum_{i<ell} w_i rows[i]  ->  b(k+ell) - sum w_i b(k+i) = 0
    QPoly den(Rational(1));
    for (const auto& c : w) den = QPoly::lcm(den, c.den());
    std::vector<QPoly> coeffs(ell + 1);
    for (std::size_t i = 0; i < ell; ++i) coeffs[i] = -(w[i].num() * den.div_exact(w[i].den()));
    coeffs[ell] = den;
    return make_recurrence(std::move(coeffs), 1);
}

}  // namespace

Recurrence m_section_cached(const std::vector<std::vector<QRat>>& table, long order, long m, long j) {
    std::vector<std::vector<QRat>> rows;
    rows.reserve(static_cast<std::size_t>(order) + 1);
    for (long i = 0; i <= order; ++i) {
        std::vector<QRat> row = table[static_cast<std::size_t>(i * m)];
        // evaluate at n = m*k + j
        for (auto& entry : row)
            entry = entry.compose_affine(Rational(m), Rational(j));
        rows.push_back(std::move(row));
    }
    return dependency_to_recurrence(rows);
}

Recurrence m_section(const Recurrence& rec, long m, long j) {
    if (rec.step != 1) throw DomainError("m_section expects a step-1 recurrence");
    if (m < 1 || j < 0 || j >= m) throw DomainError("m_section expects 0 <= j < m");
    if (m == 1) return rec;
    long d = rec.order();
    return m_section_cached(shift_reduce_table(rec, d * m), d, m, j);
}

Recurrence sum_closure(const Recurrence& r1, const Recurrence& r2) {
    if (r1.step != 1 || r2.step != 1) throw DomainError("sum_closure expects step-1 recurrences");
    long d1 = r1.order(), d2 = r2.order();
    std::vector<std::vector<QRat>> rows;
    rows.reserve(static_cast<std::size_t>(d1 + d2) + 1);
    for (long k = 0; k <= d1 + d2; ++k) {
        std::vector<QRat> u = shift_reduce(r1, k);
        std::vector<QRat> v = shift_reduce(r2, k);
        std::vector<QRat> row;
        row.reserve(static_cast<std::size_t>(d1 + d2));
        for (auto& x : u) row.push_back(std::move(x));
        for (auto& x : v) row.push_back(std::move(x));
        rows.push_back(std::move(row));
    }
    return dependency_to_recurrence(rows);
}

Recurrence re_from_normal_form(const HTSTerm& t) {
    if (t.is_zero()) return make_recurrence({QPoly(Rational(-1)), QPoly(Rational(1))}, 1);
    std::optional<Recurrence> combined;
    for (const auto& comp : t.components) {
        long m = comp.chi.m;
        long j = comp.chi.j;
        // annihilator of the coefficient combination in the section variable
        std::optional<Recurrence> section_rec;
        for (const auto& ct : comp.coeff) {
            // h(k+1) den(k) - num(k) h(k) = 0
            Recurrence piece = make_recurrence({-ct.term.ratio.num(), ct.term.ratio.den()}, 1);
            section_rec = section_rec ? sum_closure(*section_rec, piece) : piece;
        }
        // dilate indices: k -> (n - j)/m turns b(k+i) into a(n + i*m)
        std::vector<QPoly> coeffs(section_rec->coeffs.size());
        long maxdeg = 0;
        for (const auto& p : section_rec->coeffs) maxdeg = std::max(maxdeg, p.degree());
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            auto [dil, factor] = poly_dilate(section_rec->coeffs[i], m, j);
            (void)factor;
            // rescale all to the common clearing factor m^maxdeg
            coeffs[i] = dil * rat_pow(Rational(m), maxdeg - section_rec->coeffs[i].degree());
        }
        Recurrence comp_rec = make_recurrence(std::move(coeffs), m).to_step1();
        combined = combined ? sum_closure(*combined, comp_rec) : comp_rec;
    }
    return *combined;
}

}  // namespace htseq
