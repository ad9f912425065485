#pragma once

#include <optional>
#include <vector>

#include "htseq/ratfunc.hpp"

namespace htseq {

// --- exact linear algebra over Q ---

// Reduced-echelon solve; free variables are set to 0 (the canonical choice
// used throughout). Returns nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> a,
                                                           std::vector<Rational> b) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::vector<long> pivot_col(rows, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Rational inv = Rational(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col[r] = static_cast<long>(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i) x[static_cast<std::size_t>(pivot_col[i])] = b[i];
    return x;
}

// Incremental rank of a growing set of rational rows.
class RankTracker {
  public:
    explicit RankTracker(std::size_t cols) : cols_(cols) {}

    long rank() const { return static_cast<long>(rows_.size()); }

    // Reduces the row against the current echelon; if independent, absorbs it
    // and returns true.
    bool add(std::vector<Rational> row) {
        reduce(row);
        std::size_t p = first_nonzero(row);
        if (p == cols_) return false;
        Rational inv = Rational(1) / row[p];
        for (auto& x : row) x *= inv;
        for (auto& er : rows_) {
            if (er.second[p] == 0) continue;
            Rational f = er.second[p];
            for (std::size_t j = 0; j < cols_; ++j) er.second[j] -= f * row[j];
        }
        rows_.emplace_back(p, std::move(row));
        return true;
    }

    bool would_increase(std::vector<Rational> row) const {
        reduce(row);
        return first_nonzero(row) != cols_;
    }

  private:
    void reduce(std::vector<Rational>& row) const {
        for (const auto& er : rows_) {
            if (row[er.first] == 0) continue;
            Rational f = row[er.first];
            for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * er.second[j];
        }
    }
    std::size_t first_nonzero(const std::vector<Rational>& row) const {
        std::size_t p = 0;
        while (p < cols_ && row[p] == 0) ++p;
        return p;
    }
    std::size_t cols_;
    std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;  // (pivot, row)
};

// --- exact linear algebra over Q(n) ---

struct QnSolveResult {
    bool consistent = false;
    long rank = 0;
    bool unique = false;
    std::vector<QRat> x;  // free variables set to 0
};

// Clears the denominators of one equation (row and its right-hand side).
inline void clear_row(const std::vector<QRat>& row, const QRat& rhs, std::vector<QPoly>& row_out,
                      QPoly& rhs_out) {
    QPoly common(Rational(1));
    for (const auto& e : row) common = QPoly::lcm(common, e.den());
    common = QPoly::lcm(common, rhs.den());
    row_out.clear();
    row_out.reserve(row.size());
    for (const auto& e : row) row_out.push_back(e.num() * common.div_exact(e.den()));
    rhs_out = rhs.num() * common.div_exact(rhs.den());
}

// Fraction-free Gaussian elimination with per-row content removal, then
// back-substitution over Q(n). Solves A x = b for x over the rational
// function field.
inline QnSolveResult solve_poly_system(std::vector<std::vector<QPoly>> a, std::vector<QPoly> b) {
    QnSolveResult res;
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;

    auto normalize_row = [&](std::size_t i) {
        // divide the whole equation by the gcd of rational contents
        Integer num_gcd = 0;
        Integer den_lcm = 1;
        auto absorb = [&](const QPoly& p) {
            for (const auto& c : p.coeffs()) {
                if (c == 0) continue;
                num_gcd = int_gcd(num_gcd, c.get_num());
                den_lcm = int_lcm(den_lcm, c.get_den());
            }
        };
        for (const auto& p : a[i]) absorb(p);
        absorb(b[i]);
        if (num_gcd == 0) return;
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (scale == 1) return;
        for (auto& p : a[i]) p = p * scale;
        b[i] = b[i] * scale;
    };
    for (std::size_t i = 0; i < rows; ++i) normalize_row(i);

    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // pick the nonzero pivot of minimal degree to limit growth
        std::size_t best = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a[i][c].is_zero()) continue;
            if (best == rows || a[i][c].degree() < a[best][c].degree()) best = i;
        }
        if (best == rows) continue;
        std::swap(a[best], a[r]);
        std::swap(b[best], b[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c].is_zero()) continue;
            QPoly f = a[i][c];
            QPoly p = a[r][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = a[i][j] * p - a[r][j] * f;
            b[i] = b[i] * p - b[r] * f;
            normalize_row(i);
        }
        pivots.emplace_back(r, c);
        ++r;
    }
    res.rank = static_cast<long>(pivots.size());
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return res;  // inconsistent
    res.consistent = true;
    res.unique = (res.rank == static_cast<long>(cols));
    res.x.assign(cols, QRat());
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        auto [pr, pc] = *it;
        QRat acc{b[pr]};
        for (std::size_t j = pc + 1; j < cols; ++j) {
            if (a[pr][j].is_zero() || res.x[j].is_zero()) continue;
            acc = acc - QRat(a[pr][j]) * res.x[j];
        }
        res.x[pc] = acc / QRat(a[pr][pc]);
    }
    return res;
}

inline QnSolveResult solve_qn(const std::vector<std::vector<QRat>>& a, const std::vector<QRat>& b) {
    std::vector<std::vector<QPoly>> pa(a.size());
    std::vector<QPoly> pb(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) clear_row(a[i], b[i], pa[i], pb[i]);
    return solve_poly_system(std::move(pa), std::move(pb));
}

// Smallest l >= 0 such that rows[l] is a Q(n)-combination of rows[0..l-1];
// returns (l, w) with rows[l] = sum_i w[i] * rows[i]. Always exists when
// more rows than columns are supplied. Single augmented elimination pass.
inline std::pair<std::size_t, std::vector<QRat>> minimal_prefix_dependency(
    const std::vector<std::vector<QRat>>& rows) {
    std::size_t dim = rows.empty() ? 0 : rows[0].size();
    // echelon rows with pivot columns, plus the expression of each echelon
    // row in terms of the original rows
    std::vector<std::vector<QRat>> ech;
    std::vector<std::vector<QRat>> expr;
    std::vector<std::size_t> pivot;
    for (std::size_t l = 0; l < rows.size(); ++l) {
        std::vector<QRat> r = rows[l];
        std::vector<QRat> t(rows.size());
        t[l] = QRat(Rational(1));
        for (std::size_t e = 0; e < ech.size(); ++e) {
            const QRat& lead = r[pivot[e]];
            if (lead.is_zero()) continue;
            QRat f = lead;  // echelon rows are pivot-normalized to 1
            for (std::size_t c = 0; c < dim; ++c)
                if (!ech[e][c].is_zero()) r[c] = r[c] - f * ech[e][c];
            for (std::size_t c = 0; c <= l; ++c)
                if (!expr[e][c].is_zero()) t[c] = t[c] - f * expr[e][c];
        }
        std::size_t p = 0;
        while (p < dim && r[p].is_zero()) ++p;
        if (p == dim) {
            // rows[l] = -sum_{i<l} t[i] rows[i]
            std::vector<QRat> w(l);
            for (std::size_t i = 0; i < l; ++i) w[i] = -t[i];
            return {l, w};
        }
        QRat inv = QRat(Rational(1)) / r[p];
        for (auto& c : r) c = c * inv;
        for (auto& c : t) c = c * inv;
        ech.push_back(std::move(r));
        expr.push_back(std::move(t));
        pivot.push_back(p);
    }
    throw Error("internal: no prefix dependency found (more rows than dimension expected)");
}

}  // namespace htseq
