#include "htseq/mfold.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "htseq/holonomic.hpp"
#include "htseq/linalg.hpp"
#include "json.hpp"

namespace htseq {

namespace {

// Does the masked piece h((n-j)/m) * chi(n mod m = j) solve the step-1
// recurrence exactly? Checked symbolically: on each residue class c of n,
// the residual collapses to (rational function in the section variable) * h(k)
// and must vanish identically.
bool piece_solves(const Recurrence& rec, long m, long j, const QRat& ratio) {
    long d = rec.order();
    for (long c = 0; c < m; ++c) {
        QRat residual;
        for (long i = 0; i <= d; ++i) {
            if (((c + i) % m + m) % m != j % m) continue;
            if (rec.coeffs[static_cast<std::size_t>(i)].is_zero()) continue;
            long off = (c + i - j) / m;  // >= 0
            QRat telescope(Rational(1));
            for (long u = 0; u < off; ++u) telescope = telescope * ratio.shift(u);
            QRat pi{rec.coeffs[static_cast<std::size_t>(i)].compose_affine(Rational(m), Rational(c))};
            residual = residual + pi * telescope;
        }
        if (!residual.is_zero()) return false;
    }
    return true;
}

std::string ratio_key(const QRat& r) { return r.str("k"); }

struct Candidate {
    long m;
    long j;
    QRat ratio;
    std::optional<HyperCertificate> cert;
};

}  // namespace

SolutionBasis mfold_hyper(const Recurrence& rec0, long max_m) {
    Recurrence rec = rec0.to_step1();
    long d = rec.order();
    if (max_m <= 0) max_m = d;
    max_m = std::min(max_m, kMaxFold);
    max_m = std::max(max_m, 1L);

    // candidate ratios per fold (pooled over remainders); the reduction rows
    // are shared across all sections
    std::vector<std::vector<QRat>> table = shift_reduce_table(rec, d * max_m);
    std::map<long, std::map<std::string, HyperRatio>> per_fold;
    for (long m = 1; m <= max_m; ++m) {
        for (long j = 0; j < m; ++j) {
            Recurrence sec;
            try {
                sec = m == 1 ? rec : m_section_cached(table, d, m, j);
            } catch (const DomainError&) {
                continue;  // degenerate section contributes nothing
            }
            for (auto& hr : hyper(sec)) {
                per_fold[m].emplace(ratio_key(hr.ratio), hr);
            }
            if (m == 1) break;
        }
    }

    // keep (m, ratio, j) pieces that exactly solve the recurrence
    std::vector<Candidate> candidates;
    std::set<long> folds;
    for (auto& [m, ratios] : per_fold) {
        for (auto& [key, hr] : ratios) {
            for (long j = 0; j < m; ++j) {
                if (!piece_solves(rec, m, j, hr.ratio)) continue;
                candidates.push_back(Candidate{m, j, hr.ratio, hr.cert});
                folds.insert(m);
            }
        }
    }

    // greedy independent family, larger folds first (a smaller fold whose
    // masked pieces are spanned by larger-fold sections is redundant)
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.m != b.m) return a.m > b.m;
        std::string ka = ratio_key(a.ratio), kb = ratio_key(b.ratio);
        if (ka != kb) return ka < kb;
        return a.j < b.j;
    });
    long span = 1;
    for (long f : folds) span = lcm_long(span, f);
    long window = std::min<long>(600, 3 * span + 30 + 2 * static_cast<long>(candidates.size()));

    SolutionBasis out;
    RankTracker tracker(static_cast<std::size_t>(window));
    for (auto& cand : candidates) {
        HyperTerm h;
        h.m = cand.m;
        h.j = cand.j;
        h.ratio = cand.ratio;
        h.anchor_k = safe_anchor(cand.ratio);
        h.anchor_v = CycloNumber(1);
        h.cert = cand.cert;
        std::vector<Rational> row(static_cast<std::size_t>(window), Rational(0));
        for (long n = 0; n < window; ++n) {
            CycloNumber v = term_value(h, n);
            auto q = v.as_rational();
            if (!q) throw Error("internal: basis piece value is not rational");
            row[static_cast<std::size_t>(n)] = *q;
        }
        if (tracker.add(std::move(row))) out.pieces.push_back(std::move(h));
    }

    // canonical piece order for the ansatz: (fold, remainder, ratio)
    std::sort(out.pieces.begin(), out.pieces.end(), [](const HyperTerm& a, const HyperTerm& b) {
        if (a.m != b.m) return a.m < b.m;
        if (a.j != b.j) return a.j < b.j;
        return ratio_key(a.ratio) < ratio_key(b.ratio);
    });

    // summary entries: distinct ratios per fold
    std::map<long, std::vector<QRat>> summary;
    for (const auto& p : out.pieces) {
        auto& v = summary[p.m];
        bool present = false;
        for (const auto& r : v)
            if (r == p.ratio) present = true;
        if (!present) v.push_back(p.ratio);
    }
    for (auto& [m, ratios] : summary) out.entries.push_back(BasisEntry{m, std::move(ratios)});
    return out;
}

std::string SolutionBasis::json() const {
    nlohmann::ordered_json root = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json je;
        je["m"] = e.m;
        je["ratios"] = nlohmann::ordered_json::array();
        for (const auto& r : e.ratios) je["ratios"].push_back(r.str("k"));
        root.push_back(std::move(je));
    }
    return root.dump();
}

std::string SolutionBasis::str() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) os << ", ";
        os << "{" << entries[i].m << ", {";
        for (std::size_t k = 0; k < entries[i].ratios.size(); ++k) {
            if (k) os << ", ";
            os << entries[i].ratios[k].str("k");
        }
        os << "}}";
    }
    os << "}";
    return os.str();
}

}  // namespace htseq
