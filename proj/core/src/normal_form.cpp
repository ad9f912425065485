#include "htseq/normal_form.hpp"

#include <algorithm>

#include "htseq/factor.hpp"
#include "htseq/linalg.hpp"

namespace htseq {

namespace {

bool is_skipped_index(const Recurrence& rec, long n) {
    long d = rec.order() * rec.step;
    Recurrence r1 = rec.to_step1();
    if (r1.trailing().eval(Rational(n)) == 0) return true;
    if (r1.leading().eval(Rational(n - d)) == 0) return true;
    return false;
}

std::vector<Rational> piece_row(const std::vector<HyperTerm>& pieces, long n) {
    std::vector<Rational> row(pieces.size(), Rational(0));
    for (std::size_t c = 0; c < pieces.size(); ++c) {
        CycloNumber v = term_value(pieces[c], n);
        auto q = v.as_rational();
        if (!q) throw Error("internal: ansatz piece value is not rational");
        row[c] = *q;
    }
    return row;
}

}  // namespace

std::vector<long> choose_E0(const Recurrence& rec, const std::vector<HyperTerm>& pieces, long extra) {
    long p = static_cast<long>(pieces.size());
    long d = rec.order() * rec.step;
    long cap = 4 * p + d + 50;
    std::vector<long> indices;
    RankTracker tracker(pieces.size());
    long n = 0;
    for (; n <= cap && tracker.rank() < p; ++n) {
        if (is_skipped_index(rec, n)) continue;
        // consecutive valid indices all enter the system; rank grows where it can
        tracker.add(piece_row(pieces, n));
        indices.push_back(n);
    }
    if (tracker.rank() < p)
        throw RankDeficiencyError("ansatz evaluation matrix did not reach rank " + std::to_string(p) +
                                  " within the scan cap (degenerate basis)");
    long added = 0;
    for (; added < extra && n <= cap + extra * (d + 2); ++n) {
        if (is_skipped_index(rec, n)) continue;
        indices.push_back(n);
        ++added;
    }
    return indices;
}

VerifyReport verify(const HTSTerm& candidate, const Recurrence& rec,
                    const std::function<CycloNumber(long)>& provider) {
    VerifyReport rep;
    Recurrence r1 = rec.to_step1();
    Recurrence rc = re_from_normal_form(candidate);
    Recurrence combined = sum_closure(rc, r1);
    long n0 = 0;
    for (const Integer& root : integer_roots(combined.leading()))
        if (root >= 0) n0 = std::max(n0, to_long(root) + 1);
    long window = n0 + combined.order();
    for (long n = 0; n < window; ++n) {
        CycloNumber lhs = hts_eval(candidate, n);
        CycloNumber rhs = provider(n);
        if (!(lhs == rhs)) {
            rep.ok = false;
            rep.first_mismatch = n;
            rep.detail = "mismatch at n = " + std::to_string(n) + ": normal form gives " + lhs.str() +
                         ", sequence gives " + rhs.str();
            return rep;
        }
    }
    // spot checks beyond the guaranteed window
    long stride = std::max<long>(3, r1.order());
    for (long i = 1; i <= 10; ++i) {
        long n = window + i * stride;
        CycloNumber lhs = hts_eval(candidate, n);
        CycloNumber rhs = provider(n);
        if (!(lhs == rhs)) {
            rep.ok = false;
            rep.first_mismatch = n;
            rep.detail = "spot mismatch at n = " + std::to_string(n);
            return rep;
        }
    }
    rep.ok = true;
    rep.detail = "agreement checked exactly on [0, " + std::to_string(window) +
                 "); both sides satisfy the order-" + std::to_string(combined.order()) +
                 " combined annihilator, whose leading coefficient is nonzero for n >= " +
                 std::to_string(n0) + ", so equality holds for all n >= 0";
    return rep;
}

HTSOutcome re_to_hts(const Recurrence& rec, const InitialSegment& init, long max_m) {
    HTSOutcome out;
    out.recurrence = rec;
    Recurrence r1 = rec.to_step1();
    long d = r1.order();
    RecurrenceSequence seq(r1, init.values, init.provider);
    auto provider = [&seq](long n) { return seq.at(n); };

    SolutionBasis basis = mfold_hyper(rec, max_m);
    out.trace.push_back("mfoldHyper basis: " + basis.str());
    auto not_hyper = [&](const std::string& note) {
        out.status = HTSOutcome::Status::NotHyperType;
        out.trace.push_back(note);
        for (long n = 0; n < d; ++n) out.initials.emplace_back(n, seq.at(n));
        return out;
    };
    if (basis.empty()) return not_hyper("empty solution basis: not of hypergeometric type");

    const std::vector<HyperTerm>& pieces = basis.pieces;
    long p = static_cast<long>(pieces.size());
    std::vector<long> indices = choose_E0(rec, pieces, d);
    out.trace.push_back("ansatz with " + std::to_string(p) + " constants, evaluation at " +
                        std::to_string(indices.size()) + " indices");

    std::vector<std::vector<Rational>> m_rows;
    std::vector<CycloNumber> rhs;
    long field = 1;
    for (long n : indices) {
        m_rows.push_back(piece_row(pieces, n));
        CycloNumber v = seq.at(n);
        field = lcm_long(field, v.order());
        rhs.push_back(std::move(v));
    }
    long phi = euler_phi(field);
    std::vector<CycloNumber> constants(pieces.size(), CycloNumber(0));
    std::vector<std::vector<Rational>> coord_solutions;
    for (long t = 0; t < phi; ++t) {
        std::vector<Rational> b(rhs.size());
        for (std::size_t i = 0; i < rhs.size(); ++i)
            b[i] = rhs[i].to_order(field).coords()[static_cast<std::size_t>(t)];
        auto sol = solve_rational(m_rows, b);
        if (!sol) return not_hyper("ansatz system inconsistent: not of hypergeometric type");
        coord_solutions.push_back(std::move(*sol));
    }
    for (std::size_t c = 0; c < pieces.size(); ++c) {
        std::vector<Rational> coords(static_cast<std::size_t>(phi));
        for (long t = 0; t < phi; ++t) coords[static_cast<std::size_t>(t)] = coord_solutions[static_cast<std::size_t>(t)][c];
        constants[c] = CycloNumber(field, std::move(coords)).reduced();
    }

    std::vector<HTSComponent> comps;
    for (std::size_t c = 0; c < pieces.size(); ++c) {
        if (constants[c].is_zero()) continue;
        HTSComponent comp;
        comp.chi = make_indicator(pieces[c].m, pieces[c].j);
        comp.coeff.push_back(HTSCoeffTerm{constants[c], pieces[c]});
        comps.push_back(std::move(comp));
    }
    HTSTerm candidate = make_hts(std::move(comps));
    VerifyReport rep = verify(candidate, rec, provider);
    if (!rep.ok) {
        out.status = HTSOutcome::Status::Failed;
        out.reason = "verification failed: " + rep.detail;
        out.verification = rep;
        return out;
    }
    out.status = HTSOutcome::Status::NormalForm;
    out.term = std::move(candidate);
    out.verification = rep;
    out.trace.push_back("verified: " + rep.detail);
    return out;
}

HTSOutcome hts(const ExprPtr& e, const HtsOptions& opts) {
    HTSOutcome out;
    std::vector<std::string> trace;

    if (needs_normal_form_path(e)) {
        HTSTerm t0 = expr_to_hts(e);
        Recurrence rec = re_from_normal_form(t0);
        trace.push_back("indicator input: recurrence from normal form: " + rec.str());
        InitialSegment seg = InitialSegment::from_provider([t0](long n) { return hts_eval(t0, n); });
        out = re_to_hts(rec, seg, opts.max_m);
        out.trace.insert(out.trace.begin(), trace.begin(), trace.end());
        return out;
    }

    auto rec = find_recurrence(e, opts.max_order, 1, &trace);
    if (!rec) {
        out.status = HTSOutcome::Status::Failed;
        out.reason = "no holonomic recurrence equation of order at most " +
                     std::to_string(opts.max_order) + " was found (the bound may be small)";
        out.trace = std::move(trace);
        return out;
    }
    InitialSegment seg = InitialSegment::from_provider([e](long n) { return eval_at(e, n); });
    out = re_to_hts(*rec, seg, opts.max_m);
    out.trace.insert(out.trace.begin(), trace.begin(), trace.end());
    if (out.status == HTSOutcome::Status::NormalForm || !opts.shift_retry) return out;

    // extension-avoidance ladder: only useful when the expression lives over
    // a proper cyclotomic extension
    if (to_monomials(e).field_order() <= 1) return out;
    for (long t : {2L, 3L, 4L, 6L}) {
        std::vector<std::string> t_trace;
        auto rec_t = find_recurrence(e, opts.max_order, t, &t_trace);
        out.trace.insert(out.trace.end(), t_trace.begin(), t_trace.end());
        if (!rec_t) continue;
        HTSOutcome retry = re_to_hts(*rec_t, seg, opts.max_m);
        out.trace.insert(out.trace.end(), retry.trace.begin(), retry.trace.end());
        if (retry.status == HTSOutcome::Status::NormalForm) {
            retry.trace = out.trace;
            retry.trace.push_back("succeeded via shift-step " + std::to_string(t));
            return retry;
        }
    }
    return out;
}

HTSOutcome hts(const std::string& expression, const HtsOptions& opts) {
    return hts(parse(expression), opts);
}

}  // namespace htseq
