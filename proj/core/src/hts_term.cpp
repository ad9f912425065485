#include "htseq/hts_term.hpp"

#include <algorithm>
#include <sstream>

#include "htseq/recurrence.hpp"
#include "json.hpp"

namespace htseq {

namespace {

// Anchor a term at the first index where its ratio stays regular.
HyperTerm anchored(long m, long j, QRat ratio, const CycloNumber& value_at_anchor, long anchor_k,
                   std::optional<HyperCertificate> cert = std::nullopt) {
    HyperTerm h;
    h.m = m;
    h.j = j;
    h.ratio = std::move(ratio);
    h.anchor_k = anchor_k;
    h.anchor_v = value_at_anchor;
    h.cert = std::move(cert);
    return h;
}

bool same_shape(const HyperTerm& a, const HyperTerm& b) {
    return a.m == b.m && a.j == b.j && a.ratio == b.ratio;
}

}  // namespace

HTSTerm make_hts(std::vector<HTSComponent> components) {
    // merge by indicator
    std::vector<HTSComponent> merged;
    for (auto& c : components) {
        if (c.chi.is_zero()) continue;
        bool found = false;
        for (auto& d : merged) {
            if (d.chi == c.chi) {
                d.coeff.insert(d.coeff.end(), c.coeff.begin(), c.coeff.end());
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(std::move(c));
    }
    // combine parallel terms within a component
    for (auto& comp : merged) {
        std::vector<HTSCoeffTerm> out;
        for (auto& ct : comp.coeff) {
            if (ct.constant.is_zero()) continue;
            bool folded = false;
            for (auto& ot : out) {
                if (!same_shape(ot.term, ct.term)) continue;
                // re-anchor onto the later anchor and add the constants
                long k = std::max(ot.term.anchor_k, ct.term.anchor_k);
                CycloNumber v1 = section_value(ot.term, k);
                CycloNumber v2 = section_value(ct.term, k);
                CycloNumber combined = ot.constant * v1 + ct.constant * v2;
                ot.term.anchor_k = k;
                ot.term.anchor_v = CycloNumber(1);
                ot.constant = combined;
                folded = true;
                break;
            }
            if (!folded) out.push_back(std::move(ct));
        }
        std::erase_if(out, [](const HTSCoeffTerm& t) {
            return t.constant.is_zero() || t.term.anchor_v.is_zero();
        });
        comp.coeff = std::move(out);
    }
    std::erase_if(merged, [](const HTSComponent& c) { return c.coeff.empty(); });
    std::sort(merged.begin(), merged.end(),
              [](const HTSComponent& a, const HTSComponent& b) { return a.chi < b.chi; });
    HTSTerm t;
    t.components = std::move(merged);
    return t;
}

CycloNumber hts_eval(const HTSTerm& t, long n) {
    CycloNumber acc(0);
    for (const auto& comp : t.components) {
        if (!indicator_eval(comp.chi, n)) continue;
        for (const auto& ct : comp.coeff) acc += ct.constant * term_value(ct.term, n);
    }
    return acc;
}

HTSTerm hts_add(const HTSTerm& a, const HTSTerm& b) {
    std::vector<HTSComponent> all = a.components;
    all.insert(all.end(), b.components.begin(), b.components.end());
    return make_hts(std::move(all));
}

HTSTerm hts_scale(const HTSTerm& a, const CycloNumber& c) {
    if (c.is_zero()) return HTSTerm{};
    HTSTerm out = a;
    for (auto& comp : out.components)
        for (auto& ct : comp.coeff) ct.constant *= c;
    return out;
}

namespace {

// Section of h on the product indicator (M, J): values h_section(k) =
// h((M k + J - j)/m), with ratio composed over the stride M/m.
HyperTerm reanchor_on(const HyperTerm& h, long big_m, long big_j) {
    long stride = big_m / h.m;
    long offset = (big_j - h.j) / h.m;
    QRat ratio(Rational(1));
    for (long u = 0; u < stride; ++u)
        ratio = ratio * h.ratio.compose_affine(Rational(stride), Rational(offset + u));
    // anchor: smallest k with stride*k + offset >= h.anchor_k, also past the
    // new ratio's own singular points
    long k0 = 0;
    if (stride > 0 && h.anchor_k > offset)
        k0 = (h.anchor_k - offset + stride - 1) / stride;
    k0 = std::max(k0, safe_anchor(ratio));
    CycloNumber v = section_value(h, stride * k0 + offset);
    return anchored(big_m, big_j, std::move(ratio), v, k0);
}

}  // namespace

HTSTerm hts_mul(const HTSTerm& a, const HTSTerm& b) {
    std::vector<HTSComponent> out;
    for (const auto& ca : a.components) {
        for (const auto& cb : b.components) {
            IndicatorTerm chi = indicator_product(ca.chi, cb.chi);
            if (chi.is_zero()) continue;
            HTSComponent comp;
            comp.chi = chi;
            for (const auto& ta : ca.coeff) {
                for (const auto& tb : cb.coeff) {
                    HyperTerm ha = reanchor_on(ta.term, chi.m, chi.j);
                    HyperTerm hb = reanchor_on(tb.term, chi.m, chi.j);
                    long k0 = std::max(ha.anchor_k, hb.anchor_k);
                    CycloNumber anchor_val = section_value(ha, k0) * section_value(hb, k0);
                    HTSCoeffTerm ct;
                    ct.constant = ta.constant * tb.constant;
                    ct.term = anchored(chi.m, chi.j, ha.ratio * hb.ratio, anchor_val, k0);
                    comp.coeff.push_back(std::move(ct));
                }
            }
            out.push_back(std::move(comp));
        }
    }
    return make_hts(std::move(out));
}

// --- display ---

namespace {

std::string cyclo_factor_str(const CycloNumber& c) {
    if (auto q = c.as_rational()) {
        if (*q == 1) return "";
        if (*q == -1) return "-";
        return rat_str(*q) + "*";
    }
    return "(" + c.str() + ")*";
}

std::string sigma_str(long m, long j) {
    if (m == 1 && j == 0) return "n";
    std::string num = j == 0 ? "n" : "(n-" + std::to_string(j) + ")";
    return num + "/" + std::to_string(m);
}

// constant * h(sigma(n)) rendered against the section closed form
std::string piece_str(const CycloNumber& constant, const HyperTerm& h) {
    std::string sig = sigma_str(h.m, h.j);
    // constant-ratio sections: c * z^sigma, with the anchor folded in
    if (auto z = h.ratio.as_constant()) {
        CycloNumber scale = constant * h.anchor_v;
        if (*z == 1) return cyclo_factor_str(scale).empty() ? "1" : cyclo_factor_str(scale) + "1";
        // value at sigma = k is anchor_v * z^(k - anchor_k)
        CycloNumber adj = scale * CycloNumber(rat_pow(*z, -h.anchor_k));
        std::string zs = (*z == -1) ? "(-1)" : "(" + rat_str(*z) + ")";
        std::string cs = cyclo_factor_str(adj);
        return cs + zs + "^(" + sig + ")";
    }
    // polynomial families z^k C(k): expand C(sigma(n)) as a polynomial in n
    if (h.cert && h.cert->a.degree() == 0 && h.cert->b.degree() == 0 && !h.cert->c.is_zero()) {
        const HyperCertificate& cert = *h.cert;
        Rational z = cert.z;
        // h(k) = anchor_v * (z^k C(k)) / (z^anchor C(anchor))
        Rational at_anchor = rat_pow(z, h.anchor_k) * cert.c.eval(Rational(h.anchor_k));
        if (at_anchor != 0) {
            CycloNumber scale = constant * h.anchor_v * Rational(Rational(1) / at_anchor);
            QPoly c_of_n = cert.c.compose_affine(make_rational(1, h.m), make_rational(-h.j, h.m));
            std::string poly = "(" + c_of_n.str() + ")";
            std::string zs = z == 1 ? "" : (z == -1 ? "(-1)^(" + sig + ")*" : "(" + rat_str(z) + ")^(" + sig + ")*");
            std::string cs = cyclo_factor_str(scale);
            return cs + zs + poly;
        }
    }
    std::string cs = cyclo_factor_str(constant);
    return cs + "h[" + h.ratio.str("k") + "; k0=" + std::to_string(h.anchor_k) + ", v0=" +
           h.anchor_v.str() + "](" + sig + ")";
}

}  // namespace

std::string hts_str(const HTSTerm& t) {
    if (t.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& comp : t.components) {
        for (const auto& ct : comp.coeff) {
            std::string piece = piece_str(ct.constant, ct.term);
            bool neg = piece.size() > 0 && piece[0] == '-';
            if (first) {
                os << piece;
                first = false;
            } else if (neg) {
                os << " - " << piece.substr(1);
            } else {
                os << " + " << piece;
            }
            if (!comp.chi.is_one()) os << "*" << indicator_str(comp.chi);
        }
    }
    return os.str();
}

std::string hts_latex(const HTSTerm& t) {
    if (t.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& comp : t.components) {
        for (const auto& ct : comp.coeff) {
            std::string piece = piece_str(ct.constant, ct.term);
            if (!first) os << " + ";
            first = false;
            os << piece;
            if (!comp.chi.is_one()) os << " \\cdot " << indicator_latex(comp.chi);
        }
    }
    return os.str();
}

std::string hts_json(const HTSTerm& t) {
    nlohmann::ordered_json root;
    root["components"] = nlohmann::ordered_json::array();
    for (const auto& comp : t.components) {
        nlohmann::ordered_json jc;
        jc["chi"] = {{"m", comp.chi.m}, {"j", comp.chi.j}};
        jc["terms"] = nlohmann::ordered_json::array();
        for (const auto& ct : comp.coeff) {
            nlohmann::ordered_json jt;
            jt["const"] = ct.constant.str();
            jt["m"] = ct.term.m;
            jt["j"] = ct.term.j;
            jt["ratio"] = ct.term.ratio.str("k");
            jt["anchor_k"] = ct.term.anchor_k;
            jt["anchor_v"] = ct.term.anchor_v.str();
            jc["terms"].push_back(std::move(jt));
        }
        root["components"].push_back(std::move(jc));
    }
    return root.dump();
}

namespace {

CycloNumber cyclo_from_str(const std::string& s) {
    if (s.rfind("cyclo(", 0) == 0) {
        // cyclo(N; c0, c1, ...)
        auto semi = s.find(';');
        long order = std::stol(s.substr(6, semi - 6));
        std::vector<Rational> coords;
        std::size_t pos = semi + 1;
        while (pos < s.size()) {
            std::size_t end = s.find_first_of(",)", pos);
            std::string tok = s.substr(pos, end - pos);
            std::size_t b = tok.find_first_not_of(' ');
            std::size_t e = tok.find_last_not_of(' ');
            coords.push_back(rat_parse(tok.substr(b, e - b + 1)));
            pos = end + 1;
            if (end == std::string::npos || s[end] == ')') break;
        }
        return CycloNumber(order, std::move(coords));
    }
    auto root = s.find("sqrt(");
    if (root != std::string::npos) {
        long d = std::stol(s.substr(root + 5, s.find(')', root) - root - 5));
        std::string pre = s.substr(0, root);
        // forms: "sqrt(d)", "-sqrt(d)", "b*sqrt(d)", "a+b*sqrt(d)", "a-b*sqrt(d)"
        Rational a(0), b(1);
        if (!pre.empty()) {
            std::size_t split = pre.find_last_of("+-", pre.size() - 1);
            std::string bs;
            if (split == std::string::npos || split == 0) {
                bs = pre;
            } else {
                a = rat_parse(pre.substr(0, split));
                bs = pre.substr(split);
            }
            if (!bs.empty() && bs.back() == '*') bs.pop_back();
            if (bs.empty() || bs == "+")
                b = 1;
            else if (bs == "-")
                b = -1;
            else
                b = rat_parse(bs);
        }
        long big = 1;
        switch (d) {
            case -1: big = 4; break;
            case 2: case -2: big = 8; break;
            case 3: big = 12; break;
            case -3: big = 3; break;
            case 5: big = 5; break;
            default: throw ParseError("unsupported surd sqrt(" + std::to_string(d) + ")", 0);
        }
        auto sq = CycloNumber::sqrt_in(d, big);
        return CycloNumber(a) + b * *sq;
    }
    return CycloNumber(rat_parse(s));
}

}  // namespace

HTSTerm hts_from_json(const std::string& text) {
    nlohmann::json root = nlohmann::json::parse(text);
    std::vector<HTSComponent> comps;
    for (const auto& jc : root.at("components")) {
        HTSComponent comp;
        comp.chi = make_indicator(jc.at("chi").at("m").get<long>(), jc.at("chi").at("j").get<long>());
        for (const auto& jt : jc.at("terms")) {
            HTSCoeffTerm ct;
            ct.constant = cyclo_from_str(jt.at("const").get<std::string>());
            ct.term.m = jt.at("m").get<long>();
            ct.term.j = jt.at("j").get<long>();
            ct.term.ratio = parse_ratfunc(jt.at("ratio").get<std::string>(), "k");
            ct.term.anchor_k = jt.at("anchor_k").get<long>();
            ct.term.anchor_v = cyclo_from_str(jt.at("anchor_v").get<std::string>());
            comp.coeff.push_back(std::move(ct));
        }
        comps.push_back(std::move(comp));
    }
    return make_hts(std::move(comps));
}

// --- expression ingestion ---

namespace {

HTSTerm hts_one_component(IndicatorTerm chi, CycloNumber constant, HyperTerm term) {
    HTSComponent comp;
    comp.chi = chi;
    comp.coeff.push_back(HTSCoeffTerm{std::move(constant), std::move(term)});
    std::vector<HTSComponent> v{std::move(comp)};
    return make_hts(std::move(v));
}

HTSTerm hts_constant(const CycloNumber& c) {
    if (c.is_zero()) return HTSTerm{};
    return hts_one_component(make_indicator(1, 0), c, anchored(1, 0, QRat(Rational(1)), CycloNumber(1), 0));
}

// c^(slope*n + intercept) as a hypergeometric-type term over Q-ratios:
// on each residue class where the exponent is an integer, a fold-(q*M)
// geometric piece with rational ratio c^(p*M); off those classes the masked
// representation is 0.
HTSTerm geometric_to_hts(const CycloNumber& base, const Rational& slope, const Rational& intercept) {
    if (base.is_zero()) throw DomainError("geometric power with base 0");
    long q = to_long(slope.get_den());
    long p = to_long(slope.get_num());
    // find M with (base^q_step)^M rational, i.e. fold out the root of unity
    CycloNumber step = base.pow(p);  // ratio across one residue period of q
    long big = 1;
    CycloNumber acc = step;
    std::optional<Rational> ratio_val;
    for (; big <= 2 * kMaxCycloDegree; ++big) {
        if (auto r = acc.as_rational()) {
            ratio_val = *r;
            break;
        }
        acc = acc * step;
    }
    if (!ratio_val)
        throw UnsupportedStructureError("geometric base is not a rational times a root of unity: " +
                                        base.str());
    std::vector<HTSComponent> comps;
    for (long r = 0; r < q; ++r) {
        Rational e = slope * Rational(r) + intercept;
        if (!is_integer(e)) continue;  // exponent never integral on this class
        long e0 = to_long(to_integer(e));
        for (long l = 0; l < big; ++l) {
            // n = q*(big*k + l) + r: value = base^(p*(big*k+l) + e0)
            CycloNumber v0 = base.pow(p * l + e0);
            HyperTerm h = anchored(q * big, q * l + r, QRat(*ratio_val), v0, 0);
            comps.push_back(HTSComponent{make_indicator(q * big, q * l + r),
                                         {HTSCoeffTerm{CycloNumber(1), std::move(h)}}});
        }
    }
    if (comps.empty())
        throw DomainError("geometric exponent " + slope.get_str() + "*n+" + intercept.get_str() +
                          " is never an integer");
    return make_hts(std::move(comps));
}

HTSTerm polynomial_to_hts(const QPoly& p) {
    if (p.is_zero()) return HTSTerm{};
    // single fold-1 piece with ratio p(k+1)/p(k), anchored past the roots
    QRat ratio(p.shift(1), p);
    long k0 = safe_anchor(ratio);
    HyperCertificate cert{Rational(1), QPoly(Rational(1)), QPoly(Rational(1)), p};
    HyperTerm h = anchored(1, 0, ratio, CycloNumber(p.eval(Rational(k0))), k0, cert);
    return hts_one_component(make_indicator(1, 0), CycloNumber(1), std::move(h));
}

HTSTerm factorial_to_hts(const Affine& arg) {
    long a = to_long(to_integer(arg.slope));
    long b = to_long(to_integer(arg.intercept));
    if (a == 0) {
        if (b < 0) throw DomainError("factorial of a negative constant");
        return hts_constant(CycloNumber(Rational(factorial(b))));
    }
    if (a < 0) throw UnsupportedStructureError("factorial with negative slope: (" + arg.str() + ")!");
    QPoly ratio_poly(Rational(1));
    for (long t = 1; t <= a; ++t)
        ratio_poly = ratio_poly * QPoly(std::vector<Rational>{Rational(b + t), Rational(a)});
    QRat ratio{ratio_poly};
    long k0 = safe_anchor(ratio);
    while (a * k0 + b < 0) ++k0;
    HyperTerm h = anchored(1, 0, ratio, CycloNumber(Rational(factorial(a * k0 + b))), k0);
    return hts_one_component(make_indicator(1, 0), CycloNumber(1), std::move(h));
}

HTSTerm hts_inverse_scalar(const HTSTerm& t, const ExprPtr& origin) {
    // invertible only for a single unmasked piece
    if (t.components.size() != 1 || !t.components[0].chi.is_one() ||
        t.components[0].coeff.size() != 1)
        throw UnsupportedStructureError("cannot divide by " + print(origin) +
                                        " in the normal-form path");
    const HTSCoeffTerm& ct = t.components[0].coeff[0];
    if (ct.term.anchor_v.is_zero() || ct.constant.is_zero())
        throw DomainError("division by an eventually-zero term");
    QRat inv_ratio = QRat(Rational(1)) / ct.term.ratio;
    long k0 = std::max(ct.term.anchor_k, safe_anchor(inv_ratio));
    CycloNumber v = section_value(ct.term, k0);
    HyperTerm h = anchored(1, 0, inv_ratio, v.inverse(), k0);
    return hts_one_component(make_indicator(1, 0), ct.constant.inverse(), std::move(h));
}

HTSTerm convert_to_hts(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Const:
            return hts_constant(e->value);
        case ExprKind::Var:
            return polynomial_to_hts(QPoly::var());
        case ExprKind::Indicator:
            if (e->chi.is_zero()) return HTSTerm{};
            return hts_one_component(e->chi, CycloNumber(1),
                                     anchored(e->chi.m, e->chi.j, QRat(Rational(1)), CycloNumber(1), 0));
        case ExprKind::Add: {
            HTSTerm acc;
            for (const auto& ch : e->children) acc = hts_add(acc, convert_to_hts(ch));
            return acc;
        }
        case ExprKind::Mul: {
            HTSTerm acc = hts_constant(CycloNumber(1));
            for (const auto& ch : e->children) acc = hts_mul(acc, convert_to_hts(ch));
            return acc;
        }
        case ExprKind::Div:
            return hts_mul(convert_to_hts(e->children[0]),
                           hts_inverse_scalar(convert_to_hts(e->children[1]), e->children[1]));
        case ExprKind::PowInt: {
            if (e->ipow >= 0) {
                HTSTerm acc = hts_constant(CycloNumber(1));
                for (long i = 0; i < e->ipow; ++i) acc = hts_mul(acc, convert_to_hts(e->children[0]));
                return acc;
            }
            HTSTerm base = convert_to_hts(e->children[0]);
            HTSTerm acc = hts_constant(CycloNumber(1));
            HTSTerm inv = hts_inverse_scalar(base, e->children[0]);
            for (long i = 0; i < -e->ipow; ++i) acc = hts_mul(acc, inv);
            return acc;
        }
        case ExprKind::GeometricPow:
            return geometric_to_hts(e->geo_base, e->affine.slope, e->affine.intercept);
        case ExprKind::Factorial:
            return factorial_to_hts(e->affine);
        case ExprKind::Binomial: {
            HTSTerm x = factorial_to_hts(e->affine);
            Affine diff{e->affine.slope - e->affine2.slope, e->affine.intercept - e->affine2.intercept};
            HTSTerm y = factorial_to_hts(e->affine2);
            HTSTerm d = factorial_to_hts(diff);
            ExprPtr origin = e;
            return hts_mul(x, hts_mul(hts_inverse_scalar(y, origin), hts_inverse_scalar(d, origin)));
        }
        case ExprKind::Trig: {
            if (e->trig_inner || e->trig == TrigKind::Tan)
                throw UnsupportedStructureError(
                    "tan / nested trig cannot be combined with indicator terms: " + print(e));
            // Euler split into two geometric pieces
            Rational s = e->affine.slope, t = e->affine.intercept;
            long qs = to_long(s.get_den());
            CycloNumber gamma = CycloNumber::zeta_pow(2 * qs, to_long(s.get_num() % Integer(2 * qs)));
            long qt = to_long(t.get_den());
            CycloNumber c = CycloNumber::zeta_pow(2 * qt, to_long(t.get_num() % Integer(2 * qt)));
            HTSTerm plus = geometric_to_hts(gamma, Rational(1), Rational(0));
            HTSTerm minus = geometric_to_hts(gamma.inverse(), Rational(1), Rational(0));
            if (e->trig == TrigKind::Cos) {
                CycloNumber half = CycloNumber(Rational(1, 2));
                return hts_add(hts_scale(plus, half * c), hts_scale(minus, half * c.inverse()));
            }
            CycloNumber inv2i = (Rational(2) * CycloNumber::i()).inverse();
            return hts_add(hts_scale(plus, inv2i * c), hts_scale(minus, -(inv2i * c.inverse())));
        }
    }
    throw Error("unreachable expression kind");
}

}  // namespace

HTSTerm expr_to_hts(const ExprPtr& e) { return convert_to_hts(e); }

}  // namespace htseq
