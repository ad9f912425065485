#include "htseq/recurrence.hpp"

#include <cctype>
#include <sstream>

#include "json.hpp"

namespace htseq {

namespace {

// --- tiny arithmetic parser for polynomial coefficients and a(n+k) terms ---
//
// expression := ["+"|"-"] term (("+"|"-") term)*
// term       := factor (("*"|"/") factor)*
// factor     := primary ("^" integer)?
// primary    := number | "n" | ident "(" expression ")" | "(" expression ")"
//
// Values are linear in the unknown sequence: scalar + sum of shift-terms.

struct LinComb {
    QRat scalar;
    std::map<long, QRat> shifts;  // shift -> coefficient

    bool pure_scalar() const { return shifts.empty(); }
};

struct RecParser {
    std::string_view s;
    std::size_t pos = 0;
    std::string func_name;   // the unknown's name, discovered on first use
    std::string var = "n";

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    LinComb parse_expression() {
        LinComb acc = parse_signed_term();
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos;
                LinComb t = parse_term();
                if (c == '-') t = negate(t);
                acc = add(acc, t);
            } else {
                break;
            }
        }
        return acc;
    }

    LinComb parse_signed_term() {
        char c = peek();
        bool neg = false;
        while (c == '+' || c == '-') {
            if (c == '-') neg = !neg;
            ++pos;
            c = peek();
        }
        LinComb t = parse_term();
        return neg ? negate(t) : t;
    }

    LinComb parse_term() {
        LinComb acc = parse_factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos;
                acc = mul(acc, parse_factor());
            } else if (c == '/') {
                ++pos;
                LinComb d = parse_factor();
                if (!d.pure_scalar())
                    throw ParseError("recurrence: can only divide by scalars", pos);
                if (d.scalar.is_zero()) throw ParseError("recurrence: division by zero", pos);
                acc.scalar = acc.scalar / d.scalar;
                for (auto& [k, v] : acc.shifts) v = v / d.scalar;
            } else {
                break;
            }
        }
        return acc;
    }

    LinComb parse_factor() {
        LinComb base = parse_primary();
        skip_ws();
        if (peek() == '^') {
            ++pos;
            skip_ws();
            bool neg = eat('-');
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) throw ParseError("recurrence: expected integer exponent", pos);
            long e = std::stol(std::string(s.substr(start, pos - start)));
            if (neg) throw ParseError("recurrence: negative exponents not allowed", pos);
            if (!base.pure_scalar()) throw ParseError("recurrence: cannot raise the sequence to a power", pos);
            return {base.scalar.pow(e), {}};
        }
        return base;
    }

    LinComb parse_primary() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("recurrence: unexpected end of input", pos);
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            Integer v(std::string(s.substr(start, pos - start)), 10);
            return {QRat(Rational(v)), {}};
        }
        if (c == '(') {
            ++pos;
            LinComb inner = parse_expression();
            if (!eat(')')) throw ParseError("recurrence: expected ')'", pos);
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name(s.substr(start, pos - start));
            if (name == var && peek() != '(') return {QRat::var(), {}};
            if (!eat('(')) throw ParseError("recurrence: expected '(' after '" + name + "'", pos);
            LinComb arg = parse_expression();
            if (!eat(')')) throw ParseError("recurrence: expected ')'", pos);
            if (!arg.pure_scalar()) throw ParseError("recurrence: nested sequence terms", pos);
            // argument must be n + const
            if (!arg.scalar.is_polynomial())
                throw ParseError("recurrence: argument of " + name + " must be n + integer", pos);
            const QPoly& p = arg.scalar.num();
            if (p.degree() != 1 || p.coeffs()[1] != 1 || !is_integer(p[0]))
                throw ParseError("recurrence: argument of " + name + " must be n + integer", pos);
            long shift = to_long(to_integer(p[0]));
            if (func_name.empty()) func_name = name;
            if (name != func_name)
                throw ParseError("recurrence: two different sequence names: " + func_name + ", " + name, pos);
            LinComb out;
            out.shifts[shift] = QRat(Rational(1));
            return out;
        }
        throw ParseError(std::string("recurrence: unexpected character '") + c + "'", pos);
    }

    static LinComb negate(LinComb a) {
        a.scalar = -a.scalar;
        for (auto& [k, v] : a.shifts) v = -v;
        return a;
    }
    static LinComb add(LinComb a, const LinComb& b) {
        a.scalar = a.scalar + b.scalar;
        for (const auto& [k, v] : b.shifts) {
            auto it = a.shifts.find(k);
            if (it == a.shifts.end())
                a.shifts[k] = v;
            else
                it->second = it->second + v;
        }
        return a;
    }
    static LinComb mul(const LinComb& a, const LinComb& b) {
        if (!a.pure_scalar() && !b.pure_scalar())
            throw ParseError("recurrence: product of two sequence terms is not linear", 0);
        const LinComb& lin = a.pure_scalar() ? b : a;
        const QRat& sc = a.pure_scalar() ? a.scalar : b.scalar;
        LinComb out;
        out.scalar = lin.scalar * sc;
        for (const auto& [k, v] : lin.shifts) out.shifts[k] = v * sc;
        return out;
    }
};

}  // namespace

Recurrence make_recurrence(std::vector<QPoly> coeffs, long step) {
    if (step < 1) throw DomainError("recurrence step must be positive");
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    std::size_t z = 0;
    while (z < coeffs.size() && coeffs[z].is_zero()) ++z;
    if (z == coeffs.size()) throw DomainError("all recurrence coefficients are zero");
    if (z > 0) {
        std::vector<QPoly> shifted(coeffs.size() - z);
        for (std::size_t i = z; i < coeffs.size(); ++i)
            shifted[i - z] = coeffs[i].shift(-static_cast<long>(z) * step);
        coeffs = std::move(shifted);
    }
    if (coeffs.size() < 2) throw DomainError("recurrence must have positive order");
    // strip a common polynomial factor (e.g. denominators cleared into every
    // coefficient by a kernel solve)
    QPoly common;
    for (const auto& p : coeffs) {
        if (p.is_zero()) continue;
        common = common.is_zero() ? p : QPoly::gcd(common, p);
        if (common.degree() == 0) break;
    }
    if (common.degree() > 0)
        for (auto& p : coeffs)
            if (!p.is_zero()) p = p.div_exact(common);
    // content and sign normalization
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    for (const auto& p : coeffs)
        for (const auto& c : p.coeffs()) {
            if (c == 0) continue;
            num_gcd = int_gcd(num_gcd, c.get_num());
            den_lcm = int_lcm(den_lcm, c.get_den());
        }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (coeffs.back().leading() * scale < 0) scale = -scale;
    for (auto& p : coeffs) p = p * scale;
    Recurrence r;
    r.coeffs = std::move(coeffs);
    r.step = step;
    return r;
}

Recurrence Recurrence::to_step1() const {
    if (step == 1) return *this;
    std::vector<QPoly> c(static_cast<std::size_t>(order() * step) + 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i * static_cast<std::size_t>(step)] = coeffs[i];
    Recurrence r;
    r.coeffs = std::move(c);
    r.step = 1;
    return r;
}

std::string Recurrence::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const QPoly& p = coeffs[i];
        if (p.is_zero()) continue;
        bool neg = false;
        QPoly q = p;
        if (p.degree() == 0 && p.coeffs()[0] < 0) {
            neg = true;
            q = -p;
        }
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        long shift = static_cast<long>(i) * step;
        std::string arg = shift == 0 ? "n" : "n+" + std::to_string(shift);
        bool unit = (q.degree() == 0 && q.coeffs()[0] == 1);
        if (!unit) {
            std::string ps = q.str();
            if (q.degree() > 0) ps = "(" + ps + ")";
            os << ps << "*";
        }
        os << "a(" << arg << ")";
    }
    os << " = 0";
    return os.str();
}

std::string Recurrence::json() const {
    nlohmann::ordered_json j;
    j["var"] = "n";
    j["order"] = order();
    j["step"] = step;
    std::vector<std::string> cs;
    for (const auto& p : coeffs) cs.push_back(p.str());
    j["coeffs"] = cs;
    return j.dump();
}


QRat parse_ratfunc(const std::string& text, const std::string& var) {
    RecParser p{text};
    p.var = var;
    LinComb v = p.parse_expression();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input in scalar expression", p.pos);
    if (!v.pure_scalar()) throw ParseError("expected a scalar expression, found sequence terms", 0);
    return v.scalar;
}

QPoly parse_poly(const std::string& text, const std::string& var) {
    QRat r = parse_ratfunc(text, var);
    if (!r.is_polynomial()) throw ParseError("expected a polynomial, found a denominator", 0);
    return r.num();
}

Recurrence recurrence_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    long step = j.contains("step") ? j["step"].get<long>() : 1;
    std::vector<QPoly> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_poly(c.get<std::string>()));
    return make_recurrence(std::move(coeffs), step);
}

Recurrence recurrence_from_text(const std::string& text) {
    RecParser p{text};
    LinComb lhs = p.parse_expression();
    LinComb total = lhs;
    if (p.eat('=')) {
        LinComb rhs = p.parse_expression();
        total = RecParser::add(lhs, RecParser::negate(rhs));
    }
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input in recurrence", p.pos);
    if (total.shifts.empty()) throw ParseError("no sequence terms found in recurrence", 0);
    if (!total.scalar.is_zero())
        throw ParseError("recurrence has a non-homogeneous part: " + total.scalar.str(), 0);
    long min_shift = total.shifts.begin()->first;
    long max_shift = total.shifts.rbegin()->first;
    // clear any rational-function coefficients to polynomials
    QPoly den(Rational(1));
    for (const auto& [k, v] : total.shifts) den = QPoly::lcm(den, v.den());
    std::vector<QPoly> coeffs(static_cast<std::size_t>(max_shift - min_shift) + 1);
    for (const auto& [k, v] : total.shifts)
        coeffs[static_cast<std::size_t>(k - min_shift)] =
            (v.num() * den.div_exact(v.den())).shift(-min_shift);
    return make_recurrence(std::move(coeffs), 1);
}

Recurrence parse_recurrence(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '{') return recurrence_from_json(text);
    return recurrence_from_text(text);
}

RecurrenceSequence::RecurrenceSequence(Recurrence rec, std::vector<std::pair<long, CycloNumber>> values,
                                       std::function<CycloNumber(long)> provider)
    : rec_(std::move(rec)), provider_(std::move(provider)) {
    long prev = -1;
    for (auto& [idx, v] : values) {
        if (idx <= prev) throw DomainError("initial values must have strictly increasing indices");
        prev = idx;
        known_.emplace(idx, std::move(v));
    }
}

CycloNumber RecurrenceSequence::at(long n) {
    if (n < 0) throw DomainError("sequence index must be non-negative");
    auto it = known_.find(n);
    if (it != known_.end()) return it->second;
    if (provider_) {
        CycloNumber v = provider_(n);
        known_.emplace(n, v);
        return v;
    }
    long t = rec_.step;
    long d = rec_.order();
    // fill the residue class of n upward with the recurrence, skipping
    // indices that cannot be derived
    std::string blocker;
    for (long target = n % t; target <= n; target += t) {
        if (known_.count(target)) continue;
        long m = target - d * t;
        if (m < 0) continue;
        bool have_all = true;
        for (long i = 0; i < d; ++i)
            if (!known_.count(m + i * t)) {
                have_all = false;
                break;
            }
        if (!have_all) continue;
        Rational lead = rec_.leading().eval(Rational(m));
        if (lead == 0) {
            blocker = "leading coefficient vanishes at n = " + std::to_string(m) +
                      ", so the value at index " + std::to_string(target) + " is singular";
            continue;
        }
        CycloNumber acc(0);
        for (long i = 0; i < d; ++i) {
            Rational ci = rec_.coeffs[static_cast<std::size_t>(i)].eval(Rational(m));
            if (ci == 0) continue;
            acc += ci * known_.at(m + i * t);
        }
        CycloNumber value = -(acc / CycloNumber(lead));
        known_.emplace(target, std::move(value));
    }
    auto it2 = known_.find(n);
    if (it2 == known_.end())
        throw InsufficientValuesError("value at index " + std::to_string(n) +
                                      " is not derivable from the supplied initial values" +
                                      (blocker.empty() ? "" : " (" + blocker + ")"));
    return it2->second;
}

InitialSegment InitialSegment::from_values(std::vector<CycloNumber> vals, long start) {
    InitialSegment seg;
    for (std::size_t i = 0; i < vals.size(); ++i)
        seg.values.emplace_back(start + static_cast<long>(i), std::move(vals[i]));
    return seg;
}

InitialSegment InitialSegment::from_provider(std::function<CycloNumber(long)> p) {
    InitialSegment seg;
    seg.provider = std::move(p);
    return seg;
}

}  // namespace htseq
