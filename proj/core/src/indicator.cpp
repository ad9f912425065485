#include "htseq/indicator.hpp"

namespace htseq {

IndicatorTerm make_indicator(long m, long j) {
    if (m < 0 || j < 0) throw DomainError("indicator parameters must be non-negative");
    if (m == 0) {
        if (j != 0) throw DomainError("zero-modulus indicator must have remainder 0");
        return {0, 0};
    }
    if (j >= m) throw DomainError("indicator remainder must satisfy 0 <= j < m");
    return {m, j};
}

int indicator_eval(const IndicatorTerm& t, long n) {
    if (n < 0) throw DomainError("indicator_eval expects a non-negative index");
    if (t.m == 0) return 0;
    return n % t.m == t.j ? 1 : 0;
}

IndicatorTerm indicator_product(const IndicatorTerm& a, const IndicatorTerm& b) {
    if (a.m == 0 || b.m == 0) return {0, 0};
    if (a.m == 1) return b;
    if (b.m == 1) return a;
    long mu = lcm_long(a.m, b.m);
    for (long j = 0; j < mu; ++j) {
        if (j % a.m == a.j && j % b.m == b.j) return {mu, j};
    }
    return {0, 0};
}

QRat indicator_gf(const IndicatorTerm& t) {
    if (t.m == 0) throw DomainError("generating function of the zero-modulus indicator");
    QPoly num = QPoly::monomial(Rational(1), t.j);
    std::vector<Rational> den(static_cast<std::size_t>(t.m) + 1, Rational(0));
    den[0] = 1;
    den[static_cast<std::size_t>(t.m)] = -1;
    return QRat(num, QPoly(std::move(den)));
}

std::string indicator_str(const IndicatorTerm& t) {
    return "chi(n mod " + std::to_string(t.m) + " = " + std::to_string(t.j) + ")";
}

std::string indicator_latex(const IndicatorTerm& t) {
    return "\\chi_{\\{\\mathit{modp}(n," + std::to_string(t.m) + ")=" + std::to_string(t.j) + "\\}}";
}

}  // namespace htseq
