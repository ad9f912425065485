#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "htseq/cyclo.hpp"
#include "htseq/indicator.hpp"

namespace htseq {

// slope*n + intercept with rational entries
struct Affine {
    Rational slope;
    Rational intercept;

    bool is_integral() const { return is_integer(slope) && is_integer(intercept); }
    Rational at(long n) const { return slope * Rational(n) + intercept; }
    std::string str() const;
};

enum class ExprKind {
    Const,         // exact cyclotomic constant (rational from the parser)
    Var,           // n
    Add,           // n-ary
    Mul,           // n-ary
    Div,           // children[0] / children[1]
    PowInt,        // children[0] ^ ipow
    GeometricPow,  // geo_base ^ affine
    Factorial,     // (affine)! with integer slope and intercept
    Binomial,      // binomial(affine, affine2), integer slopes and intercepts
    Trig,          // sin/cos/tan of affine*pi, or of (inner)*pi when inner != null
    Indicator,     // chi(n mod m = j)
};

struct SeqExpr;
using ExprPtr = std::shared_ptr<const SeqExpr>;

struct SeqExpr {
    ExprKind kind;
    CycloNumber value;              // Const
    std::vector<ExprPtr> children;  // Add, Mul, Div, PowInt
    long ipow = 0;                  // PowInt
    CycloNumber geo_base;           // GeometricPow
    Affine affine;                  // GeometricPow exponent, Factorial arg, Binomial arg 1, Trig arg/pi
    Affine affine2;                 // Binomial arg 2
    TrigKind trig = TrigKind::Sin;  // Trig
    ExprPtr trig_inner;             // Trig: argument is trig_inner * pi when set
    IndicatorTerm chi;              // Indicator
};

ExprPtr make_const(CycloNumber v);
ExprPtr make_var();
ExprPtr make_add(std::vector<ExprPtr> children);
ExprPtr make_mul(std::vector<ExprPtr> children);
ExprPtr make_div(ExprPtr num, ExprPtr den);
ExprPtr make_pow_int(ExprPtr base, long e);
ExprPtr make_geometric(CycloNumber base, Affine exponent);
ExprPtr make_factorial(Affine arg);
ExprPtr make_binomial(Affine top, Affine bottom);
ExprPtr make_trig(TrigKind kind, Affine arg_over_pi);
ExprPtr make_trig_nested(TrigKind kind, ExprPtr inner_over_pi);
ExprPtr make_indicator(IndicatorTerm t);

// Grammar (whitespace-insensitive, byte-accurate errors):
//   expr     := ["+"|"-"] term (("+"|"-") term)*
//   term     := factor (("*"|"/") factor)*
//   factor   := base ("^" exponent)?
//   base     := number | "n" | "Pi" | call | "(" expr ")" | base "!"
//   call     := ("sin"|"cos"|"tan"|"binomial"|"chi") "(" args ")"
//   exponent := integer | "n" | "(" affine-in-n ")"
// Numbers are integers; "p/q" arises from division and folds to a constant.
ExprPtr parse(const std::string& input);

// Re-parseable text form; parse(print(e)) == e structurally.
std::string print(const ExprPtr& e);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Exact evaluation. Throws UndefinedValueError (tan pole, division by zero,
// negative factorial, fractional exponent) or NonCyclotomicError (nested trig
// of an irrational value).
CycloNumber eval_at(const ExprPtr& e, long n);

// True if the expression contains an Indicator node or a GeometricPow with a
// fractional exponent; such inputs take the normal-form ingestion path.
bool needs_normal_form_path(const ExprPtr& e);

// Structural period bound: defined when every dependence on n sits inside a
// trig atom / root-of-unity geometric power. The true period divides it.
std::optional<long> period_bound(const ExprPtr& e);

// Smallest divisor of the structural bound that the values realize
// (exact evaluation over one bound-window).
std::optional<long> minimal_period(const ExprPtr& e);

}  // namespace htseq
