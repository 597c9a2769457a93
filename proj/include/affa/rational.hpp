#ifndef AFFA_RATIONAL_HPP
#define AFFA_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace affa {

// Exact arbitrary-precision scalars. mpq_class keeps values in lowest terms
// with a positive denominator, which is exactly the representation contract
// for every automaton entry in this library.
using Int = mpz_class;
using Rational = mpq_class;

// mpq_class(n, d) does not canonicalize on its own; route all literal
// construction through here.
Rational make_rat(long num, long den = 1);
Rational make_rat(const Int& num, const Int& den);

// Accepts "num", "-num" or "num/den" with den > 0. Throws StructuralError.
Rational parse_rational(const std::string& text);

// Accepts the same forms as parse_rational plus decimal strings ("1.25",
// "-0.5"); a decimal with f fraction digits maps to digits/10^f exactly.
Rational parse_decimal_or_rational(const std::string& text);

// Always "num/den", e.g. "3/4", "-1/2", "5/1".
std::string format_rational(const Rational& q);

// Display helper only; never used in computations.
double rat_to_double(const Rational& q);

Int lcm(const Int& a, const Int& b);
Int pow_int(const Int& base, unsigned long exp);

// Integers x with 2^(bits-1) <= x < 2^bits; bit_length(0) == 0.
unsigned long bit_length(const Int& x);

}  // namespace affa

#endif
