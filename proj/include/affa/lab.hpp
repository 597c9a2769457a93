#ifndef AFFA_LAB_HPP
#define AFFA_LAB_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "affa/automata.hpp"
#include "affa/rational.hpp"

namespace affa::lab {

// Deterministic Miller-Rabin; exact for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

// Unary language over word lengths. The predicate is the source of truth;
// nth_member, when present, enumerates member lengths in increasing order
// (index 0 first) and must agree with the predicate.
struct UnaryLanguage {
  std::string name;
  std::function<bool(std::uint64_t)> member;
  std::function<Int(std::uint64_t)> nth_member;  // may be empty
  bool corollary_degree_ok = false;  // polynomial languages: degree > 2
};

// Language {a^{P(n)}} for a polynomial with nonnegative integer coefficients
// (ascending order, constant term first). A negative coefficient would break
// the monotone image test and raises StructuralError.
UnaryLanguage gen_poly_lang(const std::vector<Int>& coeffs);

// Language {a^p : p prime}.
UnaryLanguage gen_prime_lang();

// |{k <= horizon : a^k in L}| / (horizon + 1), exactly.
Rational lower_density(const UnaryLanguage& lang, std::uint64_t horizon, bool parallel = false);

struct DensityPoint {
  std::uint64_t horizon = 0;
  Rational ratio;
  Rational running_min;
};

// Ratios over the logarithmic horizon grid 10, 100, ..., ending at `horizon`,
// with the running minimum as the desk-scale liminf estimate.
std::vector<DensityPoint> density_trajectory(const UnaryLanguage& lang, std::uint64_t horizon,
                                             bool parallel = false);

// Product of half-open intervals [lo, hi) inside [0,1), one per coordinate.
struct IntervalBox {
  struct Interval {
    Rational lo, hi;
  };
  std::vector<Interval> dims;
};

// Validates lo < hi and endpoints within [0,1].
IntervalBox make_box(std::vector<IntervalBox::Interval> dims);

using Point = std::vector<Rational>;

// C(I,n)/n for the supplied points; coordinates are taken mod 1 before the
// interval test. Exact rational output.
Rational box_ratio(const std::vector<Point>& points, const IntervalBox& box,
                   bool parallel = false);
Rational box_ratio(const std::vector<Rational>& values, const IntervalBox& box,
                   bool parallel = false);

// A real number known to finite precision: the stated approximation plus a
// bound on |alpha - approx|. Exact rationals carry a zero bound.
struct AlphaValue {
  Rational approx;
  Rational error_bound;

  static AlphaValue exact(const Rational& q) { return {q, Rational(0)}; }
  // Decimal string with `digits` correct fraction digits: error 10^-digits.
  static AlphaValue from_decimal(const std::string& text, unsigned digits);
};

// sqrt(value) as a decimal string with `digits` fraction digits, computed by
// integer square root; the result is accurate to one unit in the last digit.
std::string sqrt_decimal(unsigned long value, unsigned digits);

struct SequenceSpec {
  std::uint64_t offset = 0;  // r
  std::uint64_t step = 1;    // N
  AlphaValue alpha;
  std::uint64_t count = 1;
};

// Fractional parts of (offset + m*step) * alpha for m = 1..count, exactly in
// the stated approximation. Raises StructuralError when the accumulated error
// bound (offset + count*step) * error exceeds 1e-6.
std::vector<Rational> weyl_sequence(const SequenceSpec& spec, bool parallel = false);

// Acceptance gap of a unary AfA: g(n) = sum over accepting coordinates of
// |(M^n x)_j| minus the same sum over rejecting coordinates, for n = 0..nmax.
// g(n) > 0 exactly when f_A(a^n) > 1/2.
std::vector<Rational> g_sequence(const Afa& a, std::size_t nmax);

// | |A+z| - (|A| + Re((|A|/A) z)) |; bounded by |z|^2/|A| for |z| <= |A|/2.
// The one floating-point computation in the library.
double abs_expansion_residual(std::complex<double> a, std::complex<double> z);

// CSV emission. Decimal columns use 12 significant digits; exact columns are
// num/den.
void write_density_csv(std::ostream& out, const std::vector<DensityPoint>& points);
void write_weyl_csv(std::ostream& out, const std::vector<Rational>& fracs);
void write_gseq_csv(std::ostream& out, const std::vector<Rational>& values);

}  // namespace affa::lab

#endif
