#include "affa/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "affa/errors.hpp"

namespace affa::lab {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) acc = mulmod_u64(acc, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return acc;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                          31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for the whole 64-bit range.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                          31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

Int eval_poly(const std::vector<Int>& coeffs, const Int& n) {
  Int acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * n + *it;
  return acc;
}

std::uint64_t count_members(const UnaryLanguage& lang, std::uint64_t lo, std::uint64_t hi,
                            bool parallel) {
  if (lang.nth_member) {
    // Enumerate members instead of scanning the whole range. A repeated value
    // means the generator is exhausted (constant language).
    std::uint64_t count = 0;
    Int prev = -1;
    for (std::uint64_t i = 0;; ++i) {
      Int v = lang.nth_member(i);
      if (v > static_cast<unsigned long>(hi) || v == prev) break;
      if (v >= static_cast<unsigned long>(lo)) ++count;
      prev = v;
    }
    return count;
  }
  std::uint64_t count = 0;
  if (parallel) {
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (long long n = static_cast<long long>(lo); n <= static_cast<long long>(hi); ++n)
      if (lang.member(static_cast<std::uint64_t>(n))) ++count;
  } else {
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (lang.member(n)) ++count;
  }
  return count;
}

}  // namespace

UnaryLanguage gen_poly_lang(const std::vector<Int>& coeffs) {
  for (const auto& c : coeffs)
    if (c < 0)
      throw StructuralError(
          "polynomial language needs nonnegative coefficients (image test requires "
          "monotonicity)");
  std::size_t degree = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) degree = i;
  const bool constant = degree == 0;

  UnaryLanguage lang;
  lang.name = "poly";
  lang.corollary_degree_ok = degree > 2;
  std::vector<Int> cs = coeffs;
  if (cs.empty()) cs.push_back(Int(0));
  lang.nth_member = [cs](std::uint64_t i) { return eval_poly(cs, Int(static_cast<unsigned long>(i))); };
  if (constant) {
    Int c0 = cs[0];
    lang.member = [c0](std::uint64_t n) { return Int(static_cast<unsigned long>(n)) == c0; };
    lang.nth_member = [c0](std::uint64_t) { return c0; };
    return lang;
  }
  // Non-constant with nonnegative coefficients: strictly increasing on N, so
  // membership is a binary search over the argument.
  lang.member = [cs](std::uint64_t n) {
    Int target(static_cast<unsigned long>(n));
    Int lo = 0, hi = 1;
    while (eval_poly(cs, hi) < target) hi *= 2;
    while (lo <= hi) {
      Int mid = (lo + hi) / 2;
      Int v = eval_poly(cs, mid);
      if (v == target) return true;
      if (v < target)
        lo = mid + 1;
      else
        hi = mid - 1;
    }
    return false;
  };
  return lang;
}

UnaryLanguage gen_prime_lang() {
  UnaryLanguage lang;
  lang.name = "primes";
  lang.member = [](std::uint64_t n) { return is_prime_u64(n); };
  return lang;
}

Rational lower_density(const UnaryLanguage& lang, std::uint64_t horizon, bool parallel) {
  const std::uint64_t count = count_members(lang, 0, horizon, parallel);
  return make_rat(Int(static_cast<unsigned long>(count)),
                  Int(static_cast<unsigned long>(horizon)) + 1);
}

std::vector<DensityPoint> density_trajectory(const UnaryLanguage& lang, std::uint64_t horizon,
                                             bool parallel) {
  std::vector<std::uint64_t> grid;
  for (std::uint64_t h = 10; h < horizon; h *= 10) {
    grid.push_back(h);
    if (h > horizon / 10) break;
  }
  if (grid.empty() || grid.back() != horizon) grid.push_back(horizon);

  std::vector<DensityPoint> out;
  std::uint64_t counted_to = 0;  // members in [0, counted_to-1]
  std::uint64_t count = 0;
  Rational running_min;
  for (std::uint64_t h : grid) {
    count += count_members(lang, counted_to, h, parallel);
    counted_to = h + 1;
    Rational ratio = make_rat(Int(static_cast<unsigned long>(count)),
                              Int(static_cast<unsigned long>(h)) + 1);
    running_min = out.empty() ? ratio : std::min(running_min, ratio);
    out.push_back({h, ratio, running_min});
  }
  return out;
}

IntervalBox make_box(std::vector<IntervalBox::Interval> dims) {
  if (dims.empty()) throw StructuralError("interval box needs at least one interval");
  for (const auto& iv : dims) {
    if (!(iv.lo < iv.hi)) throw StructuralError("interval endpoints must satisfy lo < hi");
    if (iv.lo < 0 || iv.hi > 1) throw StructuralError("interval endpoints must lie in [0,1]");
  }
  return IntervalBox{std::move(dims)};
}

namespace {

Rational mod_one(const Rational& q) {
  if (q >= 0 && q < 1) return q;
  Int fl;
  // floor(num/den), then shift into [0,1)
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return q - Rational(fl);
}

bool box_contains(const Point& pt, const IntervalBox& box) {
  for (std::size_t d = 0; d < box.dims.size(); ++d) {
    Rational f = mod_one(pt[d]);
    if (f < box.dims[d].lo || f >= box.dims[d].hi) return false;
  }
  return true;
}

}  // namespace

Rational box_ratio(const std::vector<Point>& points, const IntervalBox& box, bool parallel) {
  if (box.dims.empty()) throw StructuralError("interval box needs at least one interval");
  if (points.empty()) throw StructuralError("box_ratio: empty sequence");
  for (const auto& pt : points)
    if (pt.size() != box.dims.size())
      throw StructuralError("point dimension differs from the interval box");
  std::uint64_t count = 0;
  if (parallel) {
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (long long i = 0; i < static_cast<long long>(points.size()); ++i)
      if (box_contains(points[static_cast<std::size_t>(i)], box)) ++count;
  } else {
    for (const auto& pt : points)
      if (box_contains(pt, box)) ++count;
  }
  return make_rat(Int(static_cast<unsigned long>(count)),
                  Int(static_cast<unsigned long>(points.size())));
}

Rational box_ratio(const std::vector<Rational>& values, const IntervalBox& box, bool parallel) {
  std::vector<Point> pts;
  pts.reserve(values.size());
  for (const auto& v : values) pts.push_back({v});
  return box_ratio(pts, box, parallel);
}

AlphaValue AlphaValue::from_decimal(const std::string& text, unsigned digits) {
  AlphaValue a;
  a.approx = parse_decimal_or_rational(text);
  a.error_bound = make_rat(Int(1), pow_int(Int(10), digits));
  return a;
}

std::string sqrt_decimal(unsigned long value, unsigned digits) {
  Int scaled = Int(value) * pow_int(Int(10), 2ul * digits);
  Int root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  std::string s = root.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return s;
}

std::vector<Rational> weyl_sequence(const SequenceSpec& spec, bool parallel) {
  if (spec.step < 1) throw StructuralError("weyl_sequence: step must be at least 1");
  if (spec.count < 1) throw StructuralError("weyl_sequence: count must be at least 1");
  // Largest multiplier times the alpha error must stay far below the interval
  // resolution we care about.
  const Int max_mult = Int(static_cast<unsigned long>(spec.offset)) +
                       Int(static_cast<unsigned long>(spec.count)) *
                           Int(static_cast<unsigned long>(spec.step));
  if (Rational(max_mult) * spec.alpha.error_bound >= make_rat(1, 1000000))
    throw StructuralError(
        "weyl_sequence: stated alpha precision is insufficient for the requested count");

  const Int num = spec.alpha.approx.get_num();
  const Int den = spec.alpha.approx.get_den();
  std::vector<Rational> out(spec.count);
  auto term = [&](std::uint64_t m) {
    Int mult = Int(static_cast<unsigned long>(spec.offset)) +
               Int(static_cast<unsigned long>(m)) * Int(static_cast<unsigned long>(spec.step));
    Int prod = mult * num;
    Int rem;
    mpz_fdiv_r(rem.get_mpz_t(), prod.get_mpz_t(), den.get_mpz_t());
    return make_rat(rem, den);
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long m = 1; m <= static_cast<long long>(spec.count); ++m)
      out[static_cast<std::size_t>(m - 1)] = term(static_cast<std::uint64_t>(m));
  } else {
    for (std::uint64_t m = 1; m <= spec.count; ++m) out[m - 1] = term(m);
  }
  return out;
}

std::vector<Rational> g_sequence(const Afa& a, std::size_t nmax) {
  if (a.alphabet.size() != 1)
    throw StructuralError("g_sequence is defined for unary automata only");
  validate(a);
  std::vector<Rational> out;
  out.reserve(nmax + 1);
  RatVec v = a.x;
  for (std::size_t n = 0;; ++n) {
    Rational g(0);
    for (std::size_t i = 0; i < a.k; ++i) {
      Rational m = abs(v[i]);
      g += a.f[i] ? m : -m;
    }
    out.push_back(g);
    if (n == nmax) break;
    v = mat_apply(a.M[0], v);
  }
  return out;
}

double abs_expansion_residual(std::complex<double> a, std::complex<double> z) {
  if (a == std::complex<double>(0.0, 0.0))
    throw StructuralError("abs_expansion_residual: A must be nonzero");
  const double mag = std::abs(a);
  const double approx = mag + ((mag / a) * z).real();
  return std::abs(std::abs(a + z) - approx);
}

namespace {

void put_decimal(std::ostream& out, const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", rat_to_double(q));
  out << buf;
}

}  // namespace

void write_density_csv(std::ostream& out, const std::vector<DensityPoint>& points) {
  out << "horizon,density,density_exact\n";
  for (const auto& p : points) {
    out << p.horizon << ",";
    put_decimal(out, p.ratio);
    out << "," << format_rational(p.ratio) << "\n";
  }
}

void write_weyl_csv(std::ostream& out, const std::vector<Rational>& fracs) {
  out << "m,frac,frac_exact\n";
  for (std::size_t i = 0; i < fracs.size(); ++i) {
    out << (i + 1) << ",";
    put_decimal(out, fracs[i]);
    out << "," << format_rational(fracs[i]) << "\n";
  }
}

void write_gseq_csv(std::ostream& out, const std::vector<Rational>& values) {
  out << "n,value,value_exact\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << i << ",";
    put_decimal(out, values[i]);
    out << "," << format_rational(values[i]) << "\n";
  }
}

}  // namespace affa::lab
