#include "affa/rational.hpp"

#include <cctype>
#include <cstdio>

#include "affa/errors.hpp"

namespace affa {

Rational make_rat(long num, long den) {
  if (den == 0) throw StructuralError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rat(const Int& num, const Int& den) {
  if (den == 0) throw StructuralError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  std::string num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw StructuralError("malformed rational '" + text + "' (expected num or num/den)");
  Int n(num), d(den);
  if (d == 0) throw StructuralError("zero denominator in '" + text + "'");
  if (neg) n = -n;
  return make_rat(n, d);
}

Rational parse_decimal_or_rational(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return parse_rational(text);
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
    dot -= 1;
  }
  std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
  if (ip.empty()) ip = "0";
  if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
    throw StructuralError("malformed decimal '" + text + "'");
  Int scale = pow_int(Int(10), fp.size());
  Int n = Int(ip) * scale + (fp.empty() ? Int(0) : Int(fp));
  if (neg) n = -n;
  return make_rat(n, scale);
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double rat_to_double(const Rational& q) { return q.get_d(); }

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

unsigned long bit_length(const Int& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

}  // namespace affa
