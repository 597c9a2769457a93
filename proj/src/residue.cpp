#include "affa/residue.hpp"

namespace affa::rns {

bool is_odd_prime_trial(std::uint64_t c, RegisterTracker* t) {
  for (std::uint64_t d = 3;; d += 2) {
    track(t, d * d);
    if (d * d > c) return true;
    if (c % d == 0) return false;
  }
}

std::uint64_t PrimeWalker::next(RegisterTracker* t) {
  std::uint64_t c = cur_ == 1 ? 3 : cur_ + 2;
  while (!is_odd_prime_trial(c, t)) c += 2;
  // mod_mul relies on p^2 fitting a 64-bit register.
  if (c >= (std::uint64_t{1} << 31))
    throw StructuralError("prime basis grew past 2^31; input far beyond desk scale");
  track(t, c);
  cur_ = c;
  return c;
}

PrimeBasis prime_basis(std::size_t r) {
  if (r == 0) throw StructuralError("prime_basis: r must be at least 1");
  PrimeBasis basis;
  basis.product = 1;
  PrimeWalker w;
  for (std::size_t i = 0; i < r; ++i) {
    std::uint64_t p = w.next();
    basis.primes.push_back(p);
    basis.product *= static_cast<unsigned long>(p);
  }
  return basis;
}

PrimeBasis basis_for_bound(const Int& bound) {
  if (bound < 0) throw StructuralError("basis_for_bound: bound must be nonnegative");
  PrimeBasis basis;
  basis.product = 1;
  PrimeWalker w;
  do {
    std::uint64_t p = w.next();
    basis.primes.push_back(p);
    basis.product *= static_cast<unsigned long>(p);
  } while (basis.product <= bound);
  return basis;
}

std::size_t basis_size_for_bits(std::uint64_t value_bits, RegisterTracker* t,
                                std::uint64_t* largest_prime) {
  PrimeWalker w;
  std::uint64_t covered = 0;  // sum of (bit_length(p_i) - 1), so P_r >= 2^covered
  std::size_t r = 0;
  while (r == 0 || covered < value_bits) {
    std::uint64_t p = w.next(t);
    covered += static_cast<std::uint64_t>(std::bit_width(p)) - 1;
    track(t, covered);
    ++r;
    if (largest_prime) *largest_prime = p;
  }
  return r;
}

std::vector<std::uint64_t> first_primes(std::size_t r) {
  std::vector<std::uint64_t> out;
  out.reserve(r);
  PrimeWalker w;
  for (std::size_t i = 0; i < r; ++i) out.push_back(w.next());
  return out;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p,
                      RegisterTracker* t) {
  std::uint64_t acc = 1 % p;
  std::uint64_t b = base % p;
  while (exp > 0) {
    if (exp & 1) acc = mod_mul(acc, b, p, t);
    b = mod_mul(b, b, p, t);
    exp >>= 1;
  }
  return acc;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p, RegisterTracker* t) {
  a %= p;
  if (a == 0) throw StructuralError("mod_inv: value divisible by modulus");
  return mod_pow(a, p - 2, p, t);
}

std::uint64_t mod_reduce_int(const Int& v, std::uint64_t p, RegisterTracker* t) {
  if (v < 0) throw StructuralError("mod_reduce_int: negative value");
  if (!t) return mpz_fdiv_ui(v.get_mpz_t(), p);
  // MSB-first binary stream: acc <- (2*acc + bit) mod p stays below 2p.
  std::uint64_t acc = 0;
  const auto bits = bit_length(v);
  for (auto i = bits; i-- > 0;) {
    acc = acc * 2 + mpz_tstbit(v.get_mpz_t(), i);
    track(t, acc);
    acc %= p;
  }
  return acc;
}

Residues reduce(const Int& x, const PrimeBasis& basis) {
  Residues r;
  r.basis = &basis;
  r.digits.reserve(basis.size());
  for (std::uint64_t p : basis.primes) r.digits.push_back(mpz_fdiv_ui(x.get_mpz_t(), p));
  return r;
}

ResidueMatrix reduce_matrix(const IntMat& a, const PrimeBasis& basis) {
  ResidueMatrix rm;
  rm.basis = &basis;
  rm.rows = a.rows;
  rm.cols = a.cols;
  rm.per_prime.reserve(basis.size());
  for (std::uint64_t p : basis.primes) {
    std::vector<std::uint64_t> m(a.e.size());
    for (std::size_t i = 0; i < a.e.size(); ++i) m[i] = mpz_fdiv_ui(a.e[i].get_mpz_t(), p);
    rm.per_prime.push_back(std::move(m));
  }
  return rm;
}

Int crt_reconstruct(const Residues& res) {
  if (!res.basis || res.digits.size() != res.basis->size())
    throw StructuralError("crt_reconstruct: residues do not match their basis");
  // Garner: lift one prime at a time, x stays the representative mod p_1..p_i.
  Int x = 0, q = 1;
  for (std::size_t i = 0; i < res.digits.size(); ++i) {
    const std::uint64_t p = res.basis->primes[i];
    const std::uint64_t xi = mpz_fdiv_ui(x.get_mpz_t(), p);
    const std::uint64_t qi = mpz_fdiv_ui(q.get_mpz_t(), p);
    const std::uint64_t delta = (res.digits[i] + p - xi) % p;
    x += q * Int(static_cast<unsigned long>(mod_mul(delta, mod_inv(qi, p), p)));
    q *= static_cast<unsigned long>(p);
  }
  return x;
}

namespace {

void check_same_basis(const Residues& x, const Residues& y) {
  if (!x.basis || !y.basis || !(*x.basis == *y.basis))
    throw StructuralError("residue operands use different prime bases");
  if (x.digits.size() != y.digits.size())
    throw StructuralError("residue operands have different digit counts");
}

}  // namespace

std::uint64_t residue_mod(const Residues& res, std::uint64_t m, RegisterTracker* t) {
  if (!res.basis) throw StructuralError("residue_mod: residues have no basis");
  auto make = [&] { return StoredPrimeSeq{res.basis->primes}; };
  return mixed_radix_mod_core(res.digits, m, make, t);
}

Ordering residue_compare(const Residues& x, const Residues& y, RegisterTracker* t) {
  check_same_basis(x, y);
  auto make = [&] { return StoredPrimeSeq{x.basis->primes}; };
  return residue_compare_core(x.digits, y.digits, make, t);
}

Residues residue_abs_diff(const Residues& x, const Residues& y, RegisterTracker* t) {
  check_same_basis(x, y);
  auto make = [&] { return StoredPrimeSeq{x.basis->primes}; };
  return Residues{x.basis, residue_abs_diff_core(x.digits, y.digits, make, t)};
}

}  // namespace affa::rns
