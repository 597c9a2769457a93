#ifndef AFFA_RESIDUE_HPP
#define AFFA_RESIDUE_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "affa/errors.hpp"
#include "affa/linalg.hpp"
#include "affa/rational.hpp"

namespace affa::rns {

// Records the maximum bit width taken by arithmetic working registers during
// residue computations. Loop counters and read-only machine constants are not
// observed; every modular value, partial product and streaming accumulator is.
class RegisterTracker {
 public:
  void observe(std::uint64_t v) {
    auto b = static_cast<unsigned>(std::bit_width(v));
    if (b > max_bits_) max_bits_ = b;
    ++observations_;
  }
  unsigned max_bits() const { return max_bits_; }
  std::uint64_t observations() const { return observations_; }

 private:
  unsigned max_bits_ = 0;
  std::uint64_t observations_ = 0;
};

inline void track(RegisterTracker* t, std::uint64_t v) {
  if (t) t->observe(v);
}

// Trial-division primality for odd candidates; divisor products are tracked
// so the instrumented runs account for prime regeneration as well.
bool is_odd_prime_trial(std::uint64_t c, RegisterTracker* t = nullptr);

// Emits 3, 5, 7, 11, ... one at a time. Simulation runs walk a fresh
// generator instead of storing the basis as a list.
class PrimeWalker {
 public:
  std::uint64_t next(RegisterTracker* t = nullptr);
  std::uint64_t current() const { return cur_; }

 private:
  std::uint64_t cur_ = 1;
};

// The first r odd primes (2 excluded so the product is odd) together with
// their product P_r.
struct PrimeBasis {
  std::vector<std::uint64_t> primes;
  Int product;

  std::size_t size() const { return primes.size(); }
  std::uint64_t largest() const { return primes.back(); }
  bool operator==(const PrimeBasis& o) const { return primes == o.primes; }
};

PrimeBasis prime_basis(std::size_t r);

// Smallest r with P_r > bound, so any two values in [0, bound] stay distinct
// under the Chinese remainder map.
PrimeBasis basis_for_bound(const Int& bound);

// Small-register variant used inside decision runs: smallest r with
// sum_i (bit_length(p_i) - 1) >= value_bits, which guarantees
// P_r >= 2^value_bits > any value of at most value_bits bits. Never touches
// arbitrary-precision arithmetic.
std::size_t basis_size_for_bits(std::uint64_t value_bits, RegisterTracker* t = nullptr,
                                std::uint64_t* largest_prime = nullptr);

// The first r odd primes as a plain list (parallel passes index this).
std::vector<std::uint64_t> first_primes(std::size_t r);

// Least nonnegative residues of one integer against every basis prime.
struct Residues {
  const PrimeBasis* basis = nullptr;
  std::vector<std::uint64_t> digits;
};

Residues reduce(const Int& x, const PrimeBasis& basis);

// Entrywise reduction of an integer matrix, one small matrix per prime.
struct ResidueMatrix {
  const PrimeBasis* basis = nullptr;
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::uint64_t>> per_prime;  // [prime][i*cols+j]
};

ResidueMatrix reduce_matrix(const IntMat& a, const PrimeBasis& basis);

// The unique representative in [0, P_r).
Int crt_reconstruct(const Residues& res);

enum class Ordering { LT, EQ, GT };

// x mod m without reconstructing x, via streaming mixed-radix conversion.
std::uint64_t residue_mod(const Residues& res, std::uint64_t m, RegisterTracker* t = nullptr);

// Three-way comparison of the represented integers (both in [0, P_r)). The
// parity criterion: x >= y iff x - y and (x - y) mod P_r share parity, with
// parities extracted through residue_mod(., 2). P_r is odd by construction,
// which is what makes the criterion work.
Ordering residue_compare(const Residues& x, const Residues& y, RegisterTracker* t = nullptr);

// Residues of |x - y|: compare first, then subtract the smaller digitwise.
Residues residue_abs_diff(const Residues& x, const Residues& y, RegisterTracker* t = nullptr);

// ---------------------------------------------------------------------------
// Small-register primitives, shared with the simulator. All of them keep
// every intermediate value below p^2 (plus a couple of bits of slack), which
// is the width contract instrumented by RegisterTracker.

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p,
                             RegisterTracker* t = nullptr) {
  track(t, a * b);
  return (a * b) % p;
}

inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p,
                             RegisterTracker* t = nullptr) {
  track(t, a + b);
  return (a + b) % p;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p,
                      RegisterTracker* t = nullptr);

// Inverse of a (nonzero mod p) by Fermat; p prime.
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p, RegisterTracker* t = nullptr);

// v mod p for an arbitrary-precision nonnegative machine constant. With a
// tracker attached the value is streamed in binary MSB-first so the working
// accumulator never exceeds 2p; otherwise a plain division is used.
std::uint64_t mod_reduce_int(const Int& v, std::uint64_t p, RegisterTracker* t = nullptr);

// ---------------------------------------------------------------------------
// Core kernels, parameterised over the prime source so callers can either
// index a stored basis or regenerate primes on the fly. MakeSeq is a callable
// returning a fresh sequence object with `std::uint64_t next(RegisterTracker*)`.

struct StoredPrimeSeq {
  std::span<const std::uint64_t> primes;
  std::size_t i = 0;
  std::uint64_t next(RegisterTracker*) { return primes[i++]; }
};

struct RegenPrimeSeq {
  PrimeWalker w;
  std::uint64_t next(RegisterTracker* t) { return w.next(t); }
};

template <class MakeSeq>
std::uint64_t mixed_radix_mod_core(std::vector<std::uint64_t> work, std::uint64_t m,
                                   MakeSeq&& make_seq, RegisterTracker* t) {
  if (m < 2) throw StructuralError("residue_mod: modulus must be at least 2");
  if (m >= (std::uint64_t{1} << 31))
    throw StructuralError("residue_mod: modulus too wide for machine-word registers");
  const std::size_t r = work.size();
  std::uint64_t acc = 0;       // x mod m, accumulated digit by digit
  std::uint64_t qmod = 1 % m;  // (p_1 ... p_{i-1}) mod m
  auto outer = make_seq();
  for (std::size_t i = 0; i < r; ++i) {
    const std::uint64_t pi = outer.next(t);
    const std::uint64_t v = work[i];  // mixed-radix digit for position i
    track(t, v);
    acc = mod_add(acc, mod_mul(v, qmod, m, t), m, t);
    qmod = mod_mul(qmod, pi % m, m, t);
    if (i + 1 == r) break;
    // Strip digit v and divide by pi: adjust every later residue in place.
    auto inner = make_seq();
    for (std::size_t s = 0; s <= i; ++s) inner.next(t);
    for (std::size_t j = i + 1; j < r; ++j) {
      const std::uint64_t pj = inner.next(t);
      track(t, work[j] + pj - v % pj);
      const std::uint64_t diff = (work[j] + pj - v % pj) % pj;  // v < pi < pj
      work[j] = mod_mul(diff, mod_inv(pi % pj, pj, t), pj, t);
    }
  }
  return acc;
}

template <class MakeSeq>
Ordering residue_compare_core(std::span<const std::uint64_t> xd,
                              std::span<const std::uint64_t> yd, MakeSeq&& make_seq,
                              RegisterTracker* t) {
  if (xd.size() != yd.size()) throw StructuralError("residue_compare: basis mismatch");
  bool equal = true;
  for (std::size_t i = 0; i < xd.size(); ++i)
    if (xd[i] != yd[i]) {
      equal = false;
      break;
    }
  if (equal) return Ordering::EQ;
  std::vector<std::uint64_t> zd(xd.size());
  auto seq = make_seq();
  for (std::size_t i = 0; i < xd.size(); ++i) {
    const std::uint64_t p = seq.next(t);
    track(t, xd[i] + p - yd[i]);
    zd[i] = (xd[i] + p - yd[i]) % p;
  }
  const std::uint64_t px = mixed_radix_mod_core(std::vector(xd.begin(), xd.end()), 2, make_seq, t);
  const std::uint64_t py = mixed_radix_mod_core(std::vector(yd.begin(), yd.end()), 2, make_seq, t);
  const std::uint64_t pz = mixed_radix_mod_core(std::move(zd), 2, make_seq, t);
  // x - y has parity px xor py; equal parity with (x - y) mod P_r means x >= y.
  return ((px ^ py) == pz) ? Ordering::GT : Ordering::LT;
}

template <class MakeSeq>
std::vector<std::uint64_t> residue_abs_diff_core(std::span<const std::uint64_t> xd,
                                                 std::span<const std::uint64_t> yd,
                                                 MakeSeq&& make_seq, RegisterTracker* t) {
  const Ordering ord = residue_compare_core(xd, yd, make_seq, t);
  std::span<const std::uint64_t> hi = xd, lo = yd;
  if (ord == Ordering::LT) std::swap(hi, lo);
  std::vector<std::uint64_t> out(xd.size());
  auto seq = make_seq();
  for (std::size_t i = 0; i < xd.size(); ++i) {
    const std::uint64_t p = seq.next(t);
    track(t, hi[i] + p - lo[i]);
    out[i] = (hi[i] + p - lo[i]) % p;
  }
  return out;
}

}  // namespace affa::rns

#endif
