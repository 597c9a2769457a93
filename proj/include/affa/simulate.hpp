#ifndef AFFA_SIMULATE_HPP
#define AFFA_SIMULATE_HPP

#include <cstdint>

#include "affa/automata.hpp"
#include "affa/residue.hpp"

namespace affa::sim {

// PFA with cleared denominators: Mint_i = D * M_i has integer entries in
// [0, D]. The initial vector keeps its rationals; decisions fold its
// denominator scale in separately.
struct IntegerPfa {
  std::size_t k = 0;
  Alphabet alphabet;
  Int D;
  std::vector<IntMat> Mint;
  RatVec x;
  std::vector<int> y;
};

IntegerPfa clear_denominators(const Pfa& p);

// Turakainen form of an AfA. Each B_i borders M_i with one leading and one
// trailing state so that every row and column sums to zero; C_i = B_i + m*E
// is entrywise nonnegative and D_i = g*C_i is integral. The border states
// never accept and start with weight zero, so the acceptance ratio survives
// the transformation.
struct EmbeddedAfa {
  std::size_t k = 0;  // original state count; matrices are (k+2)-square
  Alphabet alphabet;
  IntVec xprime;            // xscale * (0, x, 0)
  Int xscale;               // lcm of the initial vector's denominators
  std::vector<int> fprime;  // 0, F flags..., 0
  Int m;                    // smallest shift making every B_i + m*E nonnegative
  Int g;                    // smallest positive integer making g*(B_i + m*E) integral
  std::vector<RatMat> B;
  std::vector<IntMat> Dint;
};

EmbeddedAfa turakainen_embed(const Afa& a);

// Certified upper bound on every integer that enters residue form during a
// length-n decision. Exceeding values would break CRT uniqueness, so the
// tests reconstruct and check containment at small n.
Int value_bound(const IntegerPfa& p, std::size_t n);
Int value_bound(const EmbeddedAfa& e, std::size_t n);

// Upper bound on bit_length(value_bound(., n)) computed from description
// constants only; decision runs size their basis from this so the whole
// pipeline stays inside machine words.
std::uint64_t value_bound_bits(const IntegerPfa& p, std::size_t n);
std::uint64_t value_bound_bits(const EmbeddedAfa& e, std::size_t n);

// Instrumentation summary of one decision run.
struct SpaceTrace {
  std::size_t input_length = 0;
  std::size_t primes_used = 0;       // r
  std::uint64_t largest_prime = 0;   // p_r
  unsigned max_register_bits = 0;    // widest arithmetic working register
  unsigned width_bound_bits = 0;     // 2*ceil(log2 p_r) + 4
  std::uint64_t prime_passes = 0;    // sequential sweeps over the basis
};

struct RnsOptions {
  bool parallel = false;     // per-prime passes fan out over OpenMP threads
  SpaceTrace* trace = nullptr;  // forces the serial instrumented path
};

// f_P(w) = 1/2, decided prime by prime: 2 f_{P'}(w) = D^n iff the congruence
// holds for every basis prime once P_r exceeds both sides. Never materializes
// f_{P'}(w).
bool decide_eq_cutpoint_rns(const IntegerPfa& p, const Word& w, const RnsOptions& opt = {});

// f_P(w) > 1/2 via residue comparison of 2 f_{P'}(w) against D^n.
bool decide_gt_cutpoint_rns(const IntegerPfa& p, const Word& w, const RnsOptions& opt = {});

// f_A(w) > 1/2 (strict) and f_A(w) >= 1/2 decided in residue form only:
// per-coordinate absolute differences against the all-ones correction term,
// then one final comparison of twice the projected sum with the full sum.
bool decide_affine_cutpoint_rns(const EmbeddedAfa& e, const Word& w, const RnsOptions& opt = {});
bool decide_affine_cutpoint_rns_ge(const EmbeddedAfa& e, const Word& w,
                                   const RnsOptions& opt = {});

// Conveniences that embed on the fly.
bool decide_eq_cutpoint_rns(const Pfa& p, const Word& w, const RnsOptions& opt = {});
bool decide_gt_cutpoint_rns(const Pfa& p, const Word& w, const RnsOptions& opt = {});
bool decide_affine_cutpoint_rns(const Afa& a, const Word& w, const RnsOptions& opt = {});

}  // namespace affa::sim

#endif
