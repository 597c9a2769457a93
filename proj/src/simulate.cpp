#include "affa/simulate.hpp"

#include <algorithm>
#include <bit>

#include "affa/errors.hpp"

namespace affa::sim {

namespace {

using rns::mod_add;
using rns::mod_mul;
using rns::RegisterTracker;

Int x_denominator_scale(const RatVec& x) {
  Int s = 1;
  for (const auto& v : x) s = lcm(s, v.get_den());
  return s;
}

void check_word(const Word& w, std::size_t symbols) {
  for (auto s : w)
    if (s >= symbols)
      throw StructuralError("word uses symbol index " + std::to_string(s) +
                            " outside the alphabet");
}

IntVec scale_vector(const RatVec& x, const Int& s) {
  IntVec out;
  out.reserve(x.size());
  for (const auto& v : x) {
    Rational scaled = v * Rational(s);
    out.push_back(scaled.get_num());  // exact by choice of s
  }
  return out;
}

// bit_length(base^n) from description constants only.
std::uint64_t pow_bits_ub(const Int& base, std::size_t n) {
  if (n == 0 || base == 1) return 1;
  if (mpz_popcount(base.get_mpz_t()) == 1)
    return static_cast<std::uint64_t>(n) * (bit_length(base) - 1) + 1;
  return static_cast<std::uint64_t>(n) * bit_length(base);
}

// --- per-prime passes ------------------------------------------------------

struct PairDigits {
  std::uint64_t lhs = 0, rhs = 0;
};

std::vector<std::vector<std::uint64_t>> reduce_mats(const std::vector<IntMat>& mats,
                                                    std::uint64_t p, RegisterTracker* t) {
  std::vector<std::vector<std::uint64_t>> out(mats.size());
  for (std::size_t s = 0; s < mats.size(); ++s) {
    out[s].resize(mats[s].e.size());
    for (std::size_t i = 0; i < mats[s].e.size(); ++i)
      out[s][i] = rns::mod_reduce_int(mats[s].e[i], p, t);
  }
  return out;
}

void chain_step(const std::vector<std::uint64_t>& m, std::vector<std::uint64_t>& v,
                std::vector<std::uint64_t>& scratch, std::size_t k, std::uint64_t p,
                RegisterTracker* t) {
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < k; ++j)
      acc = mod_add(acc, mod_mul(m[i * k + j], v[j], p, t), p, t);
    scratch[i] = acc;
  }
  std::swap(v, scratch);
}

// Digits of 2*y^T Mint_w (sx*x) and sx*D^n modulo p.
PairDigits pfa_digits_mod_p(const IntegerPfa& P, const IntVec& xi, const Int& sx,
                            const Word& w, std::uint64_t p, RegisterTracker* t) {
  const std::size_t k = P.k;
  const auto mred = reduce_mats(P.Mint, p, t);
  std::vector<std::uint64_t> v(k), scratch(k);
  for (std::size_t j = 0; j < k; ++j) v[j] = rns::mod_reduce_int(xi[j], p, t);
  for (auto sym : w) chain_step(mred[sym], v, scratch, k, p, t);
  std::uint64_t dot = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (P.y[i]) dot = mod_add(dot, v[i], p, t);
  PairDigits d;
  d.lhs = mod_add(dot, dot, p, t);
  const std::uint64_t dp = rns::mod_reduce_int(P.D, p, t);
  d.rhs = mod_mul(rns::mod_reduce_int(sx, p, t), rns::mod_pow(dp, w.size(), p, t), p, t);
  return d;
}

struct AfaPrep {
  IntVec xpos, xneg;  // xprime split into nonnegative parts
  Int sigma;          // sum of xprime
};

AfaPrep prepare(const EmbeddedAfa& E) {
  AfaPrep prep;
  prep.sigma = 0;
  prep.xpos.resize(E.xprime.size());
  prep.xneg.resize(E.xprime.size());
  for (std::size_t i = 0; i < E.xprime.size(); ++i) {
    prep.sigma += E.xprime[i];
    if (E.xprime[i] >= 0)
      prep.xpos[i] = E.xprime[i];
    else
      prep.xneg[i] = -E.xprime[i];
  }
  return prep;
}

// Per-coordinate digits of a = (D_w xpos)_c and q = (D_w xneg)_c + b where
// b = m^n (k+2)^{n-1} g^n * sigma; the decided vector is a - q.
void afa_digits_mod_p(const EmbeddedAfa& E, const AfaPrep& prep, const Word& w,
                      std::uint64_t p, RegisterTracker* t, std::uint64_t* pd,
                      std::uint64_t* qd) {
  const std::size_t dims = E.k + 2;
  const std::size_t n = w.size();
  const auto mred = reduce_mats(E.Dint, p, t);
  std::vector<std::uint64_t> vp(dims), vn(dims), scratch(dims);
  for (std::size_t j = 0; j < dims; ++j) {
    vp[j] = rns::mod_reduce_int(prep.xpos[j], p, t);
    vn[j] = rns::mod_reduce_int(prep.xneg[j], p, t);
  }
  for (auto sym : w) {
    chain_step(mred[sym], vp, scratch, dims, p, t);
    chain_step(mred[sym], vn, scratch, dims, p, t);
  }
  std::uint64_t b = 0;
  if (n > 0) {
    const std::uint64_t mp = rns::mod_reduce_int(E.m, p, t);
    const std::uint64_t gp = rns::mod_reduce_int(E.g, p, t);
    const std::uint64_t kp = static_cast<std::uint64_t>(dims) % p;
    std::uint64_t coef = rns::mod_pow(mp, n, p, t);
    coef = mod_mul(coef, rns::mod_pow(kp, n - 1, p, t), p, t);
    coef = mod_mul(coef, rns::mod_pow(gp, n, p, t), p, t);
    b = mod_mul(coef, rns::mod_reduce_int(prep.sigma, p, t), p, t);
  }
  for (std::size_t c = 0; c < dims; ++c) {
    pd[c] = vp[c];
    qd[c] = mod_add(vn[c], b, p, t);
  }
}

// --- scan templates (serial; MakeSeq picks stored vs regenerated primes) ----

template <class MakeSeq>
bool eq_scan(const IntegerPfa& P, const IntVec& xi, const Int& sx, const Word& w,
             std::size_t r, MakeSeq&& make, RegisterTracker* t) {
  auto seq = make();
  for (std::size_t i = 0; i < r; ++i) {
    const std::uint64_t p = seq.next(t);
    const auto d = pfa_digits_mod_p(P, xi, sx, w, p, t);
    if (d.lhs != d.rhs) return false;  // one mismatched congruence settles it
  }
  return true;
}

template <class MakeSeq>
rns::Ordering gt_scan(const IntegerPfa& P, const IntVec& xi, const Int& sx, const Word& w,
                      std::size_t r, MakeSeq&& make, RegisterTracker* t) {
  std::vector<std::uint64_t> lhs(r), rhs(r);
  auto seq = make();
  for (std::size_t i = 0; i < r; ++i) {
    const std::uint64_t p = seq.next(t);
    const auto d = pfa_digits_mod_p(P, xi, sx, w, p, t);
    lhs[i] = d.lhs;
    rhs[i] = d.rhs;
  }
  return rns::residue_compare_core(lhs, rhs, make, t);
}

// Final comparison. The full L1 sum carries the bordered bottom coordinate,
// which holds exactly -1 (scaled: g^n * sigma) after at least one step, so
// the true denominator is DEN minus that contribution. Comparing
// 2*NUM + g^n*sigma against DEN keeps every residue-side value nonnegative.
template <class MakeSeq>
bool affine_verdict(const EmbeddedAfa& E, const Int& sigma, std::size_t n, std::size_t r,
                    bool strict, std::vector<std::vector<std::uint64_t>>& pd,
                    std::vector<std::vector<std::uint64_t>>& qd, MakeSeq&& make,
                    RegisterTracker* t) {
  const std::size_t dims = E.k + 2;
  std::vector<std::uint64_t> num(r, 0), den(r, 0);
  for (std::size_t c = 0; c < dims; ++c) {
    const auto diff = rns::residue_abs_diff_core(pd[c], qd[c], make, t);
    auto seq = make();
    for (std::size_t i = 0; i < r; ++i) {
      const std::uint64_t p = seq.next(t);
      den[i] = mod_add(den[i], diff[i], p, t);
      if (E.fprime[c]) num[i] = mod_add(num[i], diff[i], p, t);
    }
  }
  std::vector<std::uint64_t> lhs(r);
  {
    auto seq = make();
    for (std::size_t i = 0; i < r; ++i) {
      const std::uint64_t p = seq.next(t);
      lhs[i] = mod_add(num[i], num[i], p, t);
      if (n > 0) {
        const std::uint64_t corr = mod_mul(rns::mod_pow(rns::mod_reduce_int(E.g, p, t),
                                                        n, p, t),
                                           rns::mod_reduce_int(sigma, p, t), p, t);
        lhs[i] = mod_add(lhs[i], corr, p, t);
      }
    }
  }
  const auto cmp = rns::residue_compare_core(lhs, den, make, t);
  return strict ? cmp == rns::Ordering::GT : cmp != rns::Ordering::LT;
}

template <class MakeSeq>
bool affine_scan(const EmbeddedAfa& E, const AfaPrep& prep, const Word& w, std::size_t r,
                 bool strict, MakeSeq&& make, RegisterTracker* t) {
  const std::size_t dims = E.k + 2;
  std::vector<std::vector<std::uint64_t>> pd(dims, std::vector<std::uint64_t>(r));
  std::vector<std::vector<std::uint64_t>> qd(dims, std::vector<std::uint64_t>(r));
  {
    auto seq = make();
    std::vector<std::uint64_t> pc(dims), qc(dims);
    for (std::size_t i = 0; i < r; ++i) {
      const std::uint64_t p = seq.next(t);
      afa_digits_mod_p(E, prep, w, p, t, pc.data(), qc.data());
      for (std::size_t c = 0; c < dims; ++c) {
        pd[c][i] = pc[c];
        qd[c][i] = qc[c];
      }
    }
  }
  return affine_verdict(E, prep.sigma, w.size(), r, strict, pd, qd, make, t);
}

// --- run plumbing ------------------------------------------------------------

struct RunStats {
  std::size_t r = 0;
  std::uint64_t largest = 0;
  std::uint64_t passes = 0;
};

template <class MakeSeq>
auto counted(MakeSeq make, std::uint64_t* passes) {
  return [make, passes]() {
    ++*passes;
    return make();
  };
}

void finish_trace(SpaceTrace* out, std::size_t n, const RunStats& st,
                  const RegisterTracker& t) {
  out->input_length = n;
  out->primes_used = st.r;
  out->largest_prime = st.largest;
  out->prime_passes = st.passes;
  out->max_register_bits = t.max_bits();
  out->width_bound_bits = 2 * static_cast<unsigned>(std::bit_width(st.largest)) + 4;
  if (out->max_register_bits > out->width_bound_bits)
    throw SpaceBoundViolation("working register reached " +
                              std::to_string(out->max_register_bits) + " bits, bound is " +
                              std::to_string(out->width_bound_bits));
}

}  // namespace

IntegerPfa clear_denominators(const Pfa& p) {
  validate(p);
  IntegerPfa out;
  out.k = p.k;
  out.alphabet = p.alphabet;
  out.x = p.x;
  out.y = p.y;
  out.D = 1;
  for (const auto& m : p.M)
    for (const auto& v : m.e) out.D = lcm(out.D, v.get_den());
  out.Mint.reserve(p.M.size());
  for (const auto& m : p.M) {
    IntMat im(p.k, p.k);
    for (std::size_t i = 0; i < m.e.size(); ++i) {
      Rational scaled = m.e[i] * Rational(out.D);
      im.e[i] = scaled.get_num();
    }
    out.Mint.push_back(std::move(im));
  }
  return out;
}

EmbeddedAfa turakainen_embed(const Afa& a) {
  validate(a);
  const std::size_t k = a.k, dims = k + 2;
  EmbeddedAfa out;
  out.k = k;
  out.alphabet = a.alphabet;

  Rational min_entry(0);
  for (const auto& m : a.M) {
    RatMat b(dims, dims);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) b.at(i + 1, j + 1) = m.at(i, j);
    // Border entries are forced by the zero row/column sums.
    Rational csum_total(0);
    for (std::size_t i = 0; i < k; ++i) b.at(i + 1, 0) = -row_sum(m, i);
    for (std::size_t j = 0; j < k; ++j) {
      Rational cs = col_sum(m, j);
      b.at(k + 1, j + 1) = -cs;
      csum_total += cs;
    }
    b.at(k + 1, 0) = csum_total;  // equals k for an affine matrix
    for (std::size_t i = 0; i < dims; ++i)
      if (row_sum(b, i) != 0 || col_sum(b, i) != 0)
        throw StructuralError("embedding produced a nonzero border sum");
    for (const auto& v : b.e) min_entry = std::min(min_entry, v);
    out.B.push_back(std::move(b));
  }

  if (min_entry >= 0) {
    out.m = 0;
  } else {
    Rational need = -min_entry;
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), need.get_num().get_mpz_t(), need.get_den().get_mpz_t());
    out.m = q;
  }

  out.g = 1;
  for (const auto& b : out.B)
    for (const auto& v : b.e) out.g = lcm(out.g, v.get_den());

  const Rational shift{out.m};
  for (const auto& b : out.B) {
    IntMat d(dims, dims);
    for (std::size_t i = 0; i < b.e.size(); ++i) {
      Rational scaled = (b.e[i] + shift) * Rational(out.g);
      if (scaled.get_den() != 1 || scaled < 0)
        throw StructuralError("embedding scale failed to clear an entry");
      d.e[i] = scaled.get_num();
    }
    out.Dint.push_back(std::move(d));
  }

  out.xscale = x_denominator_scale(a.x);
  out.xprime.assign(dims, Int(0));
  IntVec mid = scale_vector(a.x, out.xscale);
  for (std::size_t i = 0; i < k; ++i) out.xprime[i + 1] = mid[i];

  out.fprime.assign(dims, 0);
  for (std::size_t i = 0; i < k; ++i) out.fprime[i + 1] = a.f[i];
  return out;
}

Int value_bound(const IntegerPfa& p, std::size_t n) {
  return 2 * x_denominator_scale(p.x) * pow_int(p.D, n);
}

std::uint64_t value_bound_bits(const IntegerPfa& p, std::size_t n) {
  return 1 + bit_length(x_denominator_scale(p.x)) + pow_bits_ub(p.D, n);
}

namespace {

Int growth_base(const EmbeddedAfa& e) {
  Int g = e.g * e.m * Int(static_cast<unsigned long>(e.k + 2));
  return std::max(g, Int(1));
}

Int weight_term(const EmbeddedAfa& e) {
  Int l1 = 0, sigma = 0;
  for (const auto& v : e.xprime) {
    l1 += abs(v);
    sigma += v;
  }
  return l1 + Int(static_cast<unsigned long>(e.k + 2)) * sigma;
}

}  // namespace

Int value_bound(const EmbeddedAfa& e, std::size_t n) {
  return 2 * pow_int(growth_base(e), n) * weight_term(e);
}

std::uint64_t value_bound_bits(const EmbeddedAfa& e, std::size_t n) {
  return 1 + pow_bits_ub(growth_base(e), n) + bit_length(weight_term(e));
}

bool decide_eq_cutpoint_rns(const IntegerPfa& p, const Word& w, const RnsOptions& opt) {
  const Int sx = x_denominator_scale(p.x);
  const IntVec xi = scale_vector(p.x, sx);
  const std::uint64_t vbits = value_bound_bits(p, w.size());

  if (opt.trace) {
    RegisterTracker t;
    RunStats st;
    st.r = rns::basis_size_for_bits(vbits, &t, &st.largest);
    st.passes = 1;
    auto make = counted([] { return rns::RegenPrimeSeq{}; }, &st.passes);
    const bool out = eq_scan(p, xi, sx, w, st.r, make, &t);
    finish_trace(opt.trace, w.size(), st, t);
    return out;
  }

  std::uint64_t largest = 0;
  const std::size_t r = rns::basis_size_for_bits(vbits, nullptr, &largest);
  const auto primes = rns::first_primes(r);
  if (opt.parallel) {
    bool all = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : all)
    for (long i = 0; i < static_cast<long>(r); ++i) {
      const auto d = pfa_digits_mod_p(p, xi, sx, w, primes[i], nullptr);
      all = all && (d.lhs == d.rhs);
    }
    return all;
  }
  auto make = [&] { return rns::StoredPrimeSeq{primes}; };
  return eq_scan(p, xi, sx, w, r, make, nullptr);
}

bool decide_gt_cutpoint_rns(const IntegerPfa& p, const Word& w, const RnsOptions& opt) {
  const Int sx = x_denominator_scale(p.x);
  const IntVec xi = scale_vector(p.x, sx);
  const std::uint64_t vbits = value_bound_bits(p, w.size());

  if (opt.trace) {
    RegisterTracker t;
    RunStats st;
    st.r = rns::basis_size_for_bits(vbits, &t, &st.largest);
    st.passes = 1;
    auto make = counted([] { return rns::RegenPrimeSeq{}; }, &st.passes);
    const auto cmp = gt_scan(p, xi, sx, w, st.r, make, &t);
    finish_trace(opt.trace, w.size(), st, t);
    return cmp == rns::Ordering::GT;
  }

  std::uint64_t largest = 0;
  const std::size_t r = rns::basis_size_for_bits(vbits, nullptr, &largest);
  const auto primes = rns::first_primes(r);
  auto make = [&] { return rns::StoredPrimeSeq{primes}; };
  if (opt.parallel) {
    std::vector<std::uint64_t> lhs(r), rhs(r);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(r); ++i) {
      const auto d = pfa_digits_mod_p(p, xi, sx, w, primes[i], nullptr);
      lhs[i] = d.lhs;
      rhs[i] = d.rhs;
    }
    return rns::residue_compare_core(lhs, rhs, make, nullptr) == rns::Ordering::GT;
  }
  return gt_scan(p, xi, sx, w, r, make, nullptr) == rns::Ordering::GT;
}

namespace {

bool decide_affine_impl(const EmbeddedAfa& e, const Word& w, bool strict,
                        const RnsOptions& opt) {
  const AfaPrep prep = prepare(e);
  const std::uint64_t vbits = value_bound_bits(e, w.size());

  if (opt.trace) {
    RegisterTracker t;
    RunStats st;
    st.r = rns::basis_size_for_bits(vbits, &t, &st.largest);
    st.passes = 1;
    auto make = counted([] { return rns::RegenPrimeSeq{}; }, &st.passes);
    const bool out = affine_scan(e, prep, w, st.r, strict, make, &t);
    finish_trace(opt.trace, w.size(), st, t);
    return out;
  }

  std::uint64_t largest = 0;
  const std::size_t r = rns::basis_size_for_bits(vbits, nullptr, &largest);
  const auto primes = rns::first_primes(r);
  auto make = [&] { return rns::StoredPrimeSeq{primes}; };
  if (opt.parallel) {
    const std::size_t dims = e.k + 2;
    std::vector<std::vector<std::uint64_t>> pd(dims, std::vector<std::uint64_t>(r));
    std::vector<std::vector<std::uint64_t>> qd(dims, std::vector<std::uint64_t>(r));
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(r); ++i) {
      std::vector<std::uint64_t> pc(dims), qc(dims);
      afa_digits_mod_p(e, prep, w, primes[i], nullptr, pc.data(), qc.data());
      for (std::size_t c = 0; c < dims; ++c) {
        pd[c][i] = pc[c];
        qd[c][i] = qc[c];
      }
    }
    return affine_verdict(e, prep.sigma, w.size(), r, strict, pd, qd, make, nullptr);
  }
  return affine_scan(e, prep, w, r, strict, make, nullptr);
}

}  // namespace

bool decide_affine_cutpoint_rns(const EmbeddedAfa& e, const Word& w, const RnsOptions& opt) {
  return decide_affine_impl(e, w, /*strict=*/true, opt);
}

bool decide_affine_cutpoint_rns_ge(const EmbeddedAfa& e, const Word& w,
                                   const RnsOptions& opt) {
  return decide_affine_impl(e, w, /*strict=*/false, opt);
}

bool decide_eq_cutpoint_rns(const Pfa& p, const Word& w, const RnsOptions& opt) {
  return decide_eq_cutpoint_rns(clear_denominators(p), w, opt);
}

bool decide_gt_cutpoint_rns(const Pfa& p, const Word& w, const RnsOptions& opt) {
  return decide_gt_cutpoint_rns(clear_denominators(p), w, opt);
}

bool decide_affine_cutpoint_rns(const Afa& a, const Word& w, const RnsOptions& opt) {
  return decide_affine_cutpoint_rns(turakainen_embed(a), w, opt);
}

}  // namespace affa::sim
