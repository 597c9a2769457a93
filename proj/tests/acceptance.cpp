// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Sweep sizes and tolerances are pinned here, not configurable.

#include <atomic>
#include <chrono>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "affa/automata.hpp"
#include "affa/lab.hpp"
#include "affa/random_machines.hpp"
#include "affa/simulate.hpp"

using namespace affa;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// --- criterion 1: PFA oracle equivalence --------------------------------

Result pfa_oracle_equivalence() {
  const double t0 = now_s();
  const auto words = testing::all_words_up_to(2, 8);  // 511 binary words
  std::atomic<long> mismatches{0};
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < 100; ++i) {
    std::mt19937_64 rng(1000 + i);
    Pfa p = testing::random_pfa(rng, {.k_max = 5, .den_max = 10});
    sim::IntegerPfa ip = sim::clear_denominators(p);
    long bad = 0;
    for (const Word& w : words) {
      const Rational f = pfa_value(p, w);
      if (sim::decide_eq_cutpoint_rns(ip, w) != (f == make_rat(1, 2))) ++bad;
      if (sim::decide_gt_cutpoint_rns(ip, w) != (f > make_rat(1, 2))) ++bad;
    }
    mismatches += bad;
  }
  const double dt = now_s() - t0;
  const bool pass = mismatches == 0 && dt < 300.0;
  return {pass, fmt("100 machines x %zu words, %ld mismatches, %.1fs (limit 300s)",
                    words.size(), mismatches.load(), dt)};
}

// --- criterion 2: AfA oracle equivalence --------------------------------

Result afa_oracle_equivalence() {
  const double t0 = now_s();
  const auto words = testing::all_words_up_to(2, 8);
  std::atomic<long> mismatches{0};
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < 100; ++i) {
    std::mt19937_64 rng(2000 + i);
    Afa a = testing::random_afa(rng, {.k_max = 5, .den_max = 10, .entry_bound = 3});
    sim::EmbeddedAfa e = sim::turakainen_embed(a);
    long bad = 0;
    for (const Word& w : words)
      if (sim::decide_affine_cutpoint_rns(e, w) != (afa_value(a, w) > make_rat(1, 2))) ++bad;
    mismatches += bad;
  }
  const double dt = now_s() - t0;
  return {mismatches == 0,
          fmt("100 machines x %zu words, %ld mismatches, %.1fs", words.size(),
              mismatches.load(), dt)};
}

// --- criterion 3: parity lemma and residue ordering, exhaustively --------

Result parity_and_ordering() {
  long parity_bad = 0;
  for (long x = 0; x < 105; ++x)
    for (long y = 0; y < 105; ++y) {
      const long diff = x - y;
      const long m = ((diff % 105) + 105) % 105;
      const bool same = ((diff % 2 + 2) % 2) == (m % 2);
      if (same != (x >= y)) ++parity_bad;
    }
  rns::PrimeBasis b = rns::prime_basis(3);
  long order_bad = 0;
  for (long x = 0; x < 105; ++x) {
    rns::Residues rx = rns::reduce(Int(x), b);
    for (long y = 0; y < 105; ++y) {
      const auto got = rns::residue_compare(rx, rns::reduce(Int(y), b));
      const auto want =
          x < y ? rns::Ordering::LT : (x == y ? rns::Ordering::EQ : rns::Ordering::GT);
      if (got != want) ++order_bad;
    }
  }
  return {parity_bad == 0 && order_bad == 0,
          fmt("11025 parity pairs (%ld bad), 11025 ordering pairs (%ld bad)", parity_bad,
              order_bad)};
}

// --- criterion 4: CRT round-trip and mixed-radix residue_mod -------------

Result crt_roundtrip() {
  rns::PrimeBasis b = rns::prime_basis(4);  // (3,5,7,11), product 1155
  long bad = 0;
  for (long x = 0; x < 1155; ++x) {
    rns::Residues r = rns::reduce(Int(x), b);
    if (rns::crt_reconstruct(r) != x) ++bad;
    for (std::uint64_t m : {2, 3, 4, 10})
      if (rns::residue_mod(r, m) != static_cast<std::uint64_t>(x) % m) ++bad;
  }
  return {bad == 0, fmt("1155 values x (reconstruct + 4 moduli), %ld bad", bad)};
}

// --- criterion 5: embedding identities ----------------------------------

Result embedding_identities() {
  // The full-norm identity carries the bordered bottom coordinate, which is
  // exactly -1 for every nonempty word: |B_w x'| = |M_w x| + 1 (and = |x| at
  // the empty word). The projected identity holds verbatim.
  long bad = 0;
  const auto words = testing::all_words_up_to(2, 5);
  for (int i = 0; i < 20; ++i) {
    std::mt19937_64 rng(3000 + i);
    Afa a = testing::random_afa(rng);
    sim::EmbeddedAfa e = sim::turakainen_embed(a);
    const std::size_t dims = a.k + 2;
    const RatMat ones = RatMat::ones(dims);

    RatMat power = ones;
    Rational scale(1);
    for (int n = 2; n <= 5; ++n) {
      power = mat_mul(power, ones);
      scale *= Rational(static_cast<long>(dims));
      for (const auto& v : power.e)
        if (v != scale) ++bad;
    }
    std::vector<RatMat> c;
    for (const auto& bm : e.B) {
      RatMat be = mat_mul(bm, ones), eb = mat_mul(ones, bm);
      for (std::size_t j = 0; j < dims * dims; ++j)
        if (be.e[j] != 0 || eb.e[j] != 0) ++bad;
      RatMat ci = bm;
      for (auto& v : ci.e) v += Rational(e.m);
      c.push_back(std::move(ci));
    }

    RatVec xp(dims, Rational(0));
    for (std::size_t j = 0; j < a.k; ++j) xp[j + 1] = a.x[j];
    for (const Word& w : words) {
      RatVec inner = afa_state(a, w);
      RatVec outer = xp;
      for (auto s : w) outer = mat_apply(e.B[s], outer);
      if (l1_norm(outer) != l1_norm(inner) + (w.empty() ? 0 : 1)) ++bad;
      Rational pin(0), pout(0);
      for (std::size_t j = 0; j < a.k; ++j)
        if (a.f[j]) pin += abs(inner[j]);
      for (std::size_t cdx = 0; cdx < dims; ++cdx)
        if (e.fprime[cdx]) pout += abs(outer[cdx]);
      if (pin != pout) ++bad;

      if (!w.empty()) {
        RatMat cw = c[w[0]], bw = e.B[w[0]];
        for (std::size_t j = 1; j < w.size(); ++j) {
          cw = mat_mul(c[w[j]], cw);
          bw = mat_mul(e.B[w[j]], bw);
        }
        const Rational coef =
            Rational(pow_int(e.m, w.size())) *
            Rational(pow_int(Int(static_cast<unsigned long>(dims)), w.size() - 1));
        for (std::size_t j = 0; j < dims * dims; ++j)
          if (cw.e[j] != bw.e[j] + coef) ++bad;
      }
    }
  }
  return {bad == 0,
          fmt("20 machines x %zu words: norms (border +1), E-algebra, C_w identity; %ld bad",
              words.size(), bad)};
}

// --- criterion 6: space scaling on a fixed 3-state PFA -------------------

Result space_scaling() {
  Pfa p;
  p.k = 3;
  p.alphabet = {{"a"}};
  p.x = {make_rat(1), make_rat(0), make_rat(0)};
  p.y = {0, 0, 1};
  RatMat m(3, 3);
  m.at(0, 0) = make_rat(1, 2);
  m.at(1, 0) = make_rat(1, 2);
  m.at(1, 1) = make_rat(1, 2);
  m.at(2, 1) = make_rat(1, 2);
  m.at(2, 2) = make_rat(1);
  m.at(0, 1) = m.at(0, 2) = m.at(1, 2) = m.at(2, 0) = make_rat(0);
  p.M = {m};
  validate(p);
  sim::IntegerPfa ip = sim::clear_denominators(p);

  const double kRatioLimit = 1.0;  // linear prime count for this D = 2 machine
  bool pass = true;
  std::string detail;
  for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
    sim::SpaceTrace tr;
    sim::RnsOptions opt;
    opt.trace = &tr;
    const bool rns = sim::decide_gt_cutpoint_rns(ip, Word(n, 0), opt);
    const bool exact = pfa_value(p, Word(n, 0)) > make_rat(1, 2);
    const double ratio = double(tr.primes_used) / double(n);
    if (rns != exact || tr.max_register_bits > tr.width_bound_bits || ratio > kRatioLimit)
      pass = false;
    detail += fmt("n=%zu: r=%zu (r/n=%.2f), width %u<=%u; ", n, tr.primes_used, ratio,
                  tr.max_register_bits, tr.width_bound_bits);
  }
  return {pass, detail};
}

// --- criterion 7: corollary languages at desk scale ----------------------

Result corollary_densities() {
  lab::UnaryLanguage cubes = lab::gen_poly_lang({Int(0), Int(0), Int(0), Int(1)});
  const Rational cube_density = lab::lower_density(cubes, 1000000, true);
  const bool cube_ok =
      cube_density == make_rat(101, 1000001) && cube_density <= make_rat(1, 1000);

  lab::UnaryLanguage primes = lab::gen_prime_lang();
  auto traj = lab::density_trajectory(primes, 1000000, true);
  bool prime_ok = traj.back().ratio == make_rat(78498, 1000001) &&
                  traj.back().ratio < make_rat(8, 100);
  for (std::size_t i = 1; i < traj.size(); ++i)
    if (!(traj[i].ratio < traj[i - 1].ratio)) prime_ok = false;
  return {cube_ok && prime_ok,
          fmt("cubes: 101/1000001 <= 0.001 (%s); primes: 78498/1000001 < 0.08, strictly "
              "decreasing over %zu decades (%s)",
              cube_ok ? "ok" : "bad", traj.size(), prime_ok ? "ok" : "bad")};
}

// --- criterion 8: Weyl equidistribution for sqrt(2) ----------------------

Result weyl_equidistribution() {
  lab::SequenceSpec spec;
  spec.offset = 0;
  spec.step = 1;
  spec.count = 100000;
  spec.alpha = lab::AlphaValue::from_decimal(lab::sqrt_decimal(2, 50), 50);
  const auto seq = lab::weyl_sequence(spec, true);

  const Rational r1 = lab::box_ratio(seq, lab::make_box({{make_rat(0), make_rat(1, 2)}}), true);
  const Rational r2 =
      lab::box_ratio(seq, lab::make_box({{make_rat(2, 10), make_rat(3, 10)}}), true);
  const bool ok1 = abs(r1 - make_rat(1, 2)) <= make_rat(1, 100);
  const bool ok2 = abs(r2 - make_rat(1, 10)) <= make_rat(1, 100);
  return {ok1 && ok2,
          fmt("n=1e5: ratio[0,0.5)=%.5f (target 0.5 +- 0.01), ratio[0.2,0.3)=%.5f "
              "(target 0.1 +- 0.01)",
              rat_to_double(r1), rat_to_double(r2))};
}

// --- criterion 9: expansion lemma residual bound --------------------------

Result expansion_lemma() {
  using C = std::complex<double>;
  std::mt19937_64 rng(4000);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> rho(0.01, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  long bad = 0;
  int done = 0;
  while (done < 10000) {
    C a(coord(rng), coord(rng));
    if (std::abs(a) < 1e-3) continue;
    const double r = rho(rng) * std::abs(a) / 2.0, th = angle(rng);
    C z(r * std::cos(th), r * std::sin(th));
    if (lab::abs_expansion_residual(a, z) > std::norm(z) / std::abs(a)) ++bad;
    ++done;
  }
  return {bad == 0, fmt("10000 draws with |z| <= |A|/2, %ld above |z|^2/|A|", bad)};
}

// --- criterion 10: g(n) sign vs strict membership -------------------------

Result gap_sign_consistency() {
  const MembershipMode strict{CutpointKind::Strict, make_rat(1, 2)};
  long bad = 0;
  for (int i = 0; i < 20; ++i) {
    std::mt19937_64 rng(5000 + i);
    Afa a = testing::random_afa(rng, {.symbols = 1});
    const auto g = lab::g_sequence(a, 50);
    for (std::size_t n = 0; n <= 50; ++n)
      if ((g[n] > 0) != member(a, Word(n, 0), strict)) ++bad;
  }
  return {bad == 0, fmt("20 unary machines, n <= 50, %ld sign mismatches", bad)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
      {"oracle equivalence, PFA rns path", pfa_oracle_equivalence},
      {"oracle equivalence, AfA rns path", afa_oracle_equivalence},
      {"parity lemma + residue ordering, exhaustive", parity_and_ordering},
      {"CRT round-trip + mixed-radix residue_mod", crt_roundtrip},
      {"Turakainen embedding identities", embedding_identities},
      {"space scaling: register widths and prime counts", space_scaling},
      {"corollary language densities at 1e6", corollary_densities},
      {"Weyl equidistribution of sqrt(2)", weyl_equidistribution},
      {"expansion lemma residual bound", expansion_lemma},
      {"g(n) sign vs strict membership", gap_sign_consistency},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%2zu/10] %s  %s (%s)\n", i + 1, r.pass ? "PASS" : "FAIL",
                criteria[i].first, r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  if (failed == 0)
    std::printf("all 10 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", failed);
  return failed;
}
