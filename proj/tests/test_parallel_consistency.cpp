#include <doctest.h>

#include <random>

#include "affa/lab.hpp"
#include "affa/random_machines.hpp"
#include "affa/simulate.hpp"

using namespace affa;

// The OpenMP kernels must return bit-identical results to their serial
// reference implementations.

TEST_CASE("parallel rns decisions match serial") {
  std::mt19937_64 rng(61);
  auto words = testing::all_words_up_to(2, 4);
  sim::RnsOptions par;
  par.parallel = true;
  for (int it = 0; it < 10; ++it) {
    Pfa p = testing::random_pfa(rng);
    sim::IntegerPfa ip = sim::clear_denominators(p);
    for (const Word& w : words) {
      CHECK(sim::decide_eq_cutpoint_rns(ip, w, par) == sim::decide_eq_cutpoint_rns(ip, w));
      CHECK(sim::decide_gt_cutpoint_rns(ip, w, par) == sim::decide_gt_cutpoint_rns(ip, w));
    }
    Afa a = testing::random_afa(rng);
    sim::EmbeddedAfa e = sim::turakainen_embed(a);
    for (const Word& w : words)
      CHECK(sim::decide_affine_cutpoint_rns(e, w, par) == sim::decide_affine_cutpoint_rns(e, w));
  }
}

TEST_CASE("parallel and traced-serial decisions agree on longer unary words") {
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
  sim::IntegerPfa ip = sim::clear_denominators(p);
  for (std::size_t n : {40u, 150u}) {
    Word w(n, 0);
    sim::SpaceTrace tr;
    sim::RnsOptions traced;
    traced.trace = &tr;
    sim::RnsOptions par;
    par.parallel = true;
    const bool a = sim::decide_gt_cutpoint_rns(ip, w, traced);
    const bool b = sim::decide_gt_cutpoint_rns(ip, w, par);
    const bool c = sim::decide_gt_cutpoint_rns(ip, w);
    CHECK(a == b);
    CHECK(b == c);
  }
}

TEST_CASE("parallel density counting matches serial") {
  lab::UnaryLanguage primes = lab::gen_prime_lang();
  CHECK(lab::lower_density(primes, 20000, true) == lab::lower_density(primes, 20000, false));
  auto t_par = lab::density_trajectory(primes, 5000, true);
  auto t_ser = lab::density_trajectory(primes, 5000, false);
  REQUIRE(t_par.size() == t_ser.size());
  for (std::size_t i = 0; i < t_par.size(); ++i) {
    CHECK(t_par[i].ratio == t_ser[i].ratio);
    CHECK(t_par[i].running_min == t_ser[i].running_min);
  }
}

TEST_CASE("parallel weyl and box kernels match serial") {
  lab::SequenceSpec spec;
  spec.offset = 3;
  spec.step = 5;
  spec.count = 5000;
  spec.alpha = lab::AlphaValue::from_decimal(lab::sqrt_decimal(2, 40), 40);
  auto ser = lab::weyl_sequence(spec, false);
  auto par = lab::weyl_sequence(spec, true);
  CHECK(ser == par);
  lab::IntervalBox box = lab::make_box({{make_rat(1, 5), make_rat(3, 10)}});
  CHECK(lab::box_ratio(ser, box, true) == lab::box_ratio(ser, box, false));
}
