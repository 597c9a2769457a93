// Compares the serial reference kernels against their OpenMP variants and
// checks that both produce identical results.

#include <omp.h>

#include <cstdio>

#include "affa/lab.hpp"
#include "affa/random_machines.hpp"
#include "affa/simulate.hpp"

using namespace affa;

namespace {

struct Row {
  const char* name;
  double serial_s;
  double parallel_s;
  bool equal;
};

void print_row(const Row& r) {
  std::printf("%-34s %10.3fs %10.3fs %8.2fx   %s\n", r.name, r.serial_s, r.parallel_s,
              r.serial_s / r.parallel_s, r.equal ? "results equal" : "RESULTS DIFFER");
}

Row bench_rns_decision() {
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
  const Word w(3000, 0);

  double t0 = omp_get_wtime();
  const bool serial = sim::decide_gt_cutpoint_rns(ip, w);
  double t1 = omp_get_wtime();
  sim::RnsOptions par;
  par.parallel = true;
  const bool parallel = sim::decide_gt_cutpoint_rns(ip, w, par);
  double t2 = omp_get_wtime();
  return {"rns gt decision, |w|=3000, D=2", t1 - t0, t2 - t1, serial == parallel};
}

Row bench_prime_density() {
  lab::UnaryLanguage primes = lab::gen_prime_lang();
  double t0 = omp_get_wtime();
  Rational serial = lab::lower_density(primes, 1000000, false);
  double t1 = omp_get_wtime();
  Rational parallel = lab::lower_density(primes, 1000000, true);
  double t2 = omp_get_wtime();
  return {"prime density, horizon 1e6", t1 - t0, t2 - t1, serial == parallel};
}

Row bench_weyl_box() {
  lab::SequenceSpec spec;
  spec.offset = 0;
  spec.step = 1;
  spec.count = 200000;
  spec.alpha = lab::AlphaValue::from_decimal(lab::sqrt_decimal(2, 50), 50);
  lab::IntervalBox box = lab::make_box({{make_rat(0), make_rat(1, 2)}});

  double t0 = omp_get_wtime();
  auto ser = lab::weyl_sequence(spec, false);
  Rational rs = lab::box_ratio(ser, box, false);
  double t1 = omp_get_wtime();
  auto par = lab::weyl_sequence(spec, true);
  Rational rp = lab::box_ratio(par, box, true);
  double t2 = omp_get_wtime();
  return {"weyl + box count, 2e5 terms", t1 - t0, t2 - t1, ser == par && rs == rp};
}

}  // namespace

int main() {
  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
  std::printf("%-34s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");
  bool all_equal = true;
  for (auto bench : {bench_rns_decision, bench_prime_density, bench_weyl_box}) {
    Row r = bench();
    print_row(r);
    all_equal = all_equal && r.equal;
  }
  return all_equal ? 0 : 1;
}
