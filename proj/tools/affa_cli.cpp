// affa: evaluate and decide cutpoint languages of probabilistic and affine
// automata, exactly or through the residue-number-system simulation, plus the
// unary-language experiment commands.
//
// Exit codes: 0 success; 2 bad flags, parse errors or invariant violations;
// 3 internal space-bound assertion failure.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <random>

#include "affa/automata.hpp"
#include "affa/automaton_io.hpp"
#include "affa/errors.hpp"
#include "affa/lab.hpp"
#include "affa/random_machines.hpp"
#include "affa/simulate.hpp"

using namespace affa;

namespace {

std::string decimal(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", rat_to_double(q));
  return buf;
}

Machine load_machine(const std::string& path) { return parse_automaton_file(path); }

Word parse_word(const Machine& m, const std::string& text, const std::string& sep) {
  const Alphabet& alphabet =
      std::holds_alternative<Pfa>(m) ? std::get<Pfa>(m).alphabet : std::get<Afa>(m).alphabet;
  return word_from_string(alphabet, text, sep);
}

int cmd_eval(const std::string& file, const std::string& word, const std::string& sep) {
  Machine m = load_machine(file);
  Word w = parse_word(m, word, sep);
  Rational v = std::holds_alternative<Pfa>(m) ? pfa_value(std::get<Pfa>(m), w)
                                              : afa_value(std::get<Afa>(m), w);
  std::cout << format_rational(v) << " (" << decimal(v) << ")\n";
  return 0;
}

int cmd_member(const std::string& file, const std::string& word, const std::string& sep,
               const std::string& cutpoint, const std::string& mode) {
  Machine m = load_machine(file);
  Word w = parse_word(m, word, sep);
  MembershipMode mm;
  mm.cutpoint = parse_rational(cutpoint);
  if (mode == "strict")
    mm.kind = CutpointKind::Strict;
  else if (mode == "exclusive")
    mm.kind = CutpointKind::Exclusive;
  else
    throw StructuralError("--mode must be strict or exclusive");
  const bool in = std::holds_alternative<Pfa>(m) ? member(std::get<Pfa>(m), w, mm)
                                                 : member(std::get<Afa>(m), w, mm);
  std::cout << (in ? "true" : "false") << "\n";
  return 0;
}

int cmd_rns(const std::string& file, const std::string& word, const std::string& sep,
            bool trace_space) {
  Machine m = load_machine(file);
  Word w = parse_word(m, word, sep);
  sim::SpaceTrace tr;
  sim::RnsOptions opt;
  opt.trace = &tr;  // the rns command always runs the instrumented serial path
  bool in;
  if (std::holds_alternative<Pfa>(m))
    in = sim::decide_gt_cutpoint_rns(sim::clear_denominators(std::get<Pfa>(m)), w, opt);
  else
    in = sim::decide_affine_cutpoint_rns(sim::turakainen_embed(std::get<Afa>(m)), w, opt);
  std::cout << (in ? "true" : "false") << "\n";
  std::cout << "primes: r=" << tr.primes_used << ", largest=" << tr.largest_prime << "\n";
  if (trace_space) {
    std::cout << "space-trace: input_length=" << tr.input_length
              << " max_register_bits=" << tr.max_register_bits
              << " width_bound_bits=" << tr.width_bound_bits
              << " prime_passes=" << tr.prime_passes << "\n";
  }
  return 0;
}

void print_rat_matrix(const RatMat& m) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j)
      std::cout << (j ? " " : "") << format_rational(m.at(i, j));
    std::cout << "\n";
  }
}

int cmd_embed(const std::string& file) {
  Machine m = load_machine(file);
  if (!std::holds_alternative<Afa>(m))
    throw StructuralError("embed expects an afa input file");
  const Afa& a = std::get<Afa>(m);
  sim::EmbeddedAfa e = sim::turakainen_embed(a);
  std::cout << "states " << (e.k + 2) << "\n";
  std::cout << "m " << e.m.get_str() << "\n";
  std::cout << "g " << e.g.get_str() << "\n";
  std::cout << "xscale " << e.xscale.get_str() << "\n";
  std::cout << "xprime";
  for (const auto& v : e.xprime) std::cout << " " << v.get_str();
  std::cout << "\nfprime";
  for (int b : e.fprime) std::cout << " " << b;
  std::cout << "\n";
  for (std::size_t s = 0; s < a.alphabet.size(); ++s) {
    std::cout << "matrix-B " << a.alphabet.symbols[s] << "\n";
    print_rat_matrix(e.B[s]);
    std::cout << "matrix-D " << a.alphabet.symbols[s] << "\n";
    for (std::size_t i = 0; i < e.k + 2; ++i) {
      for (std::size_t j = 0; j < e.k + 2; ++j)
        std::cout << (j ? " " : "") << e.Dint[s].at(i, j).get_str();
      std::cout << "\n";
    }
  }
  return 0;
}

lab::UnaryLanguage parse_lang(const std::string& spec) {
  if (spec == "primes") return lab::gen_prime_lang();
  if (spec.rfind("poly:", 0) == 0) {
    std::vector<Int> coeffs;
    std::string rest = spec.substr(5);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      auto comma = rest.find(',', pos);
      std::string tok = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
      if (tok.empty()) throw StructuralError("empty polynomial coefficient in --lang");
      coeffs.push_back(Int(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    lab::UnaryLanguage l = lab::gen_poly_lang(coeffs);
    if (!l.corollary_degree_ok)
      std::cerr << "note: polynomial degree <= 2, outside the corollary hypothesis\n";
    return l;
  }
  throw StructuralError("--lang must be 'primes' or 'poly:c0,c1,...'");
}

int cmd_density(const std::string& langspec, std::uint64_t horizon) {
  lab::UnaryLanguage lang = parse_lang(langspec);
  auto traj = lab::density_trajectory(lang, horizon, /*parallel=*/true);
  lab::write_density_csv(std::cout, traj);
  std::cerr << "lower density estimate (running min): "
            << format_rational(traj.back().running_min) << " ("
            << decimal(traj.back().running_min) << ")\n";
  return 0;
}

int cmd_equidist(const std::string& alpha, unsigned precision, std::uint64_t offset,
                 std::uint64_t step, std::uint64_t count, const std::string& interval) {
  lab::SequenceSpec spec;
  spec.offset = offset;
  spec.step = step;
  spec.count = count;
  spec.alpha = alpha.find('/') != std::string::npos
                   ? lab::AlphaValue::exact(parse_rational(alpha))
                   : lab::AlphaValue::from_decimal(alpha, precision);
  auto comma = interval.find(',');
  if (comma == std::string::npos)
    throw StructuralError("--interval expects two rationals, e.g. 0,1/2");
  lab::IntervalBox box = lab::make_box({{parse_rational(interval.substr(0, comma)),
                                         parse_rational(interval.substr(comma + 1))}});
  auto seq = lab::weyl_sequence(spec, /*parallel=*/true);
  lab::write_weyl_csv(std::cout, seq);
  Rational ratio = lab::box_ratio(seq, box, /*parallel=*/true);
  std::cerr << "box_ratio = " << format_rational(ratio) << " (" << decimal(ratio) << ")\n";
  return 0;
}

int cmd_gseq(const std::string& file, std::uint64_t nmax) {
  Machine m = load_machine(file);
  if (!std::holds_alternative<Afa>(m)) throw StructuralError("gseq expects an afa input file");
  auto g = lab::g_sequence(std::get<Afa>(m), nmax);
  lab::write_gseq_csv(std::cout, g);
  return 0;
}

// Exhaustive small-modulus suites plus an oracle-equivalence sweep.
int cmd_selftest() {
  int failures = 0;
  auto report = [&](const char* name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  {
    bool ok = true;
    for (long x = 0; x < 105 && ok; ++x)
      for (long y = 0; y < 105 && ok; ++y) {
        long diff = x - y, m = ((diff % 105) + 105) % 105;
        if ((((diff % 2 + 2) % 2) == (m % 2)) != (x >= y)) ok = false;
      }
    report("parity criterion, N=105, all pairs", ok);
  }
  {
    rns::PrimeBasis b = rns::prime_basis(4);
    bool ok = true;
    for (long x = 0; x < 1155 && ok; ++x) {
      rns::Residues r = rns::reduce(Int(x), b);
      if (rns::crt_reconstruct(r) != x) ok = false;
      for (std::uint64_t m : {2, 3, 4, 10})
        if (rns::residue_mod(r, m) != static_cast<std::uint64_t>(x) % m) ok = false;
    }
    report("crt round-trip and residue_mod on (3,5,7,11)", ok);
  }
  {
    rns::PrimeBasis b = rns::prime_basis(3);
    bool ok = true;
    for (long x = 0; x < 105 && ok; ++x)
      for (long y = 0; y < 105 && ok; ++y) {
        auto got = rns::residue_compare(rns::reduce(Int(x), b), rns::reduce(Int(y), b));
        auto want =
            x < y ? rns::Ordering::LT : (x == y ? rns::Ordering::EQ : rns::Ordering::GT);
        if (got != want) ok = false;
      }
    report("residue ordering vs integer ordering, all pairs", ok);
  }
  {
    auto words = testing::all_words_up_to(2, 6);
    bool ok = true;
    for (int i = 0; i < 25 && ok; ++i) {
      std::mt19937_64 rng(7000 + i);
      Pfa p = testing::random_pfa(rng);
      sim::IntegerPfa ip = sim::clear_denominators(p);
      for (const Word& w : words) {
        Rational f = pfa_value(p, w);
        if (sim::decide_eq_cutpoint_rns(ip, w) != (f == make_rat(1, 2))) ok = false;
        if (sim::decide_gt_cutpoint_rns(ip, w) != (f > make_rat(1, 2))) ok = false;
      }
    }
    report("pfa rns decisions vs exact oracle (25 machines)", ok);
  }
  {
    auto words = testing::all_words_up_to(2, 6);
    bool ok = true;
    for (int i = 0; i < 25 && ok; ++i) {
      std::mt19937_64 rng(8000 + i);
      Afa a = testing::random_afa(rng);
      sim::EmbeddedAfa e = sim::turakainen_embed(a);
      for (const Word& w : words)
        if (sim::decide_affine_cutpoint_rns(e, w) != (afa_value(a, w) > make_rat(1, 2)))
          ok = false;
    }
    report("afa rns decisions vs exact oracle (25 machines)", ok);
  }

  if (failures == 0)
    std::cout << "selftest passed\n";
  else
    std::cout << "selftest FAILED (" << failures << " suites)\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and residue-number-system decisions for probabilistic and affine automata"};
  app.require_subcommand(1);

  std::string file, word, sep, cutpoint = "1/2", mode = "strict";
  std::string langspec, alpha, interval;
  unsigned precision = 0;
  std::uint64_t horizon = 0, offset = 0, step = 1, count = 1, nmax = 0;
  bool trace_space = false;

  auto* eval = app.add_subcommand("eval", "print the exact acceptance value");
  eval->add_option("--automaton", file)->required();
  eval->add_option("--word", word);
  eval->add_option("--sep", sep, "separator for multi-character symbols");

  auto* memb = app.add_subcommand("member", "cutpoint membership, exact arithmetic");
  memb->add_option("--automaton", file)->required();
  memb->add_option("--word", word);
  memb->add_option("--sep", sep);
  memb->add_option("--cutpoint", cutpoint, "rational num/den");
  memb->add_option("--mode", mode, "strict | exclusive");

  auto* rns = app.add_subcommand(
      "rns", "membership at cutpoint 1/2 via the residue-number-system simulation");
  rns->add_option("--automaton", file)->required();
  rns->add_option("--word", word);
  rns->add_option("--sep", sep);
  rns->add_flag("--trace-space", trace_space, "print the register-width trace");

  auto* embed = app.add_subcommand("embed", "print the Turakainen embedding of an afa");
  embed->add_option("--automaton", file)->required();

  auto* density = app.add_subcommand("density", "membership-density trajectory CSV");
  density->add_option("--lang", langspec, "primes | poly:c0,c1,...")->required();
  density->add_option("--horizon", horizon)->required();

  auto* equidist = app.add_subcommand("equidist", "fractional parts of (r+mN)*alpha, CSV");
  equidist->add_option("--alpha", alpha, "decimal string, or num/den for exact rationals")
      ->required();
  equidist->add_option("--precision", precision, "correct fraction digits of --alpha");
  equidist->add_option("--r", offset);
  equidist->add_option("--step", step);
  equidist->add_option("--count", count)->required();
  equidist->add_option("--interval", interval, "half-open interval, e.g. 0,1/2")->required();

  auto* gseq = app.add_subcommand("gseq", "acceptance-gap sequence of a unary afa, CSV");
  gseq->add_option("--automaton", file)->required();
  gseq->add_option("--nmax", nmax)->required();

  app.add_subcommand("selftest", "exhaustive small-modulus and oracle-equivalence suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(file, word, sep);
    if (memb->parsed()) return cmd_member(file, word, sep, cutpoint, mode);
    if (rns->parsed()) return cmd_rns(file, word, sep, trace_space);
    if (embed->parsed()) return cmd_embed(file);
    if (density->parsed()) return cmd_density(langspec, horizon);
    if (equidist->parsed())
      return cmd_equidist(alpha, precision, offset, step, count, interval);
    if (gseq->parsed()) return cmd_gseq(file, nmax);
    return cmd_selftest();
  } catch (const SpaceBoundViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
