#include <doctest.h>

#include <random>

#include "affa/automata.hpp"
#include "affa/errors.hpp"
#include "affa/random_machines.hpp"

using namespace affa;

namespace {

RatMat from_columns(std::initializer_list<std::initializer_list<long>> cols, long den = 1) {
  const std::size_t k = cols.size();
  RatMat m(k, k);
  std::size_t j = 0;
  for (const auto& col : cols) {
    std::size_t i = 0;
    for (long v : col) m.at(i++, j) = make_rat(v, den);
    ++j;
  }
  return m;
}

// x = (1,0), M_a columns ((1/2,1/2),(0,1)). Acceptance values 0, 1/2, 3/4, ...
Pfa half_chain_pfa(std::vector<int> y) {
  Pfa p;
  p.k = 2;
  p.alphabet = {{"a"}};
  p.x = {make_rat(1), make_rat(0)};
  RatMat m(2, 2);
  m.at(0, 0) = make_rat(1, 2);
  m.at(1, 0) = make_rat(1, 2);
  m.at(0, 1) = make_rat(0);
  m.at(1, 1) = make_rat(1);
  p.M = {m};
  p.y = std::move(y);
  validate(p);
  return p;
}

Afa two_thirds_afa(std::vector<int> flags) {
  Afa a;
  a.k = 2;
  a.alphabet = {{"a"}};
  a.x = {make_rat(2), make_rat(-1)};
  a.M = {RatMat::identity(2)};
  a.f = std::move(flags);
  validate(a);
  return a;
}

}  // namespace

TEST_CASE("mat_apply evaluates exact products") {
  RatVec v{make_rat(2), make_rat(-1)};
  CHECK(mat_apply(RatMat::identity(2), v) == v);

  RatMat half = from_columns({{1, 1}, {0, 2}}, 2);  // columns (1/2,1/2), (0,1)
  RatVec e1{make_rat(1), make_rat(0)};
  RatVec r = mat_apply(half, e1);
  CHECK(r[0] == make_rat(1, 2));
  CHECK(r[1] == make_rat(1, 2));

  RatMat aff = from_columns({{2, -1}, {-1, 2}});
  RatVec av{make_rat(3), make_rat(-2)};
  RatVec ar = mat_apply(aff, av);
  CHECK(ar[0] == make_rat(8));
  CHECK(ar[1] == make_rat(-7));
  CHECK(vec_sum(ar) == 1);

  RatVec bad{make_rat(1)};
  CHECK_THROWS_AS(mat_apply(aff, bad), StructuralError);
}

TEST_CASE("pfa_value on the half chain") {
  Pfa p = half_chain_pfa({0, 1});
  CHECK(pfa_value(p, word_from_string(p.alphabet, "a")) == make_rat(1, 2));
  CHECK(pfa_value(p, word_from_string(p.alphabet, "aa")) == make_rat(3, 4));
  CHECK(pfa_value(p, {}) == make_rat(0));  // empty word: y^T x
}

TEST_CASE("afa_state follows the matrix chain") {
  Afa a = two_thirds_afa({1, 0});
  RatVec s = afa_state(a, word_from_string(a.alphabet, "aaa"));
  CHECK(s[0] == make_rat(2));
  CHECK(s[1] == make_rat(-1));

  Afa b;
  b.k = 2;
  b.alphabet = {{"a"}};
  b.x = {make_rat(1), make_rat(0)};
  b.M = {from_columns({{2, -1}, {-1, 2}})};
  b.f = {1, 0};
  validate(b);
  RatVec sb = afa_state(b, word_from_string(b.alphabet, "a"));
  CHECK(sb[0] == make_rat(2));
  CHECK(sb[1] == make_rat(-1));
  CHECK(afa_state(b, {}) == b.x);
}

TEST_CASE("afa_value weights the final state") {
  CHECK(afa_value(two_thirds_afa({1, 0}), {}) == make_rat(2, 3));
  CHECK(afa_value(two_thirds_afa({1, 0}), {0, 0}) == make_rat(2, 3));
  CHECK(afa_value(two_thirds_afa({1, 1}), {0}) == make_rat(1));
  CHECK(afa_value(two_thirds_afa({0, 0}), {0}) == make_rat(0));
}

TEST_CASE("membership across the cutpoint") {
  MembershipMode strict{CutpointKind::Strict, make_rat(1, 2)};
  MembershipMode exclusive{CutpointKind::Exclusive, make_rat(1, 2)};
  CHECK_FALSE(member_value(make_rat(1, 2), strict));
  CHECK(member_value(make_rat(3, 4), strict));
  CHECK_FALSE(member_value(make_rat(1, 2), exclusive));
  CHECK(member_value(make_rat(1, 4), exclusive));

  Pfa p = half_chain_pfa({0, 1});
  CHECK_FALSE(member(p, word_from_string(p.alphabet, "a"), strict));
  CHECK(member(p, word_from_string(p.alphabet, "aa"), strict));
}

TEST_CASE("membership mode validation") {
  CHECK_THROWS_AS(member_value(make_rat(0), MembershipMode{CutpointKind::Strict, make_rat(1)}),
                  StructuralError);
  CHECK_NOTHROW(member_value(make_rat(0), MembershipMode{CutpointKind::Exclusive, make_rat(1)}));
  CHECK_THROWS_AS(
      member_value(make_rat(0), MembershipMode{CutpointKind::Exclusive, make_rat(3, 2)}),
      StructuralError);
  CHECK_THROWS_AS(member_value(make_rat(0), MembershipMode{CutpointKind::Strict, make_rat(-1, 2)}),
                  StructuralError);
  // lambda = 0 is allowed for the strict mode
  CHECK(member_value(make_rat(1, 4), MembershipMode{CutpointKind::Strict, make_rat(0)}));
}

TEST_CASE("isolation_gap over finite word sets") {
  Pfa p = half_chain_pfa({0, 1});
  std::vector<Word> one{word_from_string(p.alphabet, "aa")};  // f = 3/4
  CHECK(isolation_gap(p, one, make_rat(1, 2)) == make_rat(1, 4));

  std::vector<Word> at_cut{word_from_string(p.alphabet, "a")};  // f = 1/2
  CHECK(isolation_gap(p, at_cut, make_rat(1, 2)) == make_rat(0));

  // f values {3/4, 1/4}: append a swap matrix on 'b'
  Pfa q = p;
  q.alphabet = {{"a", "b"}};
  q.M.push_back(from_columns({{0, 1}, {1, 0}}));
  validate(q);
  std::vector<Word> both{word_from_string(q.alphabet, "aa"),
                         word_from_string(q.alphabet, "aab")};
  CHECK(pfa_value(q, both[1]) == make_rat(1, 4));
  CHECK(isolation_gap(q, both, make_rat(1, 2)) == make_rat(1, 4));

  std::vector<Word> none;
  CHECK_THROWS_AS(isolation_gap(p, none, make_rat(1, 2)), StructuralError);

  Afa af = two_thirds_afa({1, 0});  // f = 2/3 on every word
  std::vector<Word> ws{{}, {0}, {0, 0}};
  CHECK(isolation_gap(af, ws, make_rat(1, 2)) == make_rat(1, 6));
}

TEST_CASE("affine closure and state-sum conservation") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 25; ++it) {
    Afa a = testing::random_afa(rng);
    for (std::size_t s = 0; s + 1 < a.M.size(); ++s) {
      CHECK(is_affine_matrix(a.M[s]));
      RatMat prod = mat_mul(a.M[s], a.M[s + 1]);
      for (std::size_t j = 0; j < a.k; ++j) CHECK(col_sum(prod, j) == 1);
      CHECK(is_affine_matrix(prod));
    }
    for (const Word& w : testing::all_words_up_to(a.alphabet.size(), 4)) {
      RatVec st = afa_state(a, w);
      CHECK(vec_sum(st) == 1);
      CHECK(l1_norm(st) >= 1);
      Rational v = afa_value(a, w);
      CHECK(v >= 0);
      CHECK(v <= 1);
    }
  }
}

TEST_CASE("stochastic preservation and value range") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 25; ++it) {
    Pfa p = testing::random_pfa(rng);
    for (const auto& m : p.M) CHECK(is_stochastic_matrix(m));
    for (const Word& w : testing::all_words_up_to(p.alphabet.size(), 4)) {
      RatVec v = p.x;
      for (auto s : w) {
        v = mat_apply(p.M[s], v);
        CHECK(vec_sum(v) == 1);
        for (const auto& e : v) CHECK(e >= 0);
      }
      Rational f = pfa_value(p, w);
      CHECK(f >= 0);
      CHECK(f <= 1);
    }
  }
}

TEST_CASE("prefix composition of afa_state") {
  std::mt19937_64 rng(9);
  Afa a = testing::random_afa(rng);
  auto words = testing::all_words_up_to(a.alphabet.size(), 3);
  for (const Word& u : words)
    for (const Word& v : words) {
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      RatVec via_prefix = afa_state(a, u);
      for (auto s : v) via_prefix = mat_apply(a.M[s], via_prefix);
      CHECK(afa_state(a, uv) == via_prefix);
    }
}

TEST_CASE("word parsing respects separators and alphabet") {
  Alphabet ab{{"a", "b"}};
  Word w = word_from_string(ab, "aba");
  CHECK(w == Word{0, 1, 0});
  CHECK(word_from_string(ab, "").empty());
  CHECK_THROWS_AS(word_from_string(ab, "abc"), StructuralError);

  Alphabet multi{{"aa", "bb"}};
  Word m = word_from_string(multi, "aa,bb,aa", ",");
  CHECK(m == Word{0, 1, 0});
  CHECK(word_to_string(multi, m, ",") == "aa,bb,aa");
}
