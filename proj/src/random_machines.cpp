#include "affa/random_machines.hpp"

#include <algorithm>

namespace affa::testing {

namespace {

Alphabet letters(std::size_t n) {
  Alphabet a;
  for (std::size_t i = 0; i < n; ++i) a.symbols.push_back(std::string(1, char('a' + i)));
  return a;
}

// Nonnegative rationals with a common denominator summing to exactly 1.
RatVec stochastic_column(std::mt19937_64& rng, std::size_t k, unsigned den_max) {
  std::uniform_int_distribution<unsigned> den_dist(1, den_max);
  const unsigned d = den_dist(rng);
  std::vector<unsigned> num(k, 0);
  unsigned rem = d;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    std::uniform_int_distribution<unsigned> pick(0, rem);
    num[i] = pick(rng);
    rem -= num[i];
  }
  num[k - 1] = rem;
  std::shuffle(num.begin(), num.end(), rng);
  RatVec col;
  col.reserve(k);
  for (unsigned n : num) col.push_back(make_rat(n, d));
  return col;
}

// Affine column with entries in [-bound, bound]; the forced last entry is
// rejection-sampled back into range.
RatVec affine_column(std::mt19937_64& rng, std::size_t k, unsigned den_max, long bound) {
  std::uniform_int_distribution<unsigned> den_dist(1, den_max);
  for (;;) {
    const unsigned d = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(-bound * static_cast<long>(d),
                                                 bound * static_cast<long>(d));
    RatVec col(k);
    Rational sum(0);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      col[i] = make_rat(num_dist(rng), d);
      sum += col[i];
    }
    Rational last = Rational(1) - sum;
    if (abs(last) > bound) continue;
    col[k - 1] = last;
    std::shuffle(col.begin(), col.end(), rng);
    return col;
  }
}

template <class ColumnFn>
RatMat matrix_from_columns(std::size_t k, ColumnFn col_fn) {
  RatMat m(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    RatVec col = col_fn();
    for (std::size_t i = 0; i < k; ++i) m.at(i, j) = col[i];
  }
  return m;
}

std::vector<int> random_flags(std::mt19937_64& rng, std::size_t k) {
  std::vector<int> f(k);
  std::uniform_int_distribution<int> bit(0, 1);
  for (auto& b : f) b = bit(rng);
  return f;
}

}  // namespace

Pfa random_pfa(std::mt19937_64& rng, const PfaGenParams& params) {
  std::uniform_int_distribution<std::size_t> k_dist(1, params.k_max);
  Pfa p;
  p.k = k_dist(rng);
  p.alphabet = letters(params.symbols);
  p.x = stochastic_column(rng, p.k, params.den_max);
  for (std::size_t s = 0; s < params.symbols; ++s)
    p.M.push_back(matrix_from_columns(
        p.k, [&] { return stochastic_column(rng, p.k, params.den_max); }));
  p.y = random_flags(rng, p.k);
  validate(p);
  return p;
}

Afa random_afa(std::mt19937_64& rng, const AfaGenParams& params) {
  std::uniform_int_distribution<std::size_t> k_dist(1, params.k_max);
  Afa a;
  a.k = k_dist(rng);
  a.alphabet = letters(params.symbols);
  a.x = affine_column(rng, a.k, params.den_max, params.entry_bound);
  for (std::size_t s = 0; s < params.symbols; ++s)
    a.M.push_back(matrix_from_columns(
        a.k, [&] { return affine_column(rng, a.k, params.den_max, params.entry_bound); }));
  a.f = random_flags(rng, a.k);
  validate(a);
  return a;
}

std::vector<Word> all_words_up_to(std::size_t symbols, std::size_t max_len) {
  std::vector<Word> out;
  out.push_back({});
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (std::uint32_t s = 0; s < symbols; ++s) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  return out;
}

}  // namespace affa::testing
