#include "affa/automata.hpp"

#include <algorithm>

#include "affa/errors.hpp"

namespace affa {

int Alphabet::index_of(const std::string& s) const {
  auto it = std::find(symbols.begin(), symbols.end(), s);
  return it == symbols.end() ? -1 : static_cast<int>(it - symbols.begin());
}

Word word_from_string(const Alphabet& alphabet, const std::string& text,
                      const std::string& sep) {
  Word w;
  auto push = [&](const std::string& tok) {
    int idx = alphabet.index_of(tok);
    if (idx < 0) throw StructuralError("symbol '" + tok + "' is not in the alphabet");
    w.push_back(static_cast<std::uint32_t>(idx));
  };
  if (sep.empty()) {
    for (char c : text) push(std::string(1, c));
  } else {
    std::size_t pos = 0;
    if (text.empty()) return w;
    while (true) {
      auto next = text.find(sep, pos);
      push(text.substr(pos, next == std::string::npos ? next : next - pos));
      if (next == std::string::npos) break;
      pos = next + sep.size();
    }
  }
  return w;
}

std::string word_to_string(const Alphabet& alphabet, const Word& w, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !sep.empty()) out += sep;
    out += alphabet.symbols[w[i]];
  }
  return out;
}

namespace {

void validate_dimensions(std::size_t k, const Alphabet& alphabet, const RatVec& x,
                         const std::vector<RatMat>& mats, const std::vector<int>& flags,
                         const char* flag_name) {
  if (k == 0) throw StructuralError("state count must be positive");
  if (alphabet.size() == 0) throw StructuralError("alphabet must be nonempty");
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    for (std::size_t j = i + 1; j < alphabet.size(); ++j)
      if (alphabet.symbols[i] == alphabet.symbols[j])
        throw StructuralError("duplicate alphabet symbol '" + alphabet.symbols[i] + "'");
  if (x.size() != k) throw StructuralError("initial vector length differs from state count");
  if (flags.size() != k)
    throw StructuralError(std::string(flag_name) + " vector length differs from state count");
  if (mats.size() != alphabet.size())
    throw StructuralError("one transition matrix required per alphabet symbol");
  for (const auto& m : mats)
    if (m.rows != k || m.cols != k)
      throw StructuralError("transition matrix is not state-count square");
}

}  // namespace

void validate(const Pfa& p) {
  validate_dimensions(p.k, p.alphabet, p.x, p.M, p.y, "final");
  for (const auto& v : p.x)
    if (v < 0) throw StructuralError("initial vector has a negative entry");
  if (vec_sum(p.x) != 1) throw StructuralError("initial vector entries must sum to 1");
  for (std::size_t s = 0; s < p.M.size(); ++s) {
    for (const auto& v : p.M[s].e)
      if (v < 0)
        throw StructuralError("matrix " + p.alphabet.symbols[s] + " has a negative entry");
    for (std::size_t j = 0; j < p.k; ++j)
      if (col_sum(p.M[s], j) != 1)
        throw StructuralError("matrix " + p.alphabet.symbols[s] + " column " +
                              std::to_string(j + 1) + " is not stochastic");
  }
  for (int b : p.y)
    if (b != 0 && b != 1) throw StructuralError("final vector entries must be 0 or 1");
}

void validate(const Afa& a) {
  validate_dimensions(a.k, a.alphabet, a.x, a.M, a.f, "final");
  if (vec_sum(a.x) != 1) throw StructuralError("initial vector entries must sum to 1");
  for (std::size_t s = 0; s < a.M.size(); ++s)
    for (std::size_t j = 0; j < a.k; ++j)
      if (col_sum(a.M[s], j) != 1)
        throw StructuralError("matrix " + a.alphabet.symbols[s] + " column " +
                              std::to_string(j + 1) + " does not sum to 1");
  for (int b : a.f)
    if (b != 0 && b != 1) throw StructuralError("projection flags must be 0 or 1");
}

void validate(const MembershipMode& mode) {
  if (mode.cutpoint < 0) throw StructuralError("cutpoint must be nonnegative");
  if (mode.kind == CutpointKind::Strict) {
    if (mode.cutpoint >= 1) throw StructuralError("strict cutpoint must lie in [0,1)");
  } else {
    if (mode.cutpoint > 1) throw StructuralError("exclusive cutpoint must lie in [0,1]");
  }
}

namespace {

void check_word(const Word& w, std::size_t symbols) {
  for (auto s : w)
    if (s >= symbols)
      throw StructuralError("word uses symbol index " + std::to_string(s) +
                            " outside the alphabet");
}

}  // namespace

Rational pfa_value(const Pfa& p, const Word& w) {
  check_word(w, p.alphabet.size());
  RatVec v = p.x;
  for (auto s : w) v = mat_apply(p.M[s], v);
  Rational acc(0);
  for (std::size_t i = 0; i < p.k; ++i)
    if (p.y[i]) acc += v[i];
  return acc;
}

RatVec afa_state(const Afa& a, const Word& w) {
  check_word(w, a.alphabet.size());
  RatVec v = a.x;
  for (auto s : w) v = mat_apply(a.M[s], v);
  return v;
}

Rational afa_value(const Afa& a, const Word& w) {
  RatVec v = afa_state(a, w);
  Rational num(0), den(0);
  for (std::size_t i = 0; i < a.k; ++i) {
    Rational m = abs(v[i]);
    den += m;
    if (a.f[i]) num += m;
  }
  return num / den;  // den >= |sum v| = 1
}

bool member_value(const Rational& value, const MembershipMode& mode) {
  validate(mode);
  return mode.kind == CutpointKind::Strict ? value > mode.cutpoint : value != mode.cutpoint;
}

bool member(const Pfa& p, const Word& w, const MembershipMode& mode) {
  return member_value(pfa_value(p, w), mode);
}

bool member(const Afa& a, const Word& w, const MembershipMode& mode) {
  return member_value(afa_value(a, w), mode);
}

namespace {

template <class Machine, class Eval>
Rational gap_impl(const Machine& m, std::span<const Word> words, const Rational& cutpoint,
                  Eval eval) {
  if (words.empty()) throw StructuralError("isolation_gap: empty word set");
  Rational best = abs(eval(m, words[0]) - cutpoint);
  for (std::size_t i = 1; i < words.size(); ++i)
    best = std::min(best, Rational(abs(eval(m, words[i]) - cutpoint)));
  return best;
}

}  // namespace

Rational isolation_gap(const Pfa& p, std::span<const Word> words, const Rational& cutpoint) {
  return gap_impl(p, words, cutpoint,
                  [](const Pfa& m, const Word& w) { return pfa_value(m, w); });
}

Rational isolation_gap(const Afa& a, std::span<const Word> words, const Rational& cutpoint) {
  return gap_impl(a, words, cutpoint,
                  [](const Afa& m, const Word& w) { return afa_value(m, w); });
}

}  // namespace affa
