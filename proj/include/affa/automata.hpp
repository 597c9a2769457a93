#ifndef AFFA_AUTOMATA_HPP
#define AFFA_AUTOMATA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "affa/linalg.hpp"
#include "affa/rational.hpp"

namespace affa {

struct Alphabet {
  std::vector<std::string> symbols;

  std::size_t size() const { return symbols.size(); }
  // -1 if the symbol is unknown.
  int index_of(const std::string& s) const;
};

// A word is a sequence of alphabet indices, w[0] read first.
using Word = std::vector<std::uint32_t>;

// Splits `text` into symbols: one character per symbol by default, or on
// `sep` when multi-character symbols are in play. Unknown symbols raise
// StructuralError.
Word word_from_string(const Alphabet& alphabet, const std::string& text,
                      const std::string& sep = "");
std::string word_to_string(const Alphabet& alphabet, const Word& w,
                           const std::string& sep = "");

// Probabilistic finite automaton: stochastic initial vector x, one stochastic
// matrix per symbol, 0/1 accepting vector y.
struct Pfa {
  std::size_t k = 0;
  Alphabet alphabet;
  RatVec x;
  std::vector<RatMat> M;  // indexed by alphabet position
  std::vector<int> y;
};

// Affine finite automaton: affine initial vector, affine matrices, and the
// diagonal 0/1 projection used by the final weighting |Fv|/|v|.
struct Afa {
  std::size_t k = 0;
  Alphabet alphabet;
  RatVec x;
  std::vector<RatMat> M;
  std::vector<int> f;  // diagonal of the projection
};

// Throws StructuralError naming the first violated invariant.
void validate(const Pfa& p);
void validate(const Afa& a);

enum class CutpointKind { Strict, Exclusive };

struct MembershipMode {
  CutpointKind kind = CutpointKind::Strict;
  Rational cutpoint = Rational(1, 2);
};

// Strict requires cutpoint in [0,1); exclusive in [0,1].
void validate(const MembershipMode& mode);

// Acceptance value y^T M_{w_n}...M_{w_1} x; the empty word evaluates y^T x.
Rational pfa_value(const Pfa& p, const Word& w);

// State after reading w: M_{w_n}...M_{w_1} x. Entries always sum to 1.
RatVec afa_state(const Afa& a, const Word& w);

// Final weighting |F v| / |v| in L1 norm; the denominator is >= 1 because
// the state entries sum to 1.
Rational afa_value(const Afa& a, const Word& w);

bool member_value(const Rational& value, const MembershipMode& mode);
bool member(const Pfa& p, const Word& w, const MembershipMode& mode);
bool member(const Afa& a, const Word& w, const MembershipMode& mode);

// min over the word set of |f(w) - cutpoint|: a desk-scale lower estimate of
// the isolation radius. Empty word set raises StructuralError.
Rational isolation_gap(const Pfa& p, std::span<const Word> words, const Rational& cutpoint);
Rational isolation_gap(const Afa& a, std::span<const Word> words, const Rational& cutpoint);

}  // namespace affa

#endif
