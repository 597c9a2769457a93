#ifndef AFFA_RANDOM_MACHINES_HPP
#define AFFA_RANDOM_MACHINES_HPP

#include <random>

#include "affa/automata.hpp"

namespace affa::testing {

struct PfaGenParams {
  std::size_t k_max = 5;
  unsigned den_max = 10;
  std::size_t symbols = 2;
};

struct AfaGenParams {
  std::size_t k_max = 5;
  unsigned den_max = 10;
  long entry_bound = 3;  // entries drawn from [-bound, bound]
  std::size_t symbols = 2;
};

// Random valid machines for oracle sweeps; always pass validate().
Pfa random_pfa(std::mt19937_64& rng, const PfaGenParams& params = {});
Afa random_afa(std::mt19937_64& rng, const AfaGenParams& params = {});

// All words over the first `symbols` letters with length 0..max_len,
// shortest first.
std::vector<Word> all_words_up_to(std::size_t symbols, std::size_t max_len);

}  // namespace affa::testing

#endif
