#ifndef AFFA_LINALG_HPP
#define AFFA_LINALG_HPP

#include <cstddef>
#include <vector>

#include "affa/rational.hpp"

namespace affa {

using RatVec = std::vector<Rational>;
using IntVec = std::vector<Int>;

// Dense row-major matrix. Column j is the image of basis state j, so state
// evolution is the ordinary product M*v.
template <class T>
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<T> e;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), e(r * c) {}

  T& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
  const T& at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }
  static Mat ones(std::size_t n) {
    Mat m(n, n);
    for (auto& v : m.e) v = T(1);
    return m;
  }
};

using RatMat = Mat<Rational>;
using IntMat = Mat<Int>;

// Exact product M*v; dimension mismatch raises StructuralError.
RatVec mat_apply(const RatMat& m, const RatVec& v);
RatMat mat_mul(const RatMat& a, const RatMat& b);

Rational vec_sum(const RatVec& v);
Rational l1_norm(const RatVec& v);
Rational col_sum(const RatMat& m, std::size_t j);
Rational row_sum(const RatMat& m, std::size_t i);

bool is_affine_matrix(const RatMat& m);   // all column sums exactly 1
bool is_stochastic_matrix(const RatMat& m);  // affine and entrywise >= 0

}  // namespace affa

#endif
