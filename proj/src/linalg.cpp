#include "affa/linalg.hpp"

#include "affa/errors.hpp"

namespace affa {

RatVec mat_apply(const RatMat& m, const RatVec& v) {
  if (m.cols != v.size())
    throw StructuralError("mat_apply: matrix is " + std::to_string(m.rows) + "x" +
                          std::to_string(m.cols) + " but vector has length " +
                          std::to_string(v.size()));
  RatVec out(m.rows, Rational(0));
  for (std::size_t i = 0; i < m.rows; ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < m.cols; ++j) acc += m.at(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
  if (a.cols != b.rows) throw StructuralError("mat_mul: inner dimensions disagree");
  RatMat out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) {
      Rational acc(0);
      for (std::size_t t = 0; t < a.cols; ++t) acc += a.at(i, t) * b.at(t, j);
      out.at(i, j) = acc;
    }
  return out;
}

Rational vec_sum(const RatVec& v) {
  Rational acc(0);
  for (const auto& x : v) acc += x;
  return acc;
}

Rational l1_norm(const RatVec& v) {
  Rational acc(0);
  for (const auto& x : v) acc += abs(x);
  return acc;
}

Rational col_sum(const RatMat& m, std::size_t j) {
  Rational acc(0);
  for (std::size_t i = 0; i < m.rows; ++i) acc += m.at(i, j);
  return acc;
}

Rational row_sum(const RatMat& m, std::size_t i) {
  Rational acc(0);
  for (std::size_t j = 0; j < m.cols; ++j) acc += m.at(i, j);
  return acc;
}

bool is_affine_matrix(const RatMat& m) {
  if (m.rows != m.cols) return false;
  for (std::size_t j = 0; j < m.cols; ++j)
    if (col_sum(m, j) != 1) return false;
  return true;
}

bool is_stochastic_matrix(const RatMat& m) {
  if (!is_affine_matrix(m)) return false;
  for (const auto& x : m.e)
    if (x < 0) return false;
  return true;
}

}  // namespace affa
