#include "sgk/matrix.hpp"

namespace sgk {

Echelon row_reduce(ScalarMatrix m) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

std::size_t rank(const ScalarMatrix& m) { return row_reduce(m).pivot_cols.size(); }

std::optional<std::vector<Scalar>> solve(const ScalarMatrix& a, const std::vector<Scalar>& b) {
  if (b.size() != a.rows()) raise(Errc::DimensionMismatch, "solve: right-hand side size mismatch");
  ScalarMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Echelon e = row_reduce(std::move(aug));
  std::vector<Scalar> x(a.cols());
  for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) {
    std::size_t c = e.pivot_cols[k];
    if (c == a.cols()) return std::nullopt;
    x[c] = e.reduced(k, a.cols());
  }
  return x;
}

ScalarMatrix left_inverse(const ScalarMatrix& a) {
  // Pick independent rows via echelon form of the transpose.
  Echelon e = row_reduce(a.transpose());
  if (e.pivot_cols.size() != a.cols()) raise(Errc::Degenerate, "columns are linearly dependent");
  std::vector<std::size_t> all_cols(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) all_cols[j] = j;
  ScalarMatrix sub = a.select(e.pivot_cols, all_cols);
  ScalarMatrix sub_inv = inverse(sub);
  ScalarMatrix l(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) l(i, e.pivot_cols[k]) = sub_inv(i, k);
  return l;
}

}  // namespace sgk
