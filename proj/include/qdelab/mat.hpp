#pragma once
// Dense matrices over an exact field, with Gauss-Jordan inversion and linear
// solves. Pivoting picks the first nonzero entry (exact arithmetic).

#include <stdexcept>
#include <utility>
#include <vector>

#include "qdelab/poly.hpp"

namespace qdelab {

template <class K>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<K> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, K(0)) {}

  K& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const K& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

template <class K>
Mat<K> operator*(const Mat<K>& x, const Mat<K>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("Mat: shape mismatch");
  Mat<K> r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (is_zero(x.at(i, k))) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) = r.at(i, j) + x.at(i, k) * y.at(k, j);
    }
  return r;
}

template <class K>
Mat<K> operator+(const Mat<K>& x, const Mat<K>& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("Mat: shape mismatch");
  Mat<K> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
  return r;
}

template <class K>
Mat<K> operator-(const Mat<K>& x, const Mat<K>& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("Mat: shape mismatch");
  Mat<K> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
  return r;
}

template <class K>
Mat<K> operator*(const K& k, const Mat<K>& x) {
  Mat<K> r = x;
  for (auto& v : r.a) v = k * v;
  return r;
}

template <class K>
bool mat_is_zero(const Mat<K>& x) {
  for (auto& v : x.a)
    if (!is_zero(v)) return false;
  return true;
}

// Solve X * B = Y ... we only need A^{-1} and A X = B; Gauss-Jordan on [A|B].
template <class K>
Mat<K> solve_linear(Mat<K> A, Mat<K> B) {
  if (A.rows != A.cols || A.rows != B.rows)
    throw std::invalid_argument("solve_linear: shape mismatch");
  int n = A.rows;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!is_zero(A.at(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("solve_linear: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(A.at(piv, j), A.at(col, j));
        if (j < B.cols) std::swap(B.at(piv, j), B.at(col, j));
      }
    if (B.cols > n)
      for (int j = n; j < B.cols; ++j) std::swap(B.at(piv, j), B.at(col, j));
    K inv = K(1) / A.at(col, col);
    for (int j = 0; j < n; ++j) A.at(col, j) = inv * A.at(col, j);
    for (int j = 0; j < B.cols; ++j) B.at(col, j) = inv * B.at(col, j);
    for (int r = 0; r < n; ++r) {
      if (r == col || is_zero(A.at(r, col))) continue;
      K f = A.at(r, col);
      for (int j = 0; j < n; ++j) A.at(r, j) = A.at(r, j) - f * A.at(col, j);
      for (int j = 0; j < B.cols; ++j)
        B.at(r, j) = B.at(r, j) - f * B.at(col, j);
    }
  }
  return B;
}

template <class K>
Mat<K> mat_inverse(const Mat<K>& A) {
  return solve_linear(A, Mat<K>::identity(A.rows));
}

}  // namespace qdelab
