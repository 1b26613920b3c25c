#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstdint>
#include <vector>

namespace strucnet {

using Rat = boost::multiprecision::cpp_rational;

/// Minimal dense row-major matrix. Deliberately tiny: the exact solvers in
/// this project need predictable element-wise access over cpp_rational and
/// prime-field words, nothing more.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, T init = T(0))
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, init) {
    assert(rows >= 0 && cols >= 0);
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Mat operator*(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat p(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
      for (int k = 0; k < cols_; ++k) {
        const T& a = (*this)(r, k);
        if (a == T(0)) continue;
        for (int c = 0; c < o.cols_; ++c) {
          if (o(k, c) == T(0)) continue;
          p(r, c) += a * o(k, c);
        }
      }
    return p;
  }

  Mat operator-(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat d(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) d.data_[i] = data_[i] - o.data_[i];
    return d;
  }

  Mat operator*(const T& s) const {
    Mat d(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) d.data_[i] = data_[i] * s;
    return d;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using MatQ = Mat<Rat>;

/// [a | b] side by side.
template <class T>
Mat<T> hstack(const Mat<T>& a, const Mat<T>& b) {
  if (a.empty() && a.rows() == 0) return b;
  if (b.empty() && b.rows() == 0) return a;
  assert(a.rows() == b.rows());
  Mat<T> m(a.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (int c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
  }
  return m;
}

/// [a ; b] stacked.
template <class T>
Mat<T> vstack(const Mat<T>& a, const Mat<T>& b) {
  if (a.empty() && a.cols() == 0) return b;
  if (b.empty() && b.cols() == 0) return a;
  assert(a.cols() == b.cols());
  Mat<T> m(a.rows() + b.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m(a.rows() + r, c) = b(r, c);
  return m;
}

}  // namespace strucnet
