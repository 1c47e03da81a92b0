#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gwmaj/rational.hpp"

namespace gwmaj {

/// Dense matrix of exact rationals, row-major. Equality is entrywise exact.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw std::invalid_argument("Matrix: ragged initializer list");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  static Matrix identity(std::size_t n) {
    Matrix result(n, n);
    for (std::size_t i = 0; i < n; ++i) result(i, i) = 1;
    return result;
  }

  /// J_{r,c}: the all-ones matrix.
  static Matrix ones(std::size_t rows, std::size_t cols) {
    Matrix result(rows, cols);
    for (auto& entry : result.data_) entry = 1;
    return result;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vec row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Vec column(std::size_t j) const {
    Vec result(rows_);
    for (std::size_t i = 0; i < rows_; ++i) result[i] = (*this)(i, j);
    return result;
  }

  void set_row(std::size_t i, const Vec& values) {
    if (values.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = values[j];
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  bool is_zero() const {
    for (const auto& entry : data_) {
      if (entry != 0) return false;
    }
    return true;
  }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("matrix +: shape mismatch");
  Matrix result(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) result(i, j) = a(i, j) + b(i, j);
  return result;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("matrix -: shape mismatch");
  Matrix result(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) result(i, j) = a(i, j) - b(i, j);
  return result;
}

inline Matrix operator-(const Matrix& a) {
  Matrix result(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) result(i, j) = -a(i, j);
  return result;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix *: shape mismatch");
  Matrix result(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        result(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return result;
}

inline Matrix operator*(const Rational& scalar, const Matrix& m) {
  Matrix result(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) result(i, j) = scalar * m(i, j);
  return result;
}

inline Matrix transpose(const Matrix& m) {
  Matrix result(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) result(j, i) = m(i, j);
  return result;
}

/// [A | B] side by side.
inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row count mismatch");
  Matrix result(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) result(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) result(i, a.cols() + j) = b(i, j);
  }
  return result;
}

inline Matrix append_column(const Matrix& m, const Vec& v) {
  if (v.size() != m.rows()) throw std::invalid_argument("append_column: length mismatch");
  Matrix result(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) result(i, j) = m(i, j);
    result(i, m.cols()) = v[i];
  }
  return result;
}

/// e: the all-ones column vector.
inline Vec ones_vector(std::size_t n) { return Vec(n, Rational(1)); }

inline Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational sum(0);
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

/// M·v as a column vector.
inline Vec mat_vec(const Matrix& m, const Vec& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("mat_vec: length mismatch");
  Vec result(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) result[i] += m(i, j) * v[j];
  return result;
}

/// r·M for a row vector r.
inline Vec vec_mat(const Vec& r, const Matrix& m) {
  if (r.size() != m.rows()) throw std::invalid_argument("vec_mat: length mismatch");
  Vec result(m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (r[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) result[j] += r[i] * m(i, j);
  }
  return result;
}

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[" : " ");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      os << (j == 0 ? "[" : ", ") << to_string(m(i, j));
    }
    os << "]" << (i + 1 == m.rows() ? "]" : "\n");
  }
  return os;
}

inline std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << (i == 0 ? "" : ", ") << to_string(v[i]);
  }
  os << ")";
  return os.str();
}

}  // namespace gwmaj
