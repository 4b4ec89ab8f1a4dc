#pragma once

// Dense matrices over exact rationals.

#include <cstddef>
#include <string>
#include <vector>

#include "tqftwb/rational.hpp"

namespace tqftwb::lie {

using Vector = std::vector<Rational>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  /// Columns given as vectors of equal length.
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Matrix transpose() const;
  Rational trace() const;
  bool is_zero() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rational& s, const Matrix& a);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  std::vector<std::string> to_strings() const;  // row-major "p/q"

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

Matrix commutator(const Matrix& a, const Matrix& b);

std::size_t rank(const Matrix& m);
/// Basis of {v : m v = 0}.
std::vector<Vector> nullspace(const Matrix& m);
/// Throws std::domain_error when singular.
Matrix inverse(const Matrix& m);

/// Coefficients c_0..c_n of det(t I - m), c_n = 1 (Berkowitz; no division).
std::vector<Rational> charpoly(const Matrix& m);

Rational dot(const Vector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Rational& s, const Vector& v);
bool is_zero(const Vector& v);

}  // namespace tqftwb::lie
