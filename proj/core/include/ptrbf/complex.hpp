#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ptrbf {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols, Complex fill = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<Complex> elements() { return data_; }
  std::span<const Complex> elements() const { return data_; }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// y = A x
CVector multiply(const CMatrix& a, std::span<const Complex> x);

/// y = A^H x
CVector multiply_adjoint(const CMatrix& a, std::span<const Complex> x);

/// Sum of squared differences of two real vectors.
double squared_l2_distance(std::span<const double> a, std::span<const double> b);

/// Split squared distance: Re holds ||Re a - Re b||^2, Im holds ||Im a - Im b||^2.
Complex split_squared_distance(std::span<const Complex> a, std::span<const Complex> b);

bool is_finite(Complex z);
bool all_finite(std::span<const Complex> values);

std::vector<double> real_parts(std::span<const Complex> values);
std::vector<double> imag_parts(std::span<const Complex> values);

}  // namespace ptrbf
