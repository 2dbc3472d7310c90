#include "ptrbf/complex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptrbf/errors.hpp"

namespace ptrbf {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, Complex fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

CVector multiply(const CMatrix& a, std::span<const Complex> x) {
  if (x.size() != a.cols()) {
    throw DimensionError("multiply: matrix has " + std::to_string(a.cols()) +
                         " columns, vector has " + std::to_string(x.size()));
  }
  CVector y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      re += row[c].real() * x[c].real() - row[c].imag() * x[c].imag();
      im += row[c].real() * x[c].imag() + row[c].imag() * x[c].real();
    }
    y[r] = {re, im};
  }
  return y;
}

CVector multiply_adjoint(const CMatrix& a, std::span<const Complex> x) {
  if (x.size() != a.rows()) {
    throw DimensionError("multiply_adjoint: matrix has " + std::to_string(a.rows()) +
                         " rows, vector has " + std::to_string(x.size()));
  }
  CVector y(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) y[c] += std::conj(row[c]) * x[r];
  }
  return y;
}

double squared_l2_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("squared_l2_distance: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

Complex split_squared_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw DimensionError("split_squared_distance: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dr = a[i].real() - b[i].real();
    const double di = a[i].imag() - b[i].imag();
    re += dr * dr;
    im += di * di;
  }
  return {re, im};
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool all_finite(std::span<const Complex> values) {
  return std::all_of(values.begin(), values.end(), [](Complex z) { return is_finite(z); });
}

std::vector<double> real_parts(std::span<const Complex> values) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](Complex z) { return z.real(); });
  return out;
}

std::vector<double> imag_parts(std::span<const Complex> values) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](Complex z) { return z.imag(); });
  return out;
}

}  // namespace ptrbf
