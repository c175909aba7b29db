#include "linalg.hpp"

#include <cmath>
#include <utility>

namespace ginibre::detail {

namespace {

bool eliminate(Matrix& a, std::vector<Complex>* rhs, Complex& det) {
  const std::size_t n = a.rows;
  det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) {
      det = 0.0;
      return false;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      if (rhs) std::swap((*rhs)[k], (*rhs)[piv]);
      det = -det;
    }
    const Complex d = a(k, k);
    det *= d;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / d;
      if (f == Complex(0.0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      if (rhs) (*rhs)[i] -= f * (*rhs)[k];
    }
  }
  return true;
}

}  // namespace

Complex determinant(Matrix a) {
  Complex det;
  eliminate(a, nullptr, det);
  return det;
}

bool solve(Matrix a, std::vector<Complex>& b) {
  Complex det;
  if (!eliminate(a, &b, det)) return false;
  const std::size_t n = a.rows;
  for (std::size_t ii = n; ii-- > 0;) {
    Complex s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * b[j];
    b[ii] = s / a(ii, ii);
  }
  return true;
}

namespace {

inline void neumaier(double& sum, double& comp, double v) {
  const double t = sum + v;
  if (std::abs(sum) >= std::abs(v)) {
    comp += (sum - t) + v;
  } else {
    comp += (v - t) + sum;
  }
  sum = t;
}

}  // namespace

template <>
void CompensatedSum<double>::add(double v) {
  neumaier(sum_, comp_, v);
}

template <>
void CompensatedSum<Complex>::add(Complex v) {
  double sr = sum_.real(), si = sum_.imag(), cr = comp_.real(), ci = comp_.imag();
  neumaier(sr, cr, v.real());
  neumaier(si, ci, v.imag());
  sum_ = Complex(sr, si);
  comp_ = Complex(cr, ci);
}

}  // namespace ginibre::detail
