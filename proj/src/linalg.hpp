#pragma once

#include <cstddef>
#include <vector>

#include "ginibre/core.hpp"

namespace ginibre::detail {

// Dense row-major complex matrix, small sizes only.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Complex& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Determinant by Gaussian elimination with partial pivoting.
Complex determinant(Matrix a);

// Solves a x = b; returns false if a pivot vanishes exactly.
bool solve(Matrix a, std::vector<Complex>& b);

// Neumaier compensated accumulator.
template <class T>
class CompensatedSum {
 public:
  void add(T v);
  T value() const { return sum_ + comp_; }
  T sum() const { return sum_; }
  T compensation() const { return comp_; }

 private:
  T sum_{};
  T comp_{};
};

}  // namespace ginibre::detail
