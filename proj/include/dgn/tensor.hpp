#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dgn/errors.hpp"

namespace dgn {

// Dense row-major matrix of doubles. Feature matrices are stored with one row
// per candidate (D x F), so per-candidate feature vectors are contiguous.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {
    require(r >= 0 && c >= 0, "Matrix: negative dimension");
  }
  Matrix(int r, int c, std::vector<double> values) : rows(r), cols(c), data(std::move(values)) {
    require(r >= 0 && c >= 0, "Matrix: negative dimension");
    require(data.size() == static_cast<std::size_t>(r) * c, "Matrix: data size does not match shape");
  }

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

  double* row(int r) { return data.data() + static_cast<std::size_t>(r) * cols; }
  const double* row(int r) const { return data.data() + static_cast<std::size_t>(r) * cols; }

  std::span<double> row_span(int r) { return {row(r), static_cast<std::size_t>(cols)}; }
  std::span<const double> row_span(int r) const { return {row(r), static_cast<std::size_t>(cols)}; }

  bool empty() const { return rows == 0 || cols == 0; }

  bool operator==(const Matrix&) const = default;
};

// Transpose; used at I/O boundaries where files store feature-major layouts.
inline Matrix transposed(const Matrix& a) {
  Matrix t(a.cols, a.rows);
  for (int r = 0; r < a.rows; ++r)
    for (int c = 0; c < a.cols; ++c) t.at(c, r) = a.at(r, c);
  return t;
}

}  // namespace dgn
