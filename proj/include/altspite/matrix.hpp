// Copyright 2026 The altspite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace altspite {

// Dense row-major matrix of doubles. Payoff matrices here are small
// (tens of actions), so no attempt at blocking or vectorization is made.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("Matrix: dimensions must be positive");
    }
  }
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
      : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("Matrix: dimensions must be positive");
    }
    if (data_.size() != rows * cols) {
      throw std::invalid_argument("Matrix: value count does not match shape");
    }
  }
  // Row-of-rows constructor, convenient for literal games.
  explicit Matrix(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows[0].empty()) {
      throw std::invalid_argument("Matrix: dimensions must be positive");
    }
    rows_ = rows.size();
    cols_ = rows[0].size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) {
        throw std::invalid_argument("Matrix: ragged row list");
      }
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<double>& data() const { return data_; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  bool all_finite() const {
    for (double v : data_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  double min() const {
    double m = data_[0];
    for (double v : data_) m = v < m ? v : m;
    return m;
  }
  double max() const {
    double m = data_[0];
    for (double v : data_) m = v > m ? v : m;
    return m;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  // this + s * other, elementwise.
  Matrix axpy(double s, const Matrix& other) const {
    if (!same_shape(other)) {
      throw std::invalid_argument("Matrix::axpy: shape mismatch");
    }
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      out.data_[k] = data_[k] + s * other.data_[k];
    }
    return out;
  }

  // M * v (length cols -> length rows).
  std::vector<double> mat_vec(const std::vector<double>& v) const {
    if (v.size() != cols_) {
      throw std::invalid_argument("Matrix::mat_vec: length mismatch");
    }
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double acc = 0.0;
      const double* row = &data_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * v[j];
      out[i] = acc;
    }
    return out;
  }

  // v^T * M (length rows -> length cols).
  std::vector<double> vec_mat(const std::vector<double>& v) const {
    if (v.size() != rows_) {
      throw std::invalid_argument("Matrix::vec_mat: length mismatch");
    }
    std::vector<double> out(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double* row = &data_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) out[j] += v[i] * row[j];
    }
    return out;
  }

  // x^T * M * y.
  double bilinear(const std::vector<double>& x,
                  const std::vector<double>& y) const {
    std::vector<double> my = mat_vec(y);
    double acc = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) acc += x[i] * my[i];
    return acc;
  }

  double max_abs_diff(const Matrix& other) const {
    if (!same_shape(other)) {
      throw std::invalid_argument("Matrix::max_abs_diff: shape mismatch");
    }
    double m = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) {
      double d = std::fabs(data_[k] - other.data_[k]);
      if (d > m) m = d;
    }
    return m;
  }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Index of the largest entry; ties resolved to the lowest index.
inline std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

inline double max_value(const std::vector<double>& v) {
  double m = v[0];
  for (double x : v) m = x > m ? x : m;
  return m;
}

inline double l1_distance(const std::vector<double>& a,
                          const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

}  // namespace altspite
