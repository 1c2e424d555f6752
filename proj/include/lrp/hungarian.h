/* Copyright 2026 The LRP Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef LRP_HUNGARIAN_H_
#define LRP_HUNGARIAN_H_

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace lrp {

// Dense row-major matrix of assignment costs.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  CostMatrix Transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  // (row, column) pairs sorted by row; exactly min(rows, cols) of them.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  // Sum of the assigned entries, accumulated in ascending row order.
  double total_cost = 0.0;
};

// Minimum-cost assignment of min(rows, cols) pairs. O(n^2 m) shortest
// augmenting path with potentials. Throws InvalidArgument on non-finite
// entries.
Assignment hungarian(const CostMatrix& cost);

}  // namespace lrp

#endif  // LRP_HUNGARIAN_H_
