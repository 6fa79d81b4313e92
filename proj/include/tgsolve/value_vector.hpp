// Copyright 2026 The tgsolve Authors
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

#ifndef TGSOLVE_VALUE_VECTOR_HPP_
#define TGSOLVE_VALUE_VECTOR_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "tgsolve/extvalue.hpp"

namespace tgs {

// Per-vertex value assignment, indexed like the game's vertex table.
// Stored as raw doubles (+inf for the infinite element) so sweep kernels can
// run on it directly.
class ValueVector {
 public:
  ValueVector() = default;
  explicit ValueVector(std::size_t n, ExtValue init = ExtValue())
      : data_(n, init.raw()) {}

  static ValueVector wrap(std::vector<double> raw) {
    ValueVector v;
    v.data_ = std::move(raw);
    return v;
  }

  std::size_t size() const { return data_.size(); }

  ExtValue operator[](std::size_t v) const { return ExtValue::from_raw(data_[v]); }
  ExtValue get(std::size_t v) const { return ExtValue::from_raw(data_[v]); }
  void set(std::size_t v, ExtValue x) { data_[v] = x.raw(); }

  const std::vector<double>& raw() const { return data_; }
  std::vector<double>& raw() { return data_; }

  friend bool operator==(const ValueVector& a, const ValueVector& b) {
    return a.data_ == b.data_;
  }

 private:
  std::vector<double> data_;
};

}  // namespace tgs

#endif  // TGSOLVE_VALUE_VECTOR_HPP_
