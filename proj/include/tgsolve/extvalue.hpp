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

#ifndef TGSOLVE_EXTVALUE_HPP_
#define TGSOLVE_EXTVALUE_HPP_

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>

namespace tgs {

// Element of [0, inf]: a non-negative reward mass that may be infinite.
// Finite values are plain doubles; the infinite element is IEEE +inf, which
// makes it absorbing under addition and under scaling by positive reals.
// Negative values and NaN are unrepresentable.
class ExtValue {
 public:
  constexpr ExtValue() : v_(0.0) {}

  explicit ExtValue(double v) : v_(v) {
    if (std::isnan(v) || v < 0.0) {
      throw std::domain_error("ExtValue must be a non-negative real or inf");
    }
  }

  static constexpr ExtValue infinity() {
    return from_raw(std::numeric_limits<double>::infinity());
  }

  // Unchecked wrap; caller guarantees v in [0, inf].
  static constexpr ExtValue from_raw(double v) {
    ExtValue x;
    x.v_ = v;
    return x;
  }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_infinite() const { return std::isinf(v_); }

  // Underlying double, +inf for the infinite element.
  double raw() const { return v_; }

  // Finite payload; throws on the infinite element.
  double finite() const {
    if (!is_finite()) throw std::domain_error("ExtValue is infinite");
    return v_;
  }

  friend bool operator==(ExtValue a, ExtValue b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtValue a, ExtValue b) { return a.v_ != b.v_; }
  friend bool operator<(ExtValue a, ExtValue b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtValue a, ExtValue b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtValue a, ExtValue b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtValue a, ExtValue b) { return a.v_ >= b.v_; }

  friend ExtValue operator+(ExtValue a, ExtValue b) {
    return from_raw(a.v_ + b.v_);
  }

 private:
  double v_;
};

// Upper eps-approximation: c + eps (inf stays inf).
inline ExtValue oplus(ExtValue c, double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::domain_error("oplus: eps must be finite and >= 0");
  }
  return ExtValue::from_raw(c.raw() + eps);
}

// Lower eps-approximation: c - eps for finite c (requires eps <= c),
// 1/eps for c = inf with eps > 0, and inf for c = inf with eps = 0.
inline ExtValue ominus(ExtValue c, double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::domain_error("ominus: eps must be finite and >= 0");
  }
  if (c.is_infinite()) {
    return eps == 0.0 ? ExtValue::infinity() : ExtValue(1.0 / eps);
  }
  if (eps > c.raw()) {
    throw std::domain_error("ominus: eps exceeds finite value");
  }
  return ExtValue::from_raw(c.raw() - eps);
}

// Explicit clamping variant for callers that want max(c - eps, 0) on finite c.
inline ExtValue ominus_clamped(ExtValue c, double eps) {
  if (c.is_infinite()) return ominus(c, eps);
  double d = c.raw() - eps;
  return ExtValue::from_raw(d > 0.0 ? d : 0.0);
}

// Weighted sum with positive weights; inf is absorbing. Empty sum is 0.
inline ExtValue ext_sum(std::span<const std::pair<ExtValue, double>> terms) {
  double acc = 0.0;
  for (const auto& [v, w] : terms) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::domain_error("ext_sum: weights must be finite and > 0");
    }
    acc += w * v.raw();
  }
  return ExtValue::from_raw(acc);
}

inline ExtValue ext_sum(std::initializer_list<std::pair<ExtValue, double>> terms) {
  return ext_sum(std::span<const std::pair<ExtValue, double>>(terms.begin(), terms.size()));
}

}  // namespace tgs

#endif  // TGSOLVE_EXTVALUE_HPP_
