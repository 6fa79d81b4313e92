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

#ifndef TGSOLVE_ERRORS_HPP_
#define TGSOLVE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tgs {

// Base for all library errors so the CLI can map them to one exit code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input document (game or strategy file).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

// Structurally broken game rejected on load.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error("validation error: " + what) {}
};

// Strategy does not cover / match the game it is applied to.
class StrategyError : public Error {
 public:
  explicit StrategyError(const std::string& what)
      : Error("strategy error: " + what) {}
};

// Numerical evaluation could not be completed soundly.
class EvalError : public Error {
 public:
  explicit EvalError(const std::string& what) : Error("eval error: " + what) {}
};

// No discount factor (or horizon) in the schedule meets the requirement.
class ScheduleExhausted : public Error {
 public:
  explicit ScheduleExhausted(const std::string& what)
      : Error("schedule exhausted: " + what) {}
};

}  // namespace tgs

#endif  // TGSOLVE_ERRORS_HPP_
