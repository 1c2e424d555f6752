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
#ifndef LRP_ERRORS_H_
#define LRP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lrp {

// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// LRP has no value when both the ground-truth and detection sets are empty.
class UndefinedLrp : public std::domain_error {
 public:
  UndefinedLrp()
      : std::domain_error(
            "LRP is undefined: ground-truth and detection sets are both "
            "empty") {}
  using std::domain_error::domain_error;
};

// Input file problems. `field` is a JSON-pointer-like path to the offending
// element ("annotations[3].bbox") or a byte offset for syntax errors.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// No class has anything to evaluate.
class NothingEvaluable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lrp

#endif  // LRP_ERRORS_H_
