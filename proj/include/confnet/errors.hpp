// Copyright 2026 The confnet Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONFNET_ERRORS_HPP_
#define CONFNET_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace confnet {

// Error families. The CLI maps each family to a distinct exit code:
// InvalidArgument -> 1 (usage), DataError -> 2, NumericError -> 3.

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Model file problems.
class ModelVersionError : public DataError {
 public:
  using DataError::DataError;
};

class ModelShapeError : public DataError {
 public:
  using DataError::DataError;
};

class ModelFormatError : public DataError {
 public:
  using DataError::DataError;
};

// Dataset CSV problems.
enum class CsvErrorKind {
  kUnreadable,
  kMissingHeader,
  kRaggedRow,
  kNonNumeric,
  kLabelRange,
};

class CsvError : public DataError {
 public:
  CsvError(CsvErrorKind kind, const std::string& what)
      : DataError(what), kind_(kind) {}
  CsvErrorKind kind() const noexcept { return kind_; }

 private:
  CsvErrorKind kind_;
};

}  // namespace confnet

#endif  // CONFNET_ERRORS_HPP_
