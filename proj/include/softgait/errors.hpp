// Copyright 2026 The softgait Authors.
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

#ifndef SOFTGAIT_ERRORS_HPP_
#define SOFTGAIT_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace softgait {

// Base for everything the library throws on bad input or exhausted limits.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data that is malformed or inconsistent with the robot spec.
class DataError : public Error {
 public:
  using Error::Error;
};

class InvalidStateError : public DataError {
 public:
  using DataError::DataError;
};

class InvalidTableError : public DataError {
 public:
  using DataError::DataError;
};

class ParseError : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateWeightError : public DataError {
 public:
  using DataError::DataError;
};

class InvalidCycleError : public DataError {
 public:
  using DataError::DataError;
};

class DimensionMismatchError : public DataError {
 public:
  using DataError::DataError;
};

// A circulation that cannot be turned into a single closed walk.
class NotExecutableError : public Error {
 public:
  using Error::Error;
};

// A configured search or enumeration limit was hit.
class ResourceLimitError : public Error {
 public:
  ResourceLimitError(const std::string& what, std::size_t partial_count)
      : Error(what), partial_count_(partial_count) {}

  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

}  // namespace softgait

#endif  // SOFTGAIT_ERRORS_HPP_
