// Copyright 2026 The CorrLDP Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corrldp {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value lies outside its attribute domain. Row/col are -1 when the
// violation is not tied to a dataset cell.
class DomainViolation : public Error {
 public:
  explicit DomainViolation(const std::string& what, std::ptrdiff_t row = -1,
                           std::ptrdiff_t col = -1)
      : Error(what), row_(row), col_(col) {}
  std::ptrdiff_t row() const { return row_; }
  std::ptrdiff_t col() const { return col_; }

 private:
  std::ptrdiff_t row_;
  std::ptrdiff_t col_;
};

// Mismatched dimensions: ragged records, empty dataset, table/domain
// disagreement.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Domain size below 2.
class InvalidDomain : public Error {
 public:
  using Error::Error;
};

// Privacy budget not a positive finite real.
class InvalidBudget : public Error {
 public:
  using Error::Error;
};

// Tallies do not sum to the declared report count.
class CountMismatch : public Error {
 public:
  using Error::Error;
};

// Prior table dimensions do not match the attribute domains.
class PriorShapeError : public Error {
 public:
  using Error::Error;
};

// Operation requires all attribute domains to have the same size.
class HeterogeneousDomains : public Error {
 public:
  using Error::Error;
};

// Exact channel enumeration would exceed the size guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// A preprocessing step could not be applied.
class RecipeError : public Error {
 public:
  using Error::Error;
};

// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

// CSV row with a different number of fields than the first row.
class RaggedRows : public Error {
 public:
  RaggedRows(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Two-phase estimation invoked with no reports in either phase.
class EmptyPhase : public Error {
 public:
  using Error::Error;
};

// A requested user split would leave a phase with no users.
class SplitError : public Error {
 public:
  using Error::Error;
};

}  // namespace corrldp
