/*
Copyright 2026 The sumlab Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace sumlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (zero divisor, set too
/// small for a logarithmic threshold, empty representation function, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

class InvalidScaleError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// A family specification that cannot be realised, e.g. more random elements
/// than the sampling range holds.
class InfeasibleSpecError : public Error {
  public:
    using Error::Error;
};

/// A cubic-cost operation was asked to run above its size budget.
class BudgetError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

} // namespace sumlab
