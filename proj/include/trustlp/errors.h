// Copyright 2026 The trustlp Authors
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

#ifndef TRUSTLP_ERRORS_H_
#define TRUSTLP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace trustlp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed game instance, strategy, or kernel.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

// Text input that does not follow the utility matrix format. Line and
// column are 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) +
              (column > 0 ? ", column " + std::to_string(column) : "") + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// An LP optimality certificate failed one of its exact checks.
class CertificationFailure : public Error {
 public:
  using Error::Error;
};

// Exact search or enumeration would exceed its configured limit.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// An independent cross-check disagreed with the solver.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

// A closed form was requested for a graph shape it does not cover.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

}  // namespace trustlp

#endif  // TRUSTLP_ERRORS_H_
