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

#ifndef TRUSTLP_RATIONAL_H_
#define TRUSTLP_RATIONAL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace trustlp {

// Every quantity in the library is an exact rational. Ties and binding
// constraints are decided by exact comparison only.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Accepts "a/b", a signed integer, or a finite decimal such as "-0.25".
// Returns nullopt for anything else (including a zero denominator).
std::optional<Rational> parse_rational(std::string_view text);

// "a/b" in lowest terms, or "a" when the denominator is 1.
std::string to_string(const Rational& value);

// Rounded rendering for display columns only.
std::string to_decimal_string(const Rational& value, int digits = 6);

// Dense row-major matrix of rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const Rational& fill = Rational(0));

  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(int r, int c) { return data_[index(r, c)]; }
  const Rational& operator()(int r, int c) const { return data_[index(r, c)]; }

  const std::vector<Rational>& data() const { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace trustlp

#endif  // TRUSTLP_RATIONAL_H_
