// Copyright 2026 The fkdet authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FKDET_INTMAT_HPP
#define FKDET_INTMAT_HPP

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace fkdet {

// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           data_ == other.data_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<mpz_class> data_;
};

// Exact determinant by fraction-free (Bareiss) elimination with row-pivot
// fallback: intermediate entries are true minors, divisions are exact. A
// zero pivot with no nonzero entry below it means det = 0.
mpz_class bareiss_det(IntMatrix m);

// Rank over Q by fraction-free elimination with full pivoting; equals the
// Smith-normal-form rank (number of nonzero elementary divisors).
std::size_t exact_rank(IntMatrix m);

// Smith normal form elementary divisors d₁ | d₂ | … | d_r (r = min(rows,
// cols)), nonnegative, diagonal of U·M·V for unimodular U, V. For square
// nonsingular M the product of the divisors equals |det M|.
//
// Internally dispatches: square nonsingular matrices are reduced modulo
// R = |det M| (all unimodular operations performed on balanced residues;
// sound because R·Zⁿ ⊆ M·Zⁿ, so the cokernel of M equals that of [M | R·I]),
// which bounds intermediate entries by R and avoids the classical
// coefficient explosion. Everything else uses plain integer elimination.
std::vector<mpz_class> snf(const IntMatrix& m);

// The mod-R core, exposed for callers that already know a positive multiple
// R of the largest elementary divisor (e.g. R = |det M| from bareiss_det).
std::vector<mpz_class> snf_divisors_mod(const IntMatrix& m,
                                        const mpz_class& modulus);

// log of a positive big integer without overflowing double: mantissa/exponent
// split, so exact up to rounding for any magnitude.
double log_mpz(const mpz_class& v);

}  // namespace fkdet

#endif  // FKDET_INTMAT_HPP
