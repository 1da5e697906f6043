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

#include "fkdet/intmat.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fkdet/errors.hpp"

namespace fkdet {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

// Reduce x into the balanced residue system (−R/2, R/2].
void reduce_balanced(mpz_class& x, const mpz_class& modulus) {
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  if (2 * x > modulus) x -= modulus;
}

// Shared elimination engine for the plain and mod-R Smith reductions. When
// modulus != nullptr every entry is kept as a balanced residue; all row and
// column operations are unimodular over Z (reduction by the modulus is a
// further unimodular operation on the implicit [M | R·I] augmentation).
class SmithReducer {
 public:
  SmithReducer(IntMatrix m, const mpz_class* modulus)
      : a_(std::move(m)), modulus_(modulus) {
    if (modulus_) {
      for (std::size_t i = 0; i < a_.rows(); ++i)
        for (std::size_t j = 0; j < a_.cols(); ++j) reduce(a_.at(i, j));
    }
  }

  std::vector<mpz_class> run() {
    const std::size_t r = std::min(a_.rows(), a_.cols());
    std::vector<mpz_class> divisors;
    divisors.reserve(r);
    for (std::size_t top = 0; top < r; ++top) {
      if (!move_smallest_pivot(top)) {
        // Trailing block vanishes: over Z the remaining divisors are 0; over
        // Z/R a vanishing residue block means the cokernel factors Z/R, so
        // the remaining divisors equal R.
        for (std::size_t k = top; k < r; ++k)
          divisors.push_back(modulus_ ? *modulus_ : mpz_class(0));
        return divisors;
      }
      reduce_stage(top);
      mpz_class d = abs(a_.at(top, top));
      if (modulus_) mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), modulus_->get_mpz_t());
      divisors.push_back(d);
    }
    return divisors;
  }

 private:
  void reduce(mpz_class& x) {
    if (modulus_) reduce_balanced(x, *modulus_);
  }

  // Move the smallest-magnitude nonzero entry of the trailing submatrix to
  // (top, top). Returns false when the trailing submatrix is zero.
  bool move_smallest_pivot(std::size_t top) {
    std::size_t pi = top, pj = top;
    mpz_class best;
    bool found = false;
    for (std::size_t i = top; i < a_.rows(); ++i) {
      for (std::size_t j = top; j < a_.cols(); ++j) {
        if (a_.at(i, j) == 0) continue;
        mpz_class v = abs(a_.at(i, j));
        if (!found || v < best) {
          best = v;
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    if (!found) return false;
    swap_rows(a_, top, pi);
    swap_cols(a_, top, pj);
    return true;
  }

  // Unimodular 2-row combination making a_(i, top) zero. Pure elimination
  // when the pivot divides the target; otherwise an extended-gcd step that
  // strictly shrinks the pivot.
  void clear_in_column(std::size_t top, std::size_t i) {
    mpz_class x = a_.at(top, top), y = a_.at(i, top);
    if (x != 0 && mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) {
      mpz_class q = y / x;
      for (std::size_t j = top; j < a_.cols(); ++j) {
        a_.at(i, j) -= q * a_.at(top, j);
        reduce(a_.at(i, j));
      }
      return;
    }
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(),
               y.get_mpz_t());
    mpz_class u = -y / g, v = x / g;  // det [[s,t],[u,v]] = (sx+ty)/g = 1
    for (std::size_t j = top; j < a_.cols(); ++j) {
      mpz_class rt = s * a_.at(top, j) + t * a_.at(i, j);
      mpz_class ri = u * a_.at(top, j) + v * a_.at(i, j);
      reduce(rt);
      reduce(ri);
      a_.at(top, j) = std::move(rt);
      a_.at(i, j) = std::move(ri);
    }
  }

  void clear_in_row(std::size_t top, std::size_t j) {
    mpz_class x = a_.at(top, top), y = a_.at(top, j);
    if (x != 0 && mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) {
      mpz_class q = y / x;
      for (std::size_t i = top; i < a_.rows(); ++i) {
        a_.at(i, j) -= q * a_.at(i, top);
        reduce(a_.at(i, j));
      }
      return;
    }
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(),
               y.get_mpz_t());
    mpz_class u = -y / g, v = x / g;
    for (std::size_t i = top; i < a_.rows(); ++i) {
      mpz_class ct = s * a_.at(i, top) + t * a_.at(i, j);
      mpz_class cj = u * a_.at(i, top) + v * a_.at(i, j);
      reduce(ct);
      reduce(cj);
      a_.at(i, top) = std::move(ct);
      a_.at(i, j) = std::move(cj);
    }
  }

  // The pivot ideal generator: |pivot| over Z, gcd(pivot, R) mod R.
  mpz_class pivot_generator(std::size_t top) const {
    mpz_class d = abs(a_.at(top, top));
    if (modulus_) mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), modulus_->get_mpz_t());
    return d;
  }

  // Clear row and column of the pivot, then enforce that the pivot divides
  // the whole trailing submatrix (divisibility chain). Every extended-gcd
  // step and every fixup strictly shrinks the pivot (its ideal strictly
  // grows), so this terminates.
  void reduce_stage(std::size_t top) {
    while (true) {
      for (std::size_t i = top + 1; i < a_.rows(); ++i)
        if (a_.at(i, top) != 0) clear_in_column(top, i);
      for (std::size_t j = top + 1; j < a_.cols(); ++j)
        if (a_.at(top, j) != 0) clear_in_row(top, j);

      bool column_dirty = false;
      for (std::size_t i = top + 1; i < a_.rows(); ++i)
        if (a_.at(i, top) != 0) {
          column_dirty = true;
          break;
        }
      if (column_dirty) continue;

      const mpz_class d = pivot_generator(top);
      bool fixed_up = false;
      if (d != 0) {
        for (std::size_t i = top + 1; i < a_.rows() && !fixed_up; ++i) {
          for (std::size_t j = top + 1; j < a_.cols(); ++j) {
            if (!mpz_divisible_p(a_.at(i, j).get_mpz_t(), d.get_mpz_t())) {
              // Fold the offending row into the pivot row; the next pass
              // replaces the pivot by a proper divisor of d.
              for (std::size_t c = top; c < a_.cols(); ++c) {
                a_.at(top, c) += a_.at(i, c);
                reduce(a_.at(top, c));
              }
              fixed_up = true;
              break;
            }
          }
        }
      }
      if (!fixed_up) return;
    }
  }

  IntMatrix a_;
  const mpz_class* modulus_;
};

}  // namespace

mpz_class bareiss_det(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error("bareiss_det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;

  // Per-row nonzero column spans (lo > hi means the row is zero). Outside a
  // span every entry is an exact zero, and the Bareiss update maps zeros to
  // zeros whenever row k's entry is zero too, so each sweep can stay inside
  // the union of the two spans. Banded truncations then cost O(n·b²) instead
  // of O(n³); dense matrices are unaffected.
  std::vector<std::size_t> lo(n, n), hi(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m.at(i, j) != 0) {
        if (lo[i] == n) lo[i] = j;
        hi[i] = j;
      }

  mpz_class prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m.at(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      swap_rows(m, k, piv);
      std::swap(lo[k], lo[piv]);
      std::swap(hi[k], hi[piv]);
      sign = -sign;
    }
    const mpz_class pivot = m.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const mpz_class mik = m.at(i, k);
      std::size_t jlo = std::min(lo[i], lo[k]);
      std::size_t jhi = std::max(hi[i], hi[k]);
      if (jlo <= k) jlo = k + 1;
      m.at(i, k) = 0;
      if (jhi < jlo) {
        lo[i] = n;
        hi[i] = 0;
        continue;
      }
      for (std::size_t j = jlo; j <= jhi; ++j) {
        mpz_class& mij = m.at(i, j);
        mij *= pivot;
        mij -= mik * m.at(k, j);
        // Exact by Sylvester's identity: mij is a (k+2)-minor times prev.
        mpz_divexact(mij.get_mpz_t(), mij.get_mpz_t(), prev.get_mpz_t());
      }
      lo[i] = jlo;
      hi[i] = jhi;
    }
    prev = pivot;
  }
  return sign < 0 ? mpz_class(-m.at(n - 1, n - 1)) : m.at(n - 1, n - 1);
}

std::size_t exact_rank(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  mpz_class prev(1);
  const std::size_t stages = std::min(rows, cols);
  for (std::size_t k = 0; k < stages; ++k) {
    // Full pivoting: any nonzero entry keeps fraction-free division exact on
    // the row/column-permuted matrix.
    std::size_t pi = k, pj = k;
    bool found = false;
    for (std::size_t i = k; i < rows && !found; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (m.at(i, j) != 0) {
          pi = i;
          pj = j;
          found = true;
          break;
        }
    if (!found) break;
    swap_rows(m, k, pi);
    swap_cols(m, k, pj);
    ++rank;
    const mpz_class pivot = m.at(k, k);
    for (std::size_t i = k + 1; i < rows; ++i) {
      const mpz_class mik = m.at(i, k);
      for (std::size_t j = k + 1; j < cols; ++j) {
        mpz_class& mij = m.at(i, j);
        mij *= pivot;
        mij -= mik * m.at(k, j);
        mpz_divexact(mij.get_mpz_t(), mij.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(i, k) = 0;
    }
    prev = pivot;
  }
  return rank;
}

std::vector<mpz_class> snf_divisors_mod(const IntMatrix& m,
                                        const mpz_class& modulus) {
  if (m.rows() != m.cols())
    throw Error("snf_divisors_mod: matrix is not square");
  if (modulus <= 0) throw Error("snf_divisors_mod: modulus must be positive");
  if (modulus == 1)
    return std::vector<mpz_class>(m.rows(), mpz_class(1));
  return SmithReducer(m, &modulus).run();
}

std::vector<mpz_class> snf(const IntMatrix& m) {
  if (m.rows() == m.cols() && m.rows() > 0) {
    mpz_class det = bareiss_det(m);
    if (det != 0) return snf_divisors_mod(m, abs(det));
  }
  return SmithReducer(m, nullptr).run();
}

double log_mpz(const mpz_class& v) {
  if (v <= 0) throw Error("log_mpz: argument must be positive");
  signed long exp = 0;
  double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace fkdet
