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

#include "fkdet/chol.hpp"

#include <cmath>
#include <string>

#include "fkdet/errors.hpp"

namespace fkdet {

double pairwise_sum(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::size_t len = values.size();
  while (len > 1) {
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i)
      values[i] = values[2 * i] + values[2 * i + 1];
    if (len % 2) values[half] = values[len - 1];
    len = half + (len % 2);
  }
  return values[0];
}

namespace {

// Left-looking Cholesky on row-major storage; rows j and i are contiguous,
// so the inner dot products stream through memory. `parallel` toggles the
// OpenMP distribution of the below-diagonal column updates; each update is
// a self-contained sequential dot product, so the arithmetic and its order
// are identical either way.
double cholesky_logdet_impl(std::vector<double>& a, std::size_t n,
                            bool parallel) {
  if (a.size() != n * n) throw Error("cholesky: matrix size mismatch");
  std::vector<double> pivot_logs(n);
  for (std::size_t j = 0; j < n; ++j) {
    double* row_j = a.data() + j * n;
    double diag = row_j[j];
    for (std::size_t k = 0; k < j; ++k) diag -= row_j[k] * row_j[k];
    if (!(diag > 0.0))
      throw NotPositiveError(
          "cholesky: non-positive pivot " + std::to_string(diag) +
          " at index " + std::to_string(j) +
          " — the positivity certificate was wrong");
    const double ljj = std::sqrt(diag);
    row_j[j] = ljj;
    pivot_logs[j] = std::log(ljj);

    const std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(j) + 1;
    const std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t i = lo; i < hi; ++i) {
      double* row_i = a.data() + static_cast<std::size_t>(i) * n;
      double acc = row_i[j];
      for (std::size_t k = 0; k < j; ++k) acc -= row_i[k] * row_j[k];
      row_i[j] = acc / ljj;
    }
  }
  // logdet = 2·Σ log L_jj
  for (double& v : pivot_logs) v *= 2.0;
  return pairwise_sum(std::move(pivot_logs));
}

}  // namespace

double cholesky_logdet_serial(std::vector<double> a, std::size_t n) {
  return cholesky_logdet_impl(a, n, false);
}

double cholesky_logdet_parallel(std::vector<double> a, std::size_t n) {
  return cholesky_logdet_impl(a, n, true);
}

double cholesky_logdet_banded(std::vector<double> band, std::size_t n,
                              std::size_t bw) {
  const std::size_t w = bw + 1;
  if (band.size() != n * w) throw Error("banded cholesky: size mismatch");
  // band[i*w + (bw - (i - j))] holds A(i,j); fill-in stays inside the band.
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return band[i * w + (bw - (i - j))];
  };
  std::vector<double> pivot_logs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k_lo = j > bw ? j - bw : 0;
    double diag = at(j, j);
    for (std::size_t k = k_lo; k < j; ++k) diag -= at(j, k) * at(j, k);
    if (!(diag > 0.0))
      throw NotPositiveError(
          "banded cholesky: non-positive pivot " + std::to_string(diag) +
          " at index " + std::to_string(j) +
          " — the positivity certificate was wrong");
    const double ljj = std::sqrt(diag);
    at(j, j) = ljj;
    pivot_logs[j] = std::log(ljj);
    const std::size_t i_hi = std::min(n - 1, j + bw);
    for (std::size_t i = j + 1; i <= i_hi; ++i) {
      const std::size_t lo = i > bw ? i - bw : 0;
      double acc = at(i, j);
      for (std::size_t k = std::max(k_lo, lo); k < j; ++k)
        acc -= at(i, k) * at(j, k);
      at(i, j) = acc / ljj;
    }
  }
  for (double& v : pivot_logs) v *= 2.0;
  return pairwise_sum(std::move(pivot_logs));
}

}  // namespace fkdet
