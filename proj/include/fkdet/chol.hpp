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

#ifndef FKDET_CHOL_HPP
#define FKDET_CHOL_HPP

#include <cstddef>
#include <vector>

namespace fkdet {

// Sum in a fixed balanced binary-tree order. The result depends only on the
// order of the inputs — never on threading — which is the reproducibility
// contract for every floating accumulation in this library.
double pairwise_sum(std::vector<double> values);

// log det of a symmetric positive-definite matrix (row-major, n×n) via an
// in-place left-looking Cholesky factorization: logdet = 2·Σ log L_jj, the
// pivot logs summed pairwise. Throws NotPositiveError on a non-positive
// pivot (the caller's positivity certificate was wrong).
//
// The parallel variant distributes each column's below-diagonal updates over
// OpenMP threads; every matrix entry is still computed by a sequential inner
// dot product in a fixed order, so serial and parallel results are
// bit-identical.
double cholesky_logdet_serial(std::vector<double> a, std::size_t n);
double cholesky_logdet_parallel(std::vector<double> a, std::size_t n);

// Banded variant: `band` is row-major (n × (bw+1)) holding the lower band,
// band[i*(bw+1) + (bw - (i-j))] = A(i,j) for max(0,i-bw) ≤ j ≤ i. Serial
// (the O(n·bw²) loop does not reward threading at the sizes used here).
double cholesky_logdet_banded(std::vector<double> band, std::size_t n,
                              std::size_t bw);

}  // namespace fkdet

#endif  // FKDET_CHOL_HPP
