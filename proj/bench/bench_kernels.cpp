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
//
// Serial vs OpenMP timings for the two float kernels, with the bit-identity
// contract checked on every pair. Not part of ctest: run it by hand when
// touching chol.cpp or mahler.cpp.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fkdet/chol.hpp"
#include "fkdet/group.hpp"
#include "fkdet/mahler.hpp"
#include "fkdet/ring.hpp"
#include "fkdet/truncate.hpp"

namespace {

using Clock = std::chrono::steady_clock;

// Best-of-`reps` wall time: robust against scheduler noise on small boxes.
double time_best(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    body();
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (dt < best) best = dt;
  }
  return best;
}

void report(const char* name, double serial_s, double parallel_s,
            bool bitwise_equal) {
  std::printf("%-28s %10.4f ms %10.4f ms   %5.2fx   %s\n", name,
              serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
              bitwise_equal ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled: the 'parallel' column runs serially\n\n");
#endif
  std::printf("%-28s %13s %13s %8s   %s\n", "kernel", "serial", "parallel",
              "speedup", "result check");

  // Dense Cholesky on the box-600 truncation of a positive Z² element.
  {
    fkdet::GroupSpec z2 = fkdet::GroupSpec::free_abelian(2);
    fkdet::IntElement h(z2);
    h.add_term({0, 0}, 9);
    h.add_term({1, 0}, 2);
    h.add_term({0, 1}, -2);
    h.add_term({1, 1}, 1);
    const fkdet::IntElement f = fkdet::make_positive(h);
    // box(2, 24): 576 points, dense because the Z²-box bandwidth is large.
    const fkdet::TruncatedMatrix m =
        fkdet::assemble_float(f, fkdet::box(2, 24));
    const std::vector<double> dense = m.to_dense();

    double serial_value = 0.0, parallel_value = 0.0;
    const double ts = time_best(5, [&] {
      serial_value = fkdet::cholesky_logdet_serial(dense, m.size());
    });
    const double tp = time_best(5, [&] {
      parallel_value = fkdet::cholesky_logdet_parallel(dense, m.size());
    });
    report("cholesky_logdet n=576", ts, tp, serial_value == parallel_value);
  }

  // Torus quadrature of log|f| on a 512x512 grid (Z² symbol scan).
  {
    fkdet::GroupSpec z2 = fkdet::GroupSpec::free_abelian(2);
    fkdet::FloatElement f(z2);
    f.add_term({0, 0}, 5.0);
    f.add_term({1, 0}, 1.0);
    f.add_term({-1, 0}, 1.0);
    f.add_term({0, 1}, 1.0);
    f.add_term({0, -1}, 1.0);
    const fkdet::TorusGrid grid{2, 512};

    double serial_value = 0.0, parallel_value = 0.0;
    const double ts = time_best(5, [&] {
      serial_value = fkdet::mahler_quadrature_serial(f, grid);
    });
    const double tp = time_best(5, [&] {
      parallel_value = fkdet::mahler_quadrature(f, grid);
    });
    report("mahler_quadrature 512^2", ts, tp, serial_value == parallel_value);
  }

  return 0;
}
