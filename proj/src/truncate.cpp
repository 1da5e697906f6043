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

#include "fkdet/truncate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace fkdet {

namespace {

void require_same_group(const GroupSpec& spec, const FoelnerSet& F) {
  if (!spec.same_group(F.spec()))
    throw SpecMismatchError(
        "assemble: element and Foelner set live over different groups");
}

// Structural positions (row, col, δ-index) of f's support inside F: for each
// row γ′ and support element δ, the column of γ = γ′·δ (because the entry
// a_{γ′^{-1}γ} is a_δ exactly when γ = γ′δ). Also measures the bandwidth.
template <typename C>
std::size_t measure_bandwidth(const RingElement<C>& f, const FoelnerSet& F) {
  std::size_t bw = 0;
  const auto& elems = F.elements();
  for (std::size_t r = 0; r < elems.size(); ++r) {
    for (const auto& [delta, a] : f.support()) {
      auto c = F.index_of(F.spec().multiply(elems[r], delta));
      if (!c) continue;
      const std::size_t dist = r > *c ? r - *c : *c - r;
      bw = std::max(bw, dist);
    }
  }
  return bw;
}

template <typename C, typename Put>
void fill_entries(const RingElement<C>& f, const FoelnerSet& F, Put put) {
  const auto& elems = F.elements();
  for (std::size_t r = 0; r < elems.size(); ++r) {
    for (const auto& [delta, a] : f.support()) {
      auto c = F.index_of(F.spec().multiply(elems[r], delta));
      if (c) put(r, *c, a);
    }
  }
}

template <typename C>
TruncatedMatrix assemble_float_impl(const RingElement<C>& f,
                                    const FoelnerSet& F,
                                    std::size_t dense_cap) {
  require_same_group(f.spec(), F);
  const std::size_t n = F.size();
  TruncatedMatrix m{F, CoeffKind::Float, is_self_adjoint(f),
                    measure_bandwidth(f, F), IntMatrix(0, 0), {}, {}};
  const bool banded = m.bandwidth + 1 <= std::max<std::size_t>(8, n / 4) &&
                      m.symmetric;
  if (banded) {
    m.band.assign(n * (m.bandwidth + 1), 0.0);
    fill_entries(f, F, [&](std::size_t r, std::size_t c, const C& a) {
      if (c <= r)  // lower band; the upper half is the mirror (symmetric)
        m.band[r * (m.bandwidth + 1) + (m.bandwidth - (r - c))] =
            coeff_to_double(a);
    });
  } else {
    if (n > dense_cap)
      throw SizeCapError("assemble: " + std::to_string(n) + "×" +
                         std::to_string(n) +
                         " dense float matrix exceeds the dense cap of " +
                         std::to_string(dense_cap));
    m.dense.assign(n * n, 0.0);
    fill_entries(f, F, [&](std::size_t r, std::size_t c, const C& a) {
      m.dense[r * n + c] = coeff_to_double(a);
    });
  }
  return m;
}

}  // namespace

TruncatedMatrix assemble_exact(const IntElement& f, const FoelnerSet& F) {
  require_same_group(f.spec(), F);
  const std::size_t n = F.size();
  TruncatedMatrix m{F,  CoeffKind::ExactInt, is_self_adjoint(f),
                    0,  IntMatrix(n, n),     {},
                    {}};
  m.bandwidth = measure_bandwidth(f, F);
  fill_entries(f, F, [&](std::size_t r, std::size_t c, const mpz_class& a) {
    m.exact.at(r, c) = a;
  });
  return m;
}

TruncatedMatrix assemble_float(const FloatElement& f, const FoelnerSet& F,
                               std::size_t dense_cap) {
  return assemble_float_impl(f, F, dense_cap);
}
TruncatedMatrix assemble_float(const IntElement& f, const FoelnerSet& F,
                               std::size_t dense_cap) {
  return assemble_float_impl(f, F, dense_cap);
}
TruncatedMatrix assemble_float(const RatElement& f, const FoelnerSet& F,
                               std::size_t dense_cap) {
  return assemble_float_impl(f, F, dense_cap);
}

double TruncatedMatrix::float_entry(std::size_t i, std::size_t j) const {
  if (kind == CoeffKind::ExactInt) return exact.at(i, j).get_d();
  if (is_banded()) {
    // Symmetric band storage: fold into the lower triangle.
    std::size_t r = i, c = j;
    if (c > r) std::swap(r, c);
    if (r - c > bandwidth) return 0.0;
    return band[r * (bandwidth + 1) + (bandwidth - (r - c))];
  }
  return dense[i * size() + j];
}

std::vector<double> TruncatedMatrix::to_dense() const {
  const std::size_t n = size();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = float_entry(i, j);
  return out;
}

void TruncatedMatrix::dump(std::ostream& out) const {
  const char* kind_name = kind == CoeffKind::ExactInt       ? "ExactInt"
                          : kind == CoeffKind::ExactRational ? "ExactRational"
                                                             : "Float";
  out << size() << ' ' << kind_name << '\n';
  char buf[64];
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (j) out << ' ';
      if (kind == CoeffKind::ExactInt) {
        out << exact.at(i, j).get_str();
      } else {
        std::snprintf(buf, sizeof(buf), "%.17g", float_entry(i, j));
        out << buf;
      }
    }
    out << '\n';
  }
}

SpectralBoundsReport spectral_bounds_check(const TruncatedMatrix& m, double a,
                                           double b) {
  if (!m.symmetric)
    throw NotSelfAdjointError(
        "spectral_bounds_check: matrix is not symmetric (f != f*)");
  const std::size_t n = m.size();
  std::vector<double> dense = m.to_dense();
  Eigen::Map<const Eigen::MatrixXd> mat(dense.data(),
                                        static_cast<Eigen::Index>(n),
                                        static_cast<Eigen::Index>(n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      mat, Eigen::EigenvaluesOnly);
  SpectralBoundsReport report;
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  report.max_eigenvalue = solver.eigenvalues().maxCoeff();
  report.a = a;
  report.b = b;
  report.pass = report.min_eigenvalue >= a && report.max_eigenvalue <= b;
  return report;
}

}  // namespace fkdet
