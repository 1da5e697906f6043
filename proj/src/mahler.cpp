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

#include "fkdet/mahler.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <nlohmann/json.hpp>

#include "fkdet/chol.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/estimate.hpp"

namespace fkdet {

std::size_t TorusGrid::total() const {
  std::size_t t = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (m != 0 && t > (std::size_t(-1)) / m)
      throw SizeCapError("TorusGrid: m^dim overflows");
    t *= m;
  }
  return t;
}

void TorusGrid::validate(std::size_t cap) const {
  if (dim < 1) throw Error("TorusGrid: dim must be >= 1");
  if (m < 2) throw Error("TorusGrid: m must be >= 2");
  if (total() > cap)
    throw SizeCapError("TorusGrid: " + std::to_string(total()) +
                       " nodes exceed the cap of " + std::to_string(cap));
}

namespace {

constexpr std::size_t kChunk = 4096;  // fixed: summation order is part of the API

GroupElement negated(const GroupElement& nu) {
  GroupElement out(nu.size());
  for (std::size_t k = 0; k < nu.size(); ++k) out[k] = -nu[k];
  return out;
}

// Evaluates f at the roots-of-unity nodes in row-major index order. Terms
// are folded into ±ν pairs with one lex-maximal representative ρ each:
//     f(node) = Σ_ρ (a_ρ + a_{−ρ})·cos(θ·ρ) + i·(a_ρ − a_{−ρ})·sin(θ·ρ).
// With the trig tables built symmetric (cs[m−p] = cs[p], sn[m−p] = −sn[p])
// this makes the node values of f and f* exact complex conjugates — the
// representative sets coincide, the cos parts match bitwise and the sin
// parts negate bitwise — so |f| and |f*| scans are bitwise identical.
class NodeScanner {
 public:
  NodeScanner(const FloatElement& f, std::size_t dim, std::size_t m)
      : dim_(dim), m_(m) {
    if (f.spec().kind() != GroupKind::FreeAbelian ||
        f.spec().encoding_size() != dim)
      throw SpecMismatchError(
          "torus scan: element is not over Z^" + std::to_string(dim));

    std::map<GroupElement, std::pair<double, double>> pairs;
    for (const auto& [nu, a] : f.support()) {
      (void)a;
      const GroupElement neg = negated(nu);
      const GroupElement& rep = std::max(nu, neg);
      if (pairs.count(rep)) continue;
      const double apos = f.coeff_at(rep);
      if (rep == neg && rep == nu) {  // ν = 0: the constant term
        pairs.emplace(rep, std::make_pair(apos, 0.0));
      } else {
        const double aneg = f.coeff_at(negated(rep));
        pairs.emplace(rep, std::make_pair(apos + aneg, apos - aneg));
      }
    }
    const long ml = static_cast<long>(m_);
    for (const auto& [rep, cc_sc] : pairs) {
      cos_coeff_.push_back(cc_sc.first);
      sin_coeff_.push_back(cc_sc.second);
      for (std::int64_t v : rep) {
        long r = static_cast<long>(v % ml);
        if (r < 0) r += ml;
        nu_mod_.push_back(r);
      }
      last_step_.push_back(nu_mod_.back());
    }

    cs_.resize(m_);
    sn_.resize(m_);
    for (std::size_t i = 0; i <= m_ / 2; ++i) {
      const double angle =
          2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m_);
      cs_[i] = std::cos(angle);
      sn_[i] = std::sin(angle);
    }
    for (std::size_t i = m_ / 2 + 1; i < m_; ++i) {
      cs_[i] = cs_[m_ - i];
      sn_[i] = -sn_[m_ - i];
    }
  }

  std::size_t terms() const { return cos_coeff_.size(); }

  // Calls sink(re, im) for every node index in [begin, end), in order.
  template <typename Sink>
  void scan(std::size_t begin, std::size_t end, Sink&& sink) const {
    const std::size_t nt = terms();
    std::vector<long> j(dim_);
    {
      std::size_t base = begin;
      for (std::size_t k = dim_; k-- > 0;) {
        j[k] = static_cast<long>(base % m_);
        base /= m_;
      }
    }
    std::vector<long> phase(nt);
    recompute_phases(j, phase);
    const long ml = static_cast<long>(m_);
    for (std::size_t idx = begin; idx < end; ++idx) {
      double re = 0.0, im = 0.0;
      for (std::size_t t = 0; t < nt; ++t) {
        re += cos_coeff_[t] * cs_[phase[t]];
        im += sin_coeff_[t] * sn_[phase[t]];
      }
      sink(re, im);
      if (idx + 1 == end) break;
      // Odometer step, last axis fastest (row-major node order).
      std::size_t axis = dim_;
      bool carried = false;
      while (axis-- > 0) {
        if (++j[axis] < ml) break;
        j[axis] = 0;
        carried = true;
      }
      if (!carried) {
        for (std::size_t t = 0; t < nt; ++t) {
          phase[t] += last_step_[t];
          if (phase[t] >= ml) phase[t] -= ml;
        }
      } else {
        recompute_phases(j, phase);
      }
    }
  }

 private:
  void recompute_phases(const std::vector<long>& j,
                        std::vector<long>& phase) const {
    const long ml = static_cast<long>(m_);
    for (std::size_t t = 0; t < terms(); ++t) {
      long p = 0;
      for (std::size_t k = 0; k < dim_; ++k)
        p = (p + j[k] * nu_mod_[t * dim_ + k]) % ml;
      phase[t] = p;
    }
  }

  std::size_t dim_, m_;
  std::vector<double> cos_coeff_, sin_coeff_;
  std::vector<long> nu_mod_;     // terms × dim, row-major
  std::vector<long> last_step_;  // per-term phase increment along last axis
  std::vector<double> cs_, sn_;  // symmetric trig tables
};

double quadrature_impl(const FloatElement& f, const TorusGrid& grid,
                       bool parallel) {
  grid.validate();
  if (f.is_zero()) throw Error("mahler_quadrature: f must be nonzero");
  const NodeScanner scanner(f, grid.dim, grid.m);
  const std::size_t total = grid.total();
  const std::size_t nchunks = (total + kChunk - 1) / kChunk;
  std::vector<double> chunk_sum(nchunks);
  std::vector<char> hit(nchunks, 0);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::size_t c = 0; c < nchunks; ++c) {
    const std::size_t b = c * kChunk;
    const std::size_t e = std::min(total, b + kChunk);
    std::vector<double> buf;
    buf.reserve(e - b);
    scanner.scan(b, e, [&](double re, double im) {
      const double v = re * re + im * im;
      if (v == 0.0) {
        hit[c] = 1;
        buf.push_back(0.0);
      } else {
        buf.push_back(std::log(v));
      }
    });
    chunk_sum[c] = pairwise_sum(std::move(buf));
  }
  for (char h : hit)
    if (h)
      throw NodeHitError(
          "mahler_quadrature: |f| vanishes exactly at a grid node; "
          "verify non-vanishing first or perturb m");
  // Σ log|f| = ½·Σ log|f|².
  return 0.5 * pairwise_sum(std::move(chunk_sum)) /
         static_cast<double>(total);
}

// Parlett–Reinsch style radix-2 balancing: similarity scalings that bring
// row and column norms together, exact in floating point (powers of two).
void balance_in_place(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0, col = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k == i) continue;
        r += std::fabs(a(i, k));
        col += std::fabs(a(k, i));
      }
      if (r == 0.0 || col == 0.0) continue;
      const double s = col + r;
      double scale = 1.0;
      // Scaling column i by `scale` (and row i by 1/scale) sends col →
      // col·scale and r → r/scale; walk powers of two toward col ≈ r.
      while (col * 2.0 < r) {
        col *= 2.0;
        r /= 2.0;
        scale *= 2.0;
      }
      while (col >= r * 2.0) {
        col /= 2.0;
        r *= 2.0;
        scale /= 2.0;
      }
      if (col + r < 0.95 * s) {
        done = false;
        a.row(i) /= scale;
        a.col(i) *= scale;
      }
    }
  }
}

}  // namespace

double mahler_quadrature(const FloatElement& f, const TorusGrid& grid) {
  return quadrature_impl(f, grid, true);
}

double mahler_quadrature_serial(const FloatElement& f, const TorusGrid& grid) {
  return quadrature_impl(f, grid, false);
}

double jensen_1d(const FloatElement& f) {
  if (f.spec().kind() != GroupKind::FreeAbelian ||
      f.spec().encoding_size() != 1)
    throw SpecMismatchError("jensen_1d: element is not over Z^1");
  if (f.is_zero()) throw Error("jensen_1d: zero polynomial");

  std::int64_t lo = f.support().begin()->first[0];
  std::int64_t hi = f.support().rbegin()->first[0];
  const std::size_t d = static_cast<std::size_t>(hi - lo);
  // m(z^lo·p) = m(p): drop the monomial factor.
  std::vector<double> p(d + 1, 0.0);
  for (const auto& [nu, a] : f.support())
    p[static_cast<std::size_t>(nu[0] - lo)] = a;

  if (d == 0) return std::log(std::fabs(p[0]));

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 1; i < d; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) =
        1.0;
  for (std::size_t i = 0; i < d; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) =
        -p[i] / p[d];
  balance_in_place(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion,
                                             /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error("jensen_1d: companion eigenvalue iteration failed");

  double value = std::log(std::fabs(p[d]));
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double mag = std::abs(solver.eigenvalues()[k]);
    if (std::fabs(mag - 1.0) < 1e-8)
      throw NoCertificateError(
          "jensen_1d: root within 1e-8 of the unit circle, refusing");
    if (mag > 1.0) value += std::log(mag);
  }
  return value;
}

NonvanishingCertificate nonvanishing_certificate(const FloatElement& f,
                                                 std::size_t m) {
  const std::size_t dim = f.spec().encoding_size();
  TorusGrid grid{dim, m};
  grid.validate();
  const NodeScanner scanner(f, dim, m);
  const std::size_t total = grid.total();
  const std::size_t nchunks = (total + kChunk - 1) / kChunk;
  std::vector<double> chunk_min(nchunks);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < nchunks; ++c) {
    const std::size_t b = c * kChunk;
    const std::size_t e = std::min(total, b + kChunk);
    double lo = std::numeric_limits<double>::infinity();
    scanner.scan(b, e, [&](double re, double im) {
      lo = std::min(lo, re * re + im * im);
    });
    chunk_min[c] = lo;
  }
  double min2 = std::numeric_limits<double>::infinity();
  for (double v : chunk_min) min2 = std::min(min2, v);

  NonvanishingCertificate cert;
  cert.m = m;
  cert.grid_min = std::sqrt(min2);
  double l = 0.0;
  for (const auto& [nu, a] : f.support()) {
    double norm1 = 0.0;
    for (std::int64_t v : nu) norm1 += std::fabs(static_cast<double>(v));
    l += std::fabs(a) * norm1;
  }
  cert.lipschitz = 2.0 * std::numbers::pi * l;
  cert.threshold = cert.lipschitz * (std::sqrt(static_cast<double>(dim)) / 2.0) /
                   static_cast<double>(m);
  cert.certified = cert.grid_min > cert.threshold;
  return cert;
}

SymbolWindow symbol_range(const FloatElement& f, std::size_t m) {
  if (!is_self_adjoint(f))
    throw NotSelfAdjointError("symbol_range: f != f*, symbol is not real");
  const std::size_t dim = f.spec().encoding_size();
  TorusGrid grid{dim, m};
  grid.validate();
  const NodeScanner scanner(f, dim, m);
  const std::size_t total = grid.total();
  const std::size_t nchunks = (total + kChunk - 1) / kChunk;
  std::vector<double> chunk_lo(nchunks), chunk_hi(nchunks);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < nchunks; ++c) {
    const std::size_t b = c * kChunk;
    const std::size_t e = std::min(total, b + kChunk);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    scanner.scan(b, e, [&](double re, double im) {
      (void)im;  // exactly 0: all sin coefficients of a self-adjoint f vanish
      lo = std::min(lo, re);
      hi = std::max(hi, re);
    });
    chunk_lo[c] = lo;
    chunk_hi[c] = hi;
  }
  SymbolWindow w;
  w.grid_min = std::numeric_limits<double>::infinity();
  w.grid_max = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < nchunks; ++c) {
    w.grid_min = std::min(w.grid_min, chunk_lo[c]);
    w.grid_max = std::max(w.grid_max, chunk_hi[c]);
  }
  double l = 0.0;
  for (const auto& [nu, a] : f.support()) {
    double norm1 = 0.0;
    for (std::int64_t v : nu) norm1 += std::fabs(static_cast<double>(v));
    l += std::fabs(a) * norm1;
  }
  w.slack = 2.0 * std::numbers::pi * l *
            (std::sqrt(static_cast<double>(dim)) / 2.0) /
            static_cast<double>(m);
  w.lo = w.grid_min - w.slack;
  w.hi = w.grid_max + w.slack;
  return w;
}

std::string MahlerRun::to_json() const {
  nlohmann::json j;
  j["value"] = nlohmann::json::parse(format_double(value));
  j["grid"] = m;
  j["certified"] = certificate.certified;
  j["lipschitz_bound"] = nlohmann::json::parse(format_double(certificate.lipschitz));
  j["grid_min"] = nlohmann::json::parse(format_double(certificate.grid_min));
  j["threshold"] = nlohmann::json::parse(format_double(certificate.threshold));
  return j.dump(2);
}

MahlerRun mahler_run(const FloatElement& f, std::size_t m) {
  MahlerRun run;
  run.m = m;
  run.certificate = nonvanishing_certificate(f, m);
  const TorusGrid grid{f.spec().encoding_size(), m};
  run.value = mahler_quadrature(f, grid);
  return run;
}

}  // namespace fkdet
