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

#include "fkdet/finite.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

#include <nlohmann/json.hpp>

#include "fkdet/chol.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/estimate.hpp"
#include "fkdet/intmat.hpp"
#include "fkdet/truncate.hpp"

namespace fkdet {

namespace {

FoelnerSet whole_group(const GroupSpec& spec) {
  if (spec.kind() != GroupKind::Finite)
    throw SpecMismatchError("finite_entropy: group is not finite");
  std::vector<GroupElement> all = spec.all_elements();
  const std::int64_t label = static_cast<std::int64_t>(all.size());
  return FoelnerSet(spec, std::move(all), label);
}

}  // namespace

std::string FiniteEntropyResult::to_json() const {
  nlohmann::json j;
  j["is_unit"] = is_unit;
  if (is_unit) {
    j["index"] = index.get_str();
    j["h_f"] = nlohmann::json::parse(format_double(h_f));
  } else {
    j["index"] = "INFINITE";
    j["h_f"] = "INFINITE";
  }
  if (std::isinf(logdet_eigen))
    j["logdet_eigen"] = logdet_eigen < 0 ? "-INFINITE" : "INFINITE";
  else
    j["logdet_eigen"] = nlohmann::json::parse(format_double(logdet_eigen));
  return j.dump(2);
}

FiniteEntropyResult finite_entropy(const IntElement& f) {
  const FoelnerSet gamma = whole_group(f.spec());
  const std::size_t n = gamma.size();

  FiniteEntropyResult out;
  const TruncatedMatrix t = assemble_exact(f, gamma);
  const mpz_class det = bareiss_det(t.exact);
  out.is_unit = det != 0;
  if (out.is_unit) {
    const mpz_class absdet = abs(det);
    mpz_class prod(1);
    for (const mpz_class& d : snf_divisors_mod(t.exact, absdet)) prod *= d;
    if (prod != absdet)
      throw Error(
          "finite_entropy: SNF divisor product disagrees with |det| "
          "(internal invariant violated)");
    out.index = prod;
    out.h_f = log_mpz(out.index) / static_cast<double>(n);
  } else {
    out.index = 0;
    out.h_f = std::numeric_limits<double>::infinity();
  }
  out.logdet_eigen = f.is_zero()
                         ? -std::numeric_limits<double>::infinity()
                         : finite_logdet_eigen(f);
  return out;
}

double finite_logdet_eigen(const IntElement& f) {
  const FoelnerSet gamma = whole_group(f.spec());
  if (f.is_zero())
    throw Error("finite_logdet_eigen: determinant of 0 is undefined");
  const std::size_t n = gamma.size();

  const IntElement ff = make_positive(f);
  const TruncatedMatrix tf = assemble_float(ff, gamma,
                                            /*dense_cap=*/4000);
  const std::vector<double> dense =
      tf.is_banded() ? tf.to_dense() : tf.dense;
  Eigen::Map<const Eigen::MatrixXd> m(dense.data(),
                                      static_cast<Eigen::Index>(n),
                                      static_cast<Eigen::Index>(n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error("finite_logdet_eigen: eigenvalue iteration failed");
  const Eigen::VectorXd ev = solver.eigenvalues();  // ascending

  // Float rank from the cutoff, then the exact rank overrides.
  const double lambda_max = std::max(ev[static_cast<Eigen::Index>(n) - 1], 0.0);
  const double cutoff = lambda_max * static_cast<double>(n) *
                        std::numeric_limits<double>::epsilon() * 16.0;
  std::size_t float_rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] > cutoff) ++float_rank;
  const std::size_t rank = exact_rank(assemble_exact(ff, gamma).exact);
  (void)float_rank;  // the cutoff is a sanity estimate; the exact rank wins

  std::vector<double> logs;
  logs.reserve(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    const double lambda = ev[static_cast<Eigen::Index>(n - rank + i)];
    if (!(lambda > 0.0))
      throw Error(
          "finite_logdet_eigen: exact rank exceeds the number of "
          "positive float eigenvalues");
    logs.push_back(std::log(lambda));
  }
  return 0.5 * pairwise_sum(std::move(logs)) / static_cast<double>(n);
}

}  // namespace fkdet
