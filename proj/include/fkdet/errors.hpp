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

#ifndef FKDET_ERRORS_HPP
#define FKDET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fkdet {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An element encoding does not match the group it is used with.
class MalformedElementError : public Error {
 public:
  using Error::Error;
};

// Two operands live over different groups, or coefficient kinds are
// incompatible for the requested operation.
class SpecMismatchError : public Error {
 public:
  using Error::Error;
};

// A Følner set, ball, grid or support exceeded the configured cap.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

// ‖g‖₁ ≥ 1 where a strict contraction is required (unit recipe, Neumann
// series, trace series).
class NotContractionError : public Error {
 public:
  using Error::Error;
};

// trace_series_logdet cannot run: series diverges (‖g‖₁ ≥ 1 or a_e ≤ 0).
class SeriesDivergentError : public Error {
 public:
  using Error::Error;
};

// An operation requiring f = f* received a non-self-adjoint element.
class NotSelfAdjointError : public Error {
 public:
  using Error::Error;
};

// A positive-definite factorization hit a non-positive pivot: the caller's
// positivity certificate was wrong.
class NotPositiveError : public Error {
 public:
  using Error::Error;
};

// lattice_index on a singular truncation: the quotient Z[F]/f_F Z[F] is
// infinite. Reported, not fatal, in sequence drivers.
class InfiniteIndexError : public Error {
 public:
  using Error::Error;
};

// Quadrature node fell exactly on a zero of f.
class NodeHitError : public Error {
 public:
  using Error::Error;
};

// jensen_1d refuses: a root lies too close to the unit circle, or a
// requested certificate cannot be produced.
class NoCertificateError : public Error {
 public:
  using Error::Error;
};

// Experiment configuration is syntactically or semantically invalid; the
// message carries a line anchor where applicable.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fkdet

#endif  // FKDET_ERRORS_HPP
