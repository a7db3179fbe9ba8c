// Copyright 2026 The ellhyp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ELLHYP_ERROR_HPP
#define ELLHYP_ERROR_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ellhyp {

/// Scalar field of every computation in the library.
using Scalar = std::complex<double>;
using Real = double;

/// Named failure kinds. The names are part of the public contract: they show
/// up in CLI output and in solution diagnostics.
enum class ErrorCode {
  ZeroDivisor,
  PoleEvaluation,
  ConstantPolynomial,
  LeadingCoefficientVanishes,
  VerticalTangent,
  OffCurve,
  LatticeSingularity,
  LatticeStagnation,
  NotMaterialized,
  BranchPointEvaluation,
  ReconstructionFallback,
  MethodDegenerate,
  NoValidSamples,
  NoSpecialPoint,
  BranchAssignmentFailed,
  SmallDivisor,
  InternalInconsistency,
  DegreeMismatch,
  MissingFactor,
  HitSingularLattice,
  WindowTooSmall,
  RefinePath,
  PathThroughBranchPoint,
  LocusNotClosed,
  ValidationError,
  MissingField,
  Usage,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail,
        std::optional<long> index = std::nullopt,
        std::optional<Scalar> where = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  /// Lattice or coefficient index the failure refers to, when there is one.
  std::optional<long> index() const noexcept { return index_; }
  /// Point in the complex plane the failure refers to, when there is one.
  std::optional<Scalar> where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<long> index_;
  std::optional<Scalar> where_;
};

/// Non-fatal event recorded alongside a result.
struct Diagnostic {
  ErrorCode code;
  std::string detail;
  std::optional<long> index;
};

}  // namespace ellhyp

#endif  // ELLHYP_ERROR_HPP
