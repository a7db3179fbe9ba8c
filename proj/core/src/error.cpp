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

#include "ellhyp/error.hpp"

#include <sstream>

namespace ellhyp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::PoleEvaluation: return "PoleEvaluation";
    case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorCode::LeadingCoefficientVanishes: return "LeadingCoefficientVanishes";
    case ErrorCode::VerticalTangent: return "VerticalTangent";
    case ErrorCode::OffCurve: return "OffCurve";
    case ErrorCode::LatticeSingularity: return "LatticeSingularity";
    case ErrorCode::LatticeStagnation: return "LatticeStagnation";
    case ErrorCode::NotMaterialized: return "NotMaterialized";
    case ErrorCode::BranchPointEvaluation: return "BranchPointEvaluation";
    case ErrorCode::ReconstructionFallback: return "ReconstructionFallback";
    case ErrorCode::MethodDegenerate: return "MethodDegenerate";
    case ErrorCode::NoValidSamples: return "NoValidSamples";
    case ErrorCode::NoSpecialPoint: return "NoSpecialPoint";
    case ErrorCode::BranchAssignmentFailed: return "BranchAssignmentFailed";
    case ErrorCode::SmallDivisor: return "SmallDivisor";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::MissingFactor: return "MissingFactor";
    case ErrorCode::HitSingularLattice: return "HitSingularLattice";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::RefinePath: return "RefinePath";
    case ErrorCode::PathThroughBranchPoint: return "PathThroughBranchPoint";
    case ErrorCode::LocusNotClosed: return "LocusNotClosed";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& detail,
                    std::optional<long> index, std::optional<Scalar> where) {
  std::ostringstream os;
  os << to_string(code);
  if (!detail.empty()) os << ": " << detail;
  if (index) os << " [index " << *index << "]";
  if (where) os << " [at (" << where->real() << ", " << where->imag() << ")]";
  return os.str();
}

}  // namespace

Error::Error(ErrorCode code, const std::string& detail, std::optional<long> index,
             std::optional<Scalar> where)
    : std::runtime_error(compose(code, detail, index, where)),
      code_(code),
      detail_(detail),
      index_(index),
      where_(where) {}

}  // namespace ellhyp
