// Copyright 2026 The hybridsim Authors.
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
#include "hybridsim/errors.hpp"

namespace hybridsim {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NormPremiseViolated: return "NormPremiseViolated";
    case ErrorKind::CoefficientsMissing: return "CoefficientsMissing";
    case ErrorKind::NormExceedsScale: return "NormExceedsScale";
    case ErrorKind::WeightsNotNormalized: return "WeightsNotNormalized";
    case ErrorKind::MixedScales: return "MixedScales";
    case ErrorKind::InvalidFactor: return "InvalidFactor";
    case ErrorKind::AmplificationOverflow: return "AmplificationOverflow";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::BadPermutation: return "BadPermutation";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::NotHermitianBlock: return "NotHermitianBlock";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::SparsityOutOfRange: return "SparsityOutOfRange";
    case ErrorKind::NegativeEigenvalueProduct: return "NegativeEigenvalueProduct";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

bool is_validation_error(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::AmplificationOverflow:
    case ErrorKind::DegreeOverflow:
    case ErrorKind::NotUnitary:
    case ErrorKind::NormExceedsScale:
    case ErrorKind::NotHermitianBlock:
    case ErrorKind::MixedScales:
    case ErrorKind::WeightsNotNormalized:
        return false;
    default:
        return true;
    }
}

static std::string format_message(ErrorKind kind, const std::string &detail) {
    std::string msg(error_kind_name(kind));
    if (!detail.empty()) {
        msg += ": ";
        msg += detail;
    }
    return msg;
}

Error::Error(ErrorKind kind, const std::string &detail)
    : std::runtime_error(format_message(kind, detail)), kind_(kind), detail_(detail) {}

void raise(ErrorKind kind, const std::string &detail) { throw Error(kind, detail); }

} // namespace hybridsim
