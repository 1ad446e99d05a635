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
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hybridsim {

enum class ErrorKind {
    NotHermitian,
    NotSquare,
    DimensionMismatch,
    ParseError,
    NormPremiseViolated,
    CoefficientsMissing,
    NormExceedsScale,
    WeightsNotNormalized,
    MixedScales,
    InvalidFactor,
    AmplificationOverflow,
    NotUnitary,
    BadPermutation,
    DegreeOverflow,
    NotHermitianBlock,
    NotUnit,
    SparsityOutOfRange,
    NegativeEigenvalueProduct,
    NotCommuting,
    InvalidConfig,
};

std::string_view error_kind_name(ErrorKind kind);

/// True for input/validation failures (CLI exit 2); false for numerical
/// failures raised while running a pipeline (CLI exit 3).
bool is_validation_error(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &detail);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string &detail() const noexcept { return detail_; }

  private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string &detail = {});

} // namespace hybridsim
