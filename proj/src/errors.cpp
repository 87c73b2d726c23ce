//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "pann/errors.hpp"

namespace pann {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::kSingularTensor:
    return "SingularTensor";
  case ErrorCode::kNonPositiveDeterminant:
    return "NonPositiveDeterminant";
  case ErrorCode::kNonPositiveAnisotropicInvariant:
    return "NonPositiveAnisotropicInvariant";
  case ErrorCode::kNonPositiveJ:
    return "NonPositiveJ";
  case ErrorCode::kDimensionMismatch:
    return "DimensionMismatch";
  case ErrorCode::kWrongSymmetry:
    return "WrongSymmetry";
  case ErrorCode::kInvalidArgument:
    return "InvalidArgument";
  case ErrorCode::kNewtonDivergence:
    return "NewtonDivergence";
  case ErrorCode::kEmptyDataset:
    return "EmptyDataset";
  case ErrorCode::kDatasetTooSmall:
    return "DatasetTooSmall";
  case ErrorCode::kAllZeroStress:
    return "AllZeroStress";
  case ErrorCode::kNonFiniteLoss:
    return "NonFiniteLoss";
  case ErrorCode::kIoError:
    return "IoError";
  case ErrorCode::kFormatError:
    return "FormatError";
  case ErrorCode::kConfigError:
    return "ConfigError";
  }
  return "Unknown";
}

}  // namespace pann
