#include "wavetm/core.hpp"

namespace wavetm {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DistributionalPotential: return "DistributionalPotential";
    case ErrorCode::InvalidWavenumber: return "InvalidWavenumber";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::PeriodMismatch: return "PeriodMismatch";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::SpectralSingularity: return "SpectralSingularity";
    case ErrorCode::WavenumberMismatch: return "WavenumberMismatch";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::NonSmoothData: return "NonSmoothData";
    case ErrorCode::DegenerateAlphaDenominator: return "DegenerateAlphaDenominator";
    case ErrorCode::TailNonconvergence: return "TailNonconvergence";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::optional<ErrorCode> error_code_from_string(const std::string& name) {
  for (int i = static_cast<int>(ErrorCode::InvalidInput); i <= static_cast<int>(ErrorCode::IoError);
       ++i) {
    const auto code = static_cast<ErrorCode>(i);
    if (name == to_string(code)) return code;
  }
  return std::nullopt;
}

}  // namespace wavetm
