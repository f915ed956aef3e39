#include "spinnet/core/error.hpp"

namespace spinnet {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotAFreeEnd: return "NotAFreeEnd";
    case ErrorCode::InadmissibleJoin: return "InadmissibleJoin";
    case ErrorCode::InadmissibleTriple: return "InadmissibleTriple";
    case ErrorCode::InadmissibleSplit: return "InadmissibleSplit";
    case ErrorCode::HasFreeEnds: return "HasFreeEnds";
    case ErrorCode::InvalidNetwork: return "InvalidNetwork";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::MalformedArguments: return "MalformedArguments";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooFewEnds: return "TooFewEnds";
    case ErrorCode::ExhaustedEnd: return "ExhaustedEnd";
    case ErrorCode::BadIndices: return "BadIndices";
    case ErrorCode::ZeroProbability: return "ZeroProbability";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

}  // namespace spinnet
