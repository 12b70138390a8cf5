#include "vararb/error.hpp"

namespace vararb {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NegativeLoss: return "NegativeLoss";
    case Errc::ProbsNotNormalized: return "ProbsNotNormalized";
    case Errc::EmptySupport: return "EmptySupport";
    case Errc::InvalidBounds: return "InvalidBounds";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::InvalidLevel: return "InvalidLevel";
    case Errc::AtomTooHeavy: return "AtomTooHeavy";
    case Errc::NInsufficient: return "NInsufficient";
    case Errc::PartitionMismatch: return "PartitionMismatch";
    case Errc::OutOfSupport: return "OutOfSupport";
    case Errc::TooManyAtoms: return "TooManyAtoms";
    case Errc::InvalidOverhead: return "InvalidOverhead";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace vararb
