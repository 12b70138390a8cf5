#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vararb {

enum class Errc {
  NegativeLoss,
  ProbsNotNormalized,
  EmptySupport,
  InvalidBounds,
  MalformedInput,
  InvalidLevel,
  AtomTooHeavy,
  NInsufficient,
  PartitionMismatch,
  OutOfSupport,
  TooManyAtoms,
  InvalidOverhead,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

// Every library failure is reported through this type; kind() carries the
// machine-checkable reason, what() a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(Errc kind, const std::string& message)
      : std::runtime_error(std::string(errc_name(kind)) + ": " + message),
        kind_(kind) {}

  Errc kind() const noexcept { return kind_; }

 private:
  Errc kind_;
};

}  // namespace vararb
