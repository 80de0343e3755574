#pragma once

#include <stdexcept>
#include <string>

namespace decolab {

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  NegativeSpectrum,
  NonFinite,
  DimensionMismatch,
  NormError,
  TruncationTooLossy,
  EtaOutOfRange,
  EtaZero,
  InvalidSpec,
  WrongOrdering,
  NotHermitianResult,
  Unphysical,
  NotTwoQubit,
  SeparableInput,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NegativeSpectrum: return "NegativeSpectrum";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NormError: return "NormError";
    case ErrorKind::TruncationTooLossy: return "TruncationTooLossy";
    case ErrorKind::EtaOutOfRange: return "EtaOutOfRange";
    case ErrorKind::EtaZero: return "EtaZero";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::WrongOrdering: return "WrongOrdering";
    case ErrorKind::NotHermitianResult: return "NotHermitianResult";
    case ErrorKind::Unphysical: return "Unphysical";
    case ErrorKind::NotTwoQubit: return "NotTwoQubit";
    case ErrorKind::SeparableInput: return "SeparableInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures of the arithmetic itself rather than of the inputs.
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::NegativeSpectrum || kind_ == ErrorKind::NotHermitianResult ||
           kind_ == ErrorKind::Unphysical;
  }

 private:
  ErrorKind kind_;
};

}  // namespace decolab
