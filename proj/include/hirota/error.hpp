#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hirota {

enum class Errc {
  ZeroK1,
  NonFiniteParameter,
  NonUpperHalfPlaneZero,
  DuplicateZero,
  ZeroEigenvector,
  Overflow,
  SingularM,
  AlphaNotOne,
  ZeroBetaGamma,
  PoleHit,
  NonDecayingTails,
  StepTooLarge,
  GridTooSmall,
  GridMismatch,
  InsufficientLadder,
  NonPowerOfTwo,
  StabilityBound,
  InvalidArgument,
  ConfigError,
  IoError,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::ZeroK1: return "ZeroK1";
    case Errc::NonFiniteParameter: return "NonFiniteParameter";
    case Errc::NonUpperHalfPlaneZero: return "NonUpperHalfPlaneZero";
    case Errc::DuplicateZero: return "DuplicateZero";
    case Errc::ZeroEigenvector: return "ZeroEigenvector";
    case Errc::Overflow: return "Overflow";
    case Errc::SingularM: return "SingularM";
    case Errc::AlphaNotOne: return "AlphaNotOne";
    case Errc::ZeroBetaGamma: return "ZeroBetaGamma";
    case Errc::PoleHit: return "PoleHit";
    case Errc::NonDecayingTails: return "NonDecayingTails";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::GridTooSmall: return "GridTooSmall";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::InsufficientLadder: return "InsufficientLadder";
    case Errc::NonPowerOfTwo: return "NonPowerOfTwo";
    case Errc::StabilityBound: return "StabilityBound";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

/// Exception type used by every module. `indices` carries the offending
/// spectral-data positions for validation failures (empty otherwise).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::vector<std::size_t> indices = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        indices_(std::move(indices)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  Errc code_;
  std::vector<std::size_t> indices_;
};

}  // namespace hirota
