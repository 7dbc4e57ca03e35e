#pragma once

#include <stdexcept>
#include <string>

namespace coexist {

/// Failure categories surfaced by the library. Mirrored one-to-one by the
/// C API status codes.
enum class Errc {
  InvalidArgument,
  ParseError,
  NotAnEffect,
  NonOrthogonalRotation,
  DegenerateSubspace,
  DegenerateCross,
  NotSpacelike,
  Commuting,
  NotCoexistent,
  PositivityViolation,
  InvalidBloch,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code) noexcept;

}  // namespace coexist
