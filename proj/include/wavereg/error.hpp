// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#ifndef WAVEREG_ERROR_HPP
#define WAVEREG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wavereg {

enum class ErrorKind {
  Length,           // odd, too short, non-power-of-two or mismatched blocks
  UnknownFamily,
  Policy,           // reduction policy out of bounds
  Configuration,    // e.g. filter family does not match a record
  Data,             // non-finite or otherwise unusable values
  InsufficientData,
  Protocol,         // stats reply does not match a request
  Monotonicity,     // cumulative counter went backwards
  Lookup,
  Parse,
  Alignment,        // windows of two inputs do not line up
  UndefinedMetric,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// CLI exit status: 2 for bad input, 3 for contract violations.
int exit_code(ErrorKind kind) noexcept;

}  // namespace wavereg

#endif  // WAVEREG_ERROR_HPP
