// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wavereg Authors

#include "wavereg/error.hpp"

namespace wavereg {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Length: return "length error";
    case ErrorKind::UnknownFamily: return "unknown wavelet family";
    case ErrorKind::Policy: return "policy error";
    case ErrorKind::Configuration: return "configuration error";
    case ErrorKind::Data: return "data error";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::Protocol: return "protocol error";
    case ErrorKind::Monotonicity: return "monotonicity error";
    case ErrorKind::Lookup: return "lookup error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Alignment: return "alignment error";
    case ErrorKind::UndefinedMetric: return "undefined metric";
  }
  return "error";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Monotonicity:
    case ErrorKind::Alignment:
    case ErrorKind::Protocol:
    case ErrorKind::Configuration:
      return 3;
    default:
      return 2;
  }
}

}  // namespace wavereg
