// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lumen {

// Error categories. The numeric values double as CLI exit codes and are
// documented in `lumen_da --help`; keep them stable.
enum class ErrorCode : int {
  ConfigInvalid = 2,
  IoError = 3,
  PhaseMismatch = 4,
  MissingLabels = 5,
  DegenerateInput = 6,
  ShapeMismatch = 7,
  EmptyDataset = 8,
  EmptyBatch = 9,
  CameraOutsideLumen = 10,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::PhaseMismatch: return "PhaseMismatch";
    case ErrorCode::MissingLabels: return "MissingLabels";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::EmptyBatch: return "EmptyBatch";
    case ErrorCode::CameraOutsideLumen: return "CameraOutsideLumen";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace lumen
