#pragma once

#include <stdexcept>
#include <string>

namespace matord {

enum class ErrorCode {
  NonHermitian,
  NonFinite,
  DimensionMismatch,
  BaseSpaceMismatch,
  WrongBaseModel,
  ModelMismatch,
  InvalidP,
  KindMismatch,
  NonHermitianInput,
  NoWitnessFound,
  NotCompletelyPositive,
  MatrixFamilyNotFound,
  Infeasible,
  UnknownExperiment,
  MalformedInput,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace matord
