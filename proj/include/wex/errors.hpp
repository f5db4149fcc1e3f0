#pragma once

#include <stdexcept>
#include <string>

namespace wex {

// Error hierarchy shared by all modules. CLI maps these onto exit codes:
// data/format violations -> 2, runtime failures -> 3.

struct WexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : WexError {
  using WexError::WexError;
};

struct RuntimeFailure : WexError {
  using WexError::WexError;
};

struct EmptyDocument : DataError {
  using DataError::DataError;
};

struct UnknownNode : DataError {
  using DataError::DataError;
};

struct MalformedXPath : DataError {
  using DataError::DataError;
};

struct InvalidChunkParams : DataError {
  using DataError::DataError;
};

struct ShapeMismatch : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};

struct NonFiniteLoss : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};

struct DuplicatePrediction : DataError {
  using DataError::DataError;
};

struct WrongRowCount : DataError {
  using DataError::DataError;
};

struct IoFailure : RuntimeFailure {
  using RuntimeFailure::RuntimeFailure;
};

struct DanglingGoldXPath : DataError {
  using DataError::DataError;
};

struct MalformedManifest : DataError {
  using DataError::DataError;
};

struct MalformedRecord : DataError {
  using DataError::DataError;
};

}  // namespace wex
