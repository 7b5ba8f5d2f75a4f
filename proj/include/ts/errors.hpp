#pragma once

#include <stdexcept>

namespace ts {

/// Bad inputs that are detectable before the pipeline runs: missing files,
/// out-of-range settings, unusable topics. The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stage failed while processing data that passed validation.
/// The CLI maps this to exit code 2.
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ts
