#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace convograph {

enum class ErrorKind {
  io,                // source could not be opened or read
  empty_input,       // source parsed to zero usable records
  validation,        // malformed value supplied by the caller
  undefined_metric,  // metric has no value on this graph (e.g. density with N < 2)
  bounds,            // node id out of range
  stratification,    // a class has too few documents to split
  training,          // corpus cannot produce a model
  usage,             // command invoked with inconsistent arguments
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace convograph
