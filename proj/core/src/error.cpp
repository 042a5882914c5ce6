#include "convograph/error.hpp"

namespace convograph {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::io: return "io";
    case ErrorKind::empty_input: return "empty input";
    case ErrorKind::validation: return "validation";
    case ErrorKind::undefined_metric: return "undefined metric";
    case ErrorKind::bounds: return "bounds";
    case ErrorKind::stratification: return "stratification";
    case ErrorKind::training: return "training";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

}  // namespace convograph
