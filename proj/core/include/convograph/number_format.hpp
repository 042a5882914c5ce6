#pragma once

#include <string>

namespace convograph {

/// Shortest text that parses back to the same double.
std::string format_shortest(double value);

/// Fixed notation with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

}  // namespace convograph
