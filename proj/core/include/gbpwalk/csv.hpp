#pragma once

#include <string>

namespace gbp {

// Shortest round-trip style: 17 significant digits.
std::string fmt17(double v);

}  // namespace gbp
