#pragma once

#include <string>

namespace specmix {

// 17-significant-digit decimal, enough to round-trip any double.
std::string format_double(double value);

}  // namespace specmix
