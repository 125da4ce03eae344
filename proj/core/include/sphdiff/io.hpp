#pragma once

#include <string>

#include "sphdiff/errors.hpp"

namespace sphdiff::io {

/// Shortest decimal form with 17 significant digits; round-trips any double.
std::string format_g17(double v);

}  // namespace sphdiff::io
