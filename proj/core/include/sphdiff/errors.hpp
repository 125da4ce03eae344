#pragma once

#include <stdexcept>
#include <string>

namespace sphdiff {

/// File could not be opened, read or written.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File content is malformed (bad header, bad row, wrong units).
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sphdiff
