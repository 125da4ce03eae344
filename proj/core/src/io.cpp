#include "sphdiff/io.hpp"

#include <cstdio>

namespace sphdiff::io {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace sphdiff::io
